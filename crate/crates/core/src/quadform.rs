//! Representations `p = x^2 + d y^2` and `4p = x^2 + 27 y^2`.

use num_integer::Roots;

use crate::error::{Error, Result};
use crate::padic::is_prime;

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Tonelli-Shanks square root of `a` modulo an odd prime `p`.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mulm = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Whether the prime `p` is represented by `x^2 + d y^2` with `x, y > 0`.
pub fn is_represented(p: u64, d: u64) -> bool {
    match d {
        2 => p % 8 == 1 || p % 8 == 3,
        3 => p % 3 == 1,
        4 => p % 4 == 1,
        7 => matches!(p % 7, 1 | 2 | 4) && p != 2,
        _ => false,
    }
}

/// Cornacchia's algorithm for `x^2 + d y^2 = m`, `m` prime.
fn cornacchia(m: u64, d: u64) -> Option<(u64, u64)> {
    let mut x0 = sqrt_mod((m - d % m) % m, m)?;
    if 2 * x0 < m {
        x0 = m - x0;
    }
    let l = m.sqrt();
    let (mut a, mut b) = (m, x0);
    while b > l {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = m.checked_sub(b * b)?;
    if rest % d != 0 {
        return None;
    }
    let y = exact_sqrt(rest / d)?;
    (b > 0 && y > 0).then_some((b, y))
}

/// Search oracle for `x^2 + d y^2 = m` with `x, y > 0`; returns every solution.
pub fn exhaustive(m: u64, d: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut y = 1;
    while d * y * y < m {
        if let Some(x) = exact_sqrt(m - d * y * y) {
            if x > 0 {
                out.push((x, y));
            }
        }
        y += 1;
    }
    out
}

/// `(x, y)` with `p = x^2 + d y^2`, `d` in {2, 3, 4, 7}.
pub fn represent(p: u64, d: u64) -> Result<(u64, u64)> {
    if !matches!(d, 2 | 3 | 4 | 7) {
        return Err(Error::UnsupportedForm);
    }
    if p <= 2 || !is_prime(p) || !is_represented(p, d) {
        return Err(Error::NoRepresentation);
    }
    cornacchia(p, d)
        .or_else(|| exhaustive(p, d).first().copied())
        .ok_or(Error::NoRepresentation)
}

/// `(x, y)` with `4p = x^2 + 27 y^2`, for primes `p = 1 mod 3`.
pub fn represent_4p27(p: u64) -> Result<(u64, u64)> {
    if !is_prime(p) || p % 3 != 1 {
        return Err(Error::NoRepresentation);
    }
    let found = cornacchia_4p(p, 27).or_else(|| cornacchia(p, 27).map(|(x, y)| (2 * x, 2 * y)));
    found
        .or_else(|| exhaustive(4 * p, 27).first().copied())
        .ok_or(Error::NoRepresentation)
}

/// Modified Cornacchia for `x^2 + |D| y^2 = 4p`, `D = 1 mod 4`.
fn cornacchia_4p(p: u64, dabs: u64) -> Option<(u64, u64)> {
    let r = sqrt_mod((p - dabs % p) % p, p)?;
    // match the parity of D, which is odd
    let mut b = if r % 2 == 1 { r } else { p - r };
    let mut a = 2 * p;
    let l = (4 * p).sqrt();
    while b > l {
        let t = a % b;
        a = b;
        b = t;
    }
    let rest = (4 * p).checked_sub(b * b)?;
    if rest % dabs != 0 {
        return None;
    }
    let y = exact_sqrt(rest / dabs)?;
    (b > 0 && y > 0).then_some((b, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        for p in [3u64, 5, 7, 13, 17, 97, 101, 257] {
            for a in 1..p {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(r * r % p, a);
                }
            }
        }
    }

    #[test]
    fn small_representations() {
        assert_eq!(represent(13, 4).unwrap(), (3, 1));
        assert_eq!(represent(11, 2).unwrap(), (3, 1));
        assert_eq!(represent(7, 3).unwrap(), (2, 1));
        assert_eq!(represent(11, 7).unwrap(), (2, 1));
        assert_eq!(represent(7, 4), Err(Error::NoRepresentation));
        assert_eq!(represent(13, 5), Err(Error::UnsupportedForm));
        assert_eq!(represent_4p27(7).unwrap(), (1, 1));
        assert_eq!(represent_4p27(13).unwrap(), (5, 1));
        assert_eq!(represent_4p27(31).unwrap(), (4, 2));
        assert_eq!(represent_4p27(11), Err(Error::NoRepresentation));
    }
}
