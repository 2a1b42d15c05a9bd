//! Exact-rational helpers shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub mod oracle;
pub mod suites;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `x mod p^e` for a p-integral rational.
pub fn md(x: &Q, p: u64, e: u32) -> BigInt {
    let m = BigInt::from(p).pow(e);
    let d = x.denom().mod_floor(&m);
    let inv = d.extended_gcd(&m).x.mod_floor(&m);
    (x.numer() * inv).mod_floor(&m)
}

pub fn cong(x: &Q, y: &Q, p: u64, e: u32) -> bool {
    md(&(x - y), p, e).is_zero()
}

pub fn harmonic(n: u64, r: u32) -> Q {
    (1..=n as i64).map(|k| Q::new(BigInt::one(), BigInt::from(k).pow(r))).sum()
}

pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binom_q(a: &Q, k: u64) -> Q {
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * (a - qi(i as i64)) / qi(i as i64 + 1);
    }
    acc
}

pub fn pow2(e: u32) -> Q {
    Q::from_integer(BigInt::from(2).pow(e))
}

/// `(b^{p-1} - 1)/p`.
pub fn fermat(b: i64, p: u64) -> Q {
    Q::new(BigInt::from(b).pow(p as u32 - 1) - 1, BigInt::from(p))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Brute-force `p = x^2 + d y^2` with `x, y > 0`.
pub fn rep(p: u64, d: u64) -> Option<(u64, u64)> {
    (1..).take_while(|y| d * y * y < p).find_map(|y| {
        let r = p - d * y * y;
        let x = (r as f64).sqrt() as u64;
        (0..=2).map(|i| x.saturating_sub(1) + i).find(|&x| x > 0 && x * x == r).map(|x| (x, y))
    })
}
