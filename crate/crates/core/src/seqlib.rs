//! Harmonic numbers, Fermat quotients, Euler-type sequences mod p, binomials
//! and the aggregate constants R1, R2, R3, R7.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::padic::{PadicContext, ValuedResidue};

type VR = ValuedResidue;

/// `H_n^{(r)} = sum_{k=1}^n 1/k^r` for `n < p`.
pub fn harmonic(ctx: &PadicContext, n: u64, r: u32) -> Result<VR> {
    let p = ctx.prime();
    if n >= p || r == 0 {
        return Err(Error::OutOfRange);
    }
    let m = ctx.p_pow(ctx.precision());
    let mut s = BigUint::from(0u32);
    for k in 1..=n {
        let inv = BigUint::from(k).modinv(&m).expect("unit");
        s += inv.modpow(&BigUint::from(r), &m);
    }
    let s = BigInt::from(s % &m);
    Ok(ctx.from_bigint(&s).truncated(ctx))
}

impl ValuedResidue {
    /// Forgets any digits at or above `p^N` for a value known as an integer residue mod `p^N`.
    fn truncated(self, ctx: &PadicContext) -> VR {
        let n = ctx.precision() as i64;
        match self {
            VR::Zero { .. } => VR::Zero { abs: Some(n) },
            VR::Unit { v, u, .. } => {
                if v >= n {
                    VR::Zero { abs: Some(n) }
                } else {
                    let prec = (n - v) as u32;
                    VR::Unit { v, u: u % ctx.p_pow(prec), prec }
                }
            }
        }
    }
}

/// `q_p(b) = (b^{p-1} - 1) / p`.
pub fn fermat_quotient(ctx: &PadicContext, b: i64) -> Result<VR> {
    let p = ctx.prime();
    if b.rem_euclid(p as i64) == 0 {
        return Err(Error::NotAUnit);
    }
    let num: BigInt = Pow::pow(BigInt::from(b), (p - 1) as u32) - 1;
    Ok(ctx.from_bigint(&(num / BigInt::from(p))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum SeqKind {
    Euler,
    U,
}

/// Concurrent write-once cache of sequence tables keyed by prime.
#[derive(Default)]
pub struct SeqCache {
    tables: RwLock<HashMap<(u64, SeqKind), Arc<Vec<u64>>>>,
}

impl SeqCache {
    pub fn global() -> &'static SeqCache {
        static CACHE: Lazy<SeqCache> = Lazy::new(SeqCache::default);
        &CACHE
    }

    fn table(&self, p: u64, kind: SeqKind) -> Arc<Vec<u64>> {
        if let Some(t) = self.tables.read().unwrap().get(&(p, kind)) {
            return t.clone();
        }
        let t = Arc::new(seq_table(p, kind, p as usize));
        let mut w = self.tables.write().unwrap();
        w.entry((p, kind)).or_insert(t).clone()
    }

    pub fn len(&self) -> usize {
        self.tables.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Values `X_0..X_{len-1}` mod p of `X_n = -c * sum_{k>=1} C(n,2k) X_{n-2k}`.
fn seq_table(p: u64, kind: SeqKind, len: usize) -> Vec<u64> {
    let c = match kind {
        SeqKind::Euler => 1,
        SeqKind::U => 2,
    };
    let mut out = vec![0u64; len];
    let mut row = vec![1u64];
    for n in 0..len {
        if n > 0 {
            let mut next = vec![1u64; n + 1];
            for k in 1..n {
                next[k] = (row[k - 1] + row[k]) % p;
            }
            row = next;
        }
        if n == 0 {
            out[0] = 1 % p;
            continue;
        }
        if n % 2 == 1 {
            continue;
        }
        let mut s = 0u64;
        for k in 1..=n / 2 {
            s = (s + row[2 * k] * out[n - 2 * k]) % p;
        }
        out[n] = (p - (c * s) % p) % p;
    }
    out
}

fn seq_mod_p(n: u64, p: u64, kind: SeqKind) -> u64 {
    if n < p {
        SeqCache::global().table(p, kind)[n as usize]
    } else {
        seq_table(p, kind, n as usize + 1)[n as usize]
    }
}

/// Euler number `E_n` mod p.
pub fn euler_mod_p(n: u64, p: u64) -> u64 {
    seq_mod_p(n, p, SeqKind::Euler)
}

/// `U_n` mod p, with `U_0 = 1` and `U_n = -2 sum C(n,2k) U_{n-2k}`.
pub fn u_mod_p(n: u64, p: u64) -> u64 {
    seq_mod_p(n, p, SeqKind::U)
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let t = BigUint::from(r).modpow(&BigUint::from((p - 1) / 2), &BigUint::from(p));
    if t.is_one() {
        1
    } else {
        -1
    }
}

/// `C(a, k)` for rational `a` and `k < p`.
pub fn binom_rational(ctx: &PadicContext, a: &BigRational, k: u64) -> Result<VR> {
    if k >= ctx.prime() {
        return Err(Error::OutOfRange);
    }
    let mut num = BigRational::one();
    let mut den = BigInt::one();
    let mut acc = ctx.one();
    for i in 0..k {
        let f = a - BigRational::from_integer(i.into());
        num *= f;
        den *= BigInt::from(i + 1);
        // keep the numbers small by folding into the residue every few steps
        if i % 16 == 15 {
            acc = ctx.mul(&acc, &ctx.from_rational(&(num / BigRational::from_integer(den))));
            num = BigRational::one();
            den = BigInt::one();
        }
    }
    Ok(ctx.mul(&acc, &ctx.from_rational(&(num / BigRational::from_integer(den)))))
}

/// Exact big binomial `C(n, r)`.
pub fn binom_exact(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `C(n, r)` embedded with its p-valuation extracted.
pub fn binom_integer(ctx: &PadicContext, n: u64, r: u64) -> VR {
    ctx.from_bigint(&BigInt::from(binom_exact(n, r)))
}

fn pow2_minus_one(p: u64, b: u64) -> BigInt {
    Pow::pow(BigInt::from(b), (p - 1) as u32) - 1
}

/// `R_1(p) = (2p + 2 - 2^{p-1}) C((p-1)/2, [p/4])^2`.
pub fn r1(ctx: &PadicContext) -> VR {
    let p = ctx.prime();
    let c = BigInt::from(binom_exact((p - 1) / 2, p / 4));
    let lead = BigInt::from(2 * p + 1) - pow2_minus_one(p, 2);
    ctx.from_bigint(&(lead * &c * &c))
}

/// `R_2(p)`, built on `C((p-1)/2, [p/8])^2` and `H_{[p/8]}`.
pub fn r2(ctx: &PadicContext) -> Result<VR> {
    let p = ctx.prime();
    let s: i64 = if ((p - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let c = BigInt::from(binom_exact((p - 1) / 2, p / 8));
    let pre = ctx.from_int(5 - 4 * s);
    let base = BigInt::from(1) + BigInt::from(4 + 2 * s) * BigInt::from(p) - 4 * pow2_minus_one(p, 2);
    let h = if p / 8 == 0 { ctx.zero() } else { harmonic(ctx, p / 8, 1)? };
    let corr = ctx.mul(&ctx.from_ratio(p as i64, 2), &h);
    let mid = ctx.sub(&ctx.from_bigint(&base), &corr);
    Ok(ctx.mul(&ctx.mul(&pre, &mid), &ctx.from_bigint(&(&c * &c))))
}

/// `R_3(p)`, built on `C((p-1)/2, [p/6])^2` and the quotients of 2 and 3.
pub fn r3(ctx: &PadicContext) -> VR {
    let p = ctx.prime();
    let c = BigInt::from(binom_exact((p - 1) / 2, p / 6));
    let q = BigRational::from_integer(BigInt::from(1 + 2 * p))
        + BigRational::new(4.into(), 3.into()) * BigRational::from_integer(pow2_minus_one(p, 2))
        - BigRational::new(3.into(), 2.into()) * BigRational::from_integer(pow2_minus_one(p, 3));
    ctx.from_rational(&(q * BigRational::from_integer(&c * &c)))
}

/// `R_7(p) = sum_{k=0}^{(p-1)/2} C(2k,k)^3 / (k+1)`.
pub fn r7(ctx: &PadicContext) -> VR {
    let p = ctx.prime();
    let mut s = ctx.zero();
    for k in 0..=(p - 1) / 2 {
        let c = BigInt::from(binom_exact(2 * k, k));
        let t = BigRational::new(&c * &c * &c, BigInt::from(k + 1));
        s = ctx.add(&s, &ctx.from_rational(&t));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::make_context;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn harmonic_values() {
        let c = make_context(7, 4).unwrap();
        assert_eq!(harmonic(&c, 3, 1).unwrap(), c.from_ratio(11, 6));
        assert_eq!(harmonic(&c, 2, 2).unwrap(), c.from_ratio(5, 4));
        assert_eq!(harmonic(&c, 7, 1), Err(Error::OutOfRange));
        // Wolstenholme: H_{p-1} = 0 mod p^2
        let c = make_context(11, 5).unwrap();
        assert!(c.vanishes_mod(&harmonic(&c, 10, 1).unwrap(), 2).unwrap());
    }

    #[test]
    fn fermat_quotients() {
        let c = make_context(7, 3).unwrap();
        assert_eq!(c.reduce_mod(&fermat_quotient(&c, 2).unwrap(), 1).unwrap(), BigUint::from(2u32));
        assert_eq!(fermat_quotient(&c, 2).unwrap(), c.from_int(9));
        let c = make_context(5, 3).unwrap();
        assert_eq!(fermat_quotient(&c, 2).unwrap(), c.from_int(3));
        assert_eq!(fermat_quotient(&c, 10), Err(Error::NotAUnit));
    }

    #[test]
    fn sequences() {
        assert_eq!(euler_mod_p(2, 101), 100);
        assert_eq!(euler_mod_p(4, 101), 5);
        assert_eq!(euler_mod_p(6, 101), 101 - 61);
        assert_eq!(u_mod_p(2, 101), 99);
        assert_eq!(u_mod_p(4, 101), 22);
        assert_eq!(euler_mod_p(3, 101), 0);
        assert_eq!(euler_mod_p(200, 101), seq_table(101, SeqKind::Euler, 201)[200]);
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(14, 7), 0);
        assert_eq!(legendre(-1, 13), 1);
    }

    #[test]
    fn binomials() {
        let c = make_context(13, 5).unwrap();
        let b = binom_rational(&c, &q(-1, 2), 3).unwrap();
        assert_eq!(b, c.from_ratio(-5, 16));
        assert_eq!(binom_rational(&c, &q(1, 2), 13), Err(Error::OutOfRange));
        let b = binom_integer(&c, 20, 10);
        assert_eq!(b.valuation(), Some(1));
        assert_eq!(binom_exact(10, 3), BigUint::from(120u32));
    }

    #[test]
    fn aggregates() {
        let c = make_context(5, 6).unwrap();
        assert_eq!(r7(&c), c.from_int(77));
        let c3 = make_context(3, 6).unwrap();
        assert_eq!(r1(&c3), c3.from_int(4));
        assert_eq!(r2(&c).unwrap(), c.from_int(-29));
    }
}
