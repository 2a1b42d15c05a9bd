//! Truncated p-adic arithmetic on valued residues.
//!
//! A nonzero value is stored as `p^v * u` where `u` is a unit known modulo
//! `p^prec`. Zero is its own variant: either exact, or known only modulo
//! `p^abs` after cancellation ate every attained digit.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ValuedResidue {
    /// `abs == None` is exact zero; `Some(a)` means zero modulo `p^a`.
    Zero { abs: Option<i64> },
    Unit { v: i64, u: BigUint, prec: u32 },
}

impl ValuedResidue {
    pub fn is_zero(&self) -> bool {
        matches!(self, ValuedResidue::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, ValuedResidue::Zero { abs: None })
    }

    /// Valuation of a nonzero value; for an inexact zero, the exponent it is known to.
    pub fn valuation(&self) -> Option<i64> {
        match self {
            ValuedResidue::Zero { abs } => *abs,
            ValuedResidue::Unit { v, .. } => Some(*v),
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match self {
            ValuedResidue::Unit { u, .. } => Some(u),
            _ => None,
        }
    }

    /// Relative precision in digits (0 for any zero).
    pub fn precision(&self) -> u32 {
        match self {
            ValuedResidue::Unit { prec, .. } => *prec,
            _ => 0,
        }
    }

    /// Absolute precision: the value is known modulo `p^abs`. `None` when exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match self {
            ValuedResidue::Zero { abs } => *abs,
            ValuedResidue::Unit { v, prec, .. } => Some(v + *prec as i64),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PadicContext {
    p: u64,
    n: u32,
    pb: BigUint,
    pows: Vec<BigUint>,
}

/// Builds a context for prime `p` carrying `n` digits of relative precision.
pub fn make_context(p: u64, n: u32) -> Result<PadicContext> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    if n < 1 {
        return Err(Error::BadPrecision);
    }
    let pb = BigUint::from(p);
    let mut pows = Vec::with_capacity(n as usize + 1);
    let mut acc = BigUint::one();
    for _ in 0..=n {
        pows.push(acc.clone());
        acc *= &pb;
    }
    Ok(PadicContext { p, n, pb, pows })
}

/// Default working precision for checks modulo `p^e`.
pub fn default_precision(e: u32) -> u32 {
    6.max(e + 3)
}

type VR = ValuedResidue;

impl PadicContext {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    /// `p^k` as a big integer.
    pub fn p_pow(&self, k: u32) -> BigUint {
        match self.pows.get(k as usize) {
            Some(x) => x.clone(),
            None => self.pb.pow(k),
        }
    }

    fn pref(&self, k: u32) -> &BigUint {
        &self.pows[k as usize]
    }

    pub fn zero(&self) -> VR {
        VR::Zero { abs: None }
    }

    pub fn one(&self) -> VR {
        VR::Unit { v: 0, u: BigUint::one(), prec: self.n }
    }

    /// Splits off the p-part of a nonzero magnitude.
    fn split(&self, mut m: BigUint) -> (i64, BigUint) {
        let mut v = 0;
        if let Some(small) = m.to_u64() {
            let mut s = small;
            while s % self.p == 0 {
                s /= self.p;
                v += 1;
            }
            return (v, BigUint::from(s));
        }
        loop {
            let (q, r) = m.div_rem(&self.pb);
            if !r.is_zero() {
                return (v, m);
            }
            m = q;
            v += 1;
        }
    }

    pub fn from_int(&self, n: i64) -> VR {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> VR {
        assert!(den != 0, "zero denominator");
        self.from_rational(&BigRational::new(num.into(), den.into()))
    }

    pub fn from_bigint(&self, n: &BigInt) -> VR {
        if n.is_zero() {
            return self.zero();
        }
        let (v, u) = self.split(n.magnitude().clone());
        let m = self.pref(self.n);
        let mut u = u % m;
        if n.sign() == Sign::Minus {
            u = m - u;
        }
        VR::Unit { v, u, prec: self.n }
    }

    pub fn from_rational(&self, q: &BigRational) -> VR {
        if q.numer().is_zero() {
            return self.zero();
        }
        let (va, a) = self.split(q.numer().magnitude().clone());
        let (vb, b) = self.split(q.denom().magnitude().clone());
        let m = self.pref(self.n);
        let inv = (b % m).modinv(m).expect("unit denominator");
        let mut u = (a % m) * inv % m;
        if q.is_negative() {
            u = m - u;
        }
        VR::Unit { v: va - vb, u, prec: self.n }
    }

    /// Builds a value from `s` known modulo `p^m`, scaled by `p^v`.
    fn normalize(&self, v: i64, s: BigUint, m: u32) -> VR {
        if m == 0 {
            return VR::Zero { abs: Some(v) };
        }
        let s = s % self.pref(m);
        if s.is_zero() {
            return VR::Zero { abs: Some(v + m as i64) };
        }
        let (c, u) = self.split(s);
        let prec = m - c as u32;
        VR::Unit { v: v + c, u: u % self.pref(prec), prec }
    }

    pub fn add(&self, x: &VR, y: &VR) -> VR {
        if x.is_exact_zero() {
            return y.clone();
        }
        if y.is_exact_zero() {
            return x.clone();
        }
        let abs = x.abs_precision().unwrap().min(y.abs_precision().unwrap());
        let vmin = match (x, y) {
            (VR::Unit { v: a, .. }, VR::Unit { v: b, .. }) => *a.min(b),
            (VR::Unit { v, .. }, _) | (_, VR::Unit { v, .. }) => *v,
            _ => return VR::Zero { abs: Some(abs) },
        };
        if abs <= vmin {
            return VR::Zero { abs: Some(abs) };
        }
        let m = (abs - vmin) as u32;
        let mut s = BigUint::zero();
        for t in [x, y] {
            if let VR::Unit { v, u, .. } = t {
                let shift = (v - vmin) as u32;
                if shift < m {
                    s += u * self.pref(shift);
                }
            }
        }
        self.normalize(vmin, s, m)
    }

    pub fn neg(&self, x: &VR) -> VR {
        match x {
            VR::Zero { .. } => x.clone(),
            VR::Unit { v, u, prec } => {
                VR::Unit { v: *v, u: self.pref(*prec) - u, prec: *prec }
            }
        }
    }

    pub fn sub(&self, x: &VR, y: &VR) -> VR {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &VR, y: &VR) -> VR {
        match (x, y) {
            (VR::Zero { abs: None }, _) | (_, VR::Zero { abs: None }) => self.zero(),
            (VR::Zero { abs: Some(a) }, VR::Zero { abs: Some(b) }) => VR::Zero { abs: Some(a + b) },
            (VR::Zero { abs: Some(a) }, VR::Unit { v, .. })
            | (VR::Unit { v, .. }, VR::Zero { abs: Some(a) }) => VR::Zero { abs: Some(a + v) },
            (VR::Unit { v: va, u: ua, prec: pa }, VR::Unit { v: vb, u: ub, prec: pb }) => {
                let prec = *pa.min(pb);
                VR::Unit { v: va + vb, u: ua * ub % self.pref(prec), prec }
            }
        }
    }

    pub fn inv(&self, x: &VR) -> Result<VR> {
        match x {
            VR::Zero { abs: None } => Err(Error::DivisionByZero),
            VR::Zero { .. } => Err(Error::PrecisionExhausted),
            VR::Unit { v, u, prec } => {
                let m = self.pref(*prec);
                Ok(VR::Unit { v: -v, u: u.modinv(m).expect("unit"), prec: *prec })
            }
        }
    }

    pub fn div(&self, x: &VR, y: &VR) -> Result<VR> {
        let yi = self.inv(y)?;
        Ok(self.mul(x, &yi))
    }

    pub fn pow(&self, x: &VR, e: i64) -> Result<VR> {
        if e == 0 {
            return Ok(self.one());
        }
        if e < 0 {
            return self.pow(&self.inv(x)?, -e);
        }
        Ok(match x {
            VR::Zero { abs: None } => self.zero(),
            VR::Zero { abs: Some(a) } => VR::Zero { abs: Some(a * e) },
            VR::Unit { v, u, prec } => {
                let m = self.pref(*prec);
                VR::Unit { v: v * e, u: u.modpow(&BigUint::from(e as u64), m), prec: *prec }
            }
        })
    }

    /// Reduction of a p-adic integer to `[0, p^e)`.
    pub fn reduce_mod(&self, x: &VR, e: u32) -> Result<BigUint> {
        match x {
            VR::Zero { abs: None } => Ok(BigUint::zero()),
            VR::Zero { abs: Some(a) } => {
                if *a >= e as i64 {
                    Ok(BigUint::zero())
                } else {
                    Err(Error::PrecisionExhausted)
                }
            }
            VR::Unit { v, u, prec } => {
                if *v < 0 {
                    return Err(Error::NegativeValuation);
                }
                if *v >= e as i64 {
                    return Ok(BigUint::zero());
                }
                if v + (*prec as i64) < e as i64 {
                    return Err(Error::PrecisionExhausted);
                }
                let m = self.p_pow(e);
                Ok(u * self.p_pow(*v as u32) % m)
            }
        }
    }

    /// Whether `x` is divisible by `p^e`, or an error if too few digits are known.
    pub fn vanishes_mod(&self, x: &VR, e: i64) -> Result<bool> {
        match x {
            VR::Zero { abs: None } => Ok(true),
            VR::Zero { abs: Some(a) } => {
                if *a >= e {
                    Ok(true)
                } else {
                    Err(Error::PrecisionExhausted)
                }
            }
            VR::Unit { v, .. } => Ok(*v >= e),
        }
    }

    /// Human-readable residue: decimal mod `p^e` for integers, `r/p^k` otherwise.
    pub fn display_mod(&self, x: &VR, e: u32) -> String {
        match self.reduce_mod(x, e) {
            Ok(r) => r.to_string(),
            Err(Error::NegativeValuation) => {
                let (v, u, prec) = match x {
                    VR::Unit { v, u, prec } => (*v, u, *prec),
                    _ => unreachable!(),
                };
                let k = (-v) as u32;
                let digits = (e + k).min(prec);
                format!("{}/{}^{}", u % self.p_pow(digits), self.p, k)
            }
            Err(_) => "?".to_string(),
        }
    }
}

/// Least nonnegative residue of `a` modulo `p`.
pub fn residue_index(p: u64, a: &BigRational) -> Result<u64> {
    let pb = BigInt::from(p);
    if (a.denom() % &pb).is_zero() {
        return Err(Error::NotPAdicInteger);
    }
    let num = a.numer().mod_floor(&pb);
    let den = a.denom().mod_floor(&pb);
    let den_inv = den
        .magnitude()
        .modinv(pb.magnitude())
        .expect("unit denominator");
    let r = (num.magnitude() * den_inv) % pb.magnitude();
    Ok(r.to_u64().unwrap())
}

/// `(a - <a>_p) / p`, exact.
pub fn a_prime(p: u64, a: &BigRational) -> Result<BigRational> {
    let r = residue_index(p, a)?;
    let pb = BigInt::from(p);
    Ok((a - BigRational::from_integer(r.into())) / BigRational::from_integer(pb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn context_errors() {
        assert_eq!(make_context(9, 4).unwrap_err(), Error::CompositeModulus(9));
        assert_eq!(make_context(7, 0).unwrap_err(), Error::BadPrecision);
    }

    #[test]
    fn rational_embedding() {
        let c = make_context(7, 4).unwrap();
        let x = c.from_rational(&q(49, 3));
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(c.reduce_mod(&c.from_rational(&q(-1, 8)), 3).unwrap(), BigUint::from(300u32));
        assert_eq!(c.reduce_mod(&c.from_ratio(1, 7), 2), Err(Error::NegativeValuation));
    }

    #[test]
    fn cancellation_drops_digits() {
        let c = make_context(5, 4).unwrap();
        let s = c.add(&c.from_int(3), &c.from_int(2));
        assert_eq!(s, ValuedResidue::Unit { v: 1, u: BigUint::one(), prec: 3 });
        let z = c.add(&c.from_ratio(1, 5), &c.from_ratio(-1, 5));
        assert!(z.is_zero());
        assert_eq!(c.reduce_mod(&z, 3).unwrap(), BigUint::zero());
        assert_eq!(c.reduce_mod(&z, 4), Err(Error::PrecisionExhausted));
    }

    #[test]
    fn division() {
        let c = make_context(5, 4).unwrap();
        assert_eq!(c.div(&c.one(), &c.zero()), Err(Error::DivisionByZero));
        let z = c.sub(&c.one(), &c.one());
        assert_eq!(c.div(&c.one(), &z), Err(Error::PrecisionExhausted));
        let x = c.div(&c.from_int(10), &c.from_int(25)).unwrap();
        assert_eq!(x, c.from_ratio(2, 5));
    }

    #[test]
    fn residue_index_and_shift() {
        assert_eq!(residue_index(13, &q(-1, 6)).unwrap(), 2);
        let ap = a_prime(13, &q(-1, 6)).unwrap();
        assert_eq!(ap, q(-1, 6));
        assert_eq!(&ap * (&ap + q(1, 1)), q(-5, 36));
        assert_eq!(residue_index(5, &q(1, 5)), Err(Error::NotPAdicInteger));
    }
}
