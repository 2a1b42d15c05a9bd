//! Truncated hypergeometric sums `sum_k T(k) w(k)` over the term families used
//! throughout, evaluated in valued-residue arithmetic or exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::padic::{PadicContext, ValuedResidue};
use crate::seqlib::{binom_exact, binom_rational};

type VR = ValuedResidue;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermFamily {
    /// `C(a,k) C(-1-a,k) C(2k,k) / 4^k`
    GeneralA(BigRational),
    /// `C(2k,k)^3 / m^k`
    CentralCube(i64),
    /// `C(2k,k)^2 C(3k,k) / m^k`
    CentralSq3k(i64),
    /// `C(2k,k)^2 C(4k,2k) / m^k`
    CentralSq4k2k(i64),
    /// `C(2k,k) C(3k,k) C(6k,3k) / m^k`
    Mixed6k(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    /// `k^j`
    KPow(u32),
    /// `1 / (alpha k + beta)^j`
    InvLinear { alpha: BigRational, beta: BigRational, j: u32 },
}

impl Weight {
    pub fn one() -> Weight {
        Weight::KPow(0)
    }

    pub fn inv(alpha: i64, beta: i64, j: u32) -> Weight {
        Weight::InvLinear { alpha: int(alpha), beta: int(beta), j }
    }

    /// `1 / (k + beta)^j` with rational shift.
    pub fn inv_shift(beta: BigRational, j: u32) -> Weight {
        Weight::InvLinear { alpha: BigRational::one(), beta, j }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UpperBound {
    PMinus1,
    PMinus2,
    PMinus3,
    PMinus4,
    Half,
}

impl UpperBound {
    /// Largest summation index for prime `p`; negative means an empty sum.
    pub fn index(self, p: u64) -> i64 {
        let p = p as i64;
        match self {
            UpperBound::PMinus1 => p - 1,
            UpperBound::PMinus2 => p - 2,
            UpperBound::PMinus3 => p - 3,
            UpperBound::PMinus4 => p - 4,
            UpperBound::Half => (p - 1) / 2,
        }
    }

    pub fn parse(s: &str) -> Option<UpperBound> {
        Some(match s {
            "p-1" => UpperBound::PMinus1,
            "p-2" => UpperBound::PMinus2,
            "p-3" => UpperBound::PMinus3,
            "p-4" => UpperBound::PMinus4,
            "(p-1)/2" | "half" => UpperBound::Half,
            _ => return None,
        })
    }
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpperBound::PMinus1 => "p-1",
            UpperBound::PMinus2 => "p-2",
            UpperBound::PMinus3 => "p-3",
            UpperBound::PMinus4 => "p-4",
            UpperBound::Half => "(p-1)/2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SumSpec {
    pub family: TermFamily,
    pub weight: Weight,
    pub upper: UpperBound,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Exact `C(x, k)` for rational `x`; zero for negative `k`.
pub fn rational_binom(x: &BigRational, k: i64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    let mut num = BigRational::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= x - int(i);
        den *= BigInt::from(i + 1);
    }
    num / BigRational::from_integer(den)
}

/// Direct evaluation of `T(k)` from its binomials.
pub fn term_value(ctx: &PadicContext, family: &TermFamily, k: u64) -> Result<VR> {
    let c = |n: u64, r: u64| ctx.from_bigint(&BigInt::from(binom_exact(n, r)));
    let mpow = |m: i64| ctx.pow(&ctx.from_int(m), k as i64);
    Ok(match family {
        TermFamily::GeneralA(a) => {
            let x = binom_rational(ctx, a, k)?;
            let y = binom_rational(ctx, &(-int(1) - a), k)?;
            let t = ctx.mul(&ctx.mul(&x, &y), &c(2 * k, k));
            ctx.div(&t, &mpow(4)?)?
        }
        TermFamily::CentralCube(m) => {
            let b = c(2 * k, k);
            ctx.div(&ctx.mul(&ctx.mul(&b, &b), &b), &mpow(*m)?)?
        }
        TermFamily::CentralSq3k(m) => {
            let b = c(2 * k, k);
            ctx.div(&ctx.mul(&ctx.mul(&b, &b), &c(3 * k, k)), &mpow(*m)?)?
        }
        TermFamily::CentralSq4k2k(m) => {
            let b = c(2 * k, k);
            ctx.div(&ctx.mul(&ctx.mul(&b, &b), &c(4 * k, 2 * k)), &mpow(*m)?)?
        }
        TermFamily::Mixed6k(m) => {
            let t = ctx.mul(&ctx.mul(&c(2 * k, k), &c(3 * k, k)), &c(6 * k, 3 * k));
            ctx.div(&t, &mpow(*m)?)?
        }
    })
}

fn prod(lo: i64, n: i64, step: i64) -> BigInt {
    (0..n).fold(BigInt::one(), |acc, i| acc * BigInt::from(lo + i * step))
}

/// Ratio `T(k+1) / T(k)` as an exact rational.
fn term_ratio(family: &TermFamily, k: i64) -> BigRational {
    let r = |num: BigInt, den: BigInt, m: i64| BigRational::new(num, den * BigInt::from(m));
    // C(2k+2,k+1)/C(2k,k) = 2(2k+1)/(k+1)
    let c2 = || (BigInt::from(2 * (2 * k + 1)), BigInt::from(k + 1));
    match family {
        TermFamily::GeneralA(a) => {
            let (n2, d2) = c2();
            (a - int(k)) * (-int(1) - a - int(k))
                / int((k + 1) * (k + 1))
                * BigRational::new(n2, d2 * 4)
        }
        TermFamily::CentralCube(m) => {
            let (n, d) = c2();
            r(Pow::pow(n, 3u32), Pow::pow(d, 3u32), *m)
        }
        TermFamily::CentralSq3k(m) => {
            let (n, d) = c2();
            // C(3k+3,k+1)/C(3k,k) = (3k+1)(3k+2)(3k+3) / ((k+1)(2k+1)(2k+2))
            let n3 = prod(3 * k + 1, 3, 1);
            let d3 = BigInt::from(k + 1) * prod(2 * k + 1, 2, 1);
            r(&n * &n * n3, &d * &d * d3, *m)
        }
        TermFamily::CentralSq4k2k(m) => {
            let (n, d) = c2();
            let n4 = prod(4 * k + 1, 4, 1);
            let d4 = Pow::pow(prod(2 * k + 1, 2, 1), 2u32);
            r(&n * &n * n4, &d * &d * d4, *m)
        }
        TermFamily::Mixed6k(m) => {
            let (n, d) = c2();
            let n3 = prod(3 * k + 1, 3, 1);
            let d3 = BigInt::from(k + 1) * prod(2 * k + 1, 2, 1);
            let n6 = prod(6 * k + 1, 6, 1);
            let d6 = Pow::pow(prod(3 * k + 1, 3, 1), 2u32);
            r(n * n3 * n6, d * d3 * d6, *m)
        }
    }
}

/// `T(0..=kmax)` built incrementally from term ratios.
pub fn term_table(ctx: &PadicContext, family: &TermFamily, kmax: i64) -> Vec<VR> {
    let mut out = Vec::with_capacity((kmax + 1).max(0) as usize);
    if kmax < 0 {
        return out;
    }
    let mut t = ctx.one();
    out.push(t.clone());
    for k in 0..kmax {
        if !t.is_exact_zero() {
            t = ctx.mul(&t, &ctx.from_rational(&term_ratio(family, k)));
        }
        out.push(t.clone());
    }
    out
}

pub fn weight_value(ctx: &PadicContext, w: &Weight, k: i64) -> Result<VR> {
    match w {
        Weight::KPow(0) => Ok(ctx.one()),
        Weight::KPow(j) => ctx.pow(&ctx.from_int(k), *j as i64),
        Weight::InvLinear { alpha, beta, j } => {
            let d = alpha * int(k) + beta;
            if d.is_zero() {
                return Err(Error::ExactPole(k));
            }
            ctx.pow(&ctx.from_rational(&d), -(*j as i64))
        }
    }
}

/// `sum_{k=0}^{upper} terms[k] w(k)` over a precomputed table.
pub fn weighted_sum(ctx: &PadicContext, terms: &[VR], w: &Weight, upper: i64) -> Result<VR> {
    let mut s = ctx.zero();
    for k in 0..=upper {
        let t = &terms[k as usize];
        if t.is_exact_zero() {
            continue;
        }
        s = ctx.add(&s, &ctx.mul(t, &weight_value(ctx, w, k)?));
    }
    Ok(s)
}

pub fn evaluate(ctx: &PadicContext, spec: &SumSpec) -> Result<VR> {
    let upper = spec.upper.index(ctx.prime());
    let terms = term_table(ctx, &spec.family, upper);
    weighted_sum(ctx, &terms, &spec.weight, upper)
}

/// `S_n(a) = sum_{k=0}^{n-1} C(a,k) C(-1-a,k) C(2k,k) / 4^k`.
pub fn s_n(ctx: &PadicContext, a: &BigRational, n: i64) -> Result<VR> {
    let terms = term_table(ctx, &TermFamily::GeneralA(a.clone()), n - 1);
    weighted_sum(ctx, &terms, &Weight::one(), n - 1)
}

/// Exact rational term, computed from scratch.
pub fn exact_term(family: &TermFamily, k: i64) -> BigRational {
    let c = |n: i64, r: i64| BigRational::from_integer(BigInt::from(binom_exact(n as u64, r as u64)));
    let mk = |m: i64| BigRational::from_integer(Pow::pow(BigInt::from(m), k as u32));
    match family {
        TermFamily::GeneralA(a) => {
            rational_binom(a, k) * rational_binom(&(-int(1) - a), k) * c(2 * k, k) / mk(4)
        }
        TermFamily::CentralCube(m) => Pow::pow(c(2 * k, k), 3u32) / mk(*m),
        TermFamily::CentralSq3k(m) => Pow::pow(c(2 * k, k), 2u32) * c(3 * k, k) / mk(*m),
        TermFamily::CentralSq4k2k(m) => Pow::pow(c(2 * k, k), 2u32) * c(4 * k, 2 * k) / mk(*m),
        TermFamily::Mixed6k(m) => c(2 * k, k) * c(3 * k, k) * c(6 * k, 3 * k) / mk(*m),
    }
}

pub fn exact_weight(w: &Weight, k: i64) -> Result<BigRational> {
    match w {
        Weight::KPow(j) => Ok(Pow::pow(int(k), *j)),
        Weight::InvLinear { alpha, beta, j } => {
            let d = alpha * int(k) + beta;
            if d.is_zero() {
                return Err(Error::ExactPole(k));
            }
            Ok(Pow::pow(d, *j).recip())
        }
    }
}

/// Exact rational value of the sum for prime `p`.
pub fn exact_oracle(spec: &SumSpec, p: u64) -> Result<BigRational> {
    let mut s = BigRational::zero();
    for k in 0..=spec.upper.index(p) {
        let t = exact_term(&spec.family, k);
        // a vanishing term contributes nothing, even at a pole of the weight
        if !t.is_zero() {
            s += t * exact_weight(&spec.weight, k)?;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::make_context;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn table_matches_direct_terms() {
        let ctx = make_context(13, 6).unwrap();
        let fams = [
            TermFamily::GeneralA(q(-1, 3)),
            TermFamily::CentralCube(64),
            TermFamily::CentralSq3k(108),
            TermFamily::CentralSq4k2k(-144),
            TermFamily::Mixed6k(1728),
        ];
        for f in &fams {
            let t = term_table(&ctx, f, 12);
            for k in 0..=12 {
                assert_eq!(t[k as usize], term_value(&ctx, f, k).unwrap(), "{f:?} k={k}");
            }
        }
    }

    #[test]
    fn s5_half() {
        let ctx = make_context(5, 6).unwrap();
        let s = s_n(&ctx, &q(1, 2), 5).unwrap();
        assert_eq!(ctx.reduce_mod(&s, 3).unwrap(), 25u32.into());
    }

    #[test]
    fn poles_are_reported() {
        let ctx = make_context(7, 6).unwrap();
        assert_eq!(weight_value(&ctx, &Weight::inv(1, -3, 1), 3), Err(Error::ExactPole(3)));
        assert!(weight_value(&ctx, &Weight::inv(1, 1, 1), 6).unwrap().valuation() == Some(-1));
    }

    #[test]
    fn general_a_integer_truncates() {
        let ctx = make_context(7, 6).unwrap();
        let t = term_table(&ctx, &TermFamily::GeneralA(q(2, 1)), 6);
        assert!(t[3].is_exact_zero() && t[6].is_exact_zero());
        assert!(!t[2].is_zero());
    }
}
