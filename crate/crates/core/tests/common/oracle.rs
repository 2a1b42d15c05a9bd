//! Sums recomputed from binomials, independent of the library's term recurrences.

use super::*;
use wzcong::sums::{SumSpec, TermFamily, Weight};

pub fn term(f: &TermFamily, k: u64) -> Q {
    let c = |n, r| binom(n, r);
    let pw = |m: i64| Q::from_integer(BigInt::from(m).pow(k as u32));
    match f {
        TermFamily::GeneralA(a) => {
            binom_q(a, k) * binom_q(&(-qi(1) - a), k) * Q::from_integer(c(2 * k, k)) / pw(4)
        }
        TermFamily::CentralCube(m) => Q::from_integer(c(2 * k, k).pow(3)) / pw(*m),
        TermFamily::CentralSq3k(m) => Q::from_integer(c(2 * k, k).pow(2) * c(3 * k, k)) / pw(*m),
        TermFamily::CentralSq4k2k(m) => Q::from_integer(c(2 * k, k).pow(2) * c(4 * k, 2 * k)) / pw(*m),
        TermFamily::Mixed6k(m) => Q::from_integer(c(2 * k, k) * c(3 * k, k) * c(6 * k, 3 * k)) / pw(*m),
    }
}

/// `None` at a pole.
pub fn weight(w: &Weight, k: u64) -> Option<Q> {
    let kq = qi(k as i64);
    match w {
        Weight::KPow(j) => Some((0..*j).fold(Q::one(), |acc, _| acc * &kq)),
        Weight::InvLinear { alpha, beta, j } => {
            let d = alpha * &kq + beta;
            if d.is_zero() {
                None
            } else {
                Some((0..*j).fold(Q::one(), |acc, _| acc / &d))
            }
        }
    }
}

/// Exact value of the sum; `None` if a nonzero term meets a pole.
pub fn oracle(spec: &SumSpec, p: u64) -> Option<Q> {
    let top = spec.upper.index(p);
    let mut acc = Q::zero();
    for k in 0..=top.max(-1) {
        let t = term(&spec.family, k as u64);
        if !t.is_zero() {
            acc += t * weight(&spec.weight, k as u64)?;
        }
    }
    Some(acc)
}

/// p-adic valuation of a rational.
pub fn vp(x: &Q, p: u64) -> i64 {
    if x.is_zero() {
        return i64::MAX;
    }
    let pb = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut c = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            c += 1;
        }
        c
    };
    count(x.numer().clone()) - count(x.denom().clone())
}
