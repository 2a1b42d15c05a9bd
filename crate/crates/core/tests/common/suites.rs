//! Sequence congruence suites, checked from exact rationals.

use super::*;
use wzcong::seqlib::{euler_mod_p, u_mod_p};

fn legendre3(p: u64) -> i64 {
    if p % 3 == 1 {
        1
    } else {
        -1
    }
}

fn sgn4(p: u64) -> i64 {
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

fn ensure(ok: bool, what: &str, p: u64) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{what} at p={p}"))
    }
}

pub fn lemma_2_4(p: u64) -> Result<(), String> {
    let q2 = fermat(2, p);
    let pq = qi(p as i64);
    let e = qi(euler_mod_p(p - 3, p) as i64);
    let s = qi(sgn4(p));
    ensure(cong(&harmonic((p - 1) / 2, 1), &(qi(-2) * &q2 + &pq * &q2 * &q2), p, 2), "H_(p-1)/2", p)?;
    ensure(cong(&harmonic((p - 1) / 2, 2), &qi(0), p, 1), "H2_(p-1)/2", p)?;
    let rhs = qi(-3) * &q2 + q(3, 2) * &pq * &q2 * &q2 - &s * &pq * &e;
    ensure(cong(&harmonic(p / 4, 1), &rhs, p, 2), "H_[p/4]", p)?;
    ensure(cong(&harmonic(p / 4, 2), &(qi(4) * &s * &e), p, 1), "H2_[p/4]", p)
}

pub fn lemma_3_3(p: u64) -> Result<(), String> {
    let q3 = fermat(3, p);
    let pq = qi(p as i64);
    let lu = qi(legendre3(p) * u_mod_p(p - 3, p) as i64);
    let base = q(-3, 2) * &q3 + q(3, 4) * &pq * &q3 * &q3;
    ensure(cong(&harmonic(p / 3, 1), &(&base - &pq * &lu), p, 2), "H_[p/3]", p)?;
    ensure(cong(&harmonic(2 * p / 3, 1), &(&base + qi(2) * &pq * &lu), p, 2), "H_[2p/3]", p)?;
    ensure(cong(&harmonic(p / 3, 2), &(qi(3) * &lu), p, 1), "H2_[p/3]", p)?;
    ensure(cong(&-harmonic(2 * p / 3, 2), &(qi(3) * &lu), p, 1), "H2_[2p/3]", p)
}

/// Sums of `C(2k,k)/(4^k k)` mod p^2 and `C(2k,k)/(4^k k^2)` mod p.
pub fn central_binomial_harmonic(p: u64) -> Result<(), String> {
    let q2 = fermat(2, p);
    let pq = qi(p as i64);
    let mut s1 = qi(0);
    let mut s2 = qi(0);
    for k in 1..p {
        let t = Q::new(binom(2 * k, k), BigInt::from(4).pow(k as u32));
        // reduce each term to keep the rationals small
        let k = qi(k as i64);
        s1 += Q::from_integer(md(&(&t / &k), p, 2));
        s2 += Q::from_integer(md(&(&t / (&k * &k)), p, 1));
    }
    ensure(cong(&s1, &(qi(2) * &q2 - &pq * &q2 * &q2), p, 2), "sum C(2k,k)/(4^k k)", p)?;
    ensure(cong(&s2, &(qi(-2) * &q2 * &q2), p, 1), "sum C(2k,k)/(4^k k^2)", p)
}

pub fn wolstenholme(p: u64) -> Result<(), String> {
    ensure(cong(&harmonic(p - 1, 1), &qi(0), p, 2), "H_(p-1)", p)
}
