mod common;

use common::*;
use common::suites;
use num_bigint::BigInt;
use wzcong::padic::make_context;
use wzcong::quadform::represent;
use wzcong::seqlib::{binom_rational, euler_mod_p, u_mod_p};

#[test]
fn lemma_2_4_suite() {
    primes(5, 499).into_iter().try_for_each(suites::lemma_2_4).unwrap();
}

#[test]
fn lemma_3_3_suite() {
    primes(5, 499).into_iter().try_for_each(suites::lemma_3_3).unwrap();
}

#[test]
fn central_binomial_harmonic_sums() {
    primes(5, 499).into_iter().try_for_each(suites::central_binomial_harmonic).unwrap();
}

#[test]
fn wolstenholme() {
    primes(5, 499).into_iter().try_for_each(suites::wolstenholme).unwrap();
}

#[test]
fn spot_values() {
    assert_eq!(euler_mod_p(4, 101), 5);
    assert_eq!(u_mod_p(4, 101), 22);
    assert_eq!(u_mod_p(2, 101), 99);
}

#[test]
fn product_identities() {
    let cases: [(Q, Q, fn(u64) -> Q); 3] = [
        (q(-1, 3), q(-2, 3), |k| Q::new(binom(2 * k, k) * binom(3 * k, k), BigInt::from(27).pow(k as u32))),
        (q(-1, 4), q(-3, 4), |k| Q::new(binom(2 * k, k) * binom(4 * k, 2 * k), BigInt::from(64).pow(k as u32))),
        (q(-1, 6), q(-5, 6), |k| Q::new(binom(3 * k, k) * binom(6 * k, 3 * k), BigInt::from(432).pow(k as u32))),
    ];
    for p in [7u64, 11, 13, 29, 31, 97] {
        let ctx = make_context(p, 7).unwrap();
        for (a, b, exact) in &cases {
            for k in 0..p {
                let lhs = ctx.mul(&binom_rational(&ctx, a, k).unwrap(), &binom_rational(&ctx, b, k).unwrap());
                assert_eq!(lhs, ctx.from_rational(&exact(k)), "{a} {b} k={k} p={p}");
                assert_eq!(binom_q(a, k) * binom_q(b, k), exact(k));
            }
        }
    }
}

#[test]
fn binomial_facts_for_quadratic_forms() {
    for p in primes(5, 499) {
        if p % 3 == 1 {
            let (x, _) = represent(p, 3).unwrap();
            let b = binom((p - 1) / 2, (p - 1) / 6);
            assert!(cong(&Q::from_integer(&b * &b), &qi(4 * (x * x) as i64), p, 1), "p = x^2+3y^2, {p}");
        }
        if p % 8 == 1 {
            let (x, _) = represent(p, 2).unwrap();
            let b = binom((p - 1) / 2, (p - 1) / 8);
            assert!(cong(&Q::from_integer(&b * &b), &qi(4 * (x * x) as i64), p, 1), "p = x^2+2y^2, {p}");
        }
    }
}
