//! WZ-style certificates checked in exact rational arithmetic.
//!
//! G style: `F(a,k) = G(a,k+1) - G(a,k)`.
//! R style: `F(a,k) = F(a,k+1) R(a,k+1) - F(a,k) R(a,k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::sums::rational_binom;

type Q = BigRational;

/// Division by an exact zero while evaluating a transcribed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pole;

type R = Result<Q, Pole>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    G,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(i64),
    Pole(i64),
}

pub struct Certificate {
    pub id: &'static str,
    pub style: Style,
    /// Integer values of `a` the identity excludes.
    pub excluded: &'static [i64],
    f: fn(&Q, i64) -> R,
    /// `G(a,k)` or `R(a,k)` depending on style.
    gr: fn(&Q, i64) -> R,
    boundary: fn(&Q) -> R,
    sum_lhs: fn(&Q, i64) -> R,
    sum_rhs: fn(&Q, i64) -> R,
}

fn z(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn dv(x: Q, y: Q) -> R {
    if y.is_zero() {
        Err(Pole)
    } else {
        Ok(x / y)
    }
}

fn b(x: &Q, k: i64) -> Q {
    rational_binom(x, k)
}

/// `C(2n,n) / 4^n`.
fn c2(n: i64) -> Q {
    if n < 0 {
        return Q::zero();
    }
    b(&z(2 * n), n) / Q::from_integer(Pow::pow(BigInt::from(4), n as u32))
}

/// `C(a,n) C(-1-a,n) C(2n,n) / 4^n`.
fn t(a: &Q, n: i64) -> Q {
    b(a, n) * b(&(-z(1) - a), n) * c2(n)
}

/// `S_n(a)`.
fn s(a: &Q, n: i64) -> Q {
    (0..n).map(|k| t(a, k)).sum()
}

fn wsum(a: &Q, n: i64, w: impl Fn(i64) -> R) -> R {
    let mut acc = Q::zero();
    for k in 0..n {
        acc += t(a, k) * w(k)?;
    }
    Ok(acc)
}

fn ab(a: &Q) -> Q {
    a * (a + z(1))
}

// --- SEC2: (a+2)^2 S_n(a+2) - (a+1)^2 S_n(a) = G(a,n)

fn sec2_f(a: &Q, k: i64) -> R {
    let a1 = a + z(1);
    let a2 = a + z(2);
    Ok(&a2 * &a2 * t(&a2, k) - &a1 * &a1 * t(a, k))
}

fn sec2_g(a: &Q, k: i64) -> R {
    if k == 0 {
        return Ok(Q::zero());
    }
    let num = (a + z(2)) * (z(2) * a + z(3)) * z(k);
    let den = Q::from_integer(Pow::pow(BigInt::from(4), (k - 1) as u32)) * (a + z(1) + z(k));
    Ok(dv(num, den)? * b(&z(2 * k - 1), k - 1) * b(&(a + z(1)), k - 1) * b(&(-z(3) - a), k - 1))
}

fn sec2_lhs(a: &Q, n: i64) -> R {
    let a1 = a + z(1);
    let a2 = a + z(2);
    Ok(&a2 * &a2 * s(&a2, n) - &a1 * &a1 * s(a, n))
}

fn sec2_rhs(a: &Q, n: i64) -> R {
    sec2_g(a, n)
}

fn sec2_boundary(a: &Q) -> R {
    sec2_g(a, 0)
}

// --- L3.1: weight 1/(k+1)

fn l31_c(a: &Q) -> R {
    dv(a + z(1), a.clone())
}

fn l31_f(a: &Q, n: i64) -> R {
    let inner = dv(z(1), z(n + 1))? - z(1);
    Ok(b(a, n) * b(&(-z(1) - a), n) * inner * c2(n) - l31_c(a)? * t(&(a + z(1)), n))
}

fn l31_r(a: &Q, n: i64) -> R {
    let a1 = a + z(1);
    let den = z(n * n) + z(2) * &a1 * &a1 * z(n) + &a1 * &a1;
    dv(-z(2 * n * n * (n + 1)), den)
}

fn l31_lhs(a: &Q, n: i64) -> R {
    wsum(a, n, |k| dv(z(1), z(k + 1)))
}

fn l31_rhs(a: &Q, n: i64) -> R {
    Ok(s(a, n) + l31_c(a)? * s(&(a + z(1)), n) + l31_f(a, n)? * l31_r(a, n)?)
}

// --- L4.1: weight k

fn l41_f(a: &Q, n: i64) -> R {
    let a1 = a + z(1);
    Ok(t(a, n) * (z(n) - ab(a)) + &a1 * &a1 * t(&a1, n))
}

fn l41_r(a: &Q, n: i64) -> R {
    let a1 = a + z(1);
    let den = z(n * n) - z(2) * &a1 * &a1 * z(n) - &a1 * &a1;
    dv(z(2 * n * n * n), den)
}

fn l41_lhs(a: &Q, n: i64) -> R {
    wsum(a, n, |k| Ok(z(k)))
}

fn l41_rhs(a: &Q, n: i64) -> R {
    let a1 = a + z(1);
    Ok(ab(a) * s(a, n) - &a1 * &a1 * s(&a1, n) + l41_f(a, n)? * l41_r(a, n)?)
}

// --- L5.1: weight 1/(2k-1)

fn l51_c(a: &Q) -> Q {
    z(2) * a * a + z(2) * a + z(1)
}

fn l51_f(a: &Q, n: i64) -> R {
    let a1 = a + z(1);
    Ok(t(a, n) * (dv(z(1), z(2 * n - 1))? + l51_c(a)) + z(2) * &a1 * &a1 * t(&a1, n))
}

fn l51_r(a: &Q, n: i64) -> R {
    let a1 = a + z(1);
    let den = z(n * n) + z(2) * &a1 * &a1 * z(n) - &a1 * &a1;
    dv(-z(2 * n * n * n), den)
}

fn l51_lhs(a: &Q, n: i64) -> R {
    wsum(a, n, |k| dv(z(1), z(2 * k - 1)))
}

fn l51_rhs(a: &Q, n: i64) -> R {
    let a1 = a + z(1);
    Ok(-l51_c(a) * s(a, n) - z(2) * &a1 * &a1 * s(&a1, n) + l51_f(a, n)? * l51_r(a, n)?)
}

// --- L6.1: weight 3k^2 - (2a^2+2a-1)k - a(a+1)

fn l61_f(a: &Q, k: i64) -> R {
    let w = z(3 * k * k) - (z(2) * a * a + z(2) * a - z(1)) * z(k) - ab(a);
    Ok(t(a, k) * w)
}

fn l61_g(a: &Q, k: i64) -> R {
    Ok(z(2 * k * k * k) * t(a, k))
}

fn l61_lhs(a: &Q, n: i64) -> R {
    (0..n).map(|k| l61_f(a, k)).sum()
}

fn l61_rhs(a: &Q, n: i64) -> R {
    l61_g(a, n)
}

fn l61_boundary(a: &Q) -> R {
    l61_g(a, 0)
}

// --- L7.1: weight 15k^3 - (4a^2(a+1)^2 - a(a+1) + 1)k - a(a+1)(2a(a+1)-1)

fn l71_f(a: &Q, k: i64) -> R {
    let x = ab(a);
    let w = z(15 * k * k * k)
        - (z(4) * &x * &x - &x + z(1)) * z(k)
        - &x * (z(2) * &x - z(1));
    Ok(t(a, k) * w)
}

fn l71_g(a: &Q, k: i64) -> R {
    Ok(z(2 * k * k * k) * (z(3 * k) + z(2) * ab(a) - z(4)) * t(a, k))
}

fn l71_lhs(a: &Q, n: i64) -> R {
    (0..n).map(|k| l71_f(a, k)).sum()
}

fn l71_rhs(a: &Q, n: i64) -> R {
    l71_g(a, n)
}

fn l71_boundary(a: &Q) -> R {
    l71_g(a, 0)
}

// --- L8.1: weight 1/(k+2) - 1/(3(k+1)) + 1/(3(a-1)(a+2))

fn l81_w(a: &Q, n: i64) -> R {
    Ok(dv(z(1), z(n + 2))? - dv(z(1), z(3 * (n + 1)))?
        + dv(z(1), z(3) * (a - z(1)) * (a + z(2)))?)
}

fn l81_f(a: &Q, n: i64) -> R {
    Ok(t(a, n) * l81_w(a, n)?)
}

fn l81_r(a: &Q, n: i64) -> R {
    let den = z(n * n) + (z(2) * ab(a) - z(1)) * z(n) + ab(a);
    dv(-z(2 * n * n * (n + 2)), den)
}

fn l81_lhs(a: &Q, n: i64) -> R {
    (0..n).map(|k| l81_f(a, k)).sum()
}

fn l81_rhs(a: &Q, n: i64) -> R {
    Ok(l81_f(a, n)? * l81_r(a, n)?)
}

// --- L9.1: weight 1/(k+1)^2

fn l91_c(a: &Q) -> R {
    dv(z(2) * a * a + z(2) * a - z(1), a * a)
}

fn l91_f(a: &Q, n: i64) -> R {
    let inner = dv(z(1), z((n + 1) * (n + 1)))? - z(2);
    Ok(t(a, n) * inner - l91_c(a)? * t(&(a + z(1)), n))
}

fn l91_r(a: &Q, n: i64) -> R {
    let m = z(n + 1);
    let num = (z(2) * a - z(1)) * &m * &m + (z(2) - z(3) * a) * &m + a - z(1);
    let den = (z(2) * a - z(1)) * &m * &m * &m
        + (z(4) * a * a * a + z(6) * a * a - a) * &m * &m
        + a * a * &m
        - a * a * (a + z(2));
    dv(-z(2) * &m * &m * num, den)
}

fn l91_lhs(a: &Q, n: i64) -> R {
    wsum(a, n, |k| dv(z(1), z((k + 1) * (k + 1))))
}

fn l91_rhs(a: &Q, n: i64) -> R {
    Ok(z(2) * s(a, n) + l91_c(a)? * s(&(a + z(1)), n) + l91_f(a, n)? * l91_r(a, n)?)
}

// --- L10.1: weight 1/(k+1)^3, boundary F(a,0)R(a,0) = 2/(a(a+1))

fn l101_c1(a: &Q) -> R {
    dv((z(2) * a + z(1)) * (z(2) * a + z(1)), ab(a))
}

fn l101_c2(a: &Q) -> R {
    let x = ab(a);
    dv(z(4) * &x * &x - &x + z(1), a * a * a * (a + z(1)))
}

fn l101_f(a: &Q, n: i64) -> R {
    let inner = dv(z(1), z((n + 1) * (n + 1) * (n + 1)))? - l101_c1(a)?;
    Ok(t(a, n) * inner - l101_c2(a)? * t(&(a + z(1)), n))
}

fn l101_r(a: &Q, n: i64) -> R {
    let m = z(n + 1);
    let m2 = &m * &m;
    let m3 = &m2 * &m;
    let lead = z(4) * a * a - z(2) * a + z(1);
    let num = &lead * &m2 + (-z(6) * a * a + z(3) * a - z(2)) * &m + z(3) * a * a - a + z(1);
    let den = &lead * &m3 * &m
        + (z(8) * Pow::pow(a, 4u32) + z(12) * a * a * a + a) * &m3
        + a * a * a * &m
        - a * a * a * (a + z(2));
    dv(-z(2) * &m3 * num, den)
}

fn l101_lhs(a: &Q, n: i64) -> R {
    wsum(a, n, |k| dv(z(1), z((k + 1) * (k + 1) * (k + 1))))
}

fn l101_rhs(a: &Q, n: i64) -> R {
    let c0 = dv(-z(2), ab(a))?;
    Ok(c0 + l101_c1(a)? * s(a, n) + l101_c2(a)? * s(&(a + z(1)), n) + l101_f(a, n)? * l101_r(a, n)?)
}

fn l101_boundary(a: &Q) -> R {
    Ok(l101_f(a, 0)? * l101_r(a, 0)?)
}

// --- L11.1: weight 1/(k+3)

fn l111_c1(a: &Q) -> R {
    dv(z(3) * ab(a) - z(10), z(15) * (a - z(1)) * (a + z(2)))
}

fn l111_c2(a: &Q) -> R {
    dv((a + z(1)) * (z(3) * ab(a) - z(16)), z(15) * a * (a - z(2)) * (a + z(3)))
}

fn l111_f(a: &Q, n: i64) -> R {
    let ratio = dv(a + z(1) + z(n), a + z(1) - z(n))?;
    Ok(t(a, n) * (dv(z(1), z(n + 3))? - l111_c1(a)? - l111_c2(a)? * ratio))
}

fn l111_g(a: &Q, n: i64) -> R {
    let a2 = a * a;
    let a3 = &a2 * a;
    let a4 = &a3 * a;
    let nn = z(n);
    let big_n = (z(3) * &a4 + z(12) * &a3 - z(13) * &a2 - z(50) * a + z(32)) * &nn * &nn
        + (z(3) * &a4 + z(12) * &a3 - z(29) * &a2 - z(82) * a + z(96)) * &nn
        + z(64);
    let den = z(15) * a * (&a2 - z(1)) * (&a2 - z(4)) * (a + z(3)) * z((n + 1) * (n + 2));
    Ok(dv(z(2 * n * n) * big_n, den)? * b(&(a + z(1)), n) * b(&(-z(1) - a), n) * c2(n))
}

fn l111_lhs(a: &Q, n: i64) -> R {
    wsum(a, n, |k| dv(z(1), z(k + 3)))
}

fn l111_rhs(a: &Q, n: i64) -> R {
    Ok(l111_c1(a)? * s(a, n) + l111_c2(a)? * s(&(a + z(1)), n) + l111_g(a, n)?)
}

fn l111_boundary(a: &Q) -> R {
    l111_g(a, 0)
}

// --- L12.1: weight 1/(a-1+k)

fn l121_c(a: &Q) -> R {
    let am = a - z(1);
    dv(&am * &am + z(1), z(2) * &am * &am * &am)
}

fn l121_f(a: &Q, n: i64) -> R {
    let am = a - z(1);
    let inner = dv(z(1), &am + z(n))? - l121_c(a)?;
    Ok(t(a, n) * inner - dv(t(&am, n), z(2) * &am)?)
}

fn l121_r(a: &Q, n: i64) -> R {
    let den = z(n * n) + (z(2) * a * a - z(2) * a + z(1)) * z(n) + a * (a - z(1));
    dv(-z(2 * n * n * n), den)
}

fn l121_lhs(a: &Q, n: i64) -> R {
    let am = a - z(1);
    wsum(a, n, |k| dv(z(1), &am + z(k)))
}

fn l121_rhs(a: &Q, n: i64) -> R {
    let am = a - z(1);
    Ok(l121_c(a)? * s(a, n) + dv(s(&am, n), z(2) * &am)? + l121_f(a, n)? * l121_r(a, n)?)
}

fn l31_boundary(a: &Q) -> R {
    l31_r(a, 0)
}

fn l41_boundary(a: &Q) -> R {
    l41_r(a, 0)
}

fn l51_boundary(a: &Q) -> R {
    l51_r(a, 0)
}

fn l81_boundary(a: &Q) -> R {
    l81_r(a, 0)
}

fn l91_boundary(a: &Q) -> R {
    l91_r(a, 0)
}

fn l121_boundary(a: &Q) -> R {
    l121_r(a, 0)
}

pub static CERTIFICATES: &[Certificate] = &[
    Certificate { id: "SEC2", style: Style::G, excluded: &[], f: sec2_f, gr: sec2_g, boundary: sec2_boundary, sum_lhs: sec2_lhs, sum_rhs: sec2_rhs },
    Certificate { id: "L3.1", style: Style::R, excluded: &[0], f: l31_f, gr: l31_r, boundary: l31_boundary, sum_lhs: l31_lhs, sum_rhs: l31_rhs },
    Certificate { id: "L4.1", style: Style::R, excluded: &[], f: l41_f, gr: l41_r, boundary: l41_boundary, sum_lhs: l41_lhs, sum_rhs: l41_rhs },
    Certificate { id: "L5.1", style: Style::R, excluded: &[], f: l51_f, gr: l51_r, boundary: l51_boundary, sum_lhs: l51_lhs, sum_rhs: l51_rhs },
    Certificate { id: "L6.1", style: Style::G, excluded: &[], f: l61_f, gr: l61_g, boundary: l61_boundary, sum_lhs: l61_lhs, sum_rhs: l61_rhs },
    Certificate { id: "L7.1", style: Style::G, excluded: &[], f: l71_f, gr: l71_g, boundary: l71_boundary, sum_lhs: l71_lhs, sum_rhs: l71_rhs },
    Certificate { id: "L8.1", style: Style::R, excluded: &[1, -2], f: l81_f, gr: l81_r, boundary: l81_boundary, sum_lhs: l81_lhs, sum_rhs: l81_rhs },
    Certificate { id: "L9.1", style: Style::R, excluded: &[0], f: l91_f, gr: l91_r, boundary: l91_boundary, sum_lhs: l91_lhs, sum_rhs: l91_rhs },
    Certificate { id: "L10.1", style: Style::R, excluded: &[0, -1], f: l101_f, gr: l101_r, boundary: l101_boundary, sum_lhs: l101_lhs, sum_rhs: l101_rhs },
    Certificate { id: "L11.1", style: Style::G, excluded: &[0, 1, -1, 2, -2, -3], f: l111_f, gr: l111_g, boundary: l111_boundary, sum_lhs: l111_lhs, sum_rhs: l111_rhs },
    Certificate { id: "L12.1", style: Style::R, excluded: &[0, 1], f: l121_f, gr: l121_r, boundary: l121_boundary, sum_lhs: l121_lhs, sum_rhs: l121_rhs },
];

pub fn certificate(id: &str) -> Option<&'static Certificate> {
    CERTIFICATES.iter().find(|c| c.id == id)
}

impl Certificate {
    pub fn admits(&self, a: &Q) -> bool {
        !self.excluded.iter().any(|&e| *a == z(e))
    }

    /// Value the boundary term must take: `G(a,0)`, or `R(a,0)` for R style
    /// (`F(a,0)R(a,0)` for L10.1).
    pub fn boundary_value(&self, a: &Q) -> Result<Q, Pole> {
        (self.boundary)(a)
    }

    pub fn expected_boundary(&self, a: &Q) -> Q {
        if self.id == "L10.1" {
            Q::from_integer(2.into()) / ab(a)
        } else {
            Q::zero()
        }
    }

    fn step(&self, a: &Q, k: i64) -> Result<bool, Pole> {
        let lhs = (self.f)(a, k)?;
        let rhs = match self.style {
            Style::G => (self.gr)(a, k + 1)? - (self.gr)(a, k)?,
            Style::R => (self.f)(a, k + 1)? * (self.gr)(a, k + 1)? - (self.f)(a, k)? * (self.gr)(a, k)?,
        };
        Ok(lhs == rhs)
    }
}

/// Checks the telescoping relation for `k = 0..=k_max`. Any failure outranks a pole.
pub fn verify_telescoping(cert: &Certificate, a: &Q, k_max: i64) -> Outcome {
    let mut pole = None;
    for k in 0..=k_max {
        match cert.step(a, k) {
            Ok(true) => {}
            Ok(false) => return Outcome::Fail(k),
            Err(Pole) => {
                pole.get_or_insert(k);
            }
        }
    }
    pole.map_or(Outcome::Pass, Outcome::Pole)
}

pub fn verify_boundary(cert: &Certificate, a: &Q) -> Outcome {
    match cert.boundary_value(a) {
        Ok(v) if v == cert.expected_boundary(a) => Outcome::Pass,
        Ok(_) => Outcome::Fail(0),
        Err(Pole) => Outcome::Pole(0),
    }
}

/// Checks the finite-`n` sum identity the certificate proves.
pub fn verify_sum_identity(cert: &Certificate, a: &Q, n: i64) -> Outcome {
    let lhs = (cert.sum_lhs)(a, n);
    let rhs = (cert.sum_rhs)(a, n);
    match (lhs, rhs) {
        (Ok(l), Ok(r)) if l == r => Outcome::Pass,
        (Ok(_), Ok(_)) => Outcome::Fail(n),
        _ => Outcome::Pole(n),
    }
}

/// Both sides of the finite-`n` sum identity.
pub fn sum_sides(cert: &Certificate, a: &Q, n: i64) -> (Result<Q, Pole>, Result<Q, Pole>) {
    ((cert.sum_lhs)(a, n), (cert.sum_rhs)(a, n))
}

/// The fixed rational grid `{±1/5, ±2/7, 3, -4/3}`.
pub fn grid() -> Vec<Q> {
    [(1, 5), (-1, 5), (2, 7), (-2, 7), (3, 1), (-4, 3)]
        .iter()
        .map(|&(n, d)| Q::new(n.into(), d.into()))
        .collect()
}

/// Exact `R(a,n)` or `G(a,n)` for display.
pub fn gr_value(cert: &Certificate, a: &Q, n: i64) -> Result<Q, Pole> {
    (cert.gr)(a, n)
}

pub fn f_value(cert: &Certificate, a: &Q, n: i64) -> Result<Q, Pole> {
    (cert.f)(a, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn sec2_small_case() {
        let c = certificate("SEC2").unwrap();
        assert_eq!((c.sum_lhs)(&q(1, 1), 1).unwrap(), q(5, 1));
        assert_eq!(verify_sum_identity(c, &q(1, 1), 1), Outcome::Pass);
    }

    #[test]
    fn l101_boundary_constant() {
        let c = certificate("L10.1").unwrap();
        assert_eq!(c.boundary_value(&q(1, 3)).unwrap(), q(9, 2));
        assert_eq!(verify_boundary(c, &q(1, 3)), Outcome::Pass);
    }

    #[test]
    fn every_certificate_telescopes_on_grid() {
        for c in CERTIFICATES {
            for a in grid() {
                if !c.admits(&a) {
                    continue;
                }
                let out = verify_telescoping(c, &a, 12);
                assert!(matches!(out, Outcome::Pass | Outcome::Pole(_)), "{} a={a} {out:?}", c.id);
                assert_eq!(verify_boundary(c, &a), Outcome::Pass, "{} a={a}", c.id);
                for n in 1..=8 {
                    assert_eq!(verify_sum_identity(c, &a, n), Outcome::Pass, "{} a={a} n={n}", c.id);
                }
            }
        }
    }

    #[test]
    fn broken_relation_is_caught() {
        // L6.1 polynomial with a perturbed constant term does not telescope
        let a = q(1, 5);
        let f = |k: i64| l61_f(&a, k).unwrap() + t(&a, k);
        let ok = (0..5).all(|k| f(k) == l61_g(&a, k + 1).unwrap() - l61_g(&a, k).unwrap());
        assert!(!ok);
    }
}
