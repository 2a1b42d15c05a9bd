//! Catalog of congruence statements and the driver that checks them prime by prime.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::rc::Rc;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use once_cell::sync::Lazy;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::padic::{a_prime, default_precision, is_prime, make_context, residue_index, PadicContext, ValuedResidue};
use crate::quadform::{represent, represent_4p27};
use crate::seqlib::{binom_integer, binom_rational, euler_mod_p, fermat_quotient, harmonic, r1, r2, r3, r7, u_mod_p};
use crate::sums::{term_table, weighted_sum, TermFamily, UpperBound, Weight};

type VR = ValuedResidue;
pub type Q = BigRational;

fn fr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

// ---------------------------------------------------------------------------
// expression values

/// A valued residue or the first error met while computing it.
#[derive(Clone)]
pub(crate) struct X {
    ctx: Arc<PadicContext>,
    r: Result<VR>,
}

impl X {
    fn bin(self, o: X, f: impl FnOnce(&PadicContext, &VR, &VR) -> Result<VR>) -> X {
        let r = match (&self.r, &o.r) {
            (Ok(a), Ok(b)) => f(&self.ctx, a, b),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        };
        X { ctx: self.ctx, r }
    }

    fn pow(self, e: i64) -> X {
        let r = self.r.and_then(|v| self.ctx.pow(&v, e));
        X { ctx: self.ctx, r }
    }

    fn sq(self) -> X {
        self.pow(2)
    }
}

impl Add for X {
    type Output = X;
    fn add(self, o: X) -> X {
        self.bin(o, |c, a, b| Ok(c.add(a, b)))
    }
}

impl Sub for X {
    type Output = X;
    fn sub(self, o: X) -> X {
        self.bin(o, |c, a, b| Ok(c.sub(a, b)))
    }
}

impl Mul for X {
    type Output = X;
    fn mul(self, o: X) -> X {
        self.bin(o, |c, a, b| Ok(c.mul(a, b)))
    }
}

impl Div for X {
    type Output = X;
    fn div(self, o: X) -> X {
        self.bin(o, |c, a, b| c.div(a, b))
    }
}

impl Neg for X {
    type Output = X;
    fn neg(self) -> X {
        let r = self.r.map(|v| self.ctx.neg(&v));
        X { ctx: self.ctx, r }
    }
}

// ---------------------------------------------------------------------------
// per-prime evaluation environment

/// Per-prime evaluation state with memoized tables. Not shared across threads.
pub(crate) struct Env {
    ctx: Arc<PadicContext>,
    p: u64,
    tables: RefCell<HashMap<TermFamily, Rc<Vec<VR>>>>,
    sums: RefCell<HashMap<(TermFamily, Weight, i64), Result<VR>>>,
    named: RefCell<HashMap<(u8, u64, u64), Result<VR>>>,
}

impl Env {
    fn new(p: u64, n: u32) -> Result<Env> {
        Ok(Env {
            ctx: Arc::new(make_context(p, n)?),
            p,
            tables: RefCell::default(),
            sums: RefCell::default(),
            named: RefCell::default(),
        })
    }

    fn x(&self, r: Result<VR>) -> X {
        X { ctx: self.ctx.clone(), r }
    }

    fn k(&self, n: i64) -> X {
        self.x(Ok(self.ctx.from_int(n)))
    }

    fn f(&self, n: i64, d: i64) -> X {
        self.x(Ok(self.ctx.from_ratio(n, d)))
    }

    fn q(&self, v: &Q) -> X {
        self.x(Ok(self.ctx.from_rational(v)))
    }

    fn p(&self) -> X {
        self.k(self.p as i64)
    }

    /// `p^e`.
    fn pw(&self, e: i64) -> X {
        self.p().pow(e)
    }

    fn pow2(&self, e: i64) -> X {
        self.k(2).pow(e)
    }

    fn memo(&self, key: (u8, u64, u64), f: impl FnOnce() -> Result<VR>) -> X {
        if let Some(v) = self.named.borrow().get(&key) {
            return self.x(v.clone());
        }
        let v = f();
        self.named.borrow_mut().insert(key, v.clone());
        self.x(v)
    }

    fn table(&self, fam: &TermFamily) -> Rc<Vec<VR>> {
        if let Some(t) = self.tables.borrow().get(fam) {
            return t.clone();
        }
        let t = Rc::new(term_table(&self.ctx, fam, self.p as i64 - 1));
        self.tables.borrow_mut().insert(fam.clone(), t.clone());
        t
    }

    fn term(&self, fam: &TermFamily, k: u64) -> X {
        let t = self.table(fam);
        self.x(Ok(t[k as usize].clone()))
    }

    fn sum_to(&self, fam: &TermFamily, w: &Weight, upper: i64) -> X {
        let key = (fam.clone(), w.clone(), upper);
        if let Some(v) = self.sums.borrow().get(&key) {
            return self.x(v.clone());
        }
        let t = self.table(fam);
        let v = weighted_sum(&self.ctx, &t, w, upper);
        self.sums.borrow_mut().insert(key, v.clone());
        self.x(v)
    }

    fn sum(&self, fam: &TermFamily, w: &Weight, upper: UpperBound) -> X {
        self.sum_to(fam, w, upper.index(self.p))
    }

    /// `S_p(a)`.
    fn s(&self, a: &Q) -> X {
        self.sum_to(&TermFamily::GeneralA(a.clone()), &Weight::one(), self.p as i64 - 1)
    }

    /// `sum_{k=0}^{p-2} T(k)/(k+1)` for the general family.
    fn s1(&self, a: &Q) -> X {
        self.sum_to(&TermFamily::GeneralA(a.clone()), &Weight::inv(1, 1, 1), self.p as i64 - 2)
    }

    fn h(&self, n: u64, r: u32) -> X {
        let ctx = self.ctx.clone();
        self.memo((1, n, r as u64), move || harmonic(&ctx, n, r))
    }

    fn q2(&self) -> X {
        let ctx = self.ctx.clone();
        self.memo((2, 2, 0), move || fermat_quotient(&ctx, 2))
    }

    fn q3(&self) -> X {
        let ctx = self.ctx.clone();
        self.memo((2, 3, 0), move || fermat_quotient(&ctx, 3))
    }

    /// `E_{p-3}` lifted from its residue mod p.
    fn e3(&self) -> X {
        self.k(euler_mod_p(self.p - 3, self.p) as i64)
    }

    /// `U_{p-3}` lifted from its residue mod p.
    fn u3(&self) -> X {
        self.k(u_mod_p(self.p - 3, self.p) as i64)
    }

    /// `(p/3)`.
    fn leg3(&self) -> X {
        self.k(if self.p % 3 == 1 { 1 } else { -1 })
    }

    fn binom(&self, n: u64, r: u64) -> X {
        let ctx = self.ctx.clone();
        self.memo((3, n, r), move || Ok(binom_integer(&ctx, n, r)))
    }

    fn binom_q(&self, a: &Q, k: u64) -> X {
        self.x(binom_rational(&self.ctx, a, k))
    }

    fn rep(&self, d: u64) -> Result<(u64, u64)> {
        if d == 27 {
            represent_4p27(self.p)
        } else {
            represent(self.p, d)
        }
    }

    fn x2(&self, d: u64) -> X {
        let r = self.rep(d).map(|(x, _)| self.ctx.from_int((x * x) as i64));
        self.x(r)
    }

    fn y2(&self, d: u64) -> X {
        let r = self.rep(d).map(|(_, y)| self.ctx.from_int((y * y) as i64));
        self.x(r)
    }

    /// `C((p-1)/2, (p-3)/4)`.
    fn b4(&self) -> X {
        self.binom((self.p - 1) / 2, (self.p - 3) / 4)
    }

    /// `C((p-1)/2, (p-5)/6)`.
    fn b6(&self) -> X {
        self.binom((self.p - 1) / 2, (self.p - 5) / 6)
    }

    /// `C((p-1)/2, [p/8])`.
    fn b8(&self) -> X {
        self.binom((self.p - 1) / 2, self.p / 8)
    }

    /// `C((p-1)/2, [p/12])`.
    fn b12(&self) -> X {
        self.binom((self.p - 1) / 2, self.p / 12)
    }

    /// `(2p+1) C([2p/3], [p/3])^2`.
    fn c23(&self) -> X {
        self.k(2 * self.p as i64 + 1) * self.binom(2 * self.p / 3, self.p / 3).sq()
    }

    /// `(p+1)^2 / 2^{p-1}`.
    fn tw(&self) -> X {
        (self.p() + self.k(1)).sq() * self.pow2(1 - self.p as i64)
    }

    /// `(-1)^{(p-1)/2}`.
    fn sgn4(&self) -> X {
        self.k(if self.p % 4 == 1 { 1 } else { -1 })
    }

    /// The `B6^2 (1 + p(...) + p^2(...))` factor of the p = 2 mod 3 branches.
    fn phi6(&self) -> X {
        let (q2, q3) = (self.q2(), self.q3());
        let lin = self.k(2) + self.f(4, 3) * q2.clone() - self.f(3, 2) * q3.clone();
        let quad = self.k(1) + self.f(8, 3) * q2.clone() + self.f(2, 9) * q2.clone().sq()
            - self.k(3) * q3.clone()
            - self.k(2) * q2 * q3.clone()
            + self.f(15, 8) * q3.sq()
            + self.f(3, 4) * self.u3();
        self.b6().sq() * (self.k(1) + self.p() * lin + self.pw(2) * quad)
    }

    /// `B12^2 (1 + p(c - 3 q2 - 5/2 q3 - 2/3 H_{[p/12]}))`.
    fn psi(&self, c: X) -> X {
        let inner = c - self.k(3) * self.q2() - self.f(5, 2) * self.q3() - self.f(2, 3) * self.h(self.p / 12, 1);
        self.b12().sq() * (self.k(1) + self.p() * inner)
    }

    fn r1(&self) -> X {
        let ctx = self.ctx.clone();
        self.memo((4, 1, 0), move || Ok(r1(&ctx)))
    }

    fn r2(&self) -> X {
        let ctx = self.ctx.clone();
        self.memo((4, 2, 0), move || r2(&ctx))
    }

    fn r3(&self) -> X {
        let ctx = self.ctx.clone();
        self.memo((4, 3, 0), move || Ok(r3(&ctx)))
    }

    fn r7(&self) -> X {
        let ctx = self.ctx.clone();
        self.memo((4, 7, 0), move || Ok(r7(&ctx)))
    }

    /// `k0 + a z + b p + c p^2 / z + d p^2` for `z = x^2` or `y^2`.
    fn lin(&self, z: X, c: &[Fr; 5]) -> X {
        let g = |i: usize| self.f(c[i].0, c[i].1);
        let mut out = g(0) + g(1) * z.clone() + g(2) * self.p() + g(4) * self.pw(2);
        if c[3].0 != 0 {
            out = out + g(3) * self.pw(2) / z;
        }
        out
    }
}

type Fr = (i64, i64);

// ---------------------------------------------------------------------------
// statements

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Theorem,
    Lemma,
    Corollary,
    Conjecture,
    CitedResult,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Theorem => "theorem",
            Kind::Lemma => "lemma",
            Kind::Corollary => "corollary",
            Kind::Conjecture => "conjecture",
            Kind::CitedResult => "cited-result",
        })
    }
}

/// Which free parameters a statement quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    None,
    /// a rational p-adic integer `a`
    A,
    /// `t`
    T,
    /// `t` and `n`
    TN,
}

/// Parameter values for one check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub a: Option<Q>,
    pub t: Option<Q>,
    pub n: Option<u64>,
}

impl Params {
    pub fn a(a: Q) -> Params {
        Params { a: Some(a), ..Default::default() }
    }

    pub fn t(t: Q) -> Params {
        Params { t: Some(t), ..Default::default() }
    }

    pub fn tn(t: Q, n: u64) -> Params {
        Params { t: Some(t), n: Some(n), ..Default::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_none() && self.t.is_none() && self.n.is_none()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(a) = &self.a {
            parts.push(format!("a={a}"));
        }
        if let Some(t) = &self.t {
            parts.push(format!("t={t}"));
        }
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        f.write_str(&parts.join(","))
    }
}

/// Resolved arguments handed to expressions.
#[derive(Clone, Debug)]
pub(crate) struct Args {
    a: Q,
    /// `<a>_p`
    ra: u64,
    /// `a' = (a - <a>_p)/p`
    ap: Q,
    t: Q,
    n: u64,
}

impl Args {
    fn none() -> Args {
        Args { a: Q::zero(), ra: 0, ap: Q::zero(), t: Q::zero(), n: 0 }
    }

    fn resolve(p: u64, params: &Params) -> Result<Args> {
        let mut g = Args::none();
        if let Some(t) = &params.t {
            g.t = t.clone();
            g.a = qi(p as i64) * t;
        }
        if let Some(a) = &params.a {
            g.a = a.clone();
        }
        g.ra = residue_index(p, &g.a)?;
        g.ap = a_prime(p, &g.a)?;
        g.n = params.n.unwrap_or(0);
        Ok(g)
    }
}

type Expr = Arc<dyn Fn(&Env, &Args) -> X + Send + Sync>;
type Cond = Arc<dyn Fn(u64, &Args) -> bool + Send + Sync>;

fn ex(f: impl Fn(&Env, &Args) -> X + Send + Sync + 'static) -> Expr {
    Arc::new(f)
}

fn when(f: impl Fn(u64) -> bool + Send + Sync + 'static) -> Cond {
    Arc::new(move |p, _| f(p))
}

fn when_a(f: impl Fn(u64, &Args) -> bool + Send + Sync + 'static) -> Cond {
    Arc::new(f)
}

/// The quadratic form a branch reads `x`, `y` from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quad {
    None,
    /// `p = x^2 + d y^2`
    Form(u64),
    /// `4p = x^2 + 27 y^2`
    Form27,
}

pub struct Branch {
    pub label: String,
    pub exponent: u32,
    pub quad: Quad,
    cond: Cond,
    forms: Vec<Expr>,
}

impl Branch {
    pub fn form_count(&self) -> usize {
        self.forms.len()
    }
}

pub struct Statement {
    pub id: String,
    pub kind: Kind,
    pub param: Param,
    pub min_prime: u64,
    /// Human-readable hypothesis on `p` beyond the floor.
    pub restriction: &'static str,
    restrict: Option<fn(u64) -> bool>,
    /// Residues of `a` mod p the statement excludes.
    pub excluded: Vec<i64>,
    /// Weight `1/(a + shift + k)`: integer `a` hitting a pole for some `k < p` is inadmissible.
    pole_shift: Option<i64>,
    lhs: Expr,
    pub branches: Vec<Branch>,
}

impl fmt::Debug for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Statement").field("id", &self.id).field("kind", &self.kind).finish()
    }
}

impl Statement {
    fn new(id: &str, kind: Kind, min_prime: u64, lhs: Expr) -> Statement {
        Statement {
            id: id.to_string(),
            kind,
            param: Param::None,
            min_prime,
            restriction: "",
            restrict: None,
            excluded: Vec::new(),
            pole_shift: None,
            lhs,
            branches: Vec::new(),
        }
    }

    fn param(mut self, param: Param, excluded: &[i64]) -> Statement {
        self.param = param;
        self.excluded = excluded.to_vec();
        self
    }

    fn only(mut self, text: &'static str, f: fn(u64) -> bool) -> Statement {
        self.restriction = text;
        self.restrict = Some(f);
        self
    }

    fn pole(mut self, shift: i64) -> Statement {
        self.pole_shift = Some(shift);
        self
    }

    fn branch(mut self, label: &str, cond: Cond, exponent: u32, quad: Quad, forms: Vec<Expr>) -> Statement {
        self.branches.push(Branch { label: label.to_string(), exponent, quad, cond, forms });
        self
    }

    /// Whether the hypotheses on `p` alone hold.
    pub fn applies(&self, p: u64) -> bool {
        p >= self.min_prime && is_prime(p) && p % 2 == 1 && self.restrict.is_none_or(|f| f(p))
    }

    /// Whether a parameter choice is admissible at `p`.
    pub fn admissible(&self, p: u64, params: &Params) -> bool {
        match self.param {
            Param::None => params.is_empty(),
            Param::A => {
                let Some(a) = &params.a else { return false };
                let Ok(r) = residue_index(p, a) else { return false };
                if self.excluded.iter().any(|e| e.rem_euclid(p as i64) as u64 == r) {
                    return false;
                }
                if let Some(s) = self.pole_shift {
                    if a.is_integer() {
                        // pole when a + s + k = 0 for some 0 <= k <= p-1
                        let v = -(a.to_integer() + BigInt::from(s));
                        if v >= BigInt::zero() && v < BigInt::from(p) {
                            return false;
                        }
                    }
                }
                true
            }
            Param::T => params.a.is_none() && params.n.is_none() && is_unit_or_int(p, &params.t),
            Param::TN => {
                params.a.is_none()
                    && is_unit_or_int(p, &params.t)
                    && params.n.is_some_and(|n| n >= 1 && n <= (p - 1) / 2)
            }
        }
    }

    /// Distinct modulus exponents across branches.
    pub fn exponents(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self.branches.iter().map(|b| b.exponent).collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn hypothesis(&self) -> String {
        let mut s = format!("p >= {}", self.min_prime);
        if !self.restriction.is_empty() {
            s.push_str(", ");
            s.push_str(self.restriction);
        }
        if !self.excluded.is_empty() {
            let ex: Vec<String> = self.excluded.iter().map(|e| e.to_string()).collect();
            s.push_str(&format!(", a not in {{{}}} mod p", ex.join(",")));
        }
        s
    }
}

fn is_unit_or_int(p: u64, t: &Option<Q>) -> bool {
    t.as_ref().is_some_and(|t| residue_index(p, t).is_ok())
}

// ---------------------------------------------------------------------------
// catalog

fn pc(p: u64, m: u64, rs: &'static [u64]) -> bool {
    rs.contains(&(p % m))
}

fn cube(m: i64) -> TermFamily {
    TermFamily::CentralCube(m)
}

fn sum_lhs(fam: TermFamily, w: Weight, upper: UpperBound) -> Expr {
    ex(move |e, _| e.sum(&fam, &w, upper))
}

fn ga(a: &Q) -> TermFamily {
    TermFamily::GeneralA(a.clone())
}

fn zero() -> Fr {
    (0, 1)
}

/// Sums of `C(2k,k)^3/64^k w(k)`: quadratic-form branch for p = 1 mod 4, binomial branch for p = 3 mod 4.
fn cube_thm(id: &str, kind: Kind, minp: u64, w: Weight, upper: UpperBound, xq: [Fr; 3], c: [Fr; 3]) -> Statement {
    Statement::new(id, kind, minp, sum_lhs(cube(64), w, upper))
        .branch(
            "p=x^2+4y^2",
            when(|p| p % 4 == 1),
            3,
            Quad::Form(4),
            vec![ex(move |e, _| e.lin(e.x2(4), &[zero(), xq[0], xq[1], xq[2], zero()]))],
        )
        .branch(
            "p=3 mod 4",
            when(|p| p % 4 == 3),
            3,
            Quad::None,
            vec![ex(move |e, _| {
                let b = e.b4().sq();
                e.f(c[0].0, c[0].1) * e.tw() * b.clone() + e.f(c[1].0, c[1].1) * e.pw(2) / b.clone()
                    + e.f(c[2].0, c[2].1) * e.pw(2) * b * e.e3()
            })],
        )
}

/// Sums of `C(2k,k)^2 C(3k,k)/108^k w(k)`.
fn sq3k_thm(id: &str, minp: u64, w: Weight, upper: UpperBound, k0: Fr, xq: [Fr; 3], c: [Fr; 2]) -> Statement {
    Statement::new(id, Kind::Theorem, minp, sum_lhs(TermFamily::CentralSq3k(108), w, upper))
        .branch(
            "p=x^2+3y^2",
            when(|p| p % 3 == 1),
            3,
            Quad::Form(3),
            vec![ex(move |e, _| e.lin(e.x2(3), &[k0, xq[0], xq[1], xq[2], zero()]))],
        )
        .branch(
            "p=2 mod 3",
            when(|p| p % 3 == 2),
            3,
            Quad::None,
            vec![ex(move |e, _| {
                e.f(k0.0, k0.1) + e.f(c[0].0, c[0].1) * e.phi6() + e.f(c[1].0, c[1].1) * e.pw(2) / e.b6().sq()
            })],
        )
}

/// Sums of `C(2k,k)^2 C(4k,2k)/256^k w(k)`.
fn sq4k_thm(id: &str, minp: u64, w: Weight, upper: UpperBound, lin: [Fr; 5], cr: Fr) -> Statement {
    Statement::new(id, Kind::Theorem, minp, sum_lhs(TermFamily::CentralSq4k2k(256), w, upper))
        .branch(
            "p=x^2+2y^2",
            when(|p| pc(p, 8, &[1, 3])),
            3,
            Quad::Form(2),
            vec![ex(move |e, _| e.lin(e.x2(2), &lin))],
        )
        .branch(
            "p=5,7 mod 8",
            when(|p| pc(p, 8, &[5, 7])),
            2,
            Quad::None,
            vec![ex(move |e, _| e.f(lin[0].0, lin[0].1) + e.f(cr.0, cr.1) * e.r2())],
        )
}

/// Sums of `C(2k,k) C(3k,k) C(6k,3k)/1728^k w(k)`, all modulo p^2.
fn mixed_thm(id: &str, minp: u64, w: Weight, upper: UpperBound, k0: Fr, xq: [Fr; 2], c7: Fr, c11: Fr) -> Statement {
    Statement::new(id, Kind::Theorem, minp, sum_lhs(TermFamily::Mixed6k(1728), w, upper))
        .branch(
            "p=x^2+4y^2",
            when(|p| p % 4 == 1),
            2,
            Quad::Form(4),
            vec![ex(move |e, _| {
                e.f(k0.0, k0.1) + e.leg3() * (e.f(xq[0].0, xq[0].1) * e.x2(4) + e.f(xq[1].0, xq[1].1) * e.p())
            })],
        )
        .branch(
            "p=7 mod 12",
            when(|p| p % 12 == 7),
            2,
            Quad::None,
            vec![ex(move |e, _| e.f(k0.0, k0.1) + e.f(c7.0, c7.1) * e.psi(e.k(10)))],
        )
        .branch(
            "p=11 mod 12",
            when(|p| p % 12 == 11),
            2,
            Quad::None,
            vec![ex(move |e, _| e.f(k0.0, k0.1) + e.f(c11.0, c11.1) * e.psi(e.k(2)))],
        )
}

fn even() -> Cond {
    when_a(|_, g| g.ra % 2 == 0)
}

fn odd() -> Cond {
    when_a(|_, g| g.ra % 2 == 1)
}

fn always() -> Cond {
    when(|_| true)
}

/// `a'(a'+1)` as a value.
fn aa(e: &Env, g: &Args) -> X {
    e.q(&(&g.ap * (&g.ap + qi(1))))
}

fn rq(e: &Env, v: Q) -> X {
    e.q(&v)
}

/// The bracket `C((p-1)/2, m/2)^2 (1 + pX + p^2/2(...))` shared by the even cases.
fn even_bracket(e: &Env, g: &Args, m: u64) -> X {
    let a1 = &g.ap;
    let two_a1 = qi(2) * a1;
    let xx = rq(e, &two_a1 + qi(2)) * e.h(m, 1) - rq(e, &two_a1 + qi(1)) * e.h(m / 2, 1) - rq(e, two_a1.clone()) * e.q2();
    let a12 = a1 * a1;
    let inner = rq(e, two_a1.clone()) * e.q2().sq()
        + xx.clone().sq()
        + rq(e, (qi(2) * &a12 - qi(1)) / qi(2)) * e.h(m / 2, 2)
        + rq(e, qi(2) * (qi(1) - &a12)) * e.h(m, 2);
    e.binom((e.p - 1) / 2, m / 2).sq() * (e.k(1) + e.p() * xx + e.pw(2) / e.k(2) * inner)
}

fn general_theorems() -> Vec<Statement> {
    use Kind::*;
    use UpperBound::*;
    let mut v = Vec::new();

    v.push(
        Statement::new(
            "L2.1",
            Lemma,
            5,
            ex(|e, g| {
                let a2 = &g.a + qi(2);
                rq(e, a2.clone() * &a2) * e.s(&a2) - rq(e, (&g.a + qi(1)) * (&g.a + qi(1))) * e.s(&g.a)
            }),
        )
        .param(Param::A, &[-1])
        .branch(
            "<a> < p-2",
            when_a(|p, g| g.ra < p - 2),
            4,
            Quad::None,
            vec![ex(|e, g| {
                rq(e, qi(1) / (&g.a + qi(1)) + qi(1) / (&g.a + qi(2))) * aa(e, g) * e.pw(3)
            })],
        )
        .branch(
            "<a> = p-2",
            when_a(|p, g| g.ra == p - 2),
            3,
            Quad::None,
            vec![ex(|e, g| rq(e, &g.a + qi(2)) * e.p())],
        ),
    );

    v.push(
        Statement::new("L2.2", Lemma, 3, ex(|e, g| e.s(&g.a))).param(Param::T, &[]).branch(
            "all",
            always(),
            3,
            Quad::None,
            vec![ex(|e, g| {
                let w = e.pow2(e.p as i64 - 1) - e.k(1);
                let t = &g.t;
                e.k(1) - rq(e, qi(2) * t) * w.clone() + rq(e, qi(2) * t * t + t) * w.sq()
            })],
        ),
    );

    v.push(
        Statement::new(
            "L2.3",
            Lemma,
            3,
            ex(|e, g| e.binom_q(&(fr(e.p as i64 - 1, 2) + qi(e.p as i64) * &g.t), g.n)),
        )
        .param(Param::TN, &[])
        .branch(
            "all",
            always(),
            3,
            Quad::None,
            vec![ex(|e, g| {
                let mut s1 = e.k(0);
                let mut s2 = e.k(0);
                for k in 1..=g.n as i64 {
                    s1 = s1 + e.f(1, 2 * k - 1);
                    s2 = s2 + e.f(1, (2 * k - 1) * (2 * k - 1));
                }
                let t = rq(e, g.t.clone());
                let inner = t.clone() * s1.clone().sq() - (t.clone() + e.k(1)) * s2;
                e.binom((e.p - 1) / 2, g.n)
                    * (e.k(1) - e.k(2) * e.p() * t.clone() * s1 + e.k(2) * e.pw(2) * t * inner)
            })],
        ),
    );

    v.push(
        Statement::new("T2.1", Theorem, 3, ex(|e, g| e.s(&g.a)))
            .param(Param::A, &[0, -1])
            .branch(
                "<a> even",
                even(),
                3,
                Quad::None,
                vec![
                    ex(|e, g| {
                        let n = g.ra / 2;
                        let top = e.binom_q(&((&g.a - qi(1)) / qi(2)), n);
                        let bot = e.binom_q(&(&g.a / qi(2)), n);
                        let w = e.pow2(e.p as i64 - 1) - e.k(1);
                        let a1 = &g.ap;
                        (top / bot).sq()
                            * (e.k(1) - rq(e, qi(2) * a1) * w.clone() + rq(e, a1 * (qi(2) * a1 + qi(1))) * w.sq())
                    }),
                    ex(|e, g| even_bracket(e, g, g.ra)),
                ],
            )
            .branch(
                "<a> odd",
                odd(),
                3,
                Quad::None,
                vec![
                    ex(|e, g| {
                        let m = g.ra;
                        e.k(4).pow(m as i64 - 1) * aa(e, g) * e.pw(2)
                            / (rq(e, &g.a * &g.a) * e.binom(m - 1, (m - 1) / 2).sq())
                    }),
                    ex(|e, g| {
                        aa(e, g) * e.pw(2) / (rq(e, &g.a * &g.a) * e.binom((e.p - 1) / 2, (g.ra - 1) / 2).sq())
                    }),
                ],
            ),
    );

    v.push(
        Statement::new("L3.2", Lemma, 3, ex(|e, g| e.term(&ga(&g.a), e.p - 1) / e.p()))
            .param(Param::A, &[0, -1])
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![ex(|e, g| -aa(e, g) / rq(e, &g.a * (&g.a + qi(1))) * e.pw(2))],
            ),
    );

    // generic chain shared by every branch of T3.1
    let t31_chain = || -> Vec<Expr> {
        vec![
            ex(|e, g| {
                e.sum(&ga(&g.a), &Weight::inv(1, 1, 1), PMinus1)
                    + aa(e, g) / rq(e, &g.a * (&g.a + qi(1))) * e.pw(2)
            }),
            ex(|e, g| e.s(&g.a) + rq(e, (&g.a + qi(1)) / &g.a) * e.s(&(&g.a + qi(1)))),
        ]
    };
    let mut even_forms = t31_chain();
    even_forms.push(ex(|e, g| {
        let m = g.ra;
        even_bracket(e, g, m) + e.pw(2) * aa(e, g) / rq(e, &g.a * (&g.a + qi(1))) / e.binom((e.p - 1) / 2, m / 2).sq()
    }));
    let mut odd_forms = t31_chain();
    odd_forms.push(ex(|e, g| {
        let m = g.ra + 1;
        let a1 = &g.a + qi(1);
        rq(e, &a1 / &g.a) * even_bracket(e, g, m)
            + e.pw(2) * aa(e, g) / rq(e, &a1 * &a1) / e.binom((e.p - 1) / 2, m / 2).sq()
    }));
    v.push(
        Statement::new("T3.1", Theorem, 3, ex(|e, g| e.s1(&g.a)))
            .param(Param::A, &[0, -1])
            .branch("<a> even", even(), 3, Quad::None, even_forms)
            .branch("<a> odd, <a> != p-2", when_a(|p, g| g.ra % 2 == 1 && g.ra != p - 2), 3, Quad::None, odd_forms)
            .branch("<a> = p-2", when_a(|p, g| g.ra == p - 2), 3, Quad::None, t31_chain()),
    );

    v.push(
        Statement::new("T4.1.i", Theorem, 3, ex(|e, g| e.sum(&ga(&g.a), &Weight::KPow(1), PMinus1)))
            .param(Param::A, &[-1])
            .branch(
                "all",
                always(),
                4,
                Quad::None,
                vec![ex(|e, g| {
                    let a1 = &g.a + qi(1);
                    rq(e, &g.a * &a1) * e.s(&g.a) - rq(e, &a1 * &a1) * e.s(&a1) + aa(e, g) / rq(e, a1.clone()) * e.pw(3)
                })],
            ),
    );
    v.push(
        Statement::new("T4.1.ii", Theorem, 3, ex(|e, g| e.sum(&ga(&g.a), &Weight::KPow(1), PMinus1)))
            .param(Param::A, &[0, -1])
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![ex(|e, g| rq(e, &g.a * (&g.a + qi(1))) * (e.k(2) * e.s(&g.a) - e.s1(&g.a)))],
            ),
    );

    v.push(
        Statement::new("T5.1", Theorem, 3, ex(|e, g| e.sum(&ga(&g.a), &Weight::inv(2, -1, 1), PMinus1)))
            .param(Param::A, &[-1])
            .branch(
                "all",
                always(),
                4,
                Quad::None,
                vec![ex(|e, g| {
                    let a = &g.a;
                    let a1 = a + qi(1);
                    -rq(e, qi(2) * a * a + qi(2) * a + qi(1)) * e.s(a) - rq(e, qi(2) * &a1 * &a1) * e.s(&a1)
                        - rq(e, qi(2) * (qi(2) * a + qi(1)) / &a1) * aa(e, g) * e.pw(3)
                })],
            ),
    );
    v.push(
        Statement::new("Cor5.1", Corollary, 3, ex(|e, g| e.sum(&ga(&g.a), &Weight::inv(2, -1, 1), PMinus1)))
            .param(Param::A, &[0, -1])
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![ex(|e, g| -e.s(&g.a) - rq(e, qi(2) * &g.a * (&g.a + qi(1))) * e.s1(&g.a))],
            ),
    );

    v.push(
        Statement::new(
            "T6.1",
            Theorem,
            3,
            ex(|e, g| {
                let f = ga(&g.a);
                let a = &g.a;
                e.k(3) * e.sum(&f, &Weight::KPow(2), PMinus1)
                    - rq(e, qi(2) * a * a + qi(2) * a - qi(1)) * e.sum(&f, &Weight::KPow(1), PMinus1)
                    - rq(e, a * (a + qi(1))) * e.s(a)
            }),
        )
        .param(Param::A, &[])
        .branch("all", always(), 4, Quad::None, vec![ex(|e, g| -aa(e, g) * e.pw(3))]),
    );
    v.push(
        Statement::new("T6.2", Theorem, 3, ex(|e, g| e.sum(&ga(&g.a), &Weight::KPow(2), PMinus1)))
            .param(Param::A, &[0, -1])
            .branch(
                "all",
                always(),
                4,
                Quad::None,
                vec![ex(|e, g| {
                    let a = &g.a;
                    let a1 = a + qi(1);
                    let aa1 = a * &a1;
                    rq(e, qi(2) * &aa1 * &aa1 / qi(3)) * e.s(a)
                        - rq(e, (qi(2) * &aa1 - qi(1)) / qi(3) * &a1 * &a1) * e.s(&a1)
                        + rq(e, (qi(2) * a * a + a - qi(2)) / (qi(3) * &a1)) * aa(e, g) * e.pw(3)
                })],
            ),
    );

    v.push(
        Statement::new(
            "T7.1",
            Theorem,
            3,
            ex(|e, g| {
                let f = ga(&g.a);
                let a = &g.a;
                let aa1 = a * (a + qi(1));
                e.k(15) * e.sum(&f, &Weight::KPow(3), PMinus1)
                    - rq(e, qi(4) * &aa1 * &aa1 - &aa1 + qi(1)) * e.sum(&f, &Weight::KPow(1), PMinus1)
                    - rq(e, &aa1 * (qi(2) * &aa1 - qi(1))) * e.s(a)
            }),
        )
        .param(Param::A, &[])
        .branch(
            "all",
            always(),
            4,
            Quad::None,
            vec![ex(|e, g| rq(e, qi(4) - qi(2) * &g.a * (&g.a + qi(1))) * aa(e, g) * e.pw(3))],
        ),
    );
    v.push(
        Statement::new("T7.2", Theorem, 7, ex(|e, g| e.sum(&ga(&g.a), &Weight::KPow(3), PMinus1)))
            .param(Param::A, &[-1])
            .branch(
                "all",
                always(),
                4,
                Quad::None,
                vec![ex(|e, g| {
                    let a = &g.a;
                    let a1 = a + qi(1);
                    let aa1 = a * &a1;
                    let two1 = qi(2) * a + qi(1);
                    rq(e, &aa1 * &aa1 * &two1 * &two1 / qi(15)) * e.s(a)
                        - rq(e, &a1 * &a1 * (qi(4) * &aa1 * &aa1 - &aa1 + qi(1)) / qi(15)) * e.s(&a1)
                        + rq(
                            e,
                            (qi(4) * a * a * a * a + qi(6) * a * a * a - a * a + a + qi(5)) / (qi(15) * &a1),
                        ) * aa(e, g)
                            * e.pw(3)
                })],
            ),
    );

    v.push(
        Statement::new("T8.1", Theorem, 5, ex(|e, g| e.sum(&ga(&g.a), &Weight::inv(1, 2, 1), PMinus3)))
            .param(Param::A, &[0, 1, -1, -2])
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![
                    ex(|e, g| {
                        let a = &g.a;
                        e.f(1, 3) * e.s1(a) - rq(e, qi(1) / (qi(3) * (a - qi(1)) * (a + qi(2)))) * e.s(a)
                    }),
                    ex(|e, g| {
                        let a = &g.a;
                        rq(e, (a * a + a - qi(3)) / (qi(3) * (a - qi(1)) * (a + qi(2)))) * e.s(a)
                            + rq(e, (a + qi(1)) / (qi(3) * a)) * e.s(&(a + qi(1)))
                    }),
                ],
            ),
    );
    v.push(
        Statement::new("L8.2", Lemma, 5, ex(|e, g| e.term(&ga(&g.a), e.p - 2) / e.p()))
            .param(Param::A, &[0, 1, -1, -2])
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![ex(|e, g| {
                    let a = &g.a;
                    e.k(2) * aa(e, g) / rq(e, qi(3) * a * (a + qi(1)) * (a - qi(1)) * (a + qi(2))) * e.pw(2)
                })],
            ),
    );

    v.push(
        Statement::new("T9.1", Theorem, 5, ex(|e, g| e.sum(&ga(&g.a), &Weight::inv(1, 1, 2), PMinus2)))
            .param(Param::A, &[0, -1, -2])
            .branch(
                "all",
                always(),
                4,
                Quad::None,
                vec![ex(|e, g| {
                    let a = &g.a;
                    e.k(2) * e.s(a)
                        + rq(e, (qi(2) * a * a + qi(2) * a - qi(1)) / (a * a)) * e.s(&(a + qi(1)))
                        + rq(
                            e,
                            (qi(4) * a * a * a + qi(6) * a * a - qi(3) * a + qi(2))
                                / (a * a * a * (a + qi(1)) * (a + qi(2))),
                        ) * aa(e, g)
                            * e.pw(3)
                })],
            ),
    );
    v.push(
        Statement::new("T9.2", Theorem, 5, ex(|e, g| e.sum(&ga(&g.a), &Weight::inv(1, 1, 2), PMinus2)))
            .param(Param::A, &[0, -1, -2])
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![ex(|e, g| {
                    let a = &g.a;
                    let inv = qi(1) / (a * (a + qi(1)));
                    rq(e, qi(2) - &inv) * e.s1(a) + rq(e, inv) * e.s(a)
                })],
            ),
    );

    v.push(
        Statement::new("T10.1", Theorem, 5, ex(|e, g| e.sum(&ga(&g.a), &Weight::inv(1, 1, 3), PMinus2)))
            .param(Param::A, &[0, -1, -2])
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![
                    ex(|e, g| {
                        let a = &g.a;
                        let aa1 = a * (a + qi(1));
                        let two1 = qi(2) * a + qi(1);
                        rq(e, -qi(2) / &aa1)
                            + rq(e, &two1 * &two1 / &aa1) * e.s(a)
                            + rq(e, (qi(4) * &aa1 * &aa1 - &aa1 + qi(1)) / (a * a * &aa1)) * e.s(&(a + qi(1)))
                    }),
                    ex(|e, g| {
                        let a = &g.a;
                        let aa1 = a * (a + qi(1));
                        let sq = &aa1 * &aa1;
                        rq(e, -qi(2) / &aa1)
                            + rq(e, (qi(4) * &sq - &aa1 + qi(1)) / &sq) * e.s1(a)
                            + rq(e, (qi(2) * &aa1 - qi(1)) / &sq) * e.s(a)
                    }),
                ],
            ),
    );

    v.push(
        Statement::new("L11.2", Lemma, 7, ex(|e, g| e.term(&ga(&g.a), e.p - 3) / e.p()))
            .param(Param::A, &[0, 1, -1, 2, -2, -3])
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![ex(|e, g| {
                    let a = &g.a;
                    let den = qi(15) * a * (a * a - qi(1)) * (a * a - qi(4)) * (a + qi(3));
                    -e.k(32) * aa(e, g) * e.pw(2) / rq(e, den)
                })],
            ),
    );
    v.push(
        Statement::new("T11.1", Theorem, 7, ex(|e, g| e.sum(&ga(&g.a), &Weight::inv(1, 3, 1), PMinus4)))
            .param(Param::A, &[0, 1, -1, 2, -2, -3])
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![
                    ex(|e, g| {
                        let a = &g.a;
                        let aa1 = a * (a + qi(1));
                        rq(e, (qi(3) * &aa1 - qi(10)) / (qi(15) * (a - qi(1)) * (a + qi(2)))) * e.s(a)
                            + rq(
                                e,
                                (a + qi(1)) * (qi(3) * &aa1 - qi(16)) / (qi(15) * a * (a - qi(2)) * (a + qi(3))),
                            ) * e.s(&(a + qi(1)))
                    }),
                    ex(|e, g| {
                        let a = &g.a;
                        let aa1 = a * (a + qi(1));
                        rq(
                            e,
                            (qi(28) - qi(6) * &aa1) / (qi(15) * (a - qi(1)) * (a * a - qi(4)) * (a + qi(3))),
                        ) * e.s(a)
                            + rq(e, (qi(3) * &aa1 - qi(16)) / (qi(15) * (a - qi(2)) * (a + qi(3)))) * e.s1(a)
                    }),
                ],
            ),
    );

    v.push(
        Statement::new("T12.1.i", Theorem, 3, ex(|e, g| e.sum(&ga(&g.a), &Weight::inv_shift(g.a.clone(), 1), PMinus1)))
            .param(Param::A, &[0, 1, -1])
            .pole(0)
            .branch(
                "all",
                always(),
                3,
                Quad::None,
                vec![
                    ex(|e, g| {
                        let a = &g.a;
                        let a1 = a + qi(1);
                        rq(e, qi(1) / (qi(2) * a)) * e.s(a) + rq(e, &a1 * &a1 / (qi(2) * a * a * a)) * e.s(&a1)
                    }),
                    ex(|e, g| {
                        let a = &g.a;
                        rq(e, (a + qi(1)) / (qi(2) * a * a)) * e.s1(a) - rq(e, qi(1) / (qi(2) * a * a)) * e.s(a)
                    }),
                ],
            ),
    );
    v.push(
        Statement::new(
            "T12.1.ii",
            Theorem,
            3,
            ex(|e, g| e.sum(&ga(&g.a), &Weight::inv_shift(&g.a - qi(1), 1), PMinus1)),
        )
        .param(Param::A, &[0, 1, -1])
        .pole(-1)
        .branch(
            "all",
            always(),
            3,
            Quad::None,
            vec![
                ex(|e, g| {
                    let a = &g.a;
                    let am = a - qi(1);
                    let a1 = a + qi(1);
                    rq(e, (&am * &am + qi(1)) / (qi(2) * &am * &am * &am)) * e.s(a)
                        + rq(e, &a1 * &a1 / (qi(2) * a * a * &am)) * e.s(&a1)
                }),
                ex(|e, g| {
                    let a = &g.a;
                    let am = a - qi(1);
                    rq(e, (a + qi(1)) / (qi(2) * a * &am)) * e.s1(a)
                        - rq(e, (a * a - qi(3) * a + qi(1)) / (qi(2) * a * &am * &am * &am)) * e.s(a)
                }),
            ],
        ),
    );
    v
}

fn special_theorems() -> Vec<Statement> {
    use Kind::*;
    use UpperBound::*;
    let mut v = Vec::new();
    let f = |n: i64, d: i64| (n, d);

    v.push(
        Statement::new("EQ1.1", CitedResult, 5, sum_lhs(cube(64), Weight::one(), PMinus1))
            .branch(
                "p=x^2+4y^2",
                when(|p| p % 4 == 1),
                3,
                Quad::Form(4),
                vec![ex(|e, _| e.lin(e.x2(4), &[zero(), (4, 1), (-2, 1), (-1, 4), zero()]))],
            )
            .branch(
                "p=3 mod 4",
                when(|p| p % 4 == 3),
                3,
                Quad::None,
                vec![
                    ex(|e, _| -e.pw(2) / e.k(4) / e.binom((e.p - 3) / 2, (e.p - 3) / 4).sq()),
                    ex(|e, _| -e.pw(2) / e.b4().sq()),
                ],
            ),
    );
    v.push(
        Statement::new("EQ1.2", CitedResult, 5, sum_lhs(TermFamily::CentralSq3k(108), Weight::one(), PMinus1))
            .branch(
                "p=x^2+3y^2",
                when(|p| p % 3 == 1),
                3,
                Quad::Form(3),
                vec![ex(|e, _| e.lin(e.x2(3), &[zero(), (4, 1), (-2, 1), (-1, 4), zero()]))],
            )
            .branch(
                "p=2 mod 3",
                when(|p| p % 3 == 2),
                3,
                Quad::None,
                vec![ex(|e, _| -e.pw(2) / e.k(2) / e.b6().sq())],
            ),
    );
    v.push(
        Statement::new("EQ1.3", CitedResult, 5, sum_lhs(TermFamily::CentralSq4k2k(256), Weight::one(), PMinus1))
            .branch(
                "p=x^2+2y^2",
                when(|p| pc(p, 8, &[1, 3])),
                3,
                Quad::Form(2),
                vec![ex(|e, _| e.lin(e.x2(2), &[zero(), (4, 1), (-2, 1), (-1, 4), zero()]))],
            )
            .branch(
                "p=5,7 mod 8",
                when(|p| pc(p, 8, &[5, 7])),
                3,
                Quad::None,
                vec![ex(|e, _| -e.pw(2) / e.k(3) / e.b8().sq())],
            ),
    );
    v.push(
        Statement::new(
            "EQ1.4",
            CitedResult,
            5,
            ex(|e, _| e.leg3() * e.sum(&TermFamily::Mixed6k(1728), &Weight::one(), PMinus1)),
        )
        .branch(
            "p=x^2+4y^2",
            when(|p| p % 4 == 1),
            3,
            Quad::Form(4),
            vec![ex(|e, _| e.lin(e.x2(4), &[zero(), (4, 1), (-2, 1), (-1, 4), zero()]))],
        )
        .branch(
            "p=3 mod 4",
            when(|p| p % 4 == 3),
            3,
            Quad::None,
            vec![ex(|e, _| e.f(5, 12) * e.pw(2) / e.binom((e.p - 3) / 2, (e.p - 3) / 4).sq())],
        ),
    );

    // L2.4 and L3.3: harmonic-number congruences
    let l24: [(&str, u32, Expr, Expr); 4] = [
        (
            "L2.4.1",
            2,
            ex(|e, _| e.h((e.p - 1) / 2, 1)),
            ex(|e, _| -e.k(2) * e.q2() + e.p() * e.q2().sq()),
        ),
        ("L2.4.2", 1, ex(|e, _| e.h((e.p - 1) / 2, 2)), ex(|e, _| e.k(0))),
        (
            "L2.4.3",
            2,
            ex(|e, _| e.h(e.p / 4, 1)),
            ex(|e, _| -e.k(3) * e.q2() + e.f(3, 2) * e.p() * e.q2().sq() - e.sgn4() * e.p() * e.e3()),
        ),
        ("L2.4.4", 1, ex(|e, _| e.h(e.p / 4, 2)), ex(|e, _| e.k(4) * e.sgn4() * e.e3())),
    ];
    for (id, exp, lhs, rhs) in l24 {
        v.push(Statement::new(id, Lemma, 5, lhs).branch("all", always(), exp, Quad::None, vec![rhs]));
    }
    let l33: [(&str, u32, Expr, Expr); 4] = [
        (
            "L3.3.1",
            2,
            ex(|e, _| e.h(e.p / 3, 1)),
            ex(|e, _| {
                -e.f(3, 2) * e.q3() + e.f(3, 4) * e.p() * e.q3().sq() - e.p() * e.leg3() * e.u3()
            }),
        ),
        (
            "L3.3.2",
            2,
            ex(|e, _| e.h(2 * e.p / 3, 1)),
            ex(|e, _| {
                -e.f(3, 2) * e.q3() + e.f(3, 4) * e.p() * e.q3().sq() + e.k(2) * e.p() * e.leg3() * e.u3()
            }),
        ),
        ("L3.3.3", 1, ex(|e, _| e.h(e.p / 3, 2)), ex(|e, _| e.k(3) * e.leg3() * e.u3())),
        ("L3.3.4", 1, ex(|e, _| -e.h(2 * e.p / 3, 2)), ex(|e, _| e.k(3) * e.leg3() * e.u3())),
    ];
    for (id, exp, lhs, rhs) in l33 {
        v.push(Statement::new(id, Lemma, 5, lhs).branch("all", always(), exp, Quad::None, vec![rhs]));
    }

    // same branch shapes as the cube family, with S_p(1/2) on the left
    let mut l25 = cube_thm("L2.5", Lemma, 5, Weight::one(), Half, [f(0, 1), f(0, 1), f(-1, 4)], [f(1, 1), f(0, 1), f(1, 2)]);
    l25.lhs = ex(|e, _| e.s(&fr(1, 2)));
    v.push(l25);

    v.push(
        Statement::new("T2.2", Theorem, 5, sum_lhs(cube(64), Weight::inv(2, -1, 1), PMinus1))
            .branch(
                "p=x^2+4y^2",
                when(|p| p % 4 == 1),
                3,
                Quad::Form(4),
                vec![ex(|e, _| e.lin(e.x2(4), &[zero(), (-2, 1), (1, 1), (1, 4), zero()]))],
            )
            .branch(
                "p=3 mod 4",
                when(|p| p % 4 == 3),
                3,
                Quad::None,
                vec![ex(|e, _| {
                    let b = e.b4().sq();
                    -e.f(1, 4) * (e.k(2) + e.pw(2) * e.e3()) * e.tw() * b.clone() + e.pw(2) / (e.k(2) * b)
                })],
            ),
    );
    v.push(
        Statement::new("Cor2.1", Corollary, 5, sum_lhs(TermFamily::Mixed6k(1728), Weight::one(), PMinus1))
            .only("p = 3 mod 4", |p| p % 4 == 3)
            .branch("p=7 mod 12", when(|p| p % 12 == 7), 3, Quad::None, vec![ex(|e, _| -e.k(5) * e.pw(2) / e.b12().sq())])
            .branch(
                "p=11 mod 12",
                when(|p| p % 12 == 11),
                3,
                Quad::None,
                vec![ex(|e, _| -e.pw(2) / (e.k(5) * e.b12().sq()))],
            ),
    );

    let one = Weight::one;
    let w1 = || Weight::inv(1, 1, 1);
    let k = Weight::KPow;
    let m2 = || Weight::inv(2, -1, 1);

    v.push(cube_thm("T3.2", Theorem, 3, w1(), Half, [f(4, 1), f(-2, 1), f(0, 1)], [f(-1, 1), f(-1, 1), f(-1, 2)]));
    v.push(sq3k_thm("T3.3", 5, w1(), PMinus2, f(0, 1), [f(4, 1), f(-2, 1), f(0, 1)], [f(-2, 1), f(-1, 2)]));
    v.push(sq4k_thm("T3.4", 5, w1(), PMinus2, [zero(), f(4, 1), f(-2, 1), zero(), zero()], f(-1, 3)));
    v.push(mixed_thm("T3.5", 5, w1(), PMinus2, zero(), [f(4, 1), f(-2, 1)], f(-1, 5), f(-5, 1)));

    v.push(cube_thm("T4.2", Theorem, 5, k(1), PMinus1, [f(-1, 1), f(1, 2), f(1, 8)], [f(-1, 4), f(1, 4), f(-1, 8)]));
    v.push(sq3k_thm("T4.3", 5, k(1), PMinus1, zero(), [f(-8, 9), f(4, 9), f(1, 9)], [f(-4, 9), f(1, 9)]));
    v.push(sq4k_thm("T4.4", 3, k(1), PMinus1, [zero(), f(-3, 4), f(3, 8), f(3, 32), zero()], f(-1, 16)));
    v.push(mixed_thm("T4.5", 5, k(1), PMinus1, zero(), [f(-5, 9), f(5, 18)], f(-1, 36), f(-25, 36)));

    v.push(cube_thm(
        "T5.2",
        Theorem,
        3,
        Weight::inv(2, -1, 2),
        PMinus1,
        [f(2, 1), f(-1, 1), f(-1, 2)],
        [f(3, 2), f(-1, 2), f(3, 4)],
    ));
    v.push(sq3k_thm("T5.3", 5, m2(), PMinus1, zero(), [f(-20, 9), f(10, 9), f(1, 4)], [f(-8, 9), f(5, 18)]));
    v.push(sq4k_thm("T5.4", 3, m2(), PMinus1, [zero(), f(-5, 2), f(5, 4), f(1, 4), zero()], f(-1, 8)));
    v.push(mixed_thm("T5.5", 5, m2(), PMinus1, zero(), [f(-26, 9), f(13, 9)], f(-1, 18), f(-25, 18)));

    v.push(cube_thm("T6.3", Theorem, 5, k(2), PMinus1, [f(1, 6), f(-1, 12), f(-1, 24)], [f(1, 8), f(-1, 24), f(1, 16)]));
    v.push(sq3k_thm("T6.4", 5, k(2), PMinus1, zero(), [f(32, 243), f(-16, 243), f(-17, 486)], [f(52, 243), f(-4, 243)]));
    v.push(sq4k_thm("T6.5", 5, k(2), PMinus1, [zero(), f(3, 32), f(-3, 64), f(-7, 256), zero()], f(11, 384)));
    v.push(mixed_thm("T6.6", 5, k(2), PMinus1, zero(), [f(25, 486), f(-25, 972)], f(23, 1944), f(575, 1944)));

    v.push(cube_thm("T7.3", Theorem, 7, k(3), PMinus1, [f(0, 1), f(0, 1), f(1, 160)], [f(-1, 40), f(0, 1), f(-1, 80)]));
    v.push(sq3k_thm(
        "T7.4",
        7,
        k(3),
        PMinus1,
        zero(),
        [f(16, 10935), f(-8, 10935), f(113, 21870)],
        [f(-92, 2187), f(-2, 10935)],
    ));
    v.push(sq4k_thm("T7.5", 5, k(3), PMinus1, [zero(), f(3, 1280), f(-3, 2560), f(41, 10240), zero()], f(-17, 3072)));
    v.push(mixed_thm("T7.6", 7, k(3), PMinus1, zero(), [f(5, 2187), f(-5, 4374)], f(-197, 87480), f(-985, 17496)));

    let w2 = || Weight::inv(1, 2, 1);
    v.push(cube_thm(
        "T8.2",
        Theorem,
        5,
        w2(),
        Half,
        [f(52, 27), f(-26, 27), f(-1, 27)],
        [f(-1, 3), f(-13, 27), f(-1, 6)],
    ));
    v.push(sq3k_thm("T8.3", 7, w2(), PMinus3, zero(), [f(29, 15), f(-29, 30), f(-3, 80)], [f(-2, 3), f(-29, 120)]));
    v.push(sq4k_thm("T8.4", 11, w2(), PMinus3, [zero(), f(68, 35), f(-34, 35), f(-4, 105), zero()], f(-1, 9)));
    v.push(mixed_thm("T8.5", 13, w2(), PMinus3, zero(), [f(452, 231), f(-226, 231)], f(-1, 15), f(-5, 3)));

    let w11 = || Weight::inv(1, 1, 2);
    v.push(cube_thm("T9.3", Theorem, 5, w11(), Half, [f(8, 1), f(-4, 1), f(1, 1)], [f(-6, 1), f(-2, 1), f(-3, 1)]));
    v.push(sq3k_thm("T9.4", 5, w11(), PMinus2, zero(), [f(8, 1), f(-4, 1), f(9, 8)], [f(-13, 1), f(-1, 1)]));
    v.push(sq4k_thm("T9.5", 5, w11(), PMinus2, [zero(), f(8, 1), f(-4, 1), f(4, 3), zero()], f(-22, 9)));
    v.push(mixed_thm("T9.6", 5, w11(), PMinus2, zero(), [f(8, 1), f(-4, 1)], f(-46, 25), f(-46, 1)));

    let w111 = || Weight::inv(1, 1, 3);
    v.push(sq3k_thm("T10.2", 5, w111(), PMinus2, f(9, 1), [f(-2, 1), f(1, 1), f(117, 16)], [f(-115, 2), f(1, 4)]));
    v.push(sq4k_thm("T10.3", 5, w111(), PMinus2, [f(32, 3), f(-16, 3), f(8, 3), f(88, 9), zero()], f(-340, 27)));
    v.push(mixed_thm("T10.4", 7, w111(), PMinus2, f(72, 5), [f(-64, 5), f(32, 5)], f(-1576, 125), f(-1576, 5)));
    v.push(cube_thm(
        "T10.5",
        Theorem,
        3,
        Weight::inv(2, -1, 3),
        PMinus1,
        [f(0, 1), f(0, 1), f(3, 4)],
        [f(-3, 1), f(0, 1), f(-3, 2)],
    ));

    let w3 = || Weight::inv(1, 3, 1);
    v.push(cube_thm(
        "T11.2",
        Theorem,
        7,
        w3(),
        Half,
        [f(172, 135), f(-86, 135), f(-118, 3375)],
        [f(-67, 375), f(-43, 135), f(-67, 750)],
    ));
    v.push(sq3k_thm("T11.3", 11, w3(), PMinus4, zero(), [f(32, 25), f(-16, 25), f(-99, 2800)], [f(-5, 14), f(-4, 25)]));
    v.push(sq4k_thm(
        "T11.4",
        13,
        w3(),
        PMinus4,
        [zero(), f(676, 525), f(-338, 525), f(-1864, 51975), zero()],
        f(-53, 891),
    ));
    v.push(mixed_thm("T11.5", 19, w3(), PMinus4, zero(), [f(100, 77), f(-50, 77)], f(-197, 5525), f(-197, 221)));

    v.push(cube_thm(
        "T12.2",
        Theorem,
        5,
        Weight::inv(2, -3, 1),
        PMinus1,
        [f(-26, 27), f(13, 27), f(11, 108)],
        [f(-1, 6), f(13, 54), f(-1, 12)],
    ));

    let _ = one;
    v
}

fn cited_results() -> Vec<Statement> {
    use UpperBound::*;
    let mut v = Vec::new();
    v.push(
        Statement::new("R-Tauraso", Kind::CitedResult, 5, sum_lhs(cube(64), Weight::inv(1, 1, 3), Half))
            .branch(
                "p=x^2+4y^2",
                when(|p| p % 4 == 1),
                3,
                Quad::Form(4),
                vec![ex(|e, _| e.k(8) + e.k(6) * e.pw(2) / e.x2(4))],
            )
            .branch(
                "p=3 mod 4",
                when(|p| p % 4 == 3),
                3,
                Quad::None,
                vec![ex(|e, _| {
                    let corr = e.k(1) + e.k(2) * e.p() + (e.k(3) - e.f(1, 2) * e.e3()) * e.pw(2);
                    e.k(8) - e.k(96) / (e.pow2(e.p as i64 - 1) * corr) * e.binom((e.p - 3) / 2, (e.p - 3) / 4).sq()
                })],
            ),
    );
    v.push(
        Statement::new("R-Guo", Kind::CitedResult, 5, sum_lhs(TermFamily::CentralSq3k(108), Weight::one(), PMinus1))
            .only("p = 5 mod 6", |p| p % 6 == 5)
            .branch(
                "p=5 mod 6",
                always(),
                3,
                Quad::None,
                vec![ex(|e, _| {
                    let k1 = (2 * e.p - 1) / 3;
                    let k2 = (e.p - 2) / 3;
                    e.k(2) * e.p() * e.binom_q(&fr(-2, 3), k1) / (e.k(3) * e.binom_q(&fr(-7, 6), k1))
                        + e.p() * e.binom_q(&fr(-5, 6), k2) / (e.k(3) * e.binom_q(&fr(-4, 3), k2))
                })],
            ),
    );
    let sun: [(&str, TermFamily, UpperBound, u64, Quad, fn(u64) -> bool, &'static str, bool); 4] = [
        ("R-Sun.1", cube(64), PMinus1, 5, Quad::Form(4), |p| p % 4 == 1, "p = 1 mod 4", false),
        ("R-Sun.2", TermFamily::CentralSq3k(108), PMinus1, 5, Quad::Form(3), |p| p % 3 == 1, "p = 1 mod 3", false),
        ("R-Sun.3", TermFamily::CentralSq4k2k(256), PMinus1, 5, Quad::Form(2), |p| pc(p, 8, &[1, 3]), "p = 1,3 mod 8", false),
        ("R-Sun.4", TermFamily::Mixed6k(1728), PMinus1, 5, Quad::Form(4), |p| p % 4 == 1, "p = 1 mod 4", true),
    ];
    for (id, fam, upper, minp, quad, only, text, signed) in sun {
        let Quad::Form(d) = quad else { unreachable!() };
        let lhs = ex(move |e, _| {
            let s = e.sum(&fam, &Weight::inv(1, 1, 1), upper);
            if signed {
                e.leg3() * s
            } else {
                s
            }
        });
        v.push(
            Statement::new(id, Kind::CitedResult, minp, lhs)
                .only(text, only)
                .branch("p=x^2+dy^2", always(), 2, quad, vec![ex(move |e, _| e.k(4) * e.x2(d) - e.k(2) * e.p())]),
        );
    }
    v
}

// conjectures: tables of printed coefficients

/// One printed congruence of a quadratic-form branch:
/// `k0 + ks*s + A z^2 + B p + C p^2/z^2` with `z` either `x` or `y`.
#[derive(Clone, Copy)]
struct Ci {
    w: (i64, u32),
    use_y: bool,
    k0: Fr,
    ks: i64,
    abc: [Fr; 3],
}

/// One printed congruence of the other branch: `k0 + ks*s + c R + b p`.
#[derive(Clone, Copy)]
struct Cii {
    w: (i64, u32),
    k0: Fr,
    ks: i64,
    c: Fr,
    b: Fr,
}

fn ci(shift: i64, pow: u32, use_y: bool, k0: Fr, ks: i64, abc: [Fr; 3]) -> Ci {
    Ci { w: (shift, pow), use_y, k0, ks, abc }
}

fn cii(shift: i64, pow: u32, k0: Fr, ks: i64, c: Fr, b: Fr) -> Cii {
    Cii { w: (shift, pow), k0, ks, c, b }
}

#[derive(Clone, Copy)]
enum Agg {
    R1,
    R2,
    R3,
    R7,
    C23,
}

fn agg(e: &Env, a: Agg) -> X {
    match a {
        Agg::R1 => e.r1(),
        Agg::R2 => e.r2(),
        Agg::R3 => e.r3(),
        Agg::R7 => e.r7(),
        Agg::C23 => e.c23(),
    }
}

#[derive(Clone, Copy)]
enum Sign {
    One,
    /// `(-1)^{(p-1)/2}`
    Half,
    /// `(-1)^{(p-1)/4}`
    Quarter,
    /// `(-1)^{(p-3)/4}`
    Quarter3,
}

fn sign_of(p: u64, s: Sign) -> i64 {
    let e = match s {
        Sign::One => 0,
        Sign::Half => (p - 1) / 2,
        Sign::Quarter => (p - 1) / 4,
        Sign::Quarter3 => (p - 3) / 4,
    };
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

struct ConjCube {
    n: u32,
    m: i64,
    minp: u64,
    d: u64,
    class_i: fn(u64) -> bool,
    text_i: &'static str,
    class_ii: fn(u64) -> bool,
    text_ii: &'static str,
    sign_i: Sign,
    sign_ii: Sign,
    agg: Agg,
    i: Vec<Ci>,
    ii: Vec<Cii>,
}

fn ci_expr(d: u64, c: Ci, sign: Sign) -> Expr {
    ex(move |e, _| {
        let z = if c.use_y { e.y2(d) } else { e.x2(d) };
        let s = sign_of(e.p, sign);
        e.lin(z, &[c.k0, c.abc[0], c.abc[1], c.abc[2], zero()]) + e.k(c.ks * s)
    })
}

fn cii_expr(c: Cii, sign: Sign, a: Agg) -> Expr {
    ex(move |e, _| {
        let s = sign_of(e.p, sign);
        e.f(c.k0.0, c.k0.1) + e.k(c.ks * s) + e.f(c.c.0, c.c.1) * agg(e, a) + e.f(c.b.0, c.b.1) * e.p()
    })
}

fn signed_half_sum(m: i64, w: (i64, u32), sign: Sign) -> Expr {
    let fam = cube(m);
    let w = Weight::inv(1, w.0, w.1);
    ex(move |e, _| e.k(sign_of(e.p, sign)) * e.sum(&fam, &w, UpperBound::Half))
}

fn conj_cube(c: ConjCube) -> Vec<Statement> {
    let mut v = Vec::new();
    for (j, e) in c.i.iter().enumerate() {
        let id = format!("C13.{}.i.{}", c.n, j + 1);
        v.push(
            Statement::new(&id, Kind::Conjecture, c.minp, signed_half_sum(c.m, e.w, c.sign_i))
                .only(c.text_i, c.class_i)
                .branch(c.text_i, always(), 3, Quad::Form(c.d), vec![ci_expr(c.d, *e, c.sign_i)]),
        );
    }
    for (j, e) in c.ii.iter().enumerate() {
        let id = format!("C13.{}.ii.{}", c.n, j + 1);
        v.push(
            Statement::new(&id, Kind::Conjecture, c.minp, signed_half_sum(c.m, e.w, c.sign_ii))
                .only(c.text_ii, c.class_ii)
                .branch(c.text_ii, always(), 2, Quad::None, vec![cii_expr(*e, c.sign_ii, c.agg)]),
        );
    }
    v
}

fn conjectures() -> Vec<Statement> {
    let f = |n: i64, d: i64| (n, d);
    let z = zero();
    let mut v = Vec::new();

    v.extend(conj_cube(ConjCube {
        n: 1,
        m: 1,
        minp: 11,
        d: 7,
        class_i: |p| pc(p, 7, &[1, 2, 4]),
        text_i: "p = 1,2,4 mod 7",
        class_ii: |p| pc(p, 7, &[3, 5, 6]),
        text_ii: "p = 3,5,6 mod 7",
        sign_i: Sign::One,
        sign_ii: Sign::One,
        agg: Agg::R7,
        i: vec![
            ci(2, 1, true, z, 0, [f(-466, 27), f(29, 27), f(17, 864)]),
            ci(3, 1, true, z, 0, [f(-36052, 3375), f(2378, 3375), f(1421, 108000)]),
            ci(1, 2, true, z, 0, [f(-68, 1), f(1, 1), f(-1, 4)]),
            ci(2, 2, true, z, 0, [f(-287, 27), f(119, 216), f(7, 864)]),
            ci(3, 2, true, z, 0, [f(-68722, 16875), f(33079, 135000), f(4987, 1080000)]),
            ci(1, 3, true, f(1, 8), 0, [f(-201, 2), f(-9, 4), f(-39, 32)]),
        ],
        ii: vec![
            cii(2, 1, z, 0, f(1, 24), f(-1, 9)),
            cii(3, 1, z, 0, f(1, 120), f(-11, 225)),
            cii(2, 2, z, 0, f(7, 72), f(-7, 72)),
            cii(3, 2, z, 0, f(37, 3600), f(-307, 9000)),
            cii(1, 3, f(1, 8), 0, f(24, 1), f(18, 1)),
        ],
    }));

    v.extend(conj_cube(ConjCube {
        n: 2,
        m: 16,
        minp: 7,
        d: 3,
        class_i: |p| p % 3 == 1,
        text_i: "p = 1 mod 3",
        class_ii: |p| p % 3 == 2,
        text_ii: "p = 2 mod 3",
        sign_i: Sign::One,
        sign_ii: Sign::One,
        agg: Agg::R3,
        i: vec![
            ci(2, 1, false, z, 0, [f(64, 27), f(-4, 3), f(-1, 9)]),
            ci(3, 1, false, z, 0, [f(5056, 3375), f(-302, 375), f(-97, 1125)]),
            ci(1, 2, true, z, 0, [f(-24, 1), f(2, 1), f(-1, 2)]),
            ci(2, 2, true, z, 0, [f(-40, 9), f(14, 27), f(-1, 54)]),
            ci(3, 2, true, z, 0, [f(-9656, 5625), f(3958, 16875), f(169, 33750)]),
            ci(1, 3, true, f(2, 1), 0, [f(-24, 1), f(0, 1), f(-5, 2)]),
        ],
        ii: vec![
            cii(2, 1, z, 0, f(-4, 27), f(-4, 27)),
            cii(3, 1, z, 0, f(-4, 135), f(-38, 675)),
            cii(2, 2, z, 0, f(-16, 27), f(-2, 9)),
            cii(3, 2, z, 0, f(-56, 675), f(-58, 1125)),
            cii(1, 3, f(2, 1), 0, f(-32, 1), f(-4, 1)),
        ],
    }));

    v.extend(conj_cube(ConjCube {
        n: 3,
        m: -8,
        minp: 7,
        d: 4,
        class_i: |p| p % 4 == 1,
        text_i: "p = 1 mod 4",
        class_ii: |p| p % 4 == 3,
        text_ii: "p = 3 mod 4",
        sign_i: Sign::One,
        sign_ii: Sign::One,
        agg: Agg::R1,
        i: vec![
            ci(2, 1, false, z, 0, [f(64, 27), f(-35, 27), f(-4, 27)]),
            ci(3, 1, false, z, 0, [f(202, 135), f(-538, 675), f(-611, 6750)]),
            ci(1, 2, true, z, 0, [f(-32, 1), f(1, 1), f(-7, 16)]),
            ci(2, 2, true, z, 0, [f(-152, 27), f(16, 27), f(7, 216)]),
            ci(3, 2, true, z, 0, [f(-1504, 675), f(811, 3375), f(1927, 270000)]),
            ci(1, 3, true, f(-1, 1), 0, [f(-48, 1), f(0, 1), f(-33, 16)]),
        ],
        ii: vec![
            cii(2, 1, z, 0, f(0, 1), f(1, 9)),
            cii(3, 1, z, 0, f(1, 250), f(11, 225)),
            cii(2, 2, z, 0, f(-1, 18), f(1, 9)),
            cii(3, 2, z, 0, f(47, 5625), f(43, 1125)),
            cii(1, 3, f(-1, 1), 0, f(12, 1), f(6, 1)),
        ],
    }));

    v.extend(conj_cube(ConjCube {
        n: 4,
        m: -64,
        minp: 7,
        d: 2,
        class_i: |p| pc(p, 8, &[1, 3]),
        text_i: "p = 1,3 mod 8",
        class_ii: |p| pc(p, 8, &[5, 7]),
        text_ii: "p = 5,7 mod 8",
        sign_i: Sign::Half,
        sign_ii: Sign::Half,
        agg: Agg::R2,
        i: vec![
            ci(2, 1, false, z, 0, [f(2, 1), f(-8, 9), f(-2, 9)]),
            ci(3, 1, false, z, 0, [f(198, 125), f(-1036, 1125), f(-52, 1125)]),
            ci(1, 2, true, z, 0, [f(-8, 1), f(0, 1), f(-1, 1)]),
            ci(2, 2, true, z, 0, [f(-40, 9), f(32, 27), f(1, 3)]),
            ci(3, 2, true, z, 0, [f(56, 5625), f(-1312, 16875), f(-81, 625)]),
            ci(1, 3, true, z, -8, [f(-32, 1), f(8, 1), f(-4, 1)]),
        ],
        ii: vec![
            cii(2, 1, z, 0, f(7, 54), f(1, 9)),
            cii(3, 1, z, 0, f(-19, 270), f(-29, 225)),
            cii(2, 2, z, 0, f(19, 27), f(2, 27)),
            cii(3, 2, z, 0, f(-233, 675), f(-254, 3375)),
            cii(1, 3, z, -8, f(-12, 1), f(0, 1)),
        ],
    }));

    v.extend(conj_cube(ConjCube {
        n: 5,
        m: -512,
        minp: 7,
        d: 4,
        class_i: |p| p % 4 == 1,
        text_i: "p = 1 mod 4",
        class_ii: |p| p % 4 == 3,
        text_ii: "p = 3 mod 4",
        sign_i: Sign::Quarter,
        sign_ii: Sign::Quarter3,
        agg: Agg::R1,
        i: vec![
            ci(2, 1, false, z, 0, [f(-152, 27), f(190, 27), f(-22, 27)]),
            ci(3, 1, false, z, 0, [f(4504, 135), f(-23074, 675), f(9104, 3375)]),
            ci(1, 2, true, z, 0, [f(64, 1), f(-8, 1), f(-1, 1)]),
            ci(2, 2, true, z, 0, [f(-6464, 27), f(664, 27), f(65, 27)]),
            ci(1, 3, true, z, -64, [f(-192, 1), f(72, 1), f(-3, 1)]),
        ],
        ii: vec![
            cii(2, 1, z, 0, f(28, 3), f(38, 9)),
            cii(3, 1, z, 0, f(-14348, 375), f(-3938, 225)),
            cii(2, 2, z, 0, f(424, 9), f(-16, 3)),
            cii(1, 3, z, -64, f(-96, 1), f(24, 1)),
        ],
    }));

    v.extend(conj_cube(ConjCube {
        n: 6,
        m: 256,
        minp: 7,
        d: 3,
        class_i: |p| p % 3 == 1,
        text_i: "p = 1 mod 3",
        class_ii: |p| p % 3 == 2,
        text_ii: "p = 2 mod 3",
        sign_i: Sign::Half,
        sign_ii: Sign::Half,
        agg: Agg::R3,
        i: vec![
            ci(2, 1, false, z, 0, [f(-8, 27), f(10, 9), f(2, 9)]),
            ci(3, 1, false, z, 0, [f(-12344, 3375), f(4354, 1125), f(728, 1125)]),
            ci(1, 2, true, z, 0, [f(-48, 1), f(8, 1), f(0, 1)]),
            ci(2, 2, true, z, 0, [f(-48, 1), f(200, 27), f(0, 1)]),
            ci(1, 3, true, z, 32, [f(96, 1), f(-24, 1), f(-2, 1)]),
        ],
        ii: vec![
            cii(2, 1, z, 0, f(176, 27), f(26, 27)),
            cii(3, 1, z, 0, f(1808, 135), f(1378, 675)),
            cii(2, 2, z, 0, f(32, 1), f(-16, 27)),
            cii(3, 2, z, 0, f(13856, 225), f(-1184, 675)),
            cii(1, 3, z, 32, f(128, 1), f(8, 1)),
        ],
    }));

    v.extend(conj_cube(ConjCube {
        n: 7,
        m: 4096,
        minp: 11,
        d: 7,
        class_i: |p| pc(p, 7, &[1, 2, 4]),
        text_i: "p = 1,2,4 mod 7",
        class_ii: |p| pc(p, 7, &[3, 5, 6]),
        text_ii: "p = 3,5,6 mod 7",
        sign_i: Sign::Half,
        sign_ii: Sign::Half,
        agg: Agg::R7,
        i: vec![
            ci(2, 1, true, z, 0, [f(52616, 27), f(-34, 27), f(-20, 27)]),
            ci(3, 1, true, z, 0, [f(217125848, 3375), f(-250882, 3375), f(-83972, 3375)]),
            ci(1, 2, true, z, 0, [f(-1136, 1), f(64, 1), f(2, 1)]),
            ci(1, 3, true, z, 512, [f(6432, 1), f(-648, 1), f(-6, 1)]),
        ],
        ii: vec![
            cii(2, 1, z, 0, f(-1216, 1), f(-11266, 9)),
            cii(3, 1, z, 0, f(-199232, 5), f(-1845802, 45)),
            cii(1, 3, z, 512, f(-1536, 1), f(-1944, 1)),
        ],
    }));

    // 13.8 and 13.9: one id per sum, both residue classes as branches
    type Part = ((i64, u32), UpperBound, Ci, Option<Cii>);
    let two_class = |n: u32, fam: TermFamily, minp: u64, d: u64, a: Agg, parts: Vec<Part>| -> Vec<Statement> {
        let mut out = Vec::new();
        for (j, (w, upper, i, ii)) in parts.into_iter().enumerate() {
            let id = format!("C13.{n}.{}", j + 1);
            let quad = if d == 27 { Quad::Form27 } else { Quad::Form(d) };
            let mut s = Statement::new(&id, Kind::Conjecture, minp, sum_lhs(fam.clone(), Weight::inv(1, w.0, w.1), upper))
                .branch("p = 1 mod 3", when(|p| p % 3 == 1), 3, quad, vec![ci_expr(d, i, Sign::One)]);
            match ii {
                Some(ii) => s = s.branch("p = 2 mod 3", when(|p| p % 3 == 2), 2, Quad::None, vec![cii_expr(ii, Sign::One, a)]),
                None => s = s.only("p = 1 mod 3", |p| p % 3 == 1),
            }
            out.push(s);
        }
        out
    };
    use UpperBound::*;
    v.extend(two_class(
        8,
        TermFamily::CentralSq3k(-192),
        11,
        27,
        Agg::C23,
        vec![
            ((2, 1), PMinus3, ci(2, 1, false, z, 0, [f(2, 5), f(-7, 15), f(-23, 20)]), Some(cii(2, 1, z, 0, f(-1, 1), f(-1, 3)))),
            (
                (3, 1),
                PMinus4,
                ci(3, 1, false, z, 0, [f(99, 200), f(-103, 75), f(141, 700)]),
                Some(cii(3, 1, z, 0, f(13, 14), f(23, 60))),
            ),
            (
                (1, 3),
                PMinus2,
                ci(1, 3, false, f(-16, 1), 0, [f(51, 8), f(-9, 1), f(147, 4)]),
                Some(cii(1, 3, f(-16, 1), 0, f(115, 2), f(-15, 4))),
            ),
            ((1, 2), PMinus2, ci(1, 2, false, z, 0, [f(1, 4), f(-2, 1), f(19, 2)]), None),
        ],
    ));
    v.extend(two_class(
        9,
        TermFamily::CentralSq4k2k(-144),
        13,
        3,
        Agg::R3,
        vec![
            ((2, 1), PMinus3, ci(2, 1, true, z, 0, [f(-32, 5), f(16, 15), f(19, 315)]), Some(cii(2, 1, z, 0, f(-4, 21), f(0, 1)))),
            (
                (3, 1),
                PMinus4,
                ci(3, 1, true, z, 0, [f(-3584, 825), f(1682, 2475), f(431, 17325)]),
                Some(cii(3, 1, z, 0, f(4, 63), f(2, 45))),
            ),
            (
                (1, 3),
                PMinus2,
                ci(1, 3, true, f(-6, 1), 0, [f(-376, 9), f(56, 9), f(-211, 54)]),
                Some(cii(1, 3, f(-6, 1), 0, f(1360, 27), f(20, 27))),
            ),
            ((1, 2), PMinus2, ci(1, 2, true, z, 0, [f(-40, 3), f(2, 3), f(-13, 18)]), None),
        ],
    ));
    v
}

static CATALOG: Lazy<Vec<Statement>> = Lazy::new(|| {
    let mut v = special_theorems();
    v.extend(general_theorems());
    v.extend(cited_results());
    v.extend(conjectures());
    v.sort_by_key(|s| id_key(&s.id));
    v
});

/// Sort key: prefix group, then numeric components, so that T2.2 < T10.1.
fn id_key(id: &str) -> (u8, String, Vec<u64>, String) {
    let group = match id.chars().next() {
        Some('E') => 0,
        Some('L') | Some('T') | Some('C') if id.starts_with("Cor") => 1,
        Some('L') | Some('T') => 1,
        Some('R') => 3,
        _ => 2,
    };
    let (alpha, rest) = id.split_at(id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len()));
    let mut nums = Vec::new();
    let mut tail = String::new();
    for part in rest.split('.') {
        match part.parse::<u64>() {
            Ok(n) => nums.push(n),
            Err(_) => {
                nums.push(roman(part));
                tail.push_str(part);
            }
        }
    }
    let _ = alpha;
    (group, String::new(), nums, tail)
}

fn roman(s: &str) -> u64 {
    match s {
        "i" => 1,
        "ii" => 2,
        _ => 0,
    }
}

/// Every statement, in a stable order.
pub fn catalog() -> &'static [Statement] {
    &CATALOG
}

pub fn find(id: &str) -> Option<&'static Statement> {
    catalog().iter().find(|s| s.id == id)
}

/// Statements matching any of the patterns: a glob, an exact id, or a dotted prefix (`C13.1.i`).
pub fn select(patterns: &[String]) -> Result<Vec<&'static Statement>> {
    let mut globs = Vec::new();
    for p in patterns {
        globs.push(glob::Pattern::new(p).map_err(|e| Error::Usage(format!("bad pattern {p}: {e}")))?);
    }
    let out: Vec<_> = catalog()
        .iter()
        .filter(|s| {
            patterns.iter().zip(&globs).any(|(p, g)| {
                g.matches(&s.id) || s.id == *p || s.id.starts_with(&format!("{p}."))
            })
        })
        .collect();
    Ok(out)
}

// ---------------------------------------------------------------------------
// verification

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    PrecisionError,
    Pole,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "Pass",
            Status::Fail => "Fail",
            Status::NotApplicable => "NotApplicable",
            Status::PrecisionError => "PrecisionError",
            Status::Pole => "Pole",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationResult {
    pub id: String,
    pub p: u64,
    pub status: Status,
    pub exponent: u32,
    /// `p^exponent` in decimal.
    pub modulus: String,
    pub lhs: String,
    pub rhs: String,
    pub branch: String,
    pub params: Params,
    pub quad: Option<(u64, u64)>,
    pub elapsed_ms: u128,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Digits of p-adic precision; default from the largest exponent.
    pub precision: Option<u32>,
    /// Samples per parity class for parametric statements.
    pub per_class: usize,
    pub seed: u64,
    /// Worker threads for range checks; `None` uses all cores.
    pub threads: Option<usize>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { precision: None, per_class: 2, seed: 20240601, threads: None }
    }
}

impl CheckOptions {
    fn digits(&self) -> u32 {
        self.precision.unwrap_or_else(|| default_precision(4))
    }
}

fn fnv(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Default parameter samples for a statement at `p`; empty for non-parametric statements.
pub fn default_samples(stmt: &Statement, p: u64, per_class: usize, seed: u64) -> Vec<Params> {
    match stmt.param {
        Param::None => Vec::new(),
        Param::T => (1..=3).map(|t| Params::t(qi(t))).collect(),
        Param::TN => {
            let mut ns = vec![1, 2, (p - 1) / 2];
            ns.retain(|&n| n >= 1 && n <= (p - 1) / 2);
            ns.dedup();
            let mut out = Vec::new();
            for t in 1..=3 {
                for &n in &ns {
                    out.push(Params::tn(qi(t), n));
                }
            }
            out
        }
        Param::A => {
            let mut classes: [Vec<Q>; 2] = [Vec::new(), Vec::new()];
            for s in 1..=12i64 {
                if (s as u64).is_multiple_of(p) {
                    continue;
                }
                for r in -12..=12i64 {
                    if r == 0 || r.gcd(&s) != 1 {
                        continue;
                    }
                    let a = fr(r, s);
                    if !stmt.admissible(p, &Params::a(a.clone())) {
                        continue;
                    }
                    let ra = residue_index(p, &a).expect("p-integral");
                    classes[(ra % 2) as usize].push(a);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p ^ fnv(&stmt.id));
            let mut out = Vec::new();
            for c in classes.iter_mut() {
                c.shuffle(&mut rng);
                out.extend(c.iter().take(per_class).cloned().map(Params::a));
            }
            let edge = qi(p as i64 - 2);
            let ep = Params::a(edge);
            if stmt.admissible(p, &ep) && !out.contains(&ep) {
                out.push(ep);
            }
            out
        }
    }
}

fn modulus(p: u64, e: u32) -> String {
    num_traits::pow(BigInt::from(p), e as usize).to_string()
}

fn not_applicable(stmt: &Statement, p: u64, params: &Params, why: &str) -> VerificationResult {
    VerificationResult {
        id: stmt.id.clone(),
        p,
        status: Status::NotApplicable,
        exponent: stmt.exponents().first().copied().unwrap_or(0),
        modulus: String::new(),
        lhs: String::new(),
        rhs: String::new(),
        branch: String::new(),
        params: params.clone(),
        quad: None,
        elapsed_ms: 0,
        detail: why.to_string(),
    }
}

fn run(stmt: &Statement, env: &Env, params: &Params) -> Result<VerificationResult> {
    let p = env.p;
    if !stmt.applies(p) {
        return Ok(not_applicable(stmt, p, params, "hypotheses exclude p"));
    }
    if !stmt.admissible(p, params) {
        return Ok(not_applicable(stmt, p, params, "inadmissible parameters"));
    }
    let start = Instant::now();
    let args = if stmt.param == Param::None { Args::none() } else { Args::resolve(p, params)? };
    let fired: Vec<&Branch> = stmt.branches.iter().filter(|b| (b.cond)(p, &args)).collect();
    if fired.len() != 1 {
        return Err(Error::Internal(format!("{}: {} branches fire at p = {p}", stmt.id, fired.len())));
    }
    let b = fired[0];
    let quad = match b.quad {
        Quad::None => None,
        Quad::Form(d) => Some(env.rep(d)?),
        Quad::Form27 => Some(env.rep(27)?),
    };
    let e = b.exponent;
    let lhs = (stmt.lhs)(env, &args).r;
    let mut status = Status::Pass;
    let mut detail = String::new();
    let mut rhs_shown = None;
    for (i, form) in b.forms.iter().enumerate() {
        let rhs = form(env, &args).r;
        let verdict = match (&lhs, &rhs) {
            (Ok(l), Ok(r)) => env.ctx.vanishes_mod(&env.ctx.sub(l, r), e as i64),
            (Err(err), _) | (_, Err(err)) => Err(err.clone()),
        };
        let this = match verdict {
            Ok(true) => Status::Pass,
            Ok(false) => Status::Fail,
            Err(Error::ExactPole(_)) => Status::Pole,
            Err(_) => Status::PrecisionError,
        };
        if this != Status::Pass && status == Status::Pass {
            status = this;
            detail = match &verdict {
                Err(err) => format!("form {}: {err}", i + 1),
                _ => format!("form {} differs", i + 1),
            };
            rhs_shown = Some(rhs.clone());
        }
        if rhs_shown.is_none() && i + 1 == b.forms.len() {
            rhs_shown = Some(rhs);
        }
    }
    let show = |v: &Result<VR>| match v {
        Ok(v) => env.ctx.display_mod(v, e),
        Err(err) => format!("<{err}>"),
    };
    let rhs = rhs_shown.map(|r| show(&r)).unwrap_or_default();
    Ok(VerificationResult {
        id: stmt.id.clone(),
        p,
        status,
        exponent: e,
        modulus: modulus(p, e),
        lhs: show(&lhs),
        rhs,
        branch: b.label.clone(),
        params: params.clone(),
        quad,
        elapsed_ms: start.elapsed().as_millis(),
        detail,
    })
}

fn lookup(id: &str) -> Result<&'static Statement> {
    find(id).ok_or_else(|| Error::UnknownStatement(id.to_string()))
}

/// Checks one statement at `p`. Parametric statements use `params`, or the first default sample.
pub fn check(id: &str, p: u64, params: Option<&Params>, opts: &CheckOptions) -> Result<VerificationResult> {
    let stmt = lookup(id)?;
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let env = Env::new(p, opts.digits())?;
    let params = match params {
        Some(pr) => pr.clone(),
        None => default_samples(stmt, p, 1, opts.seed).into_iter().next().unwrap_or_default(),
    };
    run(stmt, &env, &params)
}

/// Checks one parametric statement at `p` for each sample.
pub fn check_parametric(id: &str, p: u64, samples: &[Params], opts: &CheckOptions) -> Result<Vec<VerificationResult>> {
    let stmt = lookup(id)?;
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let env = Env::new(p, opts.digits())?;
    samples.iter().map(|s| run(stmt, &env, s)).collect()
}

fn check_prime(stmts: &[&'static Statement], p: u64, opts: &CheckOptions) -> Result<Vec<Vec<VerificationResult>>> {
    let env = Env::new(p, opts.digits())?;
    let mut out = Vec::with_capacity(stmts.len());
    for s in stmts {
        let mut rs = Vec::new();
        if s.param == Param::None {
            rs.push(run(s, &env, &Params::default())?);
        } else if !s.applies(p) {
            rs.push(not_applicable(s, p, &Params::default(), "hypotheses exclude p"));
        } else {
            for pr in default_samples(s, p, opts.per_class, opts.seed) {
                rs.push(run(s, &env, &pr)?);
            }
        }
        out.push(rs);
    }
    Ok(out)
}

/// Odd primes in `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| n % 2 == 1 && is_prime(n)).collect()
}

/// Checks every selected statement at every odd prime in `primes`, returning results
/// ordered by statement then prime regardless of parallelism.
pub fn check_range(stmts: &[&'static Statement], primes: &[u64], opts: &CheckOptions) -> Result<Vec<VerificationResult>> {
    let work = || -> Result<Vec<Vec<Vec<VerificationResult>>>> {
        primes.par_iter().map(|&p| check_prime(stmts, p, opts)).collect()
    };
    let per_prime = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let mut out = Vec::new();
    for i in 0..stmts.len() {
        for rs in &per_prime {
            out.extend(rs[i].iter().cloned());
        }
    }
    Ok(out)
}
