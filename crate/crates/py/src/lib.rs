//! Python bindings: `import pywzcong`.

use std::str::FromStr;

use num_rational::BigRational;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use wzcong::cli::{parse_family, parse_weight};
use wzcong::padic::{default_precision, make_context};
use wzcong::registry::{self, CheckOptions, Params, VerificationResult};
use wzcong::sums::{evaluate, SumSpec, UpperBound};
use wzcong::{quadform, seqlib, wzcert, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::UnknownStatement(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(s: &str) -> PyResult<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| PyValueError::new_err(format!("not a rational number: {s}")))
}

fn to_dict<'py>(py: Python<'py>, r: &VerificationResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("id", &r.id)?;
    d.set_item("p", r.p)?;
    d.set_item("status", r.status.to_string())?;
    d.set_item("exponent", r.exponent)?;
    d.set_item("modulus", &r.modulus)?;
    d.set_item("lhs", &r.lhs)?;
    d.set_item("rhs", &r.rhs)?;
    d.set_item("branch", &r.branch)?;
    if let Some(a) = &r.params.a {
        d.set_item("a", a.to_string())?;
    }
    if let Some(t) = &r.params.t {
        d.set_item("t", t.to_string())?;
    }
    if let Some(n) = r.params.n {
        d.set_item("n", n)?;
    }
    if let Some((x, y)) = r.quad {
        d.set_item("x", x)?;
        d.set_item("y", y)?;
    }
    d.set_item("detail", &r.detail)?;
    Ok(d)
}

/// Checks one statement at `p`.
#[pyfunction]
#[pyo3(signature = (id, p, a=None, t=None, n=None, precision=None))]
fn check<'py>(
    py: Python<'py>,
    id: &str,
    p: u64,
    a: Option<&str>,
    t: Option<&str>,
    n: Option<u64>,
    precision: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let params = Params { a: a.map(rational).transpose()?, t: t.map(rational).transpose()?, n };
    let opts = CheckOptions { precision, ..CheckOptions::default() };
    let given = (!params.is_empty()).then_some(&params);
    let r = py.detach(|| registry::check(id, p, given, &opts)).map_err(err)?;
    to_dict(py, &r)
}

/// Checks statements matching `ids` at every odd prime in `[lo, hi]`.
#[pyfunction]
#[pyo3(signature = (ids, lo, hi, samples=2, seed=20240601, threads=None))]
fn verify<'py>(
    py: Python<'py>,
    ids: Vec<String>,
    lo: u64,
    hi: u64,
    samples: usize,
    seed: u64,
    threads: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let stmts = registry::select(&ids).map_err(err)?;
    let opts = CheckOptions { per_class: samples, seed, threads, ..CheckOptions::default() };
    let rs = py.detach(|| registry::check_range(&stmts, &registry::primes_in(lo, hi), &opts)).map_err(err)?;
    rs.iter().map(|r| to_dict(py, r)).collect()
}

#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    registry::catalog()
        .iter()
        .map(|s| {
            let d = PyDict::new(py);
            d.set_item("id", &s.id)?;
            d.set_item("kind", s.kind.to_string())?;
            d.set_item("hypotheses", s.hypothesis())?;
            d.set_item("exponents", s.exponents())?;
            Ok(d)
        })
        .collect()
}

/// Residue of a weighted binomial sum mod `p^mod_exp`, as a decimal string.
#[pyfunction]
#[pyo3(signature = (family, p, a=None, m=None, weight="pow:0", upper="p-1", mod_exp=3, precision=None))]
#[allow(clippy::too_many_arguments)]
fn sum(
    family: &str,
    p: u64,
    a: Option<&str>,
    m: Option<i64>,
    weight: &str,
    upper: &str,
    mod_exp: u32,
    precision: Option<u32>,
) -> PyResult<String> {
    let spec = SumSpec {
        family: parse_family(family, a, m).map_err(err)?,
        weight: parse_weight(weight).map_err(err)?,
        upper: UpperBound::parse(upper).ok_or_else(|| PyValueError::new_err(format!("bad upper bound {upper}")))?,
    };
    let ctx = make_context(p, precision.unwrap_or_else(|| default_precision(mod_exp))).map_err(err)?;
    let v = evaluate(&ctx, &spec).map_err(err)?;
    Ok(ctx.reduce_mod(&v, mod_exp).map_err(err)?.to_string())
}

/// `(x, y)` with `p = x^2 + d y^2`, or `4p = x^2 + 27 y^2` when `d` is 27.
#[pyfunction]
fn decompose(p: u64, d: u64) -> PyResult<(u64, u64)> {
    if d == 27 {
        quadform::represent_4p27(p).map_err(err)
    } else {
        quadform::represent(p, d).map_err(err)
    }
}

/// A named auxiliary quantity at `p`, as a display string.
#[pyfunction]
#[pyo3(signature = (name, p, n=None, r=1, precision=None))]
fn special(name: &str, p: u64, n: Option<u64>, r: u32, precision: Option<u32>) -> PyResult<String> {
    let digits = precision.unwrap_or_else(|| default_precision(3));
    let ctx = make_context(p, digits).map_err(err)?;
    let v = match name {
        "R1" => seqlib::r1(&ctx),
        "R2" => seqlib::r2(&ctx).map_err(err)?,
        "R3" => seqlib::r3(&ctx),
        "R7" => seqlib::r7(&ctx),
        "q2" => seqlib::fermat_quotient(&ctx, 2).map_err(err)?,
        "q3" => seqlib::fermat_quotient(&ctx, 3).map_err(err)?,
        "H" => seqlib::harmonic(&ctx, n.ok_or_else(|| PyValueError::new_err("H needs n"))?, r).map_err(err)?,
        "E" => return Ok(seqlib::euler_mod_p(n.unwrap_or(p - 3), p).to_string()),
        "U" => return Ok(seqlib::u_mod_p(n.unwrap_or(p - 3), p).to_string()),
        _ => return Err(PyValueError::new_err(format!("unknown quantity {name}"))),
    };
    Ok(ctx.display_mod(&v, digits))
}

/// Telescoping check of a certificate at `a`: "Pass", "Fail at k=..." or "Pole at k=...".
#[pyfunction]
#[pyo3(signature = (cert, a, kmax=30))]
fn wz(cert: &str, a: &str, kmax: i64) -> PyResult<String> {
    let c = wzcert::certificate(cert).ok_or_else(|| PyKeyError::new_err(format!("unknown certificate {cert}")))?;
    let a = rational(a)?;
    if !c.admits(&a) {
        return Err(PyValueError::new_err(format!("a={a} is excluded for {cert}")));
    }
    Ok(match wzcert::verify_telescoping(c, &a, kmax) {
        wzcert::Outcome::Pass => "Pass".into(),
        wzcert::Outcome::Fail(k) => format!("Fail at k={k}"),
        wzcert::Outcome::Pole(k) => format!("Pole at k={k}"),
    })
}

#[pymodule]
fn pywzcong(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(sum, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(special, m)?)?;
    m.add_function(wrap_pyfunction!(wz, m)?)?;
    Ok(())
}
