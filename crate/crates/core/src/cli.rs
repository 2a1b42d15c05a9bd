//! Command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::str::FromStr;

use clap::{Args as ClapArgs, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::padic::{default_precision, is_prime, make_context, ValuedResidue};
use crate::quadform::{represent, represent_4p27};
use crate::registry::{self, CheckOptions, Params, Status, VerificationResult};
use crate::seqlib::{euler_mod_p, fermat_quotient, harmonic, r1, r2, r3, r7, u_mod_p};
use crate::sums::{evaluate, exact_oracle, SumSpec, TermFamily, UpperBound, Weight};
use crate::wzcert::{self, Outcome, Pole};

type Q = BigRational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wzcong", version, about = "Verify WZ-derived supercongruences prime by prime")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check catalog statements over a prime range.
    Verify(VerifyArgs),
    /// Evaluate one truncated sum modulo p^e.
    Sum(SumArgs),
    /// Check a WZ certificate exactly over the rationals.
    Wz(WzArgs),
    /// Write p (or 4p) as x^2 + d y^2.
    Decompose(DecomposeArgs),
    /// Print a special quantity at p.
    Special(SpecialArgs),
    /// List catalog statements.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    JsonLines,
    Csv,
    Table,
}

#[derive(ClapArgs, Debug)]
pub struct VerifyArgs {
    /// Statement ids, globs or dotted prefixes (comma separated or repeated).
    #[arg(long, value_delimiter = ',', default_value = "*")]
    pub ids: Vec<String>,
    /// Prime range `lo..hi` or a single prime.
    #[arg(long, default_value = "5..100")]
    pub primes: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Explicit samples of `a` for parametric statements.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    /// Samples of `a` per parity class of <a>_p.
    #[arg(long, default_value_t = 2)]
    pub samples: usize,
    #[arg(long, default_value_t = 20240601)]
    pub seed: u64,
    /// p-adic digits of working precision.
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<String>,
    /// Stop after the first statement with a failure.
    #[arg(long)]
    pub fail_fast: bool,
    /// Include per-check wall time (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(ClapArgs, Debug)]
pub struct SumArgs {
    /// general, central-cube, central-sq3k, central-sq4k2k or mixed6k.
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// `pow:j` for k^j or `inv:alpha,beta,j` for 1/(alpha k + beta)^j.
    #[arg(long, default_value = "pow:0", allow_hyphen_values = true)]
    pub weight: String,
    /// p-1, p-2, p-3, p-4 or (p-1)/2.
    #[arg(long, default_value = "p-1")]
    pub upper: String,
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value_t = 3)]
    pub mod_exp: u32,
    #[arg(long)]
    pub precision: Option<u32>,
    /// Cross-check against exact rational arithmetic (p <= 50).
    #[arg(long)]
    pub oracle: bool,
}

#[derive(ClapArgs, Debug)]
pub struct WzArgs {
    #[arg(long)]
    pub cert: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    #[arg(long, default_value_t = 30)]
    pub kmax: i64,
    /// Also check the finite sum identity at this n.
    #[arg(long)]
    pub n: Option<i64>,
}

#[derive(ClapArgs, Debug)]
pub struct DecomposeArgs {
    pub p: u64,
    #[arg(long, conflicts_with = "four_p27")]
    pub d: Option<u64>,
    /// Solve 4p = x^2 + 27 y^2.
    #[arg(long = "4p27")]
    pub four_p27: bool,
}

#[derive(ClapArgs, Debug)]
pub struct SpecialArgs {
    /// R1, R2, R3, R7, E, U, q2, q3 or H.
    pub name: String,
    pub p: u64,
    /// Index for E, U and H (default p-3 for E and U).
    #[arg(long)]
    pub n: Option<u64>,
    /// Order of the harmonic number.
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(ClapArgs, Debug)]
pub struct CatalogArgs {
    #[arg(long, value_delimiter = ',', default_value = "*")]
    pub ids: Vec<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

/// Parses `argv` and runs; returns the process exit code.
pub fn main() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => code,
        Err(Error::Internal(m)) if m == BROKEN_PIPE => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) | Error::UnknownStatement(_) | Error::CompositeModulus(_) => EXIT_USAGE,
                Error::NoRepresentation | Error::UnsupportedForm => EXIT_FAIL,
                _ => EXIT_INTERNAL,
            }
        }
    }
}

/// Runs a parsed command, writing the report to `out` unless redirected.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Sum(a) => cmd_sum(a, out),
        Command::Wz(a) => cmd_wz(a, out),
        Command::Decompose(a) => cmd_decompose(a, out),
        Command::Special(a) => cmd_special(a, out),
        Command::Catalog(a) => cmd_catalog(a, out),
    }
}

const BROKEN_PIPE: &str = "broken pipe";

fn io_err(e: io::Error) -> Error {
    if e.kind() == io::ErrorKind::BrokenPipe {
        return Error::Internal(BROKEN_PIPE.into());
    }
    Error::Internal(e.to_string())
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse_q(s: &str) -> Result<Q, Error> {
    Q::from_str(s.trim()).map_err(|_| usage(format!("not a rational number: {s}")))
}

/// `lo..hi`, `lo..=hi` or a single number.
pub fn parse_range(s: &str) -> Result<(u64, u64), Error> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| usage(format!("bad prime range: {s}")));
    let (lo, hi) = match s.split_once("..") {
        Some((l, h)) => (num(l)?, num(h.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(usage(format!("empty prime range: {s}")));
    }
    Ok((lo, hi))
}

// ---------------------------------------------------------------------------
// verify

const COLUMNS: [&str; 13] = ["id", "p", "status", "modulus", "lhs", "rhs", "branch", "a", "t", "n", "x", "y", "elapsed_ms"];

fn record(r: &VerificationResult, timing: bool) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("id".into(), json!(r.id));
    m.insert("p".into(), json!(r.p.to_string()));
    m.insert("status".into(), json!(r.status.to_string()));
    m.insert("modulus".into(), json!(r.modulus));
    m.insert("lhs".into(), json!(r.lhs));
    m.insert("rhs".into(), json!(r.rhs));
    m.insert("branch".into(), json!(r.branch));
    if let Some(a) = &r.params.a {
        m.insert("a".into(), json!(a.to_string()));
    }
    if let Some(t) = &r.params.t {
        m.insert("t".into(), json!(t.to_string()));
    }
    if let Some(n) = r.params.n {
        m.insert("n".into(), json!(n.to_string()));
    }
    if let Some((x, y)) = r.quad {
        m.insert("x".into(), json!(x.to_string()));
        m.insert("y".into(), json!(y.to_string()));
    }
    if timing {
        m.insert("elapsed_ms".into(), json!(r.elapsed_ms.to_string()));
    }
    if !r.detail.is_empty() && r.status != Status::NotApplicable {
        m.insert("detail".into(), json!(r.detail));
    }
    m
}

fn cell(m: &Map<String, Value>, k: &str) -> String {
    m.get(k).and_then(|v| v.as_str()).unwrap_or("").to_string()
}

struct Report<'a> {
    format: Format,
    timing: bool,
    out: &'a mut dyn Write,
    csv_header: bool,
}

impl Report<'_> {
    fn columns(&self) -> Vec<&'static str> {
        COLUMNS.iter().copied().filter(|c| self.timing || *c != "elapsed_ms").collect()
    }

    fn emit(&mut self, rs: &[VerificationResult]) -> io::Result<()> {
        match self.format {
            Format::JsonLines => {
                for r in rs {
                    writeln!(self.out, "{}", Value::Object(record(r, self.timing)))?;
                }
            }
            Format::Csv => {
                let cols = self.columns();
                let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
                if !self.csv_header {
                    w.write_record(&cols)?;
                    self.csv_header = true;
                }
                for r in rs {
                    let m = record(r, self.timing);
                    w.write_record(cols.iter().map(|c| cell(&m, c)))?;
                }
                let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
                self.out.write_all(&bytes)?;
            }
            Format::Table => {
                for r in rs {
                    let mut line = format!("{:<12} p={:<5} {:<14}", r.id, r.p, r.status.to_string());
                    if r.status != Status::NotApplicable {
                        line.push_str(&format!(" mod {}^{}  lhs={}  rhs={}  [{}]", r.p, r.exponent, r.lhs, r.rhs, r.branch));
                    }
                    if !r.params.is_empty() {
                        line.push_str(&format!("  {}", r.params));
                    }
                    if let Some((x, y)) = r.quad {
                        line.push_str(&format!("  x={x} y={y}"));
                    }
                    if self.timing {
                        line.push_str(&format!("  {}ms", r.elapsed_ms));
                    }
                    writeln!(self.out, "{}", line.trim_end())?;
                }
            }
        }
        Ok(())
    }
}

fn tally(rs: &[VerificationResult], counts: &mut [usize; 5]) {
    for r in rs {
        counts[match r.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::NotApplicable => 2,
            Status::PrecisionError => 3,
            Status::Pole => 4,
        }] += 1;
    }
}

/// Exit code for a finished sweep.
pub fn exit_code(rs: &[VerificationResult]) -> i32 {
    if rs.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if rs.iter().any(|r| matches!(r.status, Status::PrecisionError | Status::Pole)) {
        EXIT_INTERNAL
    } else {
        EXIT_OK
    }
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Error> {
    let stmts = registry::select(&a.ids)?;
    if stmts.is_empty() {
        return Err(usage(format!("no statement matches {}", a.ids.join(","))));
    }
    let (lo, hi) = parse_range(&a.primes)?;
    let primes = registry::primes_in(lo, hi);
    let samples: Vec<Q> = a.a.iter().map(|s| parse_q(s)).collect::<Result<_, _>>()?;
    let opts = CheckOptions { precision: a.precision, per_class: a.samples, seed: a.seed, threads: a.threads };
    if opts.precision == Some(0) {
        return Err(Error::BadPrecision);
    }

    let mut file;
    let out: &mut dyn Write = match &a.out {
        Some(path) => {
            file = BufWriter::new(File::create(path).map_err(io_err)?);
            &mut file
        }
        None => stdout,
    };
    let mut report = Report { format: a.format, timing: a.timing, out, csv_header: false };

    // explicit samples replace the default sampler for parametric statements
    let run_batch = |batch: &[&'static registry::Statement]| -> Result<Vec<VerificationResult>, Error> {
        if samples.is_empty() {
            return registry::check_range(batch, &primes, &opts);
        }
        let mut rs = Vec::new();
        for s in batch {
            for &p in &primes {
                if s.param == registry::Param::A {
                    let ps: Vec<Params> = samples.iter().cloned().map(Params::a).collect();
                    rs.extend(registry::check_parametric(&s.id, p, &ps, &opts)?);
                } else {
                    rs.extend(registry::check_range(&[s], &[p], &opts)?);
                }
            }
        }
        Ok(rs)
    };

    let mut counts = [0usize; 5];
    let mut all = Vec::new();
    if a.fail_fast {
        for s in &stmts {
            let rs = run_batch(&[s])?;
            report.emit(&rs).map_err(io_err)?;
            tally(&rs, &mut counts);
            let failed = rs.iter().any(|r| r.status == Status::Fail);
            all.extend(rs);
            if failed {
                break;
            }
        }
    } else {
        let rs = run_batch(&stmts)?;
        report.emit(&rs).map_err(io_err)?;
        tally(&rs, &mut counts);
        all = rs;
    }
    report.out.flush().map_err(io_err)?;
    eprintln!(
        "{} checks: {} pass, {} fail, {} not applicable, {} precision error, {} pole",
        all.len(),
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        counts[4]
    );
    Ok(exit_code(&all))
}

// ---------------------------------------------------------------------------
// sum

/// Builds a family from `--family`, `--a` and `--m`.
pub fn parse_family(name: &str, a: Option<&str>, m: Option<i64>) -> Result<TermFamily, Error> {
    let need_m = || m.ok_or_else(|| usage(format!("--m is required for family {name}")));
    Ok(match name {
        "general" => {
            let a = a.ok_or_else(|| usage("--a is required for family general"))?;
            TermFamily::GeneralA(parse_q(a)?)
        }
        "central-cube" => TermFamily::CentralCube(need_m()?),
        "central-sq3k" => TermFamily::CentralSq3k(need_m()?),
        "central-sq4k2k" => TermFamily::CentralSq4k2k(need_m()?),
        "mixed6k" => TermFamily::Mixed6k(need_m()?),
        _ => return Err(usage(format!("unknown family {name}"))),
    })
}

/// `pow:j` or `inv:alpha,beta,j`.
pub fn parse_weight(s: &str) -> Result<Weight, Error> {
    let bad = || usage(format!("bad weight {s}; expected pow:j or inv:alpha,beta,j"));
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "pow" => Ok(Weight::KPow(rest.trim().parse().map_err(|_| bad())?)),
        "inv" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let alpha = parse_q(parts[0])?;
            let beta = parse_q(parts[1])?;
            let j = parts[2].trim().parse().map_err(|_| bad())?;
            Ok(Weight::InvLinear { alpha, beta, j })
        }
        _ => Err(bad()),
    }
}

fn cmd_sum(a: &SumArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let spec = SumSpec {
        family: parse_family(&a.family, a.a.as_deref(), a.m)?,
        weight: parse_weight(&a.weight)?,
        upper: UpperBound::parse(&a.upper).ok_or_else(|| usage(format!("bad upper bound {}", a.upper)))?,
    };
    if !is_prime(a.prime) || a.prime == 2 {
        return Err(Error::CompositeModulus(a.prime));
    }
    let ctx = make_context(a.prime, a.precision.unwrap_or_else(|| default_precision(a.mod_exp)))?;
    let v = evaluate(&ctx, &spec)?;
    let residue = ctx.reduce_mod(&v, a.mod_exp)?;
    let w = io_err;
    writeln!(out, "residue: {residue}").map_err(w)?;
    writeln!(out, "modulus: {}^{}", a.prime, a.mod_exp).map_err(w)?;
    match v.abs_precision() {
        Some(n) => writeln!(out, "precision: O({}^{n})", a.prime).map_err(w)?,
        None => writeln!(out, "precision: exact").map_err(w)?,
    }
    if a.oracle {
        if a.prime > 50 {
            return Err(usage("--oracle is limited to p <= 50"));
        }
        let exact = exact_oracle(&spec, a.prime)?;
        let ev = ctx.from_rational(&exact);
        let er = ctx.reduce_mod(&ev, a.mod_exp)?;
        if er == residue {
            writeln!(out, "oracle: match").map_err(w)?;
        } else {
            writeln!(out, "oracle: mismatch (exact {er})").map_err(w)?;
            return Ok(EXIT_FAIL);
        }
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// wz

fn show_outcome(o: Outcome) -> String {
    match o {
        Outcome::Pass => "Pass".into(),
        Outcome::Fail(k) => format!("Fail at k={k}"),
        Outcome::Pole(k) => format!("Pole at k={k}"),
    }
}

fn show_q(v: &Result<Q, Pole>) -> String {
    match v {
        Ok(q) => q.to_string(),
        Err(Pole) => "pole".into(),
    }
}

fn cmd_wz(a: &WzArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let cert = wzcert::certificate(&a.cert).ok_or_else(|| usage(format!("unknown certificate {}", a.cert)))?;
    let samples: Vec<Q> = if a.a.is_empty() {
        wzcert::grid()
    } else {
        a.a.iter().map(|s| parse_q(s)).collect::<Result<_, _>>()?
    };
    let w = io_err;
    let mut failed = false;
    for q in &samples {
        if !cert.admits(q) {
            writeln!(out, "{} a={q}: excluded", cert.id).map_err(w)?;
            continue;
        }
        let tel = wzcert::verify_telescoping(cert, q, a.kmax);
        let bd = wzcert::verify_boundary(cert, q);
        failed |= matches!(tel, Outcome::Fail(_)) || matches!(bd, Outcome::Fail(_));
        let mut line = format!(
            "{} a={q}: telescoping k<={} {}; boundary {}",
            cert.id,
            a.kmax,
            show_outcome(tel),
            show_outcome(bd)
        );
        if let Some(n) = a.n {
            let (l, r) = wzcert::sum_sides(cert, q, n);
            let o = wzcert::verify_sum_identity(cert, q, n);
            failed |= matches!(o, Outcome::Fail(_));
            line.push_str(&format!("; sum n={n} {}: lhs={} rhs={}", show_outcome(o), show_q(&l), show_q(&r)));
        }
        writeln!(out, "{line}").map_err(w)?;
    }
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}

// ---------------------------------------------------------------------------
// decompose, special, catalog

fn cmd_decompose(a: &DecomposeArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let (x, y) = if a.four_p27 {
        represent_4p27(a.p)?
    } else {
        represent(a.p, a.d.ok_or_else(|| usage("one of --d or --4p27 is required"))?)?
    };
    writeln!(out, "x={x} y={y}").map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_special(a: &SpecialArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let p = a.p;
    if !is_prime(p) || p < 5 {
        return Err(usage(format!("{p} is not a prime > 3")));
    }
    let n = a.precision.unwrap_or_else(|| default_precision(3));
    let ctx = make_context(p, n)?;
    let w = io_err;
    let show = |v: ValuedResidue| ctx.display_mod(&v, n);
    let text = match a.name.as_str() {
        "R1" => show(r1(&ctx)),
        "R2" => show(r2(&ctx)?),
        "R3" => show(r3(&ctx)),
        "R7" => show(r7(&ctx)),
        "q2" => show(fermat_quotient(&ctx, 2)?),
        "q3" => show(fermat_quotient(&ctx, 3)?),
        "H" => show(harmonic(&ctx, a.n.ok_or_else(|| usage("H needs --n"))?, a.r)?),
        "E" => {
            writeln!(out, "{} (mod {p})", euler_mod_p(a.n.unwrap_or(p - 3), p)).map_err(w)?;
            return Ok(EXIT_OK);
        }
        "U" => {
            writeln!(out, "{} (mod {p})", u_mod_p(a.n.unwrap_or(p - 3), p)).map_err(w)?;
            return Ok(EXIT_OK);
        }
        other => return Err(usage(format!("unknown quantity {other}"))),
    };
    writeln!(out, "{text} (mod {p}^{n})").map_err(w)?;
    Ok(EXIT_OK)
}

fn cmd_catalog(a: &CatalogArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let w = io_err;
    for s in registry::select(&a.ids)? {
        let exps: Vec<String> = s.exponents().iter().map(|e| e.to_string()).collect();
        let branches: Vec<&str> = s.branches.iter().map(|b| b.label.as_str()).collect();
        let param = match s.param {
            registry::Param::None => "",
            registry::Param::A => "a",
            registry::Param::T => "t",
            registry::Param::TN => "t,n",
        };
        match a.format {
            Format::JsonLines => {
                let v = json!({
                    "id": s.id,
                    "kind": s.kind.to_string(),
                    "hypotheses": s.hypothesis(),
                    "parametric": param,
                    "modulus_exponents": exps,
                    "branches": branches,
                });
                writeln!(out, "{v}").map_err(w)?;
            }
            Format::Csv | Format::Table => {
                let sep = if a.format == Format::Csv { "," } else { "  " };
                let line = [
                    format!("{:<12}", s.id),
                    format!("{:<12}", s.kind.to_string()),
                    format!("{:<4}", param),
                    format!("p^{}", exps.join("|p^")),
                    s.hypothesis(),
                ];
                let line: Vec<String> = if a.format == Format::Csv {
                    line.iter().map(|c| format!("\"{}\"", c.trim())).collect()
                } else {
                    line.to_vec()
                };
                writeln!(out, "{}", line.join(sep).trim_end()).map_err(w)?;
            }
        }
    }
    Ok(EXIT_OK)
}
