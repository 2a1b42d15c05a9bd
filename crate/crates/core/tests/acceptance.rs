//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Criteria 1 and 2 are red: a handful of printed congruences are false at the
//! primes listed in `known_theorem_failure` and `known_conjecture_failure`. Those
//! lines print FAIL, and the test asserts that the failures are exactly that set.

mod common;

use std::collections::BTreeSet;
use std::io::Write;

use common::oracle::{oracle, vp};
use common::*;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wzcong::padic::make_context;
use wzcong::quadform::{exhaustive, is_represented, represent, represent_4p27};
use wzcong::registry::{
    catalog, check, check_range, default_samples, find, primes_in, select, CheckOptions, Kind, Params, Status,
    VerificationResult,
};
use wzcong::seqlib::{euler_mod_p, r7, u_mod_p};
use wzcong::sums::{evaluate, s_n, SumSpec, TermFamily, UpperBound, Weight};
use wzcong::wzcert::{grid, sum_sides, verify_sum_identity, verify_telescoping, Outcome, CERTIFICATES};

struct Verdict {
    pass: bool,
    /// Matches the expected outcome; for red criteria, exactly the known findings.
    expected: bool,
    note: String,
}

impl Verdict {
    fn green(pass: bool, note: String) -> Verdict {
        Verdict { pass, expected: pass, note }
    }
}

fn known_theorem_failure(id: &str, p: u64) -> bool {
    (id == "EQ1.3" && p % 8 == 5) || (p == 5 && matches!(id, "T3.5" | "T7.5" | "T9.6"))
}

fn known_conjecture_failure(id: &str, _p: u64) -> bool {
    matches!(id, "C13.5.i.5" | "C13.6.ii.5")
}

fn sweep(stmts: &[&'static wzcong::registry::Statement], primes: &[u64], known: fn(&str, u64) -> bool) -> Verdict {
    let rs = check_range(stmts, primes, &CheckOptions::default()).unwrap();
    let bad: BTreeSet<(String, u64)> =
        rs.iter().filter(|r| r.status != Status::Pass && r.status != Status::NotApplicable).map(|r| (r.id.clone(), r.p)).collect();
    let expected: BTreeSet<(String, u64)> =
        rs.iter().filter(|r| r.status != Status::NotApplicable && known(&r.id, r.p)).map(|r| (r.id.clone(), r.p)).collect();
    let ids: BTreeSet<&str> = bad.iter().map(|(id, _)| id.as_str()).collect();
    let note = format!(
        "{} checks, {} not passing{}",
        rs.len(),
        bad.len(),
        if bad.is_empty() { String::new() } else { format!(" ({})", ids.into_iter().collect::<Vec<_>>().join(", ")) }
    );
    Verdict { pass: bad.is_empty(), expected: bad == expected, note }
}

fn criterion_1() -> Verdict {
    let stmts: Vec<_> = catalog().iter().filter(|s| s.kind != Kind::Conjecture).collect();
    sweep(&stmts, &primes_in(5, 499), known_theorem_failure)
}

fn criterion_2() -> Verdict {
    let stmts: Vec<_> = catalog().iter().filter(|s| s.kind == Kind::Conjecture).collect();
    sweep(&stmts, &primes_in(3, 313), known_conjecture_failure)
}

fn criterion_3() -> Verdict {
    let pats: Vec<String> = [
        "T2.1", "T3.1", "T4.1", "T5.1", "T6.1", "T6.2", "T7.1", "T7.2", "T8.1", "T9.1", "T9.2", "T10.1", "T11.1",
        "T12.1", "L2.1", "L2.2", "L2.3",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let stmts = select(&pats).unwrap();
    let opts = CheckOptions { per_class: 20, ..CheckOptions::default() };
    let rs = check_range(&stmts, &[11, 13, 101, 103], &opts).unwrap();
    let bad: Vec<&VerificationResult> =
        rs.iter().filter(|r| !matches!(r.status, Status::Pass | Status::NotApplicable)).collect();
    let fired = |id: &str| rs.iter().filter(|r| r.id == id).map(|r| r.branch.as_str()).collect::<BTreeSet<_>>();
    let edges = fired("L2.1").len() == find("L2.1").unwrap().branches.len()
        && fired("T3.1").len() == find("T3.1").unwrap().branches.len()
        && [11u64, 13, 101, 103].iter().all(|&p| {
            rs.iter().any(|r| r.id == "L2.2" && r.p == p && r.params.t == Some(qi(3)))
                && rs.iter().any(|r| r.id == "L2.3" && r.p == p && r.params.n == Some((p - 1) / 2))
        });
    let covered = stmts.iter().all(|s| rs.iter().any(|r| r.id == s.id && r.status == Status::Pass));
    Verdict::green(
        bad.is_empty() && edges && covered,
        format!("{} statements, {} checks, {} not passing, edge samples {}", stmts.len(), rs.len(), bad.len(), if edges { "hit" } else { "missed" }),
    )
}

fn criterion_4() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut fails, mut poles, mut checks) = (0, 0, 0);
    for cert in CERTIFICATES {
        let mut seen = Vec::new();
        while seen.len() < 25 {
            let a = q(rng.gen_range(-12..=12), rng.gen_range(1..=12));
            if !cert.admits(&a) || seen.contains(&a) {
                continue;
            }
            checks += 1;
            match verify_telescoping(cert, &a, 30) {
                Outcome::Pass => {}
                Outcome::Pole(_) => poles += 1,
                Outcome::Fail(_) => fails += 1,
            }
            seen.push(a);
        }
        for a in grid().into_iter().filter(|a| cert.admits(a)) {
            for n in 1..=25 {
                checks += 1;
                match verify_sum_identity(cert, &a, n) {
                    Outcome::Pass => {}
                    Outcome::Pole(_) => {
                        poles += 1;
                        let (l, r) = sum_sides(cert, &a, n);
                        if l.is_ok() && r.is_ok() {
                            fails += 1;
                        }
                    }
                    Outcome::Fail(_) => fails += 1,
                }
            }
        }
    }
    Verdict::green(fails == 0, format!("{checks} checks over {} certificates, {fails} fail, {poles} pole", CERTIFICATES.len()))
}

fn random_spec(rng: &mut ChaCha8Rng, family: usize) -> SumSpec {
    let ms = [1i64, -8, 16, 27, 64, -64, 108, -144, -192, 256, -512, 1728, 4096];
    let m = *ms.choose(rng).unwrap();
    let family = match family {
        0 => TermFamily::GeneralA(q(rng.gen_range(-12..=12), rng.gen_range(1..=12))),
        1 => TermFamily::CentralCube(m),
        2 => TermFamily::CentralSq3k(m),
        3 => TermFamily::CentralSq4k2k(m),
        _ => TermFamily::Mixed6k(m),
    };
    let weight = match rng.gen_range(0..3) {
        0 => Weight::KPow(rng.gen_range(0..=3)),
        1 => Weight::inv(rng.gen_range(1..=2), rng.gen_range(-3..=3), rng.gen_range(1..=3)),
        _ => Weight::inv_shift(q(rng.gen_range(-6..=6), rng.gen_range(1..=6)), rng.gen_range(1..=2)),
    };
    let upper = *[UpperBound::PMinus1, UpperBound::PMinus2, UpperBound::PMinus3, UpperBound::PMinus4, UpperBound::Half]
        .choose(rng)
        .unwrap();
    SumSpec { family, weight, upper }
}

fn p_integral(spec: &SumSpec, p: u64) -> bool {
    let pb = BigInt::from(p);
    let a_ok = match &spec.family {
        TermFamily::GeneralA(a) => (a.denom() % &pb) != BigInt::from(0),
        _ => true,
    };
    let w_ok = match &spec.weight {
        Weight::InvLinear { beta, .. } => (beta.denom() % &pb) != BigInt::from(0),
        _ => true,
    };
    a_ok && w_ok
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let small = primes(5, 47);
    let (mut agree, mut total) = (0, 0);
    while total < 100 {
        let spec = random_spec(&mut rng, total % 5);
        let p = *small.choose(&mut rng).unwrap();
        if !p_integral(&spec, p) {
            continue;
        }
        total += 1;
        let ctx = make_context(p, 7).unwrap();
        let ok = match (evaluate(&ctx, &spec), oracle(&spec, p)) {
            (Err(wzcong::Error::ExactPole(_)), None) => true,
            (Ok(v), Some(x)) if vp(&x, p) < 0 => ctx.reduce_mod(&v, 1).is_err(),
            (Ok(v), Some(x)) => {
                let top = v.abs_precision().unwrap_or(8).clamp(1, 8) as u32;
                (1..top).all(|e| ctx.reduce_mod(&v, e).map(BigInt::from).ok() == Some(md(&x, p, e)))
            }
            _ => false,
        };
        agree += ok as usize;
    }
    Verdict::green(agree == total, format!("{agree}/{total} agree"))
}

fn criterion_6() -> Verdict {
    let expected = |p: u64, d: u64| match d {
        2 => matches!(p % 8, 1 | 3),
        3 => p % 3 == 1,
        4 => p % 4 == 1,
        _ => matches!(p % 7, 1 | 2 | 4),
    };
    let mut bad = Vec::new();
    let mut reps = 0;
    for p in primes(11, 10_000) {
        for d in [2u64, 3, 4, 7] {
            if is_represented(p, d) != expected(p, d) {
                bad.push(format!("class p={p} d={d}"));
            }
            if let Ok((x, y)) = represent(p, d) {
                reps += 1;
                if x * x + d * y * y != p || (p < 2000 && exhaustive(p, d) != vec![(x, y)]) {
                    bad.push(format!("p={p} d={d}"));
                }
            } else if expected(p, d) {
                bad.push(format!("missing p={p} d={d}"));
            }
        }
        match represent_4p27(p) {
            Ok((x, y)) => {
                reps += 1;
                if x * x + 27 * y * y != 4 * p || (p < 2000 && exhaustive(4 * p, 27) != vec![(x, y)]) {
                    bad.push(format!("4p p={p}"));
                }
            }
            Err(_) if p % 3 == 1 => bad.push(format!("missing 4p p={p}")),
            Err(_) => {}
        }
    }
    Verdict::green(bad.is_empty(), format!("{reps} representations, {} problems", bad.len()))
}

fn criterion_7() -> Verdict {
    let ps = primes(5, 499);
    let mut bad = Vec::new();
    for &p in &ps {
        for suite in [
            common::suites::lemma_2_4,
            common::suites::lemma_3_3,
            common::suites::central_binomial_harmonic,
            common::suites::wolstenholme,
        ] {
            if let Err(e) = suite(p) {
                bad.push(e);
            }
        }
    }
    // the same congruences through the library
    let stmts = select(&["L2.4.*".into(), "L3.3.*".into()]).unwrap();
    let rs = check_range(&stmts, &ps, &CheckOptions::default()).unwrap();
    bad.extend(rs.iter().filter(|r| r.status != Status::Pass).map(|r| format!("{} p={}", r.id, r.p)));
    Verdict::green(bad.is_empty(), format!("{} primes, {} problems", ps.len(), bad.len()))
}

fn criterion_8() -> Verdict {
    let ctx5 = make_context(5, 7).unwrap();
    let r7_ok = ctx5.reduce_mod(&r7(&ctx5), 6).map(BigInt::from).ok() == Some(BigInt::from(77));
    let s5 = s_n(&ctx5, &q(1, 2), 5).unwrap();
    let s_ok = ctx5.reduce_mod(&s5, 3).map(BigInt::from).ok() == Some(BigInt::from(25));
    let eu_ok = euler_mod_p(4, 101) == 5 && u_mod_p(4, 101) == 22;
    let sec2 = CERTIFICATES.iter().find(|c| c.id == "SEC2").unwrap();
    let sec2_ok = sum_sides(sec2, &qi(1), 1) == (Ok(qi(5)), Ok(qi(5)));
    let l25 = check("L2.5", 5, None, &CheckOptions::default()).map(|r| r.lhs).unwrap_or_default() == "25";
    let all = r7_ok && s_ok && eu_ok && sec2_ok && l25;
    Verdict::green(
        all,
        format!("R7(5)=77 {r7_ok}, S_5(1/2)=25 mod 125 {}, E_4/U_4 mod 101 {eu_ok}, SEC2(1,1) {sec2_ok}", s_ok && l25),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("theorem sweep 5..499", criterion_1),
        ("conjecture sweep to 313", criterion_2),
        ("parametric sweep", criterion_3),
        ("WZ certificates", criterion_4),
        ("oracle equivalence", criterion_5),
        ("quadratic forms", criterion_6),
        ("sequence invariants", criterion_7),
        ("spot values", criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        // bypasses libtest capture so the lines land in the plain test log
        let line = format!("criterion {}: {} - {}: {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, name, v.note);
        writeln!(std::io::stderr(), "{line}").unwrap();
        if !v.expected {
            unexpected.push(i + 1);
        }
    }
    // parametric samples for non-parametric statements are empty
    assert!(default_samples(find("T2.2").unwrap(), 13, 2, 1).is_empty());
    assert!(Params::default().is_empty());
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
