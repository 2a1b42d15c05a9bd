use std::process::{Command, Output};

fn wzcong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wzcong")).args(args).output().expect("spawn wzcong")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_theorems_json_lines() {
    let o = wzcong(&["verify", "--ids", "T2.*", "--primes", "5..60", "--format", "json-lines"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let recs = json_lines(&o);
    assert!(!recs.is_empty());
    for r in &recs {
        for key in ["id", "p", "status", "modulus", "lhs", "rhs", "branch"] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
        assert!(r["p"].is_string() && r["modulus"].is_string());
        assert!(r.get("elapsed_ms").is_none());
    }
}

#[test]
fn timing_flag_adds_elapsed() {
    let o = wzcong(&["verify", "--ids", "T2.2", "--primes", "13", "--format", "json-lines", "--timing"]);
    assert!(json_lines(&o)[0].get("elapsed_ms").is_some());
}

#[test]
fn c138_reports_form27() {
    let o = wzcong(&["verify", "--ids", "C13.8", "--primes", "5..313", "--format", "json-lines"]);
    assert_eq!(code(&o), 0);
    let recs = json_lines(&o);
    let with_xy: Vec<_> = recs.iter().filter(|r| r.get("x").is_some()).collect();
    assert!(!with_xy.is_empty());
    for r in with_xy {
        let p: u64 = r["p"].as_str().unwrap().parse().unwrap();
        let x: u64 = r["x"].as_str().unwrap().parse().unwrap();
        let y: u64 = r["y"].as_str().unwrap().parse().unwrap();
        assert_eq!(4 * p, x * x + 27 * y * y, "{r}");
    }
}

#[test]
fn exit_codes() {
    // printed form known to be false
    assert_eq!(code(&wzcong(&["verify", "--ids", "C13.5.i.5", "--primes", "13"])), 1);
    let na = wzcong(&["verify", "--ids", "T8.4", "--primes", "7..7", "--format", "json-lines"]);
    assert_eq!(code(&na), 0);
    let recs = json_lines(&na);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["status"], "NotApplicable");
    assert_eq!(code(&wzcong(&["verify", "--ids", "NOPE", "--primes", "5..7"])), 2);
    assert_eq!(code(&wzcong(&["verify", "--primes", "9..x"])), 2);
    assert_eq!(code(&wzcong(&["bogus"])), 2);
    assert_eq!(code(&wzcong(&["wz", "--cert", "L99"])), 2);
    assert_eq!(code(&wzcong(&["sum", "--family", "nope", "--prime", "7"])), 2);
    assert_ne!(code(&wzcong(&["decompose", "7", "--d", "4"])), 0);
}

#[test]
fn fail_fast_stops_after_first_failure() {
    let ids = "C13.5.i.5,C13.6.ii.5,T2.2";
    let all = wzcong(&["verify", "--ids", ids, "--primes", "5..100", "--format", "json-lines"]);
    let ff = wzcong(&["verify", "--ids", ids, "--primes", "5..100", "--format", "json-lines", "--fail-fast"]);
    assert_eq!((code(&all), code(&ff)), (1, 1));
    assert!(json_lines(&ff).len() < json_lines(&all).len());
}

#[test]
fn output_independent_of_threads() {
    let run = |t: &str| {
        stdout(&wzcong(&["verify", "--ids", "T*,L2.*", "--primes", "5..80", "--format", "json-lines", "--threads", t]))
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
}

#[test]
fn csv_and_table() {
    let csv = stdout(&wzcong(&["verify", "--ids", "T2.2", "--primes", "5..20", "--format", "csv"]));
    assert!(csv.starts_with("id,p,status,modulus,lhs,rhs,branch"));
    assert_eq!(csv.lines().count(), 1 + 6);
    let table = stdout(&wzcong(&["verify", "--ids", "T2.2", "--primes", "13"]));
    assert!(table.contains("Pass") && table.contains("x=3 y=1"));
}

#[test]
fn sum_examples() {
    let o = wzcong(&["sum", "--family", "central-cube", "--m", "64", "--weight", "inv:2,-1,1", "--upper", "p-1", "--prime", "13", "--mod-exp", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("residue: 671"));
    let o = wzcong(&["sum", "--family", "general", "--a", "-1/2", "--weight", "pow:0", "--upper", "p-1", "--prime", "5", "--mod-exp", "3", "--oracle"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("oracle: match"));
    let o = wzcong(&["sum", "--family", "general", "--a", "0", "--weight", "pow:0", "--upper", "p-1", "--prime", "7"]);
    assert!(stdout(&o).contains("residue: 1\n"));
}

#[test]
fn wz_examples() {
    let o = wzcong(&["wz", "--cert", "L3.1", "--a", "1/5,2/7", "--kmax", "30"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("telescoping k<=30 Pass").count(), 2);
    let o = wzcong(&["wz", "--cert", "SEC2", "--a", "1", "--n", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("lhs=5 rhs=5"), "{}", stdout(&o));
}

#[test]
fn decompose_special_catalog() {
    assert_eq!(stdout(&wzcong(&["decompose", "13", "--d", "4"])).trim(), "x=3 y=1");
    assert_eq!(stdout(&wzcong(&["decompose", "31", "--4p27"])).trim(), "x=4 y=2");
    assert!(stdout(&wzcong(&["special", "R7", "5"])).starts_with("77 (mod 5^"));
    assert_eq!(stdout(&wzcong(&["special", "E", "101", "--n", "4"])).trim(), "5 (mod 101)");
    assert_eq!(stdout(&wzcong(&["special", "U", "101", "--n", "4"])).trim(), "22 (mod 101)");
    let cat = stdout(&wzcong(&["catalog"]));
    assert!(cat.contains("T2.1") && cat.contains("C13.1.i"));
}
