use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use smallgen::cli::cache::CACHE_FILE;
use smallgen::cli::strip_volatile;

fn smallgen(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smallgen"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn spec(dir: &Path, name: &str, json: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, json).unwrap();
    p
}

fn report(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn delta_of_q_sqrt_minus_5() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(dir.path(), "q.json", r#"{"type":"quadratic","m":-5}"#);
    let r = report(&smallgen(
        dir.path(),
        &["delta", "--spec", s.to_str().unwrap(), "--no-cache"],
    ));
    assert_eq!(r["command"], "delta");
    assert_eq!(r["result"]["exact"], "3^(1/2)");
    assert_eq!(r["result"]["exhaustive"], true);
    assert_eq!(r["flags"]["exhaustive"], true);
    for key in [
        "input",
        "result",
        "flags",
        "timings",
        "version",
        "seed",
        "timestamp",
    ] {
        assert!(r.get(key).is_some(), "{key}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(smallgen(d, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(smallgen(d, &["exponents"]).status.code(), Some(2));

    let bad = [
        r#"{"type":"quadratic","m":12}"#,
        r#"{"type":"abelian","modulus":12,"subgroup":[4]}"#,
        r#"{"type":"radical-family","m":1,"n":2,"p":9,"q":11}"#,
        r#"{"type":"polynomial","coefficients":[-1,0,1]}"#,
        r#"{"type":"quadratic""#,
    ];
    for (i, text) in bad.iter().enumerate() {
        let s = spec(d, &format!("bad{i}.json"), text);
        let out = smallgen(d, &["delta", "--spec", s.to_str().unwrap(), "--no-cache"]);
        assert_eq!(
            out.status.code(),
            Some(3),
            "{text}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(
        smallgen(
            d,
            &[
                "sandwich",
                "--x",
                "100",
                "--q",
                "4",
                "--a",
                "2",
                "--no-cache"
            ]
        )
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        smallgen(d, &["exponents", "--d", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        smallgen(d, &["delta", "--spec", "missing.json", "--no-cache"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn budget_exhaustion_is_a_partial_result() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(
        dir.path(),
        "c.json",
        r#"{"type":"polynomial","coefficients":[-7,3,-5,1]}"#,
    );
    let out = smallgen(
        dir.path(),
        &[
            "delta",
            "--spec",
            s.to_str().unwrap(),
            "--budget-candidates",
            "10",
            "--no-cache",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["exhaustive"], false);
    assert_eq!(r["flags"]["exhaustive"], false);
}

#[test]
fn cache_returns_the_stored_result() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let s = spec(d, "q.json", r#"{"type":"quadratic","m":-5}"#);
    let cache = d.join("cache");
    let args = [
        "delta",
        "--spec",
        s.to_str().unwrap(),
        "--cache-dir",
        cache.to_str().unwrap(),
    ];
    let first = smallgen(d, &args);
    let second = smallgen(d, &args);
    let lines = |p: &Path| fs::read_to_string(p).unwrap().lines().count();
    assert_eq!(lines(&cache.join(CACHE_FILE)), 1);
    let a = strip_volatile(std::str::from_utf8(&first.stdout).unwrap()).unwrap();
    let b = strip_volatile(std::str::from_utf8(&second.stdout).unwrap()).unwrap();
    assert_eq!(a, b);

    // the same field written differently hits the same entry
    let t = spec(
        d,
        "p.json",
        r#"{"type":"polynomial","coefficients":[10,0,2]}"#,
    );
    let third = smallgen(
        d,
        &[
            "height",
            "--spec",
            t.to_str().unwrap(),
            "--cache-dir",
            cache.to_str().unwrap(),
        ],
    );
    assert!(third.status.success());
    assert_eq!(lines(&cache.join(CACHE_FILE)), 2);
    let u = spec(
        d,
        "p2.json",
        r#"{"type":"polynomial","coefficients":[-5,0,-1]}"#,
    );
    smallgen(
        d,
        &[
            "height",
            "--spec",
            u.to_str().unwrap(),
            "--cache-dir",
            cache.to_str().unwrap(),
        ],
    );
    assert_eq!(lines(&cache.join(CACHE_FILE)), 2);
}

#[test]
fn unwritable_cache_still_answers() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let blocker = d.join("file");
    fs::write(&blocker, "x").unwrap();
    let s = spec(d, "q.json", r#"{"type":"quadratic","m":5}"#);
    let out = smallgen(
        d,
        &[
            "height",
            "--spec",
            s.to_str().unwrap(),
            "--cache-dir",
            blocker.join("c").to_str().unwrap(),
        ],
    );
    let r = report(&out);
    assert_eq!(r["result"]["exact"], "5^(1/2)");
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let s = spec(
        d,
        "a.json",
        r#"{"type":"abelian","modulus":20,"subgroup":[3,9]}"#,
    );
    let args = [
        "thm12",
        "--spec",
        s.to_str().unwrap(),
        "--with-delta",
        "--no-cache",
        "--seed",
        "11",
    ];
    let a = smallgen(d, &args);
    let b = smallgen(d, &args);
    assert_eq!(
        strip_volatile(std::str::from_utf8(&a.stdout).unwrap()).unwrap(),
        strip_volatile(std::str::from_utf8(&b.stdout).unwrap()).unwrap()
    );
    let r = report(&a);
    assert_eq!(r["seed"], 11);
    assert_eq!(r["result"]["scope"], "proof-step verification");
    assert_eq!(r["result"]["split_prime_sharp"], 7);
}

#[test]
fn linnik_scan_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = smallgen(d, &["linnik-scan", "--qmax", "500", "--out", "scan.csv"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(d.join("scan.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("q,least_prime,ratio,probable_flag,millis")
    );
    assert_eq!(lines.count(), 498);
}

#[test]
fn other_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let r = report(&smallgen(d, &["exponents", "--d", "4"]));
    assert_eq!(r["result"]["vw_threshold"], "1/12");

    let z5 = spec(
        d,
        "z5.json",
        r#"{"type":"abelian","modulus":5,"subgroup":[]}"#,
    );
    let r = report(&smallgen(
        d,
        &["abelian-disc", "--spec", z5.to_str().unwrap(), "--no-cache"],
    ));
    assert_eq!(r["result"]["conductor"]["discriminant_abs"], "125");
    assert_eq!(r["result"]["discriminants_agree"], true);

    let r = report(&smallgen(
        d,
        &["split-prime", "--spec", z5.to_str().unwrap(), "--no-cache"],
    ));
    assert_eq!(r["result"]["prime"], 31);

    let fam = spec(
        d,
        "f.json",
        r#"{"type":"radical-family","m":1,"n":2,"p":5,"q":7}"#,
    );
    let r = report(&smallgen(
        d,
        &["family", "--spec", fam.to_str().unwrap(), "--no-cache"],
    ));
    assert_eq!(r["result"]["disc_k"]["value"], "140");
    assert_eq!(r["result"]["lower_verdict"], "holds");

    let r = report(&smallgen(
        d,
        &[
            "sandwich",
            "--x",
            "100",
            "--q",
            "4",
            "--a",
            "1",
            "--no-cache",
        ],
    ));
    assert_eq!(r["result"]["passes"], true);
    assert_eq!(r["result"]["rows"][0]["pi_x"], 11);

    let out = smallgen(
        d,
        &[
            "height",
            "--spec",
            fam.to_str().unwrap(),
            "--out",
            "h.json",
            "--no-cache",
        ],
    );
    assert!(out.status.success() && out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(d.join("h.json")).unwrap()).unwrap();
    assert_eq!(r["result"]["exact"], "7^(1/2)");
}
