use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cms-laurent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn jt_limit_of_the_simplest_pair() {
    let o = run(&["jt-limit", "--lam", "1", "--mu", "1", "--out", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "p_1*p_-1 - 1");
}

#[test]
fn jack_laurent_json() {
    let o = run(&["jack-laurent", "--lam", "1", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["mode"], "symbolic");
    assert_eq!(v["pair"]["lam"], serde_json::json!([1]));
    let p = cms_laurent::SymFunc::<cms_laurent::RatFunc>::from_json(&v["p"]).unwrap();
    let expected: cms_laurent::SymFunc<cms_laurent::RatFunc> =
        "p_1*p_-1 - p0/(1 + k - k*p0)".parse().unwrap();
    assert_eq!(p, expected);
    assert_eq!(
        v["eigenvalue"]
            .as_str()
            .unwrap()
            .parse::<cms_laurent::RatFunc>()
            .unwrap(),
        "2 + 2*k - 2*k*p0".parse().unwrap()
    );
}

#[test]
fn numeric_mode_and_resonance() {
    let o = run(&[
        "jack-laurent",
        "--lam",
        "1",
        "--mu",
        "1",
        "--numeric",
        "--k",
        "1/2",
        "--p0",
        "-1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["mode"], "numeric");
    // -p0 / (1 + k - k p0) at k = 1/2, p0 = -1
    let terms = v["p"]["terms"].as_array().unwrap();
    assert_eq!(terms.last().unwrap()["coeff"], "1/2");

    let o = run(&[
        "jack-laurent",
        "--lam",
        "1",
        "--mu",
        "1",
        "--numeric",
        "--k",
        "1",
        "--p0",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].as_str().unwrap().contains("resonance"));
}

#[test]
fn precondition_errors_exit_two() {
    for args in [
        &["jack-laurent", "--lam", "1,2"][..],
        &["jack-laurent", "--lam", "a"][..],
        &["jack-laurent", "--numeric", "--k", "1"][..],
        &["jack-laurent", "--k", "1", "--p0", "2"][..],
        &["apply-op", "--op", "nope", "--input", "p_1"][..],
        &["apply-op", "--op", "trig-param", "--input", "p_-1"][..],
        &["verify", "--suite", "nope"][..],
        &[
            "specialize",
            "--lam",
            "1",
            "--N",
            "3",
            "--m",
            "1",
            "--n",
            "1",
        ][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn apply_operator() {
    let o = run(&[
        "apply-op",
        "--op",
        "momentum-trig",
        "--input",
        "p_2*p_-1",
        "--out",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "p_2*p_-1");
    let o = run(&[
        "apply-op",
        "--op",
        "laurent",
        "--input",
        "p_1",
        "--numeric",
        "--k",
        "2",
        "--p0",
        "1/2",
        "--out",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    // E_{(1),∅} = 1 + k - k p0 = 2
    assert_eq!(stdout(&o).trim(), "2*p_1");
}

#[test]
fn pieri_terms() {
    let o = run(&["pieri", "--lam", "1", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert!(terms.iter().any(|t| t["kind"] == "removed-from-mu"));
}

#[test]
fn specializations() {
    let o = run(&[
        "specialize",
        "--lam",
        "1",
        "--mu",
        "1",
        "--m",
        "1",
        "--n",
        "1",
        "--out",
        "text",
    ]);
    assert_eq!(
        o.status.code(),
        Some(2),
        "the m = n point is a pole before the limit"
    );
    let o = run(&[
        "specialize",
        "--input",
        "p_1*p_-1 - 1",
        "--m",
        "1",
        "--n",
        "1",
        "--out",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-x1*y1^-1 + 1 - x1^-1*y1");
    let o = run(&["specialize", "--input", "p_1", "--N", "2", "--out", "text"]);
    assert_eq!(stdout(&o).trim(), "z1 + z2");
}

#[test]
fn verify_dualities_passes_and_is_deterministic() {
    let a = run(&["verify", "--suite", "dualities", "--degree", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a)["passed"], true);
    let b = run(&["verify", "--suite", "dualities", "--degree", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_eigen_with_seed() {
    let a = run(&["verify", "--suite", "eigen", "--degree", "1", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&["verify", "--suite", "eigen", "--degree", "1", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--suite", "eigen", "--degree", "1", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}
