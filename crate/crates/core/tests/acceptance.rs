//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always shown.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cms_laurent::jack::jack_laurent;
use cms_laurent::mbasis::m_to_p;
use cms_laurent::ops::OperatorKind;
use cms_laurent::partitions::dominance_leq;
use cms_laurent::verify::{items, run, Item, Suite};
use cms_laurent::{BiPartition, RatFunc, SymFunc};
use common::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;

fn sym(s: &str) -> SymFunc<RatFunc> {
    s.parse().expect("valid expression")
}

/// Runs verification items; the first failing report or error is returned.
fn run_items(list: impl IntoIterator<Item = Item>) -> Outcome {
    let mut cases = 0;
    let mut reports = 0;
    for item in list {
        let rep = run(&item).map_err(|e| format!("{item:?}: {e}"))?;
        if !rep.passed() {
            return Err(rep.to_string());
        }
        cases += rep.cases;
        reports += 1;
    }
    Ok(format!("{reports} checks, {cases} cases"))
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn examples() -> Outcome {
    let p11 = jack_laurent(&BiPartition::of(&[1], &[1])).map_err(|e| e.to_string())?;
    let want = sym("p_1*p_-1 - p0/(1 + k - k*p0)");
    check(p11.p_form == want, || format!("P(1),(1) = {}", p11.p_form))?;
    let p111 = jack_laurent(&BiPartition::of(&[1, 1], &[1])).map_err(|e| e.to_string())?;
    let want = sym("1/2*(p_1^2 - p_2)*p_-1 - 2*(p0 - 1)/(2 + 4*k - 2*k*p0)*p_1");
    check(p111.p_form == want, || {
        format!("P(1,1),(1) = {}", p111.p_form)
    })?;

    let m = |l: &[u32], u: &[u32]| m_to_p(&BiPartition::of(l, u)).map(|f| (*f).clone());
    let mut n = 0;
    for a in 1..=4i32 {
        for b in 1..=4i32 {
            let got = m(&[a as u32], &[b as u32]).map_err(|e| e.to_string())?;
            let want = if a == b {
                sym(&format!("p_{a}*p_-{b} - p0"))
            } else {
                sym(&format!("p_{a}*p_-{b} - p_{}", a - b))
            };
            check(got == want, || format!("m(({a}),({b})) = {got}"))?;
            n += 1;
        }
    }
    let got = m(&[1, 1], &[1]).map_err(|e| e.to_string())?;
    check(got == sym("1/2*(p_1^2 - p_2)*p_-1 - (p0 - 1)*p_1"), || {
        format!("m((1,1),(1)) = {got}")
    })?;
    Ok(format!("2 functions, {} monomial functions", n + 1))
}

fn eigen() -> Outcome {
    for b in BiPartition::all_up_to(3, 3) {
        let j = jack_laurent(&b).map_err(|e| e.to_string())?;
        check(j.m_coeffs.get(&b).is_some_and(|c| c.is_one()), || {
            format!("{b}: not monic")
        })?;
        for nu in j.m_coeffs.keys() {
            check(dominance_leq(nu, &b), || {
                format!("{b}: term {nu} not below")
            })?;
        }
    }
    run_items(
        items(Suite::Eigen, Some(3))
            .into_iter()
            .filter(|i| matches!(i, Item::Eigen(_) | Item::Integrals(_))),
    )
}

fn extended() -> Outcome {
    let mut list: Vec<Item> = items(Suite::Eigen, Some(2))
        .into_iter()
        .filter(|i| matches!(i, Item::EigenExt(..)))
        .collect();
    list.extend([2, 3].map(|n| Item::Diagram(OperatorKind::LaurentExt, n, 4)));
    run_items(list)
}

fn specialization() -> Outcome {
    let mut list: Vec<Item> = [2, 3, 4]
        .into_iter()
        .flat_map(|n| {
            [
                OperatorKind::TrigStable,
                OperatorKind::TrigParam,
                OperatorKind::Rational,
                OperatorKind::BcRational,
                OperatorKind::Laurent,
            ]
            .map(|k| Item::Diagram(k, n, 4))
        })
        .collect();
    list.extend(items(Suite::Specialization, Some(2)));
    run_items(list)
}

fn seeded(cases: u32, seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            failure_persistence: None,
            ..Config::with_cases(cases)
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

fn properties() -> Outcome {
    const CASES: u32 = 200;
    seeded(CASES, 1)
        .run(&(ratfunc(), ratfunc(), ratfunc()), |(a, b, c)| {
            field_laws(&a, &b, &c)
        })
        .map_err(|e| format!("field: {e}"))?;
    seeded(CASES, 2)
        .run(&(symfunc(), symfunc()), |(f, g)| star_laws(&f, &g))
        .map_err(|e| format!("star: {e}"))?;
    seeded(CASES, 3)
        .run(&(symfunc(), symfunc(), 1usize..4), |(f, g, n)| {
            phi_laws(&f, &g, n)
        })
        .map_err(|e| format!("phi: {e}"))?;
    seeded(CASES, 4)
        .run(&(bipartition(3), small_symfunc()), |(b, f)| {
            round_trip(&b, &f)
        })
        .map_err(|e| format!("round trip: {e}"))?;
    seeded(CASES, 5)
        .run(
            &(bipartition(4), bipartition(4), bipartition(4)),
            |(a, b, c)| dominance_laws(&a, &b, &c),
        )
        .map_err(|e| format!("dominance: {e}"))?;
    let triples = dominance_exhaustive(4)?;
    Ok(format!(
        "5 suites x {CASES} cases, {triples} dominance triples"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("worked examples", Duration::from_secs(1), examples),
        ("eigen", Duration::from_secs(120), eigen),
        ("dualities", Duration::from_secs(120), || {
            run_items(items(Suite::Dualities, Some(4)))
        }),
        ("pieri", Duration::from_secs(600), || {
            run_items(items(Suite::Pieri, Some(3)))
        }),
        ("specialization", Duration::from_secs(300), specialization),
        ("jacobi-trudy", Duration::from_secs(120), || {
            run_items(items(Suite::Jt, Some(3)))
        }),
        ("extended algebra", Duration::from_secs(60), extended),
        ("properties", Duration::from_secs(60), properties),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed <= budget {
                Ok(d)
            } else {
                Err(format!("{d}; took {elapsed:.1?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(d) => println!("criterion {} {name}: PASS ({d}; {elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} {name}: FAIL {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
