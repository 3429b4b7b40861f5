//! Acceptance suite: every release criterion with its tolerance and
//! runtime budget, one reported line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::{Duration, Instant};

use p1z_cli::verify::{run_suite, CheckOutcome};

struct Criterion {
    number: u32,
    check_id: &'static str,
    description: &'static str,
    budget: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        check_id: "zeta-oracle",
        description: "zeta'(-1) oracle reproduces -0.1654211 within 5e-8",
        budget: Some(Duration::from_secs(5)),
    },
    Criterion {
        number: 2,
        check_id: "roberts-example",
        description: "Roberts splitting types for p in {2,3,5}, q <= 13 match the fiber model",
        budget: Some(Duration::from_secs(2)),
    },
    Criterion {
        number: 3,
        check_id: "ahrr-identity",
        description: "exact AHRR identity over the full twist/Z grid",
        budget: Some(Duration::from_secs(5)),
    },
    Criterion {
        number: 4,
        check_id: "discriminant-identity",
        description: "exact discriminant identity on the same grid",
        budget: None,
    },
    Criterion {
        number: 5,
        check_id: "torsion-consistency",
        description: "chi_Q = chi_L2 + T/2 for |a| <= 10 and T(O(-1)) = -4 zeta'(-1)",
        budget: None,
    },
    Criterion {
        number: 6,
        check_id: "gram-quadrature",
        description: "quadrature matches exact Gram data within 1e-9 for a <= 8",
        budget: Some(Duration::from_secs(30)),
    },
    Criterion {
        number: 7,
        check_id: "gauge-invariance",
        description: "100 gauge transformations per prime preserve splitting and degree",
        budget: None,
    },
    Criterion {
        number: 8,
        check_id: "no-cohomology-classifier",
        description: "exhaustive no-cohomology scan singles out (-1,-1,{})",
        budget: None,
    },
    Criterion {
        number: 9,
        check_id: "serre-duality",
        description: "Serre duality rank symmetry for |a| <= 20",
        budget: None,
    },
];

fn outcome<'a>(outcomes: &'a [CheckOutcome], id: &str) -> &'a CheckOutcome {
    outcomes
        .iter()
        .find(|o| o.id == id)
        .unwrap_or_else(|| panic!("suite has no check {id}"))
}

#[test]
fn acceptance_criteria() {
    let started = Instant::now();
    let outcomes = run_suite(true);
    let total = started.elapsed();

    let mut failures = Vec::new();
    for criterion in CRITERIA {
        let o = outcome(&outcomes, criterion.check_id);
        let mut ok = o.passed;
        let mut note = String::new();
        if let Some(budget) = criterion.budget {
            if o.millis > budget.as_millis() {
                ok = false;
                note = format!(" [exceeded {} ms budget]", budget.as_millis());
            }
        }
        println!(
            "criterion {:>2}: {}  {} ({} ms){}",
            criterion.number,
            if ok { "PASS" } else { "FAIL" },
            criterion.description,
            o.millis,
            note,
        );
        if !ok {
            failures.push(format!("criterion {}: {}", criterion.number, o.detail));
        }
    }

    // Criterion 10: the whole deep suite under a minute.
    let deep_ok = total < Duration::from_secs(60);
    println!(
        "criterion 10: {}  full deep suite completes in under 60 s ({} ms)",
        if deep_ok { "PASS" } else { "FAIL" },
        total.as_millis(),
    );
    if !deep_ok {
        failures.push(format!("criterion 10: deep suite took {total:?}"));
    }

    assert!(
        failures.is_empty(),
        "failed criteria:\n{}",
        failures.join("\n")
    );
}

#[test]
fn verify_deep_via_cli_exits_cleanly() {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_p1z"))
        .args(["verify", "--deep"])
        .output()
        .expect("binary runs");
    assert!(
        output.status.success(),
        "stdout: {}",
        String::from_utf8_lossy(&output.stdout)
    );
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("10/10 checks passed"), "{text}");
}
