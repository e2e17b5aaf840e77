//! Quick suite sanity plus an ignored full runner for local use
//! (`cargo test -p gl3sum --test suites_smoke -- --ignored --nocapture`).

use gl3sum::suites::{run_suite, Suite, SuiteConfig};

#[test]
fn decomposition_suite_passes() {
    let report = run_suite(Suite::Decomposition, &SuiteConfig::default()).unwrap();
    assert!(report.passed, "{:?}", report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
}

#[test]
#[ignore]
fn full_suite_with_output() {
    let t0 = std::time::Instant::now();
    let report = run_suite(Suite::All, &SuiteConfig::default()).unwrap();
    println!("elapsed: {:?}", t0.elapsed());
    for c in &report.checks {
        println!(
            "[{}] {} ({} cases): {}",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.cases,
            c.detail
        );
    }
    assert!(report.passed);
}
