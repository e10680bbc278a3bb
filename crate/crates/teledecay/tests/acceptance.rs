//! Acceptance suite: one PASS/FAIL line per criterion with the worst
//! observed error, then a non-zero exit if any criterion failed.

use std::process::ExitCode;
use std::time::Instant;

use teledecay::verify::{self, Check};
use teledecay::CliError;

type Criterion = (u8, &'static str, fn() -> Result<Vec<Check>, CliError>);

fn criteria() -> Vec<Criterion> {
    vec![
        (1, "closed-form average fidelity", verify::closed_form_fidelity),
        (2, "master equation vs Kraus maps", verify::ode_kraus_equivalence),
        (3, "critical times", || {
            let mut v = verify::critical_times();
            v.extend(verify::constants().into_iter().filter(|c| c.criterion == 3));
            Ok(v)
        }),
        (4, "fidelity and purity crossings", || {
            Ok(verify::constants().into_iter().filter(|c| c.criterion == 4).collect())
        }),
        (5, "threshold concurrence", || {
            let mut v = verify::threshold_concurrence();
            v.extend(verify::constants().into_iter().filter(|c| c.criterion == 5));
            Ok(v)
        }),
        (6, "entanglement sudden death", || {
            let mut v = verify::sudden_death()?;
            v.extend(verify::constants().into_iter().filter(|c| c.criterion == 6));
            Ok(v)
        }),
        (7, "closed-form concurrence and purity", verify::closed_form_metrics),
        (8, "ideal protocol", verify::ideal_protocol),
        (9, "six-state design", verify::two_design),
        (10, "measure-and-correct equivalence", verify::deferred_measurement),
        (11, "entanglement vs fidelity ordering", verify::non_monotonicity),
        (12, "deterministic sweep output", verify::determinism),
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for (number, title, run) in criteria() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(checks) if checks.is_empty() => (false, "no checks ran".to_string()),
            Ok(checks) => {
                let bad: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                let worst = checks
                    .iter()
                    .filter(|c| c.relation == verify::Relation::Within)
                    .map(|c| c.error)
                    .fold(0.0_f64, f64::max);
                let margin = checks
                    .iter()
                    .filter(|c| c.relation == verify::Relation::Above)
                    .map(|c| c.observed - c.target)
                    .fold(f64::INFINITY, f64::min);
                let mut d = format!("{} checks, max error {worst:.3e}", checks.len());
                if margin.is_finite() {
                    d.push_str(&format!(", min margin {margin:.3e}"));
                }
                if !bad.is_empty() {
                    d.push_str(&format!(", failing: {}", bad.join(", ")));
                }
                (bad.is_empty(), d)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {number:>2} ({title}): {detail} [{:.2?}]",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed()
        );
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
