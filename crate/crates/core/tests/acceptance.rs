//! The nine acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture` to see
//! the lines.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;

use kerov::characters::{character_ratio, plancherel_weight};
use kerov::limits::{
    biane_check, lln_leading_coefficients, run_clt_all, run_lln, DiagramFamily, MomentReport, DEFAULT_KMAX,
    DEFAULT_N, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use kerov::partitions::partitions_of;
use kerov::plancherel::{growth_marginal_exact, sample_many, SamplingMode};
use kerov::rational::{falling, to_f64, Rational};
use kerov::suite::{expectation_checks, identity_checks, leading_term_checks, sampler_checks, structure_checks};
use kerov::suite::{SuiteCaps, SuiteCheck};
use kerov::YoungDiagram;

struct Line {
    passed: bool,
    detail: String,
}

fn suite_line(checks: &[SuiteCheck]) -> Line {
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
    Line {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            failed.join("; ")
        },
    }
}

fn report_failures(r: &MomentReport) -> Vec<String> {
    r.checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} = {:.4} vs {:.4}", c.name, c.value, c.threshold))
        .collect()
}

/// `⟨p#_ρ⟩_n` summed directly over `λ ⊢ n` from character ratios.
fn direct_expectation(rho: &YoungDiagram, n: usize, shapes: &[YoungDiagram]) -> Rational {
    if rho.size() > n {
        return Rational::zero();
    }
    let scale = Rational::from(falling(n as u64, rho.size() as u64));
    shapes
        .iter()
        .map(|l| plancherel_weight(l) * character_ratio(l, rho).unwrap())
        .sum::<Rational>()
        * scale
}

fn criterion_1(caps: &SuiteCaps) -> Line {
    let mut line = suite_line(&expectation_checks(caps));
    let mut bad = Vec::new();
    for n in 1..=caps.max_expectation_n {
        let shapes = partitions_of(n);
        for r in 1..=caps.max_expectation_class {
            for rho in partitions_of(r) {
                let want = if rho.rows().iter().all(|&p| p == 1) {
                    Rational::from(falling(n as u64, r as u64))
                } else {
                    Rational::zero()
                };
                if direct_expectation(&rho, n, &shapes) != want {
                    bad.push(format!("ρ={} n={n}", rho.to_tuple_string()));
                }
            }
        }
    }
    if !bad.is_empty() {
        line.passed = false;
        line.detail = format!("direct sums disagree: {}", bad.join(", "));
    } else {
        line.detail += " + direct character sums";
    }
    line
}

fn criterion_5(caps: &SuiteCaps) -> Line {
    let mut line = suite_line(&sampler_checks(caps));
    let count = 1_000_000;
    let mut freq: BTreeMap<YoungDiagram, usize> = BTreeMap::new();
    for rec in sample_many(6, count, DEFAULT_SEED, SamplingMode::Fast) {
        *freq.entry(rec.diagram()).or_default() += 1;
    }
    let mut worst: f64 = 0.0;
    for (lambda, p) in growth_marginal_exact(6) {
        let p = to_f64(&p);
        let hits = freq.get(&lambda).copied().unwrap_or(0) as f64;
        let se = (p * (1.0 - p) / count as f64).sqrt();
        worst = worst.max((hits / count as f64 - p).abs() / se);
    }
    if worst > 4.0 {
        line.passed = false;
    }
    line.detail = format!("{}; 10^6 samples at n=6: max |z| = {worst:.2}", line.detail);
    line
}

fn criterion_6() -> Line {
    let rows = lln_leading_coefficients(8).unwrap();
    let mut bad: Vec<String> = rows.iter().filter(|r| !r.passed).map(|r| r.to_string()).collect();
    let report = run_lln(10_000, 500, 8, DEFAULT_SEED).unwrap();
    bad.extend(report_failures(&report));
    Line {
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} leading coefficients, {} Monte Carlo checks", rows.len(), report.checks.len())
        } else {
            bad.join("; ")
        },
    }
}

fn moment_line(reports: &[&MomentReport]) -> Line {
    let bad: Vec<String> = reports.iter().flat_map(|r| report_failures(r)).collect();
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    Line {
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{total} checks")
        } else {
            bad.join("; ")
        },
    }
}

fn criterion_9() -> Line {
    let report = biane_check(&DiagramFamily::OddStaircase, &YoungDiagram::row(2), &[100, 400, 1600], 3.0).unwrap();
    let ratio = report.max_consecutive_ratio.unwrap_or(f64::NAN);
    Line {
        passed: report.bounded,
        detail: format!(
            "{}: max consecutive ratio {ratio:.4}, scaled residuals {:?}",
            report.family,
            report.rows.iter().map(|r| format!("{:.4}", r.scaled_residual)).collect::<Vec<_>>()
        ),
    }
}

fn run(results: &mut Vec<(usize, &'static str, Line, f64)>, id: usize, name: &'static str, f: impl FnOnce() -> Line) {
    let start = Instant::now();
    let line = f();
    let secs = start.elapsed().as_secs_f64();
    println!(
        "criterion {id} [{}] {name} ({secs:.1} s): {}",
        if line.passed { "PASS" } else { "FAIL" },
        line.detail
    );
    results.push((id, name, line, secs));
}

#[test]
fn acceptance() {
    let caps = SuiteCaps::default();
    let mut results = Vec::new();
    run(&mut results, 1, "exact Plancherel expectations", || criterion_1(&caps));
    run(&mut results, 2, "identity suite", || suite_line(&identity_checks(&caps)));
    run(&mut results, 3, "structure constants", || suite_line(&structure_checks(&caps)));
    run(&mut results, 4, "leading-term theorems", || suite_line(&leading_term_checks(&caps)));
    run(&mut results, 5, "sampler correctness", || criterion_5(&caps));
    run(&mut results, 6, "law of large numbers", criterion_6);

    let start = Instant::now();
    let clt = run_clt_all(DEFAULT_N, DEFAULT_SAMPLES, DEFAULT_KMAX, DEFAULT_SEED).unwrap();
    println!("(shared CLT sample set: {:.1} s)", start.elapsed().as_secs_f64());
    run(&mut results, 7, "CLT for characters", || moment_line(&[&clt.characters]));
    run(&mut results, 8, "CLT for shapes and transition measures", || {
        moment_line(&[&clt.shape, &clt.transition])
    });
    run(&mut results, 9, "bounded Biane residual", criterion_9);

    let failed: Vec<usize> = results.iter().filter(|r| !r.2.passed).map(|r| r.0).collect();
    println!("{} of {} criteria passed", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
