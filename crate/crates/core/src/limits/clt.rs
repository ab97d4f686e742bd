//! Fluctuations of characters, of the rescaled profile and of the
//! transition measure around their limits.
//!
//! Targets: `η_k → ξ_k`, `u_k → ξ_{k+1}/√(k+1)`, `t_k → √(k-1) ξ_{k-1}`
//! with independent standard Gaussians `ξ_k`, and products of Hermite
//! polynomials `Π H_{m_k}(η_k)` with variance `Π m_k!`.

use serde::{Deserialize, Serialize};

use super::stats::{correlation, covariance};
use super::{check_sizes, covariance_matrix, FunctionalStats, MomentReport, StatCheck, TOLERANCE_NOTE};
use crate::error::{Error, Result};
use crate::observables::{fluctuation_functionals, hermite_mod, FluctuationRecord};
use crate::partitions::{partitions_up_to, YoungDiagram};
use crate::plancherel::{derive_seed, parallel_map, sample};

/// The three reports computed on one shared sample set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltReports {
    pub characters: MomentReport,
    pub shape: MomentReport,
    pub transition: MomentReport,
}

/// Fluctuation functionals of `samples` independent Plancherel diagrams.
pub fn collect_fluctuations(n: usize, samples: usize, kmax: usize, seed: u64) -> Result<Vec<FluctuationRecord>> {
    if kmax < 2 {
        return Err(Error::InvalidArgument("kmax must be at least 2".into()));
    }
    parallel_map(samples, |i| {
        let lambda = sample(n, derive_seed(seed, i as u64));
        fluctuation_functionals(&lambda, kmax)
    })
    .into_iter()
    .collect()
}

fn column(records: &[FluctuationRecord], pick: impl Fn(&FluctuationRecord) -> f64) -> Vec<f64> {
    records.iter().map(pick).collect()
}

fn base_report(kind: &str, n: usize, samples: usize, kmax: usize, seed: u64) -> MomentReport {
    MomentReport {
        kind: kind.to_string(),
        n,
        samples,
        kmax,
        seed,
        functionals: Vec::new(),
        covariance_names: Vec::new(),
        covariance: Vec::new(),
        checks: Vec::new(),
        tolerance_note: TOLERANCE_NOTE.to_string(),
    }
}

pub fn characters_report(records: &[FluctuationRecord], n: usize, kmax: usize, seed: u64) -> MomentReport {
    let samples = records.len();
    let mut r = base_report("clt-characters", n, samples, kmax, seed);
    let eta: Vec<Vec<f64>> = (0..=kmax).map(|k| column(records, |x| x.eta[k])).collect();
    let mean_tol = 4.0 / (samples as f64).sqrt();
    for k in 2..=kmax {
        let f = FunctionalStats::from_values(format!("eta_{k}"), &eta[k], 0.0, Some(1.0));
        if k <= 5 {
            r.checks.push(StatCheck::at_most(format!("|mean(eta_{k})|"), f.mean.abs(), mean_tol, "4/sqrt(N)"));
            r.checks.push(StatCheck::at_most(format!("|var(eta_{k}) - 1|"), (f.var - 1.0).abs(), 0.15, "15% of 1"));
            r.checks.push(StatCheck::above(format!("KS p(eta_{k})"), f.ks_p.unwrap_or(0.0), 0.01, "N(0,1)"));
        }
        r.functionals.push(f);
    }
    for i in 2..=kmax.min(5) {
        for j in i + 1..=kmax.min(5) {
            let c = covariance(&eta[i], &eta[j]);
            r.checks.push(StatCheck::at_most(format!("|cov(eta_{i}, eta_{j})|"), c.abs(), mean_tol, "4/sqrt(N)"));
        }
    }
    for rho in partitions_up_to(kmax.min(6)) {
        if rho.len() < 2 || rho.multiplicity(1) > 0 {
            continue;
        }
        let (values, var) = hermite_product(records, &rho);
        let mut f = FunctionalStats::from_values(format!("hermite{}", rho.to_tuple_string()), &values, 0.0, Some(var));
        // the limit is a product of Gaussians, not a Gaussian
        f.ks_stat = None;
        f.ks_p = None;
        r.functionals.push(f);
    }
    r.covariance_names = (2..=kmax).map(|k| format!("eta_{k}")).collect();
    r.covariance = covariance_matrix(&eta[2..]);
    r
}

/// `Π_k H_{m_k}(η_k)` per sample, with its limiting variance `Π m_k!`.
fn hermite_product(records: &[FluctuationRecord], rho: &YoungDiagram) -> (Vec<f64>, f64) {
    let mut var = 1.0;
    let mut factors = Vec::new();
    let mut part = 2;
    while part <= rho.rows()[0] {
        let m = rho.multiplicity(part);
        if m > 0 {
            factors.push((part as usize, hermite_mod(m)));
            var *= (1..=m).product::<usize>() as f64;
        }
        part += 1;
    }
    let values = records
        .iter()
        .map(|x| factors.iter().map(|(k, h)| h.eval_f64(x.eta[*k])).product())
        .collect();
    (values, var)
}

pub fn shape_report(records: &[FluctuationRecord], n: usize, kmax: usize, seed: u64) -> MomentReport {
    let samples = records.len();
    let mut r = base_report("clt-shape", n, samples, kmax, seed);
    let u: Vec<Vec<f64>> = (0..=kmax).map(|k| column(records, |x| x.u[k])).collect();
    let zero = u[0].iter().all(|&v| v == 0.0);
    r.functionals.push(FunctionalStats::from_values("u_0", &u[0], 0.0, Some(0.0)));
    r.checks.push(StatCheck::exact("u_0 identically zero", zero, "exact"));
    for k in 1..=kmax {
        let target = 1.0 / (k as f64 + 1.0);
        let f = FunctionalStats::from_values(format!("u_{k}"), &u[k], 0.0, Some(target));
        if k <= 4 {
            let tol = 4.0 * (target / samples as f64).sqrt();
            r.checks.push(StatCheck::at_most(format!("|mean(u_{k})|"), f.mean.abs(), tol, "4·sqrt(1/((k+1)N))"));
            r.checks.push(StatCheck::at_most(
                format!("|var(u_{k}) - 1/{}|/(1/{})", k + 1, k + 1),
                (f.var - target).abs() / target,
                0.15,
                "relative 15%",
            ));
        }
        r.functionals.push(f);
    }
    r.covariance_names = (1..=kmax).map(|k| format!("u_{k}")).collect();
    r.covariance = covariance_matrix(&u[1..]);
    r
}

pub fn transition_report(records: &[FluctuationRecord], n: usize, kmax: usize, seed: u64) -> MomentReport {
    let samples = records.len();
    let mut r = base_report("clt-transition", n, samples, kmax, seed);
    let t: Vec<Vec<f64>> = (0..=kmax).map(|k| column(records, |x| x.t[k])).collect();
    for k in 1..=2.min(kmax) {
        let zero = t[k].iter().all(|&v| v == 0.0);
        r.functionals.push(FunctionalStats::from_values(format!("t_{k}"), &t[k], 0.0, Some(0.0)));
        r.checks.push(StatCheck::exact(format!("t_{k} identically zero"), zero, "exact"));
    }
    for k in 3..=kmax {
        let target = k as f64 - 1.0;
        let f = FunctionalStats::from_values(format!("t_{k}"), &t[k], 0.0, Some(target));
        if k <= 5 {
            r.checks.push(StatCheck::at_most(
                format!("|var(t_{k}) - {}|/{}", k - 1, k - 1),
                (f.var - target).abs() / target,
                0.15,
                "relative 15%",
            ));
        }
        r.functionals.push(f);
    }
    if kmax >= 3 {
        let eta2 = column(records, |x| x.eta[2]);
        let c = correlation(&t[3], &eta2);
        r.checks.push(StatCheck::at_most(
            "|corr(t_3, eta_2) - 1|",
            (c - 1.0).abs(),
            4.0 / (samples as f64).sqrt(),
            "4/sqrt(N)",
        ));
        r.covariance_names = (3..=kmax).map(|k| format!("t_{k}")).collect();
        r.covariance = covariance_matrix(&t[3..]);
    }
    r
}

pub fn run_clt_all(n: usize, samples: usize, kmax: usize, seed: u64) -> Result<CltReports> {
    check_sizes(n, samples)?;
    let records = collect_fluctuations(n, samples, kmax, seed)?;
    Ok(CltReports {
        characters: characters_report(&records, n, kmax, seed),
        shape: shape_report(&records, n, kmax, seed),
        transition: transition_report(&records, n, kmax, seed),
    })
}

pub fn run_clt_characters(n: usize, samples: usize, kmax: usize, seed: u64) -> Result<MomentReport> {
    check_sizes(n, samples)?;
    let records = collect_fluctuations(n, samples, kmax, seed)?;
    Ok(characters_report(&records, n, kmax, seed))
}

pub fn run_clt_shape(n: usize, samples: usize, kmax: usize, seed: u64) -> Result<MomentReport> {
    check_sizes(n, samples)?;
    let records = collect_fluctuations(n, samples, kmax, seed)?;
    Ok(shape_report(&records, n, kmax, seed))
}

pub fn run_clt_transition(n: usize, samples: usize, kmax: usize, seed: u64) -> Result<MomentReport> {
    check_sizes(n, samples)?;
    let records = collect_fluctuations(n, samples, kmax, seed)?;
    Ok(transition_report(&records, n, kmax, seed))
}

/// Sample variance of `u_k - η_{k+1}/√(k+1)`, the remainder between the
/// shape and character fluctuations.
pub fn shape_character_gap_variance(records: &[FluctuationRecord], k: usize) -> f64 {
    let gap: Vec<f64> = records
        .iter()
        .map(|x| x.u[k] - x.eta[k + 1] / ((k + 1) as f64).sqrt())
        .collect();
    super::stats::variance(&gap)
}
