//! Monte Carlo checks of the law of large numbers and the central limit
//! theorems for Plancherel diagrams, the asymptotics of characters on
//! balanced diagrams, and truncated reference Gaussian processes.
//!
//! Every statistical tolerance here is an engineering choice: the limit
//! theorems come without rates. Means are compared at 4 standard errors,
//! variances at 15%, Kolmogorov–Smirnov tests at the 1% level.

pub mod biane;
pub mod clt;
pub mod gaussian;
pub mod lln;
pub mod stats;

use serde::{Deserialize, Serialize};

pub use biane::{biane_check, BianeReport, BianeRow, DiagramFamily};
pub use clt::{collect_fluctuations, run_clt_all, run_clt_characters, run_clt_shape, run_clt_transition, shape_character_gap_variance, CltReports};
pub use gaussian::{gaussian_reference, GaussianReference};
pub use lln::{lln_leading_coefficients, run_lln};

use stats::{ks_p_value, ks_statistic_normal, mean, median, quantile, variance};

pub const DEFAULT_N: usize = 4000;
pub const DEFAULT_SAMPLES: usize = 4000;
pub const DEFAULT_KMAX: usize = 6;
pub const DEFAULT_SEED: u64 = 2024;

pub const MIN_N: usize = 100;
pub const MIN_SAMPLES: usize = 100;

pub const TOLERANCE_NOTE: &str = "tolerances are engineering choices (no convergence rates are known): \
means within 4 standard errors, variances within 15%, KS p-value above 0.01";

/// Summary of one scalar functional over the sample set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalStats {
    pub name: String,
    pub mean: f64,
    pub var: f64,
    pub std_err: f64,
    pub target_mean: f64,
    pub target_var: Option<f64>,
    /// Standard error of `var`, from the sample fourth central moment.
    pub var_std_err: f64,
    pub z_mean: f64,
    pub z_var: Option<f64>,
    pub ks_stat: Option<f64>,
    pub ks_p: Option<f64>,
    pub median: f64,
    pub q05: f64,
    pub q95: f64,
}

impl FunctionalStats {
    /// Statistics of `values`; the KS test runs against `N(target_mean,
    /// target_var)` when a positive target variance is given.
    pub fn from_values(name: impl Into<String>, values: &[f64], target_mean: f64, target_var: Option<f64>) -> Self {
        let n = values.len();
        let m = mean(values);
        let v = variance(values);
        let std_err = (v / n as f64).sqrt();
        let z_mean = if std_err > 0.0 {
            (m - target_mean) / std_err
        } else if m == target_mean {
            0.0
        } else {
            f64::INFINITY
        };
        let nf = n as f64;
        let m4 = values.iter().map(|x| (x - m).powi(4)).sum::<f64>() / nf;
        let var_std_err = ((m4 - (nf - 3.0) / (nf - 1.0) * v * v) / nf).max(0.0).sqrt();
        let positive = target_var.filter(|&t| t > 0.0);
        let z_var = positive.map(|t| if var_std_err > 0.0 { (v - t) / var_std_err } else { f64::INFINITY });
        let (ks_stat, ks_p) = match positive {
            Some(t) => {
                let centered: Vec<f64> = values.iter().map(|x| x - target_mean).collect();
                let d = ks_statistic_normal(&centered, t.sqrt());
                (Some(d), Some(ks_p_value(d, n)))
            }
            None => (None, None),
        };
        FunctionalStats {
            name: name.into(),
            mean: m,
            var: v,
            std_err,
            target_mean,
            target_var,
            var_std_err,
            z_mean,
            z_var,
            ks_stat,
            ks_p,
            median: median(values),
            q05: quantile(values, 0.05),
            q95: quantile(values, 0.95),
        }
    }
}

/// One pass/fail comparison recorded in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatCheck {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    pub note: String,
}

impl StatCheck {
    /// Passes when `value ≤ threshold`.
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64, note: impl Into<String>) -> Self {
        StatCheck {
            name: name.into(),
            value,
            threshold,
            passed: value <= threshold,
            note: note.into(),
        }
    }

    /// Passes when `value > threshold`.
    pub fn above(name: impl Into<String>, value: f64, threshold: f64, note: impl Into<String>) -> Self {
        StatCheck {
            name: name.into(),
            value,
            threshold,
            passed: value > threshold,
            note: note.into(),
        }
    }

    pub fn exact(name: impl Into<String>, passed: bool, note: impl Into<String>) -> Self {
        StatCheck {
            name: name.into(),
            value: if passed { 0.0 } else { 1.0 },
            threshold: 0.0,
            passed,
            note: note.into(),
        }
    }
}

/// Output of one Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub kind: String,
    pub n: usize,
    pub samples: usize,
    pub kmax: usize,
    pub seed: u64,
    pub functionals: Vec<FunctionalStats>,
    /// Labels of the rows and columns of `covariance`.
    pub covariance_names: Vec<String>,
    pub covariance: Vec<Vec<f64>>,
    pub checks: Vec<StatCheck>,
    pub tolerance_note: String,
}

/// One CSV line: `name, n, N, mean, var, target, z-score, ks-stat`.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub name: String,
    pub n: usize,
    pub samples: usize,
    pub mean: f64,
    pub var: f64,
    /// Target variance when one exists, else target mean.
    pub target: f64,
    /// Variance z-score when a target variance exists, else mean z-score.
    pub z_score: f64,
    pub ks_stat: Option<f64>,
}

impl MomentReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn functional(&self, name: &str) -> Option<&FunctionalStats> {
        self.functionals.iter().find(|f| f.name == name)
    }

    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.functionals
            .iter()
            .map(|f| CsvRow {
                name: f.name.clone(),
                n: self.n,
                samples: self.samples,
                mean: f.mean,
                var: f.var,
                target: f.target_var.unwrap_or(f.target_mean),
                z_score: f.z_var.unwrap_or(f.z_mean),
                ks_stat: f.ks_stat,
            })
            .collect()
    }
}

/// Symmetric sample covariance matrix of the columns.
pub fn covariance_matrix(columns: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = columns.len();
    let mut out = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let c = stats::covariance(&columns[i], &columns[j]);
            out[i][j] = c;
            out[j][i] = c;
        }
    }
    out
}

fn check_sizes(n: usize, samples: usize) -> crate::Result<()> {
    if n < MIN_N || samples < MIN_SAMPLES {
        return Err(crate::Error::InvalidArgument(format!(
            "Monte Carlo runs need n ≥ {MIN_N} and at least {MIN_SAMPLES} samples"
        )));
    }
    Ok(())
}
