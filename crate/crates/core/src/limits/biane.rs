//! Character ratios on balanced diagrams against the product of free
//! cumulants.
//!
//! For `λ` with `λ₁, λ'₁ ≤ A√n` and `n = |λ|`,
//! `χ^λ_{ρ∪1^{n-|ρ|}} / dim λ = n^{-(|ρ|-ℓ(ρ))/2} Π_j f̃_{j+1}[λ̄]^{m_j(ρ)}`
//! up to an error `O(n^{-(|ρ|-ℓ(ρ))/2 - 1})` with a constant depending on
//! `A` and `ρ` only. Since `f̃_k[λ̄] = f̃_k[λ] n^{-k/2}` the predicted term is
//! the exact rational `Π f̃_{j+1}[λ]^{m_j} / n^{|ρ|}`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::stats::slope;
use crate::characters::character_ratio;
use crate::error::{Error, Result};
use crate::observables::{free_cumulants_of_moments, htilde_from_ptilde, ptilde_int};
use crate::partitions::YoungDiagram;
use crate::plancherel::sample;
use crate::rational::{fmt_rational, pow, to_f64, Rational};

/// Largest consecutive ratio of rescaled residuals counted as bounded.
pub const MAX_RESIDUAL_RATIO: f64 = 1.5;

/// How the diagram of size `n` is chosen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DiagramFamily {
    /// Rows `2r-1, 2r-3, ..., 3, 1` with `n = r²`; lies in `Y(2)`.
    OddStaircase,
    /// One Plancherel sample per `n`.
    Plancherel { seed: u64 },
}

impl DiagramFamily {
    pub fn member(&self, n: usize) -> Result<YoungDiagram> {
        match self {
            DiagramFamily::OddStaircase => {
                let r = (n as f64).sqrt().round() as u32;
                if (r as usize) * (r as usize) != n || r == 0 {
                    return Err(Error::InvalidArgument(format!(
                        "the odd staircase needs a positive square size, got {n}"
                    )));
                }
                Ok(YoungDiagram::from_parts((0..r).map(|i| 2 * (r - i) - 1).collect()))
            }
            DiagramFamily::Plancherel { seed } => Ok(sample(n, *seed)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            DiagramFamily::OddStaircase => "odd staircase (2r-1, 2r-3, ..., 1), n = r^2".to_string(),
            DiagramFamily::Plancherel { seed } => format!("Plancherel sample, seed {seed}"),
        }
    }
}

/// One diagram of the family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BianeRow {
    pub n: usize,
    pub first_row: u32,
    pub first_column: u32,
    /// `χ^λ_{ρ∪1^{n-|ρ|}} / dim λ`, exact.
    pub measured_exact: String,
    pub measured: f64,
    pub predicted_exact: String,
    pub predicted: f64,
    /// `Π f̃_{j+1}[λ̄]^{m_j(ρ)}`.
    pub leading_factor: f64,
    pub residual: f64,
    /// `residual · n^{(|ρ|-ℓ(ρ))/2 + 1}`.
    pub scaled_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BianeReport {
    pub family: String,
    pub rho: String,
    pub a: f64,
    pub rows: Vec<BianeRow>,
    /// `(|ρ|-ℓ(ρ))/2 + 1`.
    pub scaling_exponent: f64,
    /// Least-squares slope of `log |residual|` against `log n`; absent when
    /// some residual vanishes.
    pub residual_slope: Option<f64>,
    /// Largest `|scaled_{i+1}| / |scaled_i|` over consecutive sizes.
    pub max_consecutive_ratio: Option<f64>,
    pub bounded: bool,
}

/// `f̃_2..=f̃_kmax` of `λ` from the integer `p̃_k`; index `k` is `f̃_k`.
fn free_cumulants_fast(lambda: &YoungDiagram, kmax: usize) -> Vec<Rational> {
    let pt: Vec<Rational> = (0..=kmax as u32)
        .map(|k| Rational::from_integer(ptilde_int(k, lambda)))
        .collect();
    free_cumulants_of_moments(&htilde_from_ptilde(&pt, kmax))
}

pub fn biane_check(family: &DiagramFamily, rho: &YoungDiagram, n_list: &[usize], a: f64) -> Result<BianeReport> {
    if rho.is_empty() {
        return Err(Error::InvalidArgument("ρ must be nonempty".into()));
    }
    let size = rho.size();
    let len = rho.len();
    let exponent = (size as f64 - len as f64) / 2.0 + 1.0;
    let kmax = rho.rows()[0] as usize + 1;
    let mut rows = Vec::new();
    for &n in n_list {
        let lambda = family.member(n)?;
        if !lambda.in_box(a) {
            return Err(Error::OutsideBox {
                diagram: lambda.to_text(),
                a,
            });
        }
        let measured = character_ratio(&lambda, rho)?;
        let f = free_cumulants_fast(&lambda, kmax);
        let mut num = Rational::one();
        for &part in rho.rows() {
            num *= &f[part as usize + 1];
        }
        let nn = Rational::from_integer(BigInt::from(n));
        let predicted = &num / pow(&nn, size as u32);
        let residual = &measured - &predicted;
        let leading = to_f64(&num) / (n as f64).powf((size + len) as f64 / 2.0);
        rows.push(BianeRow {
            n,
            first_row: lambda.row_len(1),
            first_column: lambda.len() as u32,
            measured_exact: fmt_rational(&measured),
            measured: to_f64(&measured),
            predicted_exact: fmt_rational(&predicted),
            predicted: to_f64(&predicted),
            leading_factor: leading,
            residual: to_f64(&residual),
            scaled_residual: to_f64(&residual) * (n as f64).powf(exponent),
        });
    }
    let nonzero = rows.iter().all(|r| r.residual != 0.0);
    let residual_slope = (nonzero && rows.len() >= 2).then(|| {
        let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.residual.abs().ln()).collect();
        slope(&xs, &ys)
    });
    let max_consecutive_ratio = (nonzero && rows.len() >= 2).then(|| {
        rows.windows(2)
            .map(|w| w[1].scaled_residual.abs() / w[0].scaled_residual.abs())
            .fold(0.0, f64::max)
    });
    let bounded = match max_consecutive_ratio {
        Some(r) => r <= MAX_RESIDUAL_RATIO,
        None => rows.iter().all(|r| r.scaled_residual.is_finite()),
    };
    Ok(BianeReport {
        family: family.describe(),
        rho: rho.to_tuple_string(),
        a,
        rows,
        scaling_exponent: exponent,
        residual_slope,
        max_consecutive_ratio,
        bounded,
    })
}
