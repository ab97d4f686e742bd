//! Finite truncations of the limiting Gaussian fluctuation fields, for
//! overlaying on sampled profiles. They are truncations only: the processes
//! themselves are generalized functions.
//!
//! With `x = 2cos θ` and independent standard Gaussians `ξ_k`:
//!
//! * `Δ(x) = (1/π) Σ_{k=2}^{kmax+1} ξ_k sin(kθ) / √k`, the profile field;
//! * `Δ̂(x) = Σ_{k=3}^{kmax+2} √(k-1) ξ_{k-1} t_k(x) / (2π √(4 - x²))`, the
//!   transition-measure field, driven by the same `ξ`.
//!
//! Both vanish outside `(-2, 2)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_REFERENCE_KMAX: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianReference {
    pub kmax: usize,
    pub seed: u64,
    /// `ξ_2..=ξ_{kmax+1}`.
    pub xi: Vec<f64>,
    pub x: Vec<f64>,
    pub delta: Vec<f64>,
    pub delta_hat: Vec<f64>,
}

/// One draw of both truncated fields on `grid`.
pub fn gaussian_reference(kmax: usize, grid: &[f64], seed: u64) -> Result<GaussianReference> {
    if kmax == 0 || kmax > MAX_REFERENCE_KMAX {
        return Err(Error::InvalidArgument(format!("kmax must lie in 1..={MAX_REFERENCE_KMAX}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi: Vec<f64> = (0..kmax).map(|_| rng.sample(StandardNormal)).collect();
    let mut delta = Vec::with_capacity(grid.len());
    let mut delta_hat = Vec::with_capacity(grid.len());
    for &x in grid {
        if x.abs() >= 2.0 {
            delta.push(0.0);
            delta_hat.push(0.0);
            continue;
        }
        let theta = (x / 2.0).acos();
        let mut d = 0.0;
        let mut dh = 0.0;
        for (i, z) in xi.iter().enumerate() {
            let k = (i + 2) as f64;
            d += z * (k * theta).sin() / k.sqrt();
            // t_{k+1}(x) = 2cos((k+1)θ) carries √k ξ_k
            dh += k.sqrt() * z * 2.0 * ((k + 1.0) * theta).cos();
        }
        delta.push(d / PI);
        delta_hat.push(dh / (2.0 * PI * (4.0 - x * x).sqrt()));
    }
    Ok(GaussianReference {
        kmax,
        seed,
        xi,
        x: grid.to_vec(),
        delta,
        delta_hat,
    })
}

/// Variance of the `Δ` truncation at `x = 2cos θ`:
/// `(1/π²) Σ_{k=2}^{kmax+1} sin²(kθ) / k`.
pub fn delta_variance(kmax: usize, theta: f64) -> f64 {
    (2..=kmax + 1)
        .map(|k| (k as f64 * theta).sin().powi(2) / k as f64)
        .sum::<f64>()
        / (PI * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::stats::{mean, variance};

    #[test]
    fn variance_at_centre_matches_partial_sum() {
        let draws: Vec<f64> = (0..10_000)
            .map(|s| gaussian_reference(100, &[0.0], s).unwrap().delta[0])
            .collect();
        let target = delta_variance(100, PI / 2.0);
        let v = variance(&draws);
        assert!((v / target - 1.0).abs() < 0.1, "{v} vs {target}");
        assert!(mean(&draws).abs() < 4.0 * (target / 10_000.0).sqrt());
    }

    #[test]
    fn vanishes_outside_support() {
        let r = gaussian_reference(10, &[-3.0, -2.0, 2.0, 2.5], 1).unwrap();
        assert!(r.delta.iter().chain(&r.delta_hat).all(|&v| v == 0.0));
        assert!(gaussian_reference(201, &[0.0], 1).is_err());
    }

    #[test]
    fn deterministic() {
        let g: Vec<f64> = (-19..=19).map(|i| i as f64 / 10.0).collect();
        assert_eq!(gaussian_reference(20, &g, 9).unwrap(), gaussian_reference(20, &g, 9).unwrap());
    }
}
