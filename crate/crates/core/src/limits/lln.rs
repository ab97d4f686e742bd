//! Concentration of rescaled Plancherel diagrams around `Ω`.

use num_traits::{ToPrimitive, Zero};

use super::stats::median;
use super::{check_sizes, FunctionalStats, MomentReport, StatCheck, TOLERANCE_NOTE};
use crate::algebra::{filtration_degree, Basis, Observable};
use crate::error::{Error, Result};
use crate::observables::{omega_moment, ptilde_int, sup_distance_to_omega};
use crate::plancherel::{derive_seed, exact_expectation, expectation_polynomial, parallel_map, sample, ExpectationPolynomial};
use crate::rational::{binomial_i64, central_binomial, fmt_rational, to_f64, Rational};

/// Largest `k` accepted by [`lln_leading_coefficients`].
pub const MAX_LEADING_K: u32 = 10;

/// Standard deviation of `p̃_k[λ̄]` under `M_n` to first order,
/// `k √(Σ_j C(k-1, j)² (k-1-2j)) / √n` over `j` with `k-1-2j ≥ 2`.
///
/// It follows from `p̃_k[λ̄] - p̃_k[Ω] = k q_{k-1} / √n` and the limit
/// variances of `q_{k-1}` in the Chebyshev basis.
pub fn predicted_ptilde_sd(k: u32, n: usize) -> f64 {
    let m = k as i64 - 1;
    let mut s = 0i64;
    let mut j = 0;
    while m - 2 * j >= 2 {
        let c = binomial_i64(m as u64, j as u64);
        s += c * c * (m - 2 * j);
        j += 1;
    }
    k as f64 * (s as f64).sqrt() / (n as f64).sqrt()
}

/// Grid size used for the sup-distance: `4⌈√n⌉`.
pub fn sup_grid_points(n: usize) -> usize {
    4 * (n as f64).sqrt().ceil() as usize
}

/// Monte Carlo: `p̃_k[λ̄] - p̃_k[Ω]` for `k = 2..=kmax` and the sup-distance
/// of `λ̄` to `Ω`.
pub fn run_lln(n: usize, samples: usize, kmax: usize, seed: u64) -> Result<MomentReport> {
    check_sizes(n, samples)?;
    if kmax < 2 {
        return Err(Error::InvalidArgument("kmax must be at least 2".into()));
    }
    let grid = sup_grid_points(n);
    let rows: Vec<(Vec<f64>, f64)> = parallel_map(samples, |i| {
        let lambda = sample(n, derive_seed(seed, i as u64));
        let dev = (2..=kmax as u32)
            .map(|k| {
                let pt = ptilde_int(k, &lambda).to_f64().unwrap_or(f64::NAN);
                pt / (n as f64).powf(k as f64 / 2.0) - to_f64(&omega_moment(k))
            })
            .collect();
        (dev, sup_distance_to_omega(&lambda, grid))
    });

    let mut report = MomentReport {
        kind: "lln".into(),
        n,
        samples,
        kmax,
        seed,
        functionals: Vec::new(),
        covariance_names: Vec::new(),
        covariance: Vec::new(),
        checks: Vec::new(),
        tolerance_note: format!(
            "{TOLERANCE_NOTE}; LLN medians of |p̃_k[λ̄] - p̃_k[Ω]| within 5 predicted sd, median sup-distance at most 0.35"
        ),
    };
    let mut columns = Vec::new();
    for k in 2..=kmax as u32 {
        let col: Vec<f64> = rows.iter().map(|(d, _)| d[k as usize - 2]).collect();
        let sd = predicted_ptilde_sd(k, n);
        let abs: Vec<f64> = col.iter().map(|x| x.abs()).collect();
        report.checks.push(StatCheck::at_most(
            format!("median |ptilde_{k}[rescaled] - ptilde_{k}[omega]|"),
            median(&abs),
            5.0 * sd,
            format!("5 x predicted sd {sd:.6e}"),
        ));
        report
            .functionals
            .push(FunctionalStats::from_values(format!("ptilde_{k}_deviation"), &col, 0.0, Some(sd * sd)));
        columns.push(col);
    }
    let sup: Vec<f64> = rows.iter().map(|(_, s)| *s).collect();
    report.checks.push(StatCheck::at_most(
        "median sup-distance to omega",
        median(&sup),
        0.35,
        format!("grid of {grid} points on [-2.5, 2.5]; regression bound"),
    ));
    report.functionals.push(FunctionalStats::from_values("sup_distance", &sup, 0.0, None));
    report.covariance_names = (2..=kmax).map(|k| format!("ptilde_{k}_deviation")).collect();
    report.covariance = super::covariance_matrix(&columns);
    Ok(report)
}

/// Exact growth of `⟨p̃_k⟩_n` for one even `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingCoefficientRow {
    pub k: u32,
    /// `deg₁(p̃_k) / 2`, the predicted degree in `n`.
    pub degree_bound: u32,
    /// Polynomial interpolated from exact expectations at `n = 1..=bound+2`.
    pub fitted: ExpectationPolynomial,
    /// Fit reproduces the exact expectations at two further `n`.
    pub extrapolates: bool,
    /// Fit equals the closed form from the `p#` expansion.
    pub matches_closed_form: bool,
    pub expected_leading: Rational,
    pub passed: bool,
}

impl std::fmt::Display for LeadingCoefficientRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] <ptilde_{}>_n: degree {:?} (bound {}), leading {} (expected {}), extrapolates {}, closed form {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.k,
            self.fitted.degree(),
            self.degree_bound,
            fmt_rational(&self.fitted.leading_coefficient()),
            fmt_rational(&self.expected_leading),
            self.extrapolates,
            self.matches_closed_form,
        )
    }
}

/// For even `k = 2m ≤ kmax`, fit `n ↦ ⟨p̃_k⟩_n` from exact expectations and
/// check that its leading coefficient is `C(2m, m)`.
pub fn lln_leading_coefficients(kmax: u32) -> Result<Vec<LeadingCoefficientRow>> {
    if !(2..=MAX_LEADING_K).contains(&kmax) {
        return Err(Error::InvalidArgument(format!("kmax must lie in 2..={MAX_LEADING_K}")));
    }
    let mut out = Vec::new();
    for k in (2..=kmax).step_by(2) {
        let f = Observable::generator(Basis::PTilde, k)?;
        let deg1 = filtration_degree(&f, Some(&[1])).unwrap_or(0);
        let bound = deg1 / 2;
        let points = (1..=bound as u64 + 2)
            .map(|n| Ok((n, exact_expectation(&f, n as usize)?)))
            .collect::<Result<Vec<_>>>()?;
        let fitted = ExpectationPolynomial::interpolate(&points);
        let mut extrapolates = true;
        for n in bound as u64 + 3..=bound as u64 + 4 {
            extrapolates &= fitted.eval(n) == exact_expectation(&f, n as usize)?;
        }
        let matches_closed_form = fitted == expectation_polynomial(&f);
        let expected_leading = Rational::from_integer(central_binomial(k as u64 / 2));
        let degree_ok = fitted.degree().is_some_and(|d| d as u32 == bound);
        let passed = degree_ok
            && extrapolates
            && matches_closed_form
            && !expected_leading.is_zero()
            && fitted.leading_coefficient() == expected_leading;
        out.push(LeadingCoefficientRow {
            k,
            degree_bound: bound,
            fitted,
            extrapolates,
            matches_closed_form,
            expected_leading,
            passed,
        });
    }
    Ok(out)
}
