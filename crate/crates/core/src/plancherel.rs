//! The Plancherel measure `M_n(λ) = dim²λ / n!`: exact expectations by
//! enumeration, their closed form as polynomials in `n`, and a sampler
//! driven by the Plancherel growth process.
//!
//! One growth step adds a box at the addable corner with content `x_i`
//! with probability equal to the transition-measure atom
//! `μ_i = Π_j (x_i - y_j) / Π_{l≠i} (x_i - x_l)`.
//!
//! Random streams use ChaCha8 (`rand_chacha`). A batch with master seed
//! `s` gives record `i` the seed `splitmix64(s + (i + 1)·0x9E3779B97F4A7C15)`,
//! so every record can be regenerated on its own and batches are identical
//! for any thread count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Basis, Observable};
use crate::characters::plancherel_weight;
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, YoungDiagram};
use crate::rational::{int, to_f64, Rational};

pub const DEFAULT_EXPECTATION_CAP: usize = 14;

/// `⟨f⟩_n = Σ_{λ ⊢ n} f(λ) M_n(λ)`, exact; requires `n ≤ cap`.
pub fn exact_expectation_with_cap(f: &Observable, n: usize, cap: usize) -> Result<Rational> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "n",
            value: n,
            cap,
        });
    }
    let parts = partitions_of(n);
    let term = |lambda: &YoungDiagram| f.eval(lambda) * plancherel_weight(lambda);
    #[cfg(feature = "parallel")]
    let total = {
        use rayon::prelude::*;
        parts
            .par_iter()
            .map(term)
            .reduce(Rational::zero, |a, b| a + b)
    };
    #[cfg(not(feature = "parallel"))]
    let total = parts.iter().map(term).sum();
    Ok(total)
}

pub fn exact_expectation(f: &Observable, n: usize) -> Result<Rational> {
    exact_expectation_with_cap(f, n, DEFAULT_EXPECTATION_CAP)
}

/// A polynomial in `n` with exact coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectationPolynomial {
    coeffs: Vec<Rational>,
}

impl ExpectationPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExpectationPolynomial { coeffs }
    }

    /// `n^{↓r} = n (n-1) ... (n-r+1)`.
    pub fn falling_factorial(r: usize) -> Self {
        let mut coeffs = vec![Rational::one()];
        for i in 0..r {
            // multiply by (n - i)
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (d, c) in coeffs.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * int(i as i64);
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    /// The unique polynomial of degree `< points.len()` through the points
    /// (Newton divided differences).
    pub fn interpolate(points: &[(u64, Rational)]) -> Self {
        let xs: Vec<Rational> = points.iter().map(|(x, _)| Rational::from_integer(BigInt::from(*x))).collect();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        let len = dd.len();
        for level in 1..len {
            for i in (level..len).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        // Horner in the Newton basis
        let mut acc: Vec<Rational> = Vec::new();
        for i in (0..len).rev() {
            let mut next = vec![Rational::zero(); acc.len() + 1];
            for (d, c) in acc.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xs[i];
            }
            next[0] += &dd[i];
            acc = next;
        }
        Self::new(acc)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, n: u64) -> Rational {
        let x = Rational::from_integer(BigInt::from(n));
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * c;
        }
        let tidy = Self::new(std::mem::take(&mut self.coeffs));
        *self = tidy;
    }
}

/// Closed form of `n ↦ ⟨f⟩_n`: the expectation of `p#_ρ` is `n^{↓r}` for
/// `ρ = (1^r)` and zero otherwise.
pub fn expectation_polynomial(f: &Observable) -> ExpectationPolynomial {
    let f = f.to_basis(Basis::PSharp);
    let mut out = ExpectationPolynomial::new(Vec::new());
    for (rho, c) in f.poly().terms() {
        if rho.iter().all(|&k| k == 1) {
            out.add_scaled(&ExpectationPolynomial::falling_factorial(rho.len()), c);
        }
    }
    out
}

/// Exact Plancherel weights produced by the growth process after `n`
/// steps, summed over all growth paths.
pub fn growth_marginal_exact(n: usize) -> BTreeMap<YoungDiagram, Rational> {
    let mut level: BTreeMap<YoungDiagram, Rational> = BTreeMap::new();
    level.insert(YoungDiagram::empty(), Rational::one());
    for _ in 0..n {
        let mut next: BTreeMap<YoungDiagram, Rational> = BTreeMap::new();
        for (lambda, p) in &level {
            for (row, mu) in exact_transitions(lambda) {
                let child = lambda.add_box(row).expect("addable");
                *next.entry(child).or_insert_with(Rational::zero) += p * mu;
            }
        }
        level = next;
    }
    level
}

/// `(row, probability)` for every addable cell, rows 1-based.
pub fn exact_transitions(lambda: &YoungDiagram) -> Vec<(usize, Rational)> {
    let e = lambda.extrema();
    let (xs, ys) = (e.minima(), e.maxima());
    // minima increase with content, so the bottom addable cell comes first
    let rows = addable_rows_by_content(lambda);
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut num = BigInt::one();
            for &y in ys {
                num *= x - y;
            }
            let mut den = BigInt::one();
            for (l, &xl) in xs.iter().enumerate() {
                if l != i {
                    den *= x - xl;
                }
            }
            (rows[i], Rational::new(num, den))
        })
        .collect()
}

fn addable_rows_by_content(lambda: &YoungDiagram) -> Vec<usize> {
    lambda.addable_cells().into_iter().rev().map(|(r, _)| r).collect()
}

/// How growth probabilities are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum SamplingMode {
    /// Exact rational atoms; the uniform draw is compared with the
    /// cumulative thresholds, each converted to `f64` once.
    Exact,
    /// `f64` atoms computed as products of paired ratios
    /// `(x_i - y_j)/(x_i - x_l)`, each in `(0, 1)`.
    #[default]
    Fast,
}

/// Diagram, pseudorandom stream and step count of one growth run.
#[derive(Debug, Clone)]
pub struct SamplerState {
    rows: Vec<u32>,
    rng: ChaCha8Rng,
    steps: usize,
    mode: SamplingMode,
}

impl SamplerState {
    pub fn new(seed: u64, mode: SamplingMode) -> Self {
        SamplerState {
            rows: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            steps: 0,
            mode,
        }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn diagram(&self) -> YoungDiagram {
        YoungDiagram::from_parts(self.rows.clone())
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }
}

/// Extrema of the profile and the row of each addable cell, both ordered
/// by increasing content.
fn corners(rows: &[u32]) -> (Vec<i64>, Vec<i64>, Vec<usize>) {
    let len = rows.len();
    let row_len = |i: usize| if i == 0 || i > len { 0 } else { rows[i - 1] as i64 };
    let mut xs = Vec::with_capacity(len + 1);
    let mut ys = Vec::with_capacity(len);
    let mut addable = Vec::with_capacity(len + 1);
    xs.push(-(len as i64));
    addable.push(len + 1);
    for i in (1..=len).rev() {
        let r = row_len(i);
        if row_len(i + 1) < r {
            ys.push(r - i as i64);
        }
        if i == 1 || row_len(i - 1) > r {
            xs.push(r + 1 - i as i64);
            addable.push(i);
        }
    }
    (xs, ys, addable)
}

fn fast_weights(xs: &[i64], ys: &[i64]) -> Vec<f64> {
    let m = xs.len();
    (0..m)
        .map(|i| {
            let x = xs[i] as f64;
            let mut w = 1.0;
            for (j, &y) in ys.iter().enumerate() {
                // pair y_j with the minimum on the same side of x_i
                let partner = if j < i { xs[j] } else { xs[j + 1] };
                w *= (x - y as f64) / (x - partner as f64);
            }
            w
        })
        .collect()
}

/// Add one box to the state's diagram.
pub fn growth_step(state: &mut SamplerState) {
    let (xs, ys, addable) = corners(&state.rows);
    let u: f64 = state.rng.random();
    let pick = match state.mode {
        SamplingMode::Fast => {
            let w = fast_weights(&xs, &ys);
            let total: f64 = w.iter().sum();
            let target = u * total;
            let mut acc = 0.0;
            let mut idx = w.len() - 1;
            for (i, wi) in w.iter().enumerate() {
                acc += wi;
                if target < acc {
                    idx = i;
                    break;
                }
            }
            idx
        }
        SamplingMode::Exact => {
            let lambda = YoungDiagram::from_parts(state.rows.clone());
            let probs = exact_transitions(&lambda);
            let mut acc = Rational::zero();
            let mut idx = probs.len() - 1;
            for (i, (_, p)) in probs.iter().enumerate().take(probs.len() - 1) {
                acc += p;
                if u < to_f64(&acc) {
                    idx = i;
                    break;
                }
            }
            idx
        }
    };
    let row = addable[pick];
    if row > state.rows.len() {
        state.rows.push(1);
    } else {
        state.rows[row - 1] += 1;
    }
    state.steps += 1;
}

/// A Plancherel-distributed diagram with `n` boxes.
pub fn sample(n: usize, seed: u64) -> YoungDiagram {
    sample_with_mode(n, seed, SamplingMode::Fast)
}

pub fn sample_with_mode(n: usize, seed: u64, mode: SamplingMode) -> YoungDiagram {
    let mut state = SamplerState::new(seed, mode);
    for _ in 0..n {
        growth_step(&mut state);
    }
    state.diagram()
}

/// One sampled diagram with the seed that regenerates it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub seed: u64,
    pub n: usize,
    pub rows: Vec<u32>,
}

impl SampleRecord {
    pub fn diagram(&self) -> YoungDiagram {
        YoungDiagram::from_parts(self.rows.clone())
    }
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Seed of record `index` in a batch with master seed `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add((index + 1).wrapping_mul(0x9E3779B97F4A7C15)))
}

/// Apply `f` to `0..count`, in parallel when enabled, results in index order.
pub fn parallel_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// `count` independent samples of `M_n`.
pub fn sample_many(n: usize, count: usize, master_seed: u64, mode: SamplingMode) -> Vec<SampleRecord> {
    parallel_map(count, |i| {
        let seed = derive_seed(master_seed, i as u64);
        let d = sample_with_mode(n, seed, mode);
        SampleRecord {
            seed,
            n,
            rows: d.rows().to_vec(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn d(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn expectation_examples() {
        let f = Observable::psharp(&d("1,1"));
        assert_eq!(exact_expectation(&f, 4).unwrap(), int(12));
        let f = Observable::psharp(&d("2"));
        for n in 0..=8 {
            assert_eq!(exact_expectation(&f, n).unwrap(), int(0));
        }
        let pt4 = Observable::generator(Basis::PTilde, 4).unwrap();
        assert_eq!(exact_expectation(&pt4, 2).unwrap(), int(16));
        assert!(exact_expectation(&pt4, 15).is_err());
    }

    #[test]
    fn closed_forms() {
        let p = expectation_polynomial(&Observable::psharp(&d("1,1")));
        assert_eq!(p.coeffs(), &[int(0), int(-1), int(1)]);
        assert_eq!(expectation_polynomial(&Observable::psharp(&d("3"))).degree(), None);
        let pt2 = Observable::generator(Basis::PTilde, 2).unwrap();
        assert_eq!(expectation_polynomial(&pt2).coeffs(), &[int(0), int(2)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let target = ExpectationPolynomial::new(vec![ratio(1, 3), int(-2), int(0), ratio(5, 2)]);
        let pts: Vec<(u64, Rational)> = (1..=6).map(|n| (n, target.eval(n))).collect();
        assert_eq!(ExpectationPolynomial::interpolate(&pts), target);
    }

    #[test]
    fn small_transitions() {
        let t = exact_transitions(&YoungDiagram::empty());
        assert_eq!(t, vec![(1, int(1))]);
        let t = exact_transitions(&d("1"));
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|(_, p)| *p == ratio(1, 2)));
        let m3 = growth_marginal_exact(3);
        assert_eq!(m3[&d("3")], ratio(1, 6));
        assert_eq!(m3[&d("2,1")], ratio(2, 3));
        assert_eq!(m3[&d("1,1,1")], ratio(1, 6));
    }

    #[test]
    fn fast_weights_match_exact() {
        for lambda in [d("3,1"), d("4,4,2,1"), d("6,3,3,1,1")] {
            let (xs, ys, rows) = corners(lambda.rows());
            let exact = exact_transitions(&lambda);
            let fast = fast_weights(&xs, &ys);
            for ((r, p), (w, r2)) in exact.iter().zip(fast.iter().zip(&rows)) {
                assert_eq!(r, r2);
                assert!((to_f64(p) - w).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deterministic_sampling() {
        assert_eq!(sample(0, 1), YoungDiagram::empty());
        assert_eq!(sample(1, 99), d("1"));
        assert_eq!(sample(50, 7), sample(50, 7));
        assert_eq!(sample(50, 7).size(), 50);
        assert_eq!(sample_with_mode(12, 3, SamplingMode::Exact).size(), 12);
        let a = sample_many(20, 5, 11, SamplingMode::Fast);
        assert_eq!(a, sample_many(20, 5, 11, SamplingMode::Fast));
        assert_eq!(a[2].diagram(), sample(20, derive_seed(11, 2)));
    }
}
