//! Evaluation of observables on a fixed diagram: power sums in Frobenius
//! coordinates and in the profile extrema, normalized characters, the
//! transition measure with its moments and free cumulants, the limit curve
//! and the centered, scaled fluctuation functionals.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::character_ratio;
use crate::error::{Error, Result};
use crate::partitions::YoungDiagram;
use crate::rational::{binomial, catalan, central_binomial, falling, int, ratio, to_f64, Rational};
use crate::series::{lagrange_b_from_a, FormalSeries};

/// `p_k(λ) = Σ_i [a_i^k - (-b_i)^k]`; `p_0 = 0`.
pub fn eval_p(k: u32, lambda: &YoungDiagram) -> Rational {
    if k == 0 {
        return Rational::zero();
    }
    let f = lambda.frobenius();
    let mut s = BigInt::zero();
    for (&a, &b) in f.a2.iter().zip(&f.b2) {
        s += BigInt::from(a).pow(k) - BigInt::from(-b).pow(k);
    }
    Rational::new(s, BigInt::from(2).pow(k))
}

/// `p̃_k(λ) = Σ x_i^k - Σ y_j^k`, an integer.
pub fn ptilde_int(k: u32, lambda: &YoungDiagram) -> BigInt {
    let e = lambda.extrema();
    let mut s = BigInt::zero();
    for &x in e.minima() {
        s += BigInt::from(x).pow(k);
    }
    for &y in e.maxima() {
        s -= BigInt::from(y).pow(k);
    }
    s
}

pub fn eval_ptilde(k: u32, lambda: &YoungDiagram) -> Rational {
    Rational::from_integer(ptilde_int(k, lambda))
}

/// `p̃_k` of arbitrary interlacing points, e.g. rescaled extrema.
pub fn ptilde_of_points(minima: &[Rational], maxima: &[Rational], k: u32) -> Rational {
    let pw = |r: &Rational| crate::rational::pow(r, k);
    minima.iter().map(pw).sum::<Rational>() - maxima.iter().map(pw).sum::<Rational>()
}

/// `p#_ρ(λ) = n^{↓|ρ|} χ^λ_{ρ∪1^{n-|ρ|}} / dim λ`, zero when `|ρ| > n`.
pub fn eval_psharp(rho: &YoungDiagram, lambda: &YoungDiagram) -> Rational {
    let n = lambda.size();
    if rho.size() > n {
        return Rational::zero();
    }
    let ratio = character_ratio(lambda, rho).expect("size checked");
    ratio * Rational::from_integer(falling(n as u64, rho.size() as u64))
}

/// `p#_k` as the coefficient of `z^{-1}` in
/// `-(1/k) (z - 1/2)^{↓k} Φ(z) / Φ(z - k)` at infinity.
///
/// With `t = 1/z` the expression is `t^{-k}` times a power series, so the
/// answer is `-1/k` times its coefficient of `t^{k+1}`.
pub fn eval_psharp_residue(k: u32, lambda: &YoungDiagram) -> Rational {
    assert!(k >= 1, "index starts at 1");
    let order = k as usize + 2;
    let linear = |c: Rational| FormalSeries::new(vec![Rational::one(), c], order);
    let geometric = |c: Rational| {
        // 1 / (1 - c t)
        let mut v = Vec::with_capacity(order);
        let mut p = Rational::one();
        for _ in 0..order {
            v.push(p.clone());
            p *= &c;
        }
        FormalSeries::new(v, order)
    };
    let mut s = FormalSeries::<Rational>::one(order);
    for j in 0..k {
        s = s.mul(&linear(-ratio(2 * j as i64 + 1, 2)));
    }
    let f = lambda.frobenius();
    let kk = int(k as i64);
    for (&a2, &b2) in f.a2.iter().zip(&f.b2) {
        let a = ratio(a2, 2);
        let b = ratio(b2, 2);
        s = s.mul(&linear(b.clone()));
        s = s.mul(&linear(-(&a + &kk)));
        s = s.mul(&geometric(a));
        s = s.mul(&geometric(-(&b - &kk)));
    }
    -s.coeff(k as usize + 1).clone() / kk
}

/// A monic polynomial in `z` given by its roots; used to compare the
/// rational functions built from Frobenius coordinates and from extrema.
fn expand_roots(roots: &[Rational]) -> Vec<Rational> {
    // coefficients in ascending degree
    let mut c = vec![Rational::one()];
    for r in roots {
        let mut next = vec![Rational::zero(); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= v * r;
        }
        c = next;
    }
    c
}

fn cancel_roots(num: &mut Vec<Rational>, den: &mut Vec<Rational>) {
    let mut i = 0;
    while i < num.len() {
        if let Some(j) = den.iter().position(|d| d == &num[i]) {
            num.swap_remove(i);
            den.swap_remove(j);
        } else {
            i += 1;
        }
    }
    num.sort();
    den.sort();
}

/// Reduced numerator and denominator coefficients (ascending) of
/// `Φ(z - 1/2; λ) / Φ(z + 1/2; λ)`.
pub fn phi_shift_ratio(lambda: &YoungDiagram) -> (Vec<Rational>, Vec<Rational>) {
    let f = lambda.frobenius();
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (&a2, &b2) in f.a2.iter().zip(&f.b2) {
        // Φ(z-1/2) = Π (z - 1/2 + b) / (z - 1/2 - a)
        num.push(ratio(1 - b2, 2));
        den.push(ratio(1 + a2, 2));
        // 1/Φ(z+1/2) = Π (z + 1/2 - a) / (z + 1/2 + b)
        num.push(ratio(a2 - 1, 2));
        den.push(ratio(-1 - b2, 2));
    }
    cancel_roots(&mut num, &mut den);
    (expand_roots(&num), expand_roots(&den))
}

/// Reduced coefficients of `z Π(z - y_j) / Π(z - x_i)`.
pub fn extrema_ratio(lambda: &YoungDiagram) -> (Vec<Rational>, Vec<Rational>) {
    let e = lambda.extrema();
    let mut num: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(e.maxima().iter().map(|&y| int(y)))
        .collect();
    let mut den: Vec<Rational> = e.minima().iter().map(|&x| int(x)).collect();
    cancel_roots(&mut num, &mut den);
    (expand_roots(&num), expand_roots(&den))
}

/// Finitely supported probability measure with atoms at the profile minima.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMeasure {
    atoms: Vec<(Rational, Rational)>,
}

impl TransitionMeasure {
    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> Rational {
        self.atoms.iter().map(|(_, m)| m.clone()).sum()
    }

    pub fn moment(&self, k: u32) -> Rational {
        self.atoms
            .iter()
            .map(|(x, m)| crate::rational::pow(x, k) * m)
            .sum()
    }

    /// Image under `x ↦ c x`.
    pub fn pushforward(&self, c: &Rational) -> TransitionMeasure {
        TransitionMeasure {
            atoms: self
                .atoms
                .iter()
                .map(|(x, m)| (x * c, m.clone()))
                .collect(),
        }
    }
}

/// Partial-fraction weights of `Π(z - y_j) / Π(z - x_i)` for interlacing
/// rational points.
pub fn transition_measure_from_points(minima: &[Rational], maxima: &[Rational]) -> TransitionMeasure {
    let atoms = minima
        .iter()
        .enumerate()
        .map(|(i, xi)| {
            let mut num = Rational::one();
            for y in maxima {
                num *= xi - y;
            }
            let mut den = Rational::one();
            for (l, xl) in minima.iter().enumerate() {
                if l != i {
                    den *= xi - xl;
                }
            }
            (xi.clone(), num / den)
        })
        .collect();
    TransitionMeasure { atoms }
}

pub fn transition_measure(lambda: &YoungDiagram) -> TransitionMeasure {
    let e = lambda.extrema();
    let xs: Vec<Rational> = e.minima().iter().map(|&x| int(x)).collect();
    let ys: Vec<Rational> = e.maxima().iter().map(|&y| int(y)).collect();
    transition_measure_from_points(&xs, &ys)
}

/// `h̃_k(λ) = ∫ x^k dμ_λ`.
pub fn moment_htilde(k: u32, lambda: &YoungDiagram) -> Rational {
    transition_measure(lambda).moment(k)
}

/// `h̃_0..h̃_kmax` from `1 + Σ h̃_k t^k = exp(Σ_{k≥2} p̃_k t^k / k)`.
///
/// Much cheaper than the partial fractions for large diagrams.
pub fn htilde_from_ptilde(ptilde: &[Rational], kmax: usize) -> Vec<Rational> {
    let order = kmax + 1;
    let coeffs: Vec<Rational> = (0..order)
        .map(|k| {
            if k < 2 {
                Rational::zero()
            } else {
                &ptilde[k] / int(k as i64)
            }
        })
        .collect();
    FormalSeries::new(coeffs, order)
        .exp()
        .expect("no constant term")
        .coeffs()
        .to_vec()
}

/// Free cumulants `f̃_k = -[t^k] H^{-(k-1)}(t) / (k-1)` of a moment sequence
/// `h_0 = 1, h_1 = 0, h_2, ...`; index `k` of the result is `f̃_k`.
pub fn free_cumulants_of_moments(h: &[Rational]) -> Vec<Rational> {
    let series = FormalSeries::new(h.to_vec(), h.len());
    lagrange_b_from_a(&series)
        .expect("H starts 1 + 0 t")
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k < 2 { Rational::zero() } else { c.clone() })
        .collect()
}

/// `f̃_2..f̃_kmax` of `λ`; element `i` is `f̃_{i+2}`.
pub fn free_cumulants(lambda: &YoungDiagram, kmax: usize) -> Result<Vec<Rational>> {
    if kmax < 2 {
        return Err(Error::InvalidArgument("kmax must be at least 2".into()));
    }
    let mu = transition_measure(lambda);
    let h: Vec<Rational> = (0..=kmax as u32).map(|k| mu.moment(k)).collect();
    Ok(free_cumulants_of_moments(&h)[2..].to_vec())
}

/// `p̃_k[Ω]`: the central binomial `C(2m, m)` for `k = 2m`, else 0.
pub fn omega_moment(k: u32) -> Rational {
    if k % 2 == 0 {
        Rational::from_integer(central_binomial(k as u64 / 2))
    } else {
        Rational::zero()
    }
}

/// Moments of the semicircle law on `[-2, 2]`: Catalan numbers.
pub fn semicircle_moment(k: u32) -> Rational {
    if k % 2 == 0 {
        Rational::from_integer(catalan(k as u64 / 2))
    } else {
        Rational::zero()
    }
}

/// The limit shape `Ω(x) = (2/π)(x arcsin(x/2) + √(4 - x²))` on `[-2, 2]`,
/// `|x|` outside.
pub fn omega(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        x.abs()
    } else {
        2.0 / PI * (x * (x / 2.0).asin() + (4.0 - x * x).sqrt())
    }
}

pub fn semicircle_density(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveKind {
    Omega,
    Semicircle,
}

/// `Ω` or the semicircle density, with their moment tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceCurve {
    pub kind: CurveKind,
}

impl ReferenceCurve {
    pub const OMEGA: ReferenceCurve = ReferenceCurve { kind: CurveKind::Omega };
    pub const SEMICIRCLE: ReferenceCurve = ReferenceCurve {
        kind: CurveKind::Semicircle,
    };

    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            CurveKind::Omega => omega(x),
            CurveKind::Semicircle => semicircle_density(x),
        }
    }

    /// `p̃_k[Ω]` for the shape, `∫ x^k` for the density.
    pub fn moment(&self, k: u32) -> Rational {
        match self.kind {
            CurveKind::Omega => omega_moment(k),
            CurveKind::Semicircle => semicircle_moment(k),
        }
    }
}

/// Rescaled profile `λ̄(x) = λ(√n x) / √n`.
pub fn rescaled_profile(lambda: &YoungDiagram, x: f64) -> f64 {
    let s = (lambda.size().max(1) as f64).sqrt();
    lambda.profile_value(s * x) / s
}

/// Polynomial in one real variable, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialOnR {
    pub coeffs: Vec<Rational>,
}

impl PolynomialOnR {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolynomialOnR { coeffs }
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    fn shift_sub(&self, other: &Self, c: &Rational) -> Self {
        // x * self - c * other
        let len = (self.coeffs.len() + 1).max(other.coeffs.len());
        let mut out = vec![Rational::zero(); len];
        for (i, v) in self.coeffs.iter().enumerate() {
            out[i + 1] += v;
        }
        for (i, v) in other.coeffs.iter().enumerate() {
            out[i] -= v * c;
        }
        Self::new(out)
    }

    /// Three-term recurrence `P_{k+1} = x P_k - c_k P_{k-1}`.
    fn recurrence<F: Fn(usize) -> Rational>(p0: Self, p1: Self, k: usize, c: F) -> Self {
        if k == 0 {
            return p0;
        }
        let (mut prev, mut cur) = (p0, p1);
        for j in 1..k {
            let next = cur.shift_sub(&prev, &c(j));
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// `u_k(x) = U_k(x/2)`, Chebyshev of the second kind rescaled to `[-2, 2]`.
pub fn chebyshev_u(k: usize) -> PolynomialOnR {
    PolynomialOnR::recurrence(
        PolynomialOnR::constant(Rational::one()),
        PolynomialOnR::x(),
        k,
        |_| Rational::one(),
    )
}

/// `t_k(x) = 2 T_k(x/2)`, monic for `k ≥ 1`.
pub fn chebyshev_t(k: usize) -> PolynomialOnR {
    PolynomialOnR::recurrence(
        PolynomialOnR::constant(int(2)),
        PolynomialOnR::x(),
        k,
        |_| Rational::one(),
    )
}

/// Monic Hermite polynomials orthogonal for `N(0, 1)`:
/// `x H_m = H_{m+1} + m H_{m-1}`.
pub fn hermite_mod(m: usize) -> PolynomialOnR {
    hermite_with_variance(m, &Rational::one())
}

/// Monic Hermite polynomials orthogonal for `N(0, v)`:
/// `x H_m = H_{m+1} + v m H_{m-1}`.
pub fn hermite_with_variance(m: usize, v: &Rational) -> PolynomialOnR {
    PolynomialOnR::recurrence(
        PolynomialOnR::constant(Rational::one()),
        PolynomialOnR::x(),
        m,
        |j| v * int(j as i64),
    )
}

/// `c · n^{e/2}`, the form every fluctuation functional takes before the
/// final conversion to floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPow {
    pub coeff: Rational,
    pub half_exp: i64,
}

impl HalfPow {
    pub fn new(coeff: Rational, half_exp: i64) -> Self {
        HalfPow { coeff, half_exp }
    }

    pub fn zero(half_exp: i64) -> Self {
        Self::new(Rational::zero(), half_exp)
    }

    /// Sum of two values whose exponents have the same parity.
    pub fn add(&self, other: &HalfPow, n: u64) -> HalfPow {
        assert_eq!(
            (self.half_exp - other.half_exp).rem_euclid(2),
            0,
            "mixed parity"
        );
        let (hi, lo) = if self.half_exp >= other.half_exp {
            (self, other)
        } else {
            (other, self)
        };
        let lift = BigInt::from(n).pow(((hi.half_exp - lo.half_exp) / 2) as u32);
        HalfPow::new(&hi.coeff * Rational::from_integer(lift) + &lo.coeff, lo.half_exp)
    }

    pub fn scale(&self, c: &Rational) -> HalfPow {
        HalfPow::new(&self.coeff * c, self.half_exp)
    }

    pub fn to_f64(&self, n: u64) -> f64 {
        to_f64(&self.coeff) * (n as f64).powf(self.half_exp as f64 / 2.0)
    }
}

/// Centered and scaled functionals of one diagram.
///
/// Index `k` of each vector is the functional with subscript `k`; unused
/// slots hold 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluctuationRecord {
    pub n: u64,
    pub q: Vec<f64>,
    pub g: Vec<f64>,
    pub eta: Vec<f64>,
    pub u: Vec<f64>,
    pub t: Vec<f64>,
}

/// Exact stage of [`fluctuation_functionals`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExactFluctuations {
    pub n: u64,
    /// `q_k`, `k = 0..=kmax` (`q_0 = 0`).
    pub q: Vec<HalfPow>,
    /// `g_k`, `k = 0..=kmax`.
    pub g: Vec<HalfPow>,
    /// `√k η_k = p#_k / n^{k/2}`, `k = 0..=kmax`.
    pub zeta: Vec<HalfPow>,
    /// `u_k^{(n)}`, `k = 0..=kmax`.
    pub u: Vec<HalfPow>,
    /// `t_k^{(n)}`, `k = 0..=kmax`.
    pub t: Vec<HalfPow>,
}

/// `q_k = (p̃_{k+1} - [k+1 = 2m] C(2m,m) n^m) / ((k+1) n^{k/2})`.
pub fn q_exact(ptilde_next: &Rational, k: u32, n: u64) -> HalfPow {
    let mut c = ptilde_next.clone();
    if (k + 1) % 2 == 0 {
        let m = (k + 1) / 2;
        c -= Rational::from_integer(central_binomial(m as u64) * BigInt::from(n).pow(m));
    }
    HalfPow::new(c / int(k as i64 + 1), -(k as i64))
}

/// `g_k = (h̃_k - [k = 2m] Cat_m n^m) / n^{(k-1)/2}`.
pub fn g_exact(htilde: &Rational, k: u32, n: u64) -> HalfPow {
    if k <= 2 {
        return HalfPow::zero(-(k as i64 - 1));
    }
    let mut c = htilde.clone();
    if k % 2 == 0 {
        let m = k / 2;
        c -= Rational::from_integer(catalan(m as u64) * BigInt::from(n).pow(m));
    }
    HalfPow::new(c, -(k as i64 - 1))
}

/// `u_k = Σ_j (-1)^j C(k-j, j) q_{k+1-2j} / (k+1-2j)`.
pub fn u_from_q(q: &[HalfPow], k: usize, n: u64) -> HalfPow {
    let mut acc = HalfPow::zero(-(k as i64 + 1));
    for j in 0..=k / 2 {
        let idx = k + 1 - 2 * j;
        let c = Rational::from_integer(binomial((k - j) as u64, j as u64))
            / int(idx as i64)
            * if j % 2 == 0 { int(1) } else { int(-1) };
        acc = acc.add(&q[idx].scale(&c), n);
    }
    acc
}

/// `t_k = Σ_j (-1)^j (k/(k-j)) C(k-j, j) g_{k-2j}` with `g_0 = g_1 = g_2 = 0`.
pub fn t_from_g(g: &[HalfPow], k: usize, n: u64) -> HalfPow {
    let mut acc = HalfPow::zero(-(k as i64 - 1));
    for j in 0..=k / 2 {
        let idx = k - 2 * j;
        if idx <= 2 {
            continue;
        }
        let c = Rational::from_integer(binomial((k - j) as u64, j as u64))
            * ratio(k as i64, (k - j) as i64)
            * if j % 2 == 0 { int(1) } else { int(-1) };
        acc = acc.add(&g[idx].scale(&c), n);
    }
    acc
}

/// Exact `q, g, p#_k/n^{k/2}, u, t` up to `kmax`.
pub fn fluctuation_exact(lambda: &YoungDiagram, kmax: usize) -> Result<ExactFluctuations> {
    if kmax < 2 {
        return Err(Error::InvalidArgument("kmax must be at least 2".into()));
    }
    let n = lambda.size() as u64;
    if n == 0 {
        return Err(Error::InvalidArgument("empty diagram".into()));
    }
    let pt: Vec<Rational> = (0..=kmax as u32 + 2).map(|k| eval_ptilde(k, lambda)).collect();
    let h = htilde_from_ptilde(&pt, kmax);
    let q: Vec<HalfPow> = (0..=kmax + 1)
        .map(|k| {
            if k == 0 {
                HalfPow::zero(0)
            } else {
                q_exact(&pt[k + 1], k as u32, n)
            }
        })
        .collect();
    let g: Vec<HalfPow> = (0..=kmax).map(|k| g_exact(&h[k], k as u32, n)).collect();
    let zeta: Vec<HalfPow> = (0..=kmax)
        .map(|k| {
            if k == 0 {
                HalfPow::zero(0)
            } else {
                let expansion = crate::algebra::psharp_in_ptilde(k as u32);
                HalfPow::new(expansion.eval(|j| pt[j as usize].clone()), -(k as i64))
            }
        })
        .collect();
    let u = (0..=kmax).map(|k| u_from_q(&q, k, n)).collect();
    let t = (0..=kmax).map(|k| t_from_g(&g, k, n)).collect();
    Ok(ExactFluctuations {
        n,
        q: q[..=kmax].to_vec(),
        g,
        zeta,
        u,
        t,
    })
}

/// Floating-point view of [`fluctuation_exact`]; `η_k = ζ_k / √k`.
pub fn fluctuation_functionals(lambda: &YoungDiagram, kmax: usize) -> Result<FluctuationRecord> {
    let ex = fluctuation_exact(lambda, kmax)?;
    let n = ex.n;
    let f = |v: &[HalfPow]| v.iter().map(|x| x.to_f64(n)).collect::<Vec<f64>>();
    let eta = ex
        .zeta
        .iter()
        .enumerate()
        .map(|(k, z)| if k < 2 { 0.0 } else { z.to_f64(n) / (k as f64).sqrt() })
        .collect();
    Ok(FluctuationRecord {
        n,
        q: f(&ex.q),
        g: f(&ex.g),
        eta,
        u: f(&ex.u),
        t: f(&ex.t),
    })
}

/// `sup_x |λ̄(x) - Ω(x)|` over `points` equally spaced points of
/// `[-2.5, 2.5]`.
pub fn sup_distance_to_omega(lambda: &YoungDiagram, points: usize) -> f64 {
    let step = 5.0 / (points.max(2) - 1) as f64;
    (0..points)
        .map(|i| {
            let x = -2.5 + step * i as f64;
            (rescaled_profile(lambda, x) - omega(x)).abs()
        })
        .fold(0.0, f64::max)
}

/// True when every mass is positive, the masses sum to 1 and the mean is 0.
pub fn is_centered_probability(mu: &TransitionMeasure) -> bool {
    mu.atoms().iter().all(|(_, m)| m.is_positive())
        && mu.total_mass().is_one()
        && mu.moment(1).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(eval_p(1, &d("3,1")), int(4));
        assert_eq!(eval_p(2, &d("1")), int(0));
        assert_eq!(eval_p(3, &d("2")), ratio(7, 2));
        assert_eq!(eval_ptilde(2, &d("2,1")), int(6));
        assert_eq!(eval_ptilde(3, &d("2,1")), int(0));
        assert_eq!(eval_ptilde(4, &d("2")), int(16));
        assert_eq!(eval_ptilde(1, &d("4,2,1")), int(0));
    }

    #[test]
    fn psharp_examples() {
        assert_eq!(eval_psharp(&d("1"), &d("3,2")), int(5));
        assert_eq!(eval_psharp(&d("2"), &d("2,1")), int(0));
        assert_eq!(eval_psharp(&d("3"), &d("2,1")), int(-3));
        assert_eq!(eval_psharp(&d("4"), &d("2,1")), int(0));
        assert_eq!(eval_psharp_residue(2, &d("1")), int(0));
        assert_eq!(eval_psharp_residue(1, &d("2,1")), int(3));
        assert_eq!(eval_psharp_residue(3, &d("2,1")), int(-3));
    }

    #[test]
    fn transition_examples() {
        let mu = transition_measure(&d("-"));
        assert_eq!(mu.atoms(), &[(int(0), int(1))]);
        let mu = transition_measure(&d("1"));
        assert_eq!(mu.atoms(), &[(int(-1), ratio(1, 2)), (int(1), ratio(1, 2))]);
        let mu = transition_measure(&d("2,1"));
        assert!(is_centered_probability(&mu));
        assert_eq!(moment_htilde(2, &d("2,1")), int(3));
        assert_eq!(moment_htilde(3, &d("2,1")), int(0));
        assert_eq!(moment_htilde(2, &d("1")), int(1));
    }

    #[test]
    fn free_cumulant_examples() {
        assert_eq!(free_cumulants(&d("1"), 2).unwrap(), vec![int(1)]);
        let f = free_cumulants(&d("2,1"), 3).unwrap();
        assert_eq!(f, vec![int(3), int(0)]);
        assert!(free_cumulants(&d("1"), 1).is_err());
    }

    #[test]
    fn reference_moments() {
        assert_eq!(omega_moment(2), int(2));
        assert_eq!(omega_moment(4), int(6));
        assert_eq!(omega_moment(5), int(0));
        assert_eq!(semicircle_moment(2), int(1));
        assert_eq!(semicircle_moment(4), int(2));
        assert_eq!(semicircle_moment(3), int(0));
        assert!((omega(0.0) - 4.0 / PI).abs() < 1e-15);
        assert!((omega(2.0) - 2.0).abs() < 1e-12);
        assert!((omega(1.999_999_999) - 2.0).abs() < 1e-8);
        assert_eq!(omega(-3.0), 3.0);
    }

    #[test]
    fn orthogonal_polynomials() {
        assert_eq!(chebyshev_u(2).coeffs, vec![int(-1), int(0), int(1)]);
        assert_eq!(chebyshev_t(3).coeffs, vec![int(0), int(-3), int(0), int(1)]);
        assert_eq!(hermite_mod(2).coeffs, vec![int(-1), int(0), int(1)]);
        assert_eq!(chebyshev_t(1), PolynomialOnR::x());
    }

    #[test]
    fn first_functionals_vanish() {
        for lambda in crate::partitions::partitions_up_to(8).into_iter().skip(1) {
            let ex = fluctuation_exact(&lambda, 4).unwrap();
            assert!(ex.q[1].coeff.is_zero());
            assert!(ex.u[0].coeff.is_zero());
            assert!(ex.t[1].coeff.is_zero());
            assert!(ex.t[2].coeff.is_zero());
        }
    }

    #[test]
    fn zeta_matches_residue_route() {
        for lambda in [d("5,3,3,1"), d("7,2,2,2,1,1"), d("4,4,4")] {
            let ex = fluctuation_exact(&lambda, 5).unwrap();
            for k in 1..=5u32 {
                assert_eq!(ex.zeta[k as usize].coeff, eval_psharp_residue(k, &lambda));
            }
        }
    }
}
