//! Symbolic verification of the leading-term expansions.
//!
//! Each check forms `LHS - (leading terms)` exactly and measures what is
//! left: its weight (with `wt p̃_k = k` and `wt p#_k = k + 1`) or its `deg₁`
//! in the extended algebra. Hermite and `η` normalizations are carried with
//! `ζ_k = √k η_k = p#_k / (p#₁)^{k/2}` so every coefficient stays rational;
//! `H_m(η_k)` becomes `k^{-m/2} H^{(k)}_m(ζ_k)` with `H^{(k)}` monic and
//! orthogonal for `N(0, k)`, and the overall constant drops out of the
//! degree comparison.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::extended::ExtendedElement;
use crate::algebra::{
    free_cumulant_in_htilde, htilde_in_ptilde, psharp_in_p, ptilde_in_p, Basis,
    Observable,
};
use crate::error::{Error, Result};
use crate::observables::hermite_with_variance;
use crate::partitions::partitions_up_to;
use crate::poly::Poly;
use crate::rational::{binomial, catalan, central_binomial, int, ratio, Rational};
use crate::series::FormalSeries;

pub const DEFAULT_THEOREM_CAP: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grading {
    /// Weight, remainder must stay below the bound.
    Weight,
    /// `deg₁` in the extended algebra, remainder must be negative.
    Deg1,
    /// Remainder must vanish.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub statement: String,
    pub grading: Grading,
    /// `None` when the remainder is zero.
    pub remainder_degree: Option<i64>,
    /// Strict upper bound for the remainder degree.
    pub bound: Option<i64>,
    pub passed: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = match self.remainder_degree {
            Some(d) => d.to_string(),
            None => "-inf".to_string(),
        };
        let bound = match self.bound {
            Some(b) => format!(" < {b}"),
            None => " (exact)".to_string(),
        };
        let grading = match self.grading {
            Grading::Weight => "weight",
            Grading::Deg1 => "deg1",
            Grading::Exact => "degree",
        };
        write!(
            f,
            "[{}] {}: remainder {grading} {deg}{bound}",
            if self.passed { "PASS" } else { "FAIL" },
            self.statement
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeadingTermReport {
    pub kmax: u32,
    pub checks: Vec<CheckResult>,
}

impl LeadingTermReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn record(statement: String, grading: Grading, remainder_degree: Option<i64>, bound: Option<i64>) -> Result<CheckResult> {
    let passed = match (remainder_degree, bound) {
        (None, _) => true,
        (Some(d), Some(b)) => d < b,
        (Some(_), None) => false,
    };
    let check = CheckResult {
        statement,
        grading,
        remainder_degree,
        bound,
        passed,
    };
    if passed {
        Ok(check)
    } else {
        Err(Error::CheckFailed(check.to_string()))
    }
}

/// `p_k` as a polynomial in the generators `x_j = p#_j`.
pub fn p_in_psharp_generators(k: u32) -> Poly {
    let w = psharp_in_p(k);
    let mut lower = w.clone();
    lower -= &Poly::var(k);
    &Poly::var(k) - &lower.substitute(p_in_psharp_generators)
}

fn psharp_weight(k: u32) -> u32 {
    k + 1
}

/// `[u^k] (1 + Σ_{j≥2} x_{j-1} u^j)^e`.
fn generator_series_power(k: u32, e: u32) -> Poly {
    let order = k as usize + 1;
    let coeffs: Vec<Poly> = (0..order)
        .map(|j| match j {
            0 => Poly::one(),
            1 => Poly::zero(),
            _ => Poly::var(j as u32 - 1),
        })
        .collect();
    FormalSeries::new(coeffs, order).pow(e).coeff(k as usize).clone()
}

fn weight_check(statement: String, remainder: &Poly, weights: fn(u32) -> u32, bound: u32) -> Result<CheckResult> {
    let deg = remainder.degree_by(weights).map(i64::from);
    record(statement, Grading::Weight, deg, Some(bound as i64))
}

fn deg1_check(statement: String, remainder: &ExtendedElement) -> Result<CheckResult> {
    record(statement, Grading::Deg1, remainder.deg1(), Some(0))
}

fn sign(j: usize) -> i64 {
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

fn binom(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n as u64, k as u64))
}

/// `q_k = (p̃_{k+1} - [k+1 even] C(k+1, (k+1)/2) (p#₁)^{(k+1)/2}) / ((k+1) (p#₁)^{k/2})`.
pub fn q_element(k: u32) -> ExtendedElement {
    let pt = Observable::generator(Basis::PTilde, k + 1).expect("index ≥ 2");
    let mut e = ExtendedElement::from_observable(&pt);
    if (k + 1) % 2 == 0 {
        let m = (k + 1) / 2;
        let c = Rational::from_integer(central_binomial(m as u64));
        e = e.sub(&ExtendedElement::psharp1_power(2 * m as i64).scale(&c));
    }
    e.shift(-(k as i64)).scale(&ratio(1, k as i64 + 1))
}

/// `g_k = (h̃_k - [k even] Cat_{k/2} (p#₁)^{k/2}) / (p#₁)^{(k-1)/2}`; zero for `k ≤ 2`.
pub fn g_element(k: u32) -> ExtendedElement {
    if k <= 2 {
        return ExtendedElement::zero();
    }
    let h = Observable::generator(Basis::HTilde, k).expect("index ≥ 2");
    let mut e = ExtendedElement::from_observable(&h);
    if k % 2 == 0 {
        let m = k / 2;
        let c = Rational::from_integer(catalan(m as u64));
        e = e.sub(&ExtendedElement::psharp1_power(2 * m as i64).scale(&c));
    }
    e.shift(-(k as i64 - 1))
}

/// Runs every leading-term check with indices up to `kmax`.
///
/// Stops at the first failing check.
pub fn verify_leading_term_theorems(kmax: u32) -> Result<LeadingTermReport> {
    verify_leading_term_theorems_with_cap(kmax, DEFAULT_THEOREM_CAP)
}

pub fn verify_leading_term_theorems_with_cap(kmax: u32, cap: u32) -> Result<LeadingTermReport> {
    if kmax > cap {
        return Err(Error::CapExceeded {
            what: "kmax",
            value: kmax as usize,
            cap: cap as usize,
        });
    }
    if kmax < 2 {
        return Err(Error::InvalidArgument("kmax must be at least 2".into()));
    }
    let mut checks = Vec::new();
    let ident = |k: u32| k;

    // top weight of p#_k
    for k in 1..=kmax {
        let order = k as usize + 2;
        let coeffs: Vec<Poly> = (0..order)
            .map(|j| {
                if j < 2 {
                    Poly::zero()
                } else {
                    Poly::var(j as u32).scale(&ratio(-(k as i64), j as i64))
                }
            })
            .collect();
        let series = FormalSeries::new(coeffs, order).exp()?;
        let lead = series.coeff(k as usize + 1).scale(&ratio(-1, k as i64));
        let psk = Observable::new(Basis::P, psharp_in_p(k))?.to_basis(Basis::PTilde);
        let rest = psk.poly() - &lead;
        checks.push(weight_check(format!("p#_{k} minus its weight-{} generating term", k + 1), &rest, ident, k + 1)?);

        let top = crate::algebra::top_weight_component(&psk);
        let free = Observable::new(Basis::HTilde, free_cumulant_in_htilde(k + 1))?.to_basis(Basis::PTilde);
        let diff = top.poly() - free.poly();
        checks.push(record(
            format!("top weight part of p#_{k} equals f̃_{}", k + 1),
            Grading::Exact,
            diff.degree_by(ident).map(i64::from),
            None,
        )?);
    }

    // p̃_k and h̃_k in the generators p#_j
    for k in 2..=kmax {
        let pt = ptilde_in_p(k).substitute(p_in_psharp_generators);
        let rest = &pt - &generator_series_power(k, k);
        checks.push(weight_check(format!("p̃_{k} in p# generators"), &rest, psharp_weight, k)?);

        let h = htilde_in_ptilde(k)
            .substitute(ptilde_in_p)
            .substitute(p_in_psharp_generators);
        let lead = generator_series_power(k, k + 1).scale(&ratio(1, k as i64 + 1));
        let rest = &h - &lead;
        checks.push(weight_check(format!("h̃_{k} in p# generators"), &rest, psharp_weight, k)?);
    }

    // η_ρ against products of Hermite polynomials
    for rho in partitions_up_to(kmax as usize) {
        if rho.is_empty() {
            continue;
        }
        let mut product = ExtendedElement::one();
        let mut part = 2;
        while part <= rho.rows().first().copied().unwrap_or(0) {
            let m = rho.multiplicity(part);
            if m > 0 {
                let h = hermite_with_variance(m, &int(part as i64));
                product = product.mul(&ExtendedElement::zeta(part).apply(&h)?)?;
            }
            part += 1;
        }
        let rest = ExtendedElement::zeta_rho(&rho).sub(&product);
        checks.push(deg1_check(format!("η_{} against the Hermite product", rho.to_tuple_string()), &rest)?);
    }

    let q: Vec<ExtendedElement> = (0..=kmax).map(|k| if k == 0 { ExtendedElement::zero() } else { q_element(k) }).collect();
    let g: Vec<ExtendedElement> = (0..=kmax).map(g_element).collect();
    let zeta = |k: usize| {
        if k < 2 {
            ExtendedElement::zero()
        } else {
            ExtendedElement::zeta(k as u32)
        }
    };

    for k in 2..=kmax as usize {
        let mut lead = ExtendedElement::zero();
        for j in 0..=(k - 2) / 2 {
            lead = lead.add(&zeta(k - 2 * j).scale(&binom(k, j)));
        }
        checks.push(deg1_check(format!("q_{k} in terms of ζ"), &q[k].sub(&lead))?);

        let mut lead = ExtendedElement::zero();
        for j in 0..=(k - 2) / 2 {
            let c = binom(k - j, j) * ratio(sign(j) * k as i64, (k - j) as i64);
            lead = lead.add(&q[k - 2 * j].scale(&c));
        }
        checks.push(deg1_check(format!("ζ_{k} in terms of q"), &zeta(k).sub(&lead))?);
    }

    for k in 3..=kmax as usize {
        let mut lead = ExtendedElement::zero();
        for j in 0..=(k - 3) / 2 {
            lead = lead.add(&zeta(k - 1 - 2 * j).scale(&binom(k, j)));
        }
        checks.push(deg1_check(format!("g_{k} in terms of ζ"), &g[k].sub(&lead))?);

        let mut lead = ExtendedElement::zero();
        for j in 0..=k / 2 {
            if k - 2 * j <= 2 {
                continue;
            }
            let c = binom(k - j, j) * ratio(sign(j) * k as i64, (k - j) as i64);
            lead = lead.add(&g[k - 2 * j].scale(&c));
        }
        checks.push(deg1_check(format!("ζ_{} in terms of g", k - 1), &zeta(k - 1).sub(&lead))?);
    }

    Ok(LeadingTermReport { kmax, checks })
}
