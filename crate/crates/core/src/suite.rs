//! The zero-tolerance suite of exact identities, grouped the way the
//! `identities` command reports them.

use std::fmt;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    filtration_degree, psharp_in_p, psharp_rho_in_p, ptilde_in_p, rho_degree, structure_constants_by_expansion,
    structure_constants_with_cap, verify_leading_term_theorems_with_cap, weight_degree, Basis, Observable,
};
use crate::characters::plancherel_weight;
use crate::observables::{eval_p, eval_psharp, eval_psharp_residue, eval_ptilde, extrema_ratio, phi_shift_ratio};
use crate::partitions::{partitions_of, partitions_up_to, YoungDiagram};
use crate::plancherel::{exact_expectation, exact_transitions, expectation_polynomial, growth_marginal_exact, ExpectationPolynomial};
use crate::rational::{falling, int, Rational};

/// Sizes the suite runs at. The defaults are the shipped configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCaps {
    /// Identities are checked on every diagram with at most this many boxes.
    pub max_diagram: usize,
    /// Largest index `k` (or `|ρ|`) of the observables involved.
    pub max_index: u32,
    pub max_expectation_class: usize,
    pub max_expectation_n: usize,
    /// Bound on `|σ| + |τ|` for structure constants.
    pub max_structure: usize,
    pub max_theorem_k: u32,
    pub max_marginal_n: usize,
}

impl Default for SuiteCaps {
    fn default() -> Self {
        SuiteCaps {
            max_diagram: 10,
            max_index: 8,
            max_expectation_class: 6,
            max_expectation_n: 12,
            max_structure: 8,
            max_theorem_k: 6,
            max_marginal_n: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub group: String,
    pub name: String,
    pub passed: bool,
    /// Number of cases on success, the first counterexample otherwise.
    pub detail: String,
}

impl fmt::Display for SuiteCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.group,
            self.name,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub caps: SuiteCaps,
    pub checks: Vec<SuiteCheck>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn group(&self, name: &str) -> impl Iterator<Item = &SuiteCheck> {
        let name = name.to_string();
        self.checks.iter().filter(move |c| c.group == name)
    }
}

/// Accumulates cases of one identity and remembers the first failure.
struct Tally {
    group: &'static str,
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(group: &'static str, name: impl Into<String>) -> Self {
        Tally {
            group,
            name: name.into(),
            cases: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn finish(self) -> SuiteCheck {
        let passed = self.failure.is_none();
        SuiteCheck {
            group: self.group.to_string(),
            name: self.name,
            passed,
            detail: self.failure.unwrap_or_else(|| format!("{} cases", self.cases)),
        }
    }
}

fn diagrams(max: usize) -> Vec<YoungDiagram> {
    partitions_up_to(max)
}

fn classes(max: u32) -> Vec<YoungDiagram> {
    partitions_up_to(max as usize).into_iter().filter(|r| !r.is_empty()).collect()
}

fn sign(e: usize) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Expansions, the rational-function identity, both routes to `p#_k`, the
/// fixed-point relation and conjugation symmetries.
pub fn identity_checks(caps: &SuiteCaps) -> Vec<SuiteCheck> {
    const G: &str = "identities";
    let lambdas = diagrams(caps.max_diagram);
    let kmax = caps.max_index;
    let mut out = Vec::new();

    let mut t = Tally::new(G, format!("p̃_k from its p-expansion, k ≤ {kmax}"));
    for k in 1..=kmax {
        let f = Observable::new(Basis::P, ptilde_in_p(k)).expect("valid");
        for l in &lambdas {
            t.check(f.eval(l) == eval_ptilde(k, l), || format!("k={k}, λ={}", l.to_tuple_string()));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new(G, "Φ(z-1/2)/Φ(z+1/2) = z Π(z-y)/Π(z-x)");
    for l in &lambdas {
        t.check(phi_shift_ratio(l) == extrema_ratio(l), || format!("λ={}", l.to_tuple_string()));
    }
    out.push(t.finish());

    let mut t = Tally::new(G, format!("p#_k by residue equals p#_k by characters, k ≤ {kmax}"));
    for k in 1..=kmax {
        let rho = YoungDiagram::row(k);
        for l in &lambdas {
            t.check(eval_psharp_residue(k, l) == eval_psharp(&rho, l), || {
                format!("k={k}, λ={}", l.to_tuple_string())
            });
        }
    }
    out.push(t.finish());

    let mut t = Tally::new(G, format!("p#_k from its p-expansion, k ≤ {kmax}"));
    for k in 1..=kmax {
        let f = Observable::new(Basis::P, psharp_in_p(k)).expect("valid");
        let rho = YoungDiagram::row(k);
        for l in &lambdas {
            t.check(f.eval(l) == eval_psharp(&rho, l), || format!("k={k}, λ={}", l.to_tuple_string()));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new(G, format!("p#_ρ from its fitted p-expansion, |ρ| ≤ {kmax}"));
    for rho in classes(kmax) {
        let f = Observable::new(Basis::P, psharp_rho_in_p(&rho)).expect("valid");
        for l in &lambdas {
            t.check(f.eval(l) == eval_psharp(&rho, l), || {
                format!("ρ={}, λ={}", rho.to_tuple_string(), l.to_tuple_string())
            });
        }
    }
    out.push(t.finish());

    let mut t = Tally::new(G, format!("p#_(σ∪1) = (|λ| - |σ|) p#_σ, |σ| < {kmax}"));
    for sigma in classes(kmax - 1) {
        let padded = sigma.pad_ones(1);
        for l in &lambdas {
            let rhs = int(l.size() as i64 - sigma.size() as i64) * eval_psharp(&sigma, l);
            t.check(eval_psharp(&padded, l) == rhs, || {
                format!("σ={}, λ={}", sigma.to_tuple_string(), l.to_tuple_string())
            });
        }
    }
    out.push(t.finish());

    let mut tp = Tally::new(G, "p_k(λ') = (-1)^(k-1) p_k(λ)");
    let mut tt = Tally::new(G, "p̃_k(λ') = (-1)^k p̃_k(λ)");
    let mut ts = Tally::new(G, "p#_ρ(λ') = (-1)^(|ρ|+ℓ(ρ)) p#_ρ(λ)");
    for l in &lambdas {
        let c = l.conjugate();
        for k in 1..=kmax {
            let name = || format!("k={k}, λ={}", l.to_tuple_string());
            tp.check(eval_p(k, &c) == sign(k as usize - 1) * eval_p(k, l), name);
            tt.check(eval_ptilde(k, &c) == sign(k as usize) * eval_ptilde(k, l), name);
        }
        for rho in classes(kmax) {
            ts.check(
                eval_psharp(&rho, &c) == sign(rho.size() + rho.len()) * eval_psharp(&rho, l),
                || format!("ρ={}, λ={}", rho.to_tuple_string(), l.to_tuple_string()),
            );
        }
    }
    out.extend([tp.finish(), tt.finish(), ts.finish()]);
    out
}

/// Plancherel expectations of `p#_ρ` and their closed forms.
pub fn expectation_checks(caps: &SuiteCaps) -> Vec<SuiteCheck> {
    const G: &str = "expectations";
    let mut t = Tally::new(
        G,
        format!(
            "<p#_ρ>_n = n^(r) for ρ = (1^r), else 0; |ρ| ≤ {}, n ≤ {}",
            caps.max_expectation_class, caps.max_expectation_n
        ),
    );
    let mut tc = Tally::new(G, "closed form of n ↦ <p#_ρ>_n");
    for rho in classes(caps.max_expectation_class as u32) {
        let f = Observable::psharp(&rho);
        let all_ones = rho.rows().iter().all(|&p| p == 1);
        let expected = if all_ones {
            ExpectationPolynomial::falling_factorial(rho.len())
        } else {
            ExpectationPolynomial::new(Vec::new())
        };
        tc.check(expectation_polynomial(&f) == expected, || format!("ρ={}", rho.to_tuple_string()));
        for n in 0..=caps.max_expectation_n {
            let want = if all_ones {
                Rational::from_integer(falling(n as u64, rho.len() as u64))
            } else {
                Rational::zero()
            };
            let got = exact_expectation(&f, n);
            t.check(got.as_ref() == Ok(&want), || format!("ρ={}, n={n}: {got:?}", rho.to_tuple_string()));
        }
    }
    vec![t.finish(), tc.finish()]
}

/// Counting against expansion, and the filtration properties of the
/// structure constants.
pub fn structure_checks(caps: &SuiteCaps) -> Vec<SuiteCheck> {
    const G: &str = "structure";
    let max = caps.max_structure;
    let mut routes = Tally::new(G, format!("counting equals expansion, |σ|+|τ| ≤ {max}"));
    let mut top = Tally::new(G, "coefficient of p#_(σ∪τ) is 1, other terms have lower deg");
    let mut sub = Tally::new(G, "deg_J subadditive for J ∈ {∅, {1}, {2}, ℕ}");
    let mut cycle = Tally::new(G, "coefficient of p#_((σ∖k)∪1^k) in p#_σ p#_k is k m_k(σ), k ≥ 2");
    let js: [Option<&[u32]>; 4] = [Some(&[]), Some(&[1]), Some(&[2]), None];
    let all = classes(max as u32 - 1);
    for sigma in &all {
        for tau in &all {
            if sigma.size() + tau.size() > max {
                continue;
            }
            let name = || format!("σ={}, τ={}", sigma.to_tuple_string(), tau.to_tuple_string());
            let counted = match structure_constants_with_cap(sigma, tau, max) {
                Ok(c) => c,
                Err(e) => {
                    routes.check(false, || format!("{}: {e}", name()));
                    continue;
                }
            };
            routes.check(counted == structure_constants_by_expansion(sigma, tau), name);

            let union = sigma.union(tau);
            let full = rho_degree(union.rows(), None);
            let top_ok = counted.get(&union) == Some(&Rational::one())
                && counted.keys().all(|r| *r == union || rho_degree(r.rows(), None) < full);
            top.check(top_ok, name);

            for j in js {
                let bound = rho_degree(sigma.rows(), j) + rho_degree(tau.rows(), j);
                sub.check(counted.keys().all(|r| rho_degree(r.rows(), j) <= bound), || {
                    format!("{}, J={j:?}", name())
                });
            }

            if tau.len() == 1 && tau.rows()[0] >= 2 && sigma.multiplicity(tau.rows()[0]) > 0 {
                let k = tau.rows()[0];
                let mut rest: Vec<u32> = sigma.rows().to_vec();
                let pos = rest.iter().position(|&p| p == k).expect("present");
                rest.remove(pos);
                let target = YoungDiagram::from_parts(rest).pad_ones(k as usize);
                let want = int(k as i64 * sigma.multiplicity(k) as i64);
                cycle.check(counted.get(&target) == Some(&want), name);
            }
        }
    }

    let mut wt = Tally::new(G, "deg_ℕ equals weight degree");
    let mut elems: Vec<(String, Observable)> = Vec::new();
    for k in 1..=caps.max_theorem_k {
        elems.push((format!("p#_{k}"), Observable::psharp(&YoungDiagram::row(k))));
        if k >= 2 {
            elems.push((format!("p̃_{k}"), Observable::generator(Basis::PTilde, k).expect("valid")));
        }
    }
    let singles = elems.clone();
    for (i, (na, a)) in singles.iter().enumerate() {
        for (nb, b) in &singles[i..] {
            if weight_degree(a).unwrap_or(0) + weight_degree(b).unwrap_or(0) <= max as u32 {
                elems.push((format!("{na}·{nb}"), a.mul(b)));
            }
        }
    }
    for (name, e) in &elems {
        wt.check(filtration_degree(e, None) == weight_degree(e), || name.clone());
    }

    vec![routes.finish(), top.finish(), sub.finish(), cycle.finish(), wt.finish()]
}

/// Remainders of the leading-term expansions.
pub fn leading_term_checks(caps: &SuiteCaps) -> Vec<SuiteCheck> {
    const G: &str = "leading terms";
    match verify_leading_term_theorems_with_cap(caps.max_theorem_k, caps.max_theorem_k.max(6)) {
        Ok(report) => report
            .checks
            .iter()
            .map(|c| SuiteCheck {
                group: G.to_string(),
                name: c.statement.clone(),
                passed: c.passed,
                detail: match (c.remainder_degree, c.bound) {
                    (Some(d), Some(b)) => format!("remainder degree {d} < {b}"),
                    (Some(d), None) => format!("difference has degree {d}"),
                    (None, _) => "remainder vanishes".to_string(),
                },
            })
            .collect(),
        Err(e) => vec![SuiteCheck {
            group: G.to_string(),
            name: "leading-term expansions".into(),
            passed: false,
            detail: e.to_string(),
        }],
    }
}

/// The growth process reproduces the Plancherel measure exactly.
pub fn sampler_checks(caps: &SuiteCaps) -> Vec<SuiteCheck> {
    const G: &str = "sampler";
    let mut t = Tally::new(G, format!("growth marginal equals dim²λ/n!, n ≤ {}", caps.max_marginal_n));
    let mut tm = Tally::new(G, "transition probabilities are positive and sum to 1");
    for n in 0..=caps.max_marginal_n {
        let marginal = growth_marginal_exact(n);
        let shapes = partitions_of(n);
        t.check(marginal.len() == shapes.len(), || format!("n={n}: support size {}", marginal.len()));
        for l in &shapes {
            let got = marginal.get(l).cloned().unwrap_or_else(Rational::zero);
            t.check(got == plancherel_weight(l), || format!("λ={}", l.to_tuple_string()));
            let tr = exact_transitions(l);
            let total: Rational = tr.iter().map(|(_, p)| p.clone()).sum();
            tm.check(total.is_one() && tr.iter().all(|(_, p)| *p > Rational::zero()), || {
                format!("λ={}", l.to_tuple_string())
            });
        }
    }
    vec![t.finish(), tm.finish()]
}

pub fn run_exact_suite(caps: &SuiteCaps) -> SuiteReport {
    let start = Instant::now();
    let mut checks = identity_checks(caps);
    checks.extend(expectation_checks(caps));
    checks.extend(structure_checks(caps));
    checks.extend(leading_term_checks(caps));
    checks.extend(sampler_checks(caps));
    SuiteReport {
        caps: *caps,
        checks,
        seconds: start.elapsed().as_secs_f64(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let caps = SuiteCaps {
            max_diagram: 6,
            max_index: 5,
            max_expectation_class: 4,
            max_expectation_n: 7,
            max_structure: 6,
            max_theorem_k: 4,
            max_marginal_n: 4,
        };
        let r = run_exact_suite(&caps);
        for c in &r.checks {
            assert!(c.passed, "{c}");
        }
        assert!(r.group("structure").count() == 5);
    }
}
