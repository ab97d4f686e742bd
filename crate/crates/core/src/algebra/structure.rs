//! Structure constants `p#_σ p#_τ = Σ_ρ f^ρ_{στ} p#_ρ`.
//!
//! The counting route works with partial permutations `(X, s)`: `s` is a
//! permutation of the finite set `X` and its type includes the fixed points
//! of `s` inside `X`. The product is `(X₁ ∪ X₂, s̄₁ s̄₂)` where `s̄ᵢ` extends
//! `sᵢ` by the identity and `s̄₂` is applied first. For a fixed `(X, s)` of
//! type `ρ`, `g^ρ_{στ}` counts the pairs of types `σ, τ` whose product is
//! `(X, s)`, and `f^ρ_{στ} = z_σ z_τ g^ρ_{στ} / z_ρ`.
//!
//! Rather than fixing `s`, we count all pairs on a fixed `N`-set and divide
//! by the `N!/z_ρ` permutations of type `ρ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{p_to_psharp, psharp_rho_in_p};
use crate::error::{Error, Result};
use crate::partitions::YoungDiagram;
use crate::rational::{binomial, factorial, Rational};

pub const DEFAULT_STRUCTURE_CAP: usize = 8;

pub type StructureConstants = BTreeMap<YoungDiagram, Rational>;

type Key = (Vec<u32>, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<Key, StructureConstants>> {
    static CELL: OnceLock<Mutex<HashMap<Key, StructureConstants>>> = OnceLock::new();
    CELL.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `f^ρ_{στ}` by counting, memoized; requires `|σ| + |τ| ≤ cap`.
pub fn structure_constants_with_cap(
    sigma: &YoungDiagram,
    tau: &YoungDiagram,
    cap: usize,
) -> Result<StructureConstants> {
    let total = sigma.size() + tau.size();
    if total > cap {
        return Err(Error::CapExceeded {
            what: "|σ|+|τ|",
            value: total,
            cap,
        });
    }
    let key = (sigma.rows().to_vec(), tau.rows().to_vec());
    if let Some(v) = cache().lock().expect("structure lock").get(&key) {
        return Ok(v.clone());
    }
    let v = count(sigma, tau);
    let mut guard = cache().lock().expect("structure lock");
    if guard.len() >= 1 << 14 {
        guard.clear();
    }
    guard.insert(key, v.clone());
    Ok(v)
}

pub fn structure_constants(sigma: &YoungDiagram, tau: &YoungDiagram) -> Result<StructureConstants> {
    structure_constants_with_cap(sigma, tau, DEFAULT_STRUCTURE_CAP)
}

/// The same constants read off from multiplying the `p`-expansions.
pub fn structure_constants_by_expansion(sigma: &YoungDiagram, tau: &YoungDiagram) -> StructureConstants {
    let prod = &psharp_rho_in_p(sigma) * &psharp_rho_in_p(tau);
    p_to_psharp(&prod)
        .into_terms()
        .into_iter()
        .map(|(rho, c)| (YoungDiagram::from_parts(rho), c))
        .collect()
}

fn count(sigma: &YoungDiagram, tau: &YoungDiagram) -> StructureConstants {
    let (a, b) = (sigma.size(), tau.size());
    let perms_a = permutations_of_type(a, sigma.rows());
    let perms_b = permutations_of_type(b, tau.rows());
    let mut out = StructureConstants::new();
    for big_n in a.max(b)..=a + b {
        let overlap = a + b - big_n;
        // X₁ = {0..a}, X₂ = last `overlap` points of X₁ plus {a..N}
        let x2: Vec<usize> = (a - overlap..big_n).collect();
        let mut tally: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let mut prod = vec![0usize; big_n];
        for s1 in &perms_a {
            for s2 in &perms_b {
                for (x, slot) in prod.iter_mut().enumerate() {
                    let mid = if x >= a - overlap { x2[s2[x - (a - overlap)]] } else { x };
                    *slot = if mid < a { s1[mid] } else { mid };
                }
                *tally.entry(cycle_type(&prod)).or_insert(0) += 1;
            }
        }
        let placements = binomial(big_n as u64, a as u64) * binomial(a as u64, overlap as u64);
        let zz = sigma.z() * tau.z();
        let nf = factorial(big_n as u64);
        for (rho, c) in tally {
            let v = Rational::new(&zz * &placements * BigInt::from(c), nf.clone());
            if !v.is_zero() {
                out.insert(YoungDiagram::from_parts(rho), v);
            }
        }
    }
    out
}

/// All permutations of `0..n` (as images) with the given cycle type.
fn permutations_of_type(n: usize, parts: &[u32]) -> Vec<Vec<usize>> {
    let mut target = parts.to_vec();
    target.sort_unstable_by(|x, y| y.cmp(x));
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut current, &mut |p| {
        if cycle_type(p) == target {
            out.push(p.to_vec());
        }
    });
    out
}

fn heap_permute<F: FnMut(&[usize])>(k: usize, a: &mut Vec<usize>, f: &mut F) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(k - 1, a, f);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permute(k - 1, a, f);
}

/// Cycle lengths in decreasing order, fixed points included.
fn cycle_type(p: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn d(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn two_times_two() {
        let f = structure_constants(&d("2"), &d("2")).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[&d("2,2")], int(1));
        assert_eq!(f[&d("3")], int(4));
        assert_eq!(f[&d("1,1")], int(2));
    }

    #[test]
    fn two_times_one() {
        let f = structure_constants(&d("2"), &d("1")).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[&d("2,1")], int(1));
        assert_eq!(f[&d("2")], int(2));
    }

    #[test]
    fn routes_agree_small() {
        for (s, t) in [("2", "2"), ("3", "2"), ("2,1", "2"), ("3", "3"), ("2,2", "2")] {
            assert_eq!(
                structure_constants(&d(s), &d(t)).unwrap(),
                structure_constants_by_expansion(&d(s), &d(t))
            );
        }
    }

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type(&[1, 0, 2]), vec![2, 1]);
        assert_eq!(permutations_of_type(4, &[2, 2]).len(), 3);
        assert_eq!(permutations_of_type(4, &[3, 1]).len(), 8);
    }

    #[test]
    fn cap_enforced() {
        assert!(structure_constants(&d("5"), &d("4")).is_err());
    }
}
