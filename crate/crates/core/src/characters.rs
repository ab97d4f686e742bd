//! Irreducible characters of the symmetric group, dimensions and Plancherel
//! weights.
//!
//! Characters use the Murnaghan–Nakayama rule on beta-sets. Parts of the
//! class larger than one are stripped first; once only fixed points remain
//! the value is `dim` of what is left, which the hook-length formula gives
//! directly. This keeps the recursion shallow even for diagrams with
//! thousands of boxes.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::YoungDiagram;
use crate::rational::{factorial, Rational};

const CACHE_LIMIT: usize = 1 << 16;

type CacheKey = (Vec<u32>, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<CacheKey, BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of standard tableaux of shape `λ`, by the hook-length formula.
pub fn dimension(lambda: &YoungDiagram) -> BigInt {
    let n = lambda.size() as u64;
    let mut hooks = BigInt::one();
    for h in lambda.hooks() {
        hooks *= h;
    }
    factorial(n) / hooks
}

/// `χ^λ_ρ` with `|ρ| = |λ|`.
pub fn character(lambda: &YoungDiagram, rho: &YoungDiagram) -> Result<BigInt> {
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch {
            diagram: lambda.size(),
            class: rho.size(),
        });
    }
    let parts: Vec<u32> = rho.rows().iter().copied().filter(|&p| p > 1).collect();
    Ok(mn(lambda.rows(), &parts))
}

/// `χ^λ_{ρ ∪ 1^{n-|ρ|}} / dim λ`; `ρ` may omit its fixed points.
pub fn character_ratio(lambda: &YoungDiagram, rho: &YoungDiagram) -> Result<Rational> {
    if rho.size() > lambda.size() {
        return Err(Error::SizeMismatch {
            diagram: lambda.size(),
            class: rho.size(),
        });
    }
    let padded = rho.pad_ones(lambda.size() - rho.size());
    let chi = character(lambda, &padded)?;
    Ok(Rational::new(chi, dimension(lambda)))
}

/// `M_n(λ) = dim²λ / n!`.
pub fn plancherel_weight(lambda: &YoungDiagram) -> Rational {
    let d = dimension(lambda);
    Rational::new(&d * &d, factorial(lambda.size() as u64))
}

/// Rows indexed by `partitions_of(n)`, columns likewise.
pub fn character_table(n: usize) -> Vec<Vec<BigInt>> {
    let parts = crate::partitions::partitions_of(n);
    parts
        .iter()
        .map(|lambda| {
            parts
                .iter()
                .map(|rho| character(lambda, rho).expect("sizes agree"))
                .collect()
        })
        .collect()
}

fn mn(rows: &[u32], parts: &[u32]) -> BigInt {
    if parts.is_empty() {
        return dimension(&YoungDiagram::from_parts(rows.to_vec()));
    }
    let key = (rows.to_vec(), parts.to_vec());
    if let Some(v) = cache().lock().expect("cache lock").get(&key) {
        return v.clone();
    }

    let k = parts[0] as i64;
    let rest = &parts[1..];
    let len = rows.len() as i64;
    // beta_i = λ_i - i + len, strictly decreasing, all >= 0
    let beta: Vec<i64> = rows
        .iter()
        .enumerate()
        .map(|(i, &r)| r as i64 - i as i64 - 1 + len)
        .collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        let target = b - k;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let new_rows: Vec<u32> = moved
            .iter()
            .enumerate()
            .map(|(i, &c)| (c + i as i64 + 1 - len) as u32)
            .filter(|&r| r > 0)
            .collect();
        let sub = mn(&new_rows, rest);
        if between % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }

    let mut guard = cache().lock().expect("cache lock");
    if guard.len() >= CACHE_LIMIT {
        guard.clear();
    }
    guard.insert(key, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    fn d(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(dimension(&d("2,1")), BigInt::from(2));
        assert_eq!(dimension(&d("3,2")), BigInt::from(5));
        assert_eq!(dimension(&d("7")), BigInt::from(1));
        assert_eq!(character(&d("2,1"), &d("3")).unwrap(), BigInt::from(-1));
        assert_eq!(character(&d("2,1"), &d("2,1")).unwrap(), BigInt::zero());
        assert_eq!(character(&d("2,1"), &d("1,1,1")).unwrap(), BigInt::from(2));
        assert!(character(&d("2,1"), &d("2")).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(plancherel_weight(&d("2,1")), Rational::new(2.into(), 3.into()));
        assert_eq!(plancherel_weight(&d("1")), Rational::one());
        assert_eq!(plancherel_weight(&d("2")), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn burnside() {
        for n in 0..=12 {
            let total: BigInt = partitions_of(n)
                .iter()
                .map(|l| {
                    let d = dimension(l);
                    &d * &d
                })
                .sum();
            assert_eq!(total, factorial(n as u64));
        }
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=8 {
            let parts = partitions_of(n);
            let table = character_table(n);
            for (a, rho) in parts.iter().enumerate() {
                for (b, _) in parts.iter().enumerate() {
                    let s: BigInt = table.iter().map(|row| &row[a] * &row[b]).sum();
                    // the centralizer order, not the class size
                    let expected = if a == b {
                        rho.z()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(s, expected);
                }
            }
        }
    }

    #[test]
    fn conjugate_twists_by_sign() {
        for n in 1..=8 {
            for lambda in partitions_of(n) {
                for rho in partitions_of(n) {
                    let a = character(&lambda.conjugate(), &rho).unwrap();
                    let b = character(&lambda, &rho).unwrap() * rho.sign();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn bounded_by_dimension() {
        for lambda in partitions_of(9) {
            let dim = dimension(&lambda);
            for rho in partitions_of(9) {
                let c = character(&lambda, &rho).unwrap();
                assert!(c.magnitude() <= dim.magnitude());
            }
        }
    }
}
