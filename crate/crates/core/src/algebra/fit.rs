//! Expansion of `p#_ρ` in the `p` basis by exact evaluation fitting.
//!
//! By the degree bound, `p#_ρ` is a combination of `p_μ` with `|μ| ≤ |ρ|`.
//! Its values on every diagram with at most `|ρ| + 2` boxes determine the
//! coefficients; the linear system is solved once per size with all `ρ` of
//! that size as right-hand sides, and rows beyond the rank double as a
//! consistency check. Fixed points are stripped first with
//! `p#_{σ∪1^j} = p#_σ Π_{i<j} (p_1 - |σ| - i)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::observables::{eval_p, eval_psharp};
use crate::partitions::{partitions_of, partitions_up_to, YoungDiagram};
use crate::poly::Poly;
use crate::rational::{int, Rational};

pub const DEFAULT_FIT_CAP: usize = 8;

type Table = HashMap<Vec<u32>, Poly>;

fn table() -> &'static Mutex<Table> {
    static CELL: OnceLock<Mutex<Table>> = OnceLock::new();
    CELL.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `p#_ρ` in the `p` basis; fails if `|ρ|` exceeds `cap`.
pub fn psharp_rho_in_p_with_cap(rho: &YoungDiagram, cap: usize) -> Result<Poly> {
    if rho.size() > cap {
        return Err(Error::CapExceeded {
            what: "fit size",
            value: rho.size(),
            cap,
        });
    }
    let core = rho.without_ones();
    let ones = rho.size() - core.size();
    let mut out = fitted(&core)?;
    let s = core.size() as i64;
    for i in 0..ones as i64 {
        let factor = &Poly::var(1) - &Poly::constant(int(s + i));
        out = &out * &factor;
    }
    Ok(out)
}

/// `p#_ρ` in the `p` basis.
///
/// Sizes are not capped here; the cost grows with the number of
/// partitions of `|ρ|`, so stay within a handful of boxes.
pub fn psharp_rho_in_p(rho: &YoungDiagram) -> Poly {
    psharp_rho_in_p_with_cap(rho, usize::MAX).expect("fit system is nonsingular")
}

fn fitted(core: &YoungDiagram) -> Result<Poly> {
    if core.is_empty() {
        return Ok(Poly::one());
    }
    if let Some(p) = table().lock().expect("fit lock").get(core.rows()) {
        return Ok(p.clone());
    }
    let size = core.size();
    let targets: Vec<YoungDiagram> = partitions_of(size)
        .into_iter()
        .filter(|r| r.multiplicity(1) == 0)
        .collect();
    let solved = solve_size(size, &targets)?;
    let mut guard = table().lock().expect("fit lock");
    for (r, p) in targets.iter().zip(solved) {
        guard.insert(r.rows().to_vec(), p);
    }
    Ok(guard[core.rows()].clone())
}

fn solve_size(size: usize, targets: &[YoungDiagram]) -> Result<Vec<Poly>> {
    let columns = partitions_up_to(size);
    let points = partitions_up_to(size + 2);
    let ncol = columns.len();
    let nrhs = targets.len();

    let mut rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|lambda| {
            let pk: Vec<Rational> = (0..=size as u32).map(|k| eval_p(k, lambda)).collect();
            let mut row: Vec<Rational> = columns
                .iter()
                .map(|mu| mu.rows().iter().map(|&k| pk[k as usize].clone()).product())
                .collect();
            row.extend(targets.iter().map(|rho| eval_psharp(rho, lambda)));
            row
        })
        .collect();

    let mut rank = 0;
    for col in 0..ncol {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(Error::SingularFit(format!(
                "no pivot for p_{} on diagrams of size ≤ {}",
                columns[col],
                size + 2
            )));
        };
        rows.swap(rank, pivot);
        let inv = Rational::one() / &rows[rank][col];
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[ncol..].iter().any(|v| !v.is_zero())) {
        return Err(Error::SingularFit("evaluations inconsistent with the degree bound".into()));
    }

    Ok((0..nrhs)
        .map(|j| {
            Poly::from_terms(
                columns
                    .iter()
                    .enumerate()
                    .map(|(i, mu)| (mu.rows().to_vec(), rows[i][ncol + j].clone())),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::psharp_in_p;

    fn d(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn small_fits() {
        assert_eq!(psharp_rho_in_p(&d("1")), Poly::var(1));
        let expected = &Poly::var(1).pow(2) - &Poly::var(1);
        assert_eq!(psharp_rho_in_p(&d("1,1")), expected);
        let two = psharp_rho_in_p(&d("2"));
        assert_eq!(two.degree(), Some(2));
        assert_eq!(two.coeff(&[2]), int(1));
    }

    #[test]
    fn single_rows_agree_with_generating_series() {
        for k in 1..=6 {
            assert_eq!(psharp_rho_in_p(&YoungDiagram::row(k)), psharp_in_p(k));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(psharp_rho_in_p_with_cap(&d("5,4"), DEFAULT_FIT_CAP).is_err());
    }
}
