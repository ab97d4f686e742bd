//! The inversion pair
//! `a_k = Σ_j C(k, j) b_{k-2j}` and
//! `b_k = Σ_j (-1)^j (k/(k-j)) C(k-j, j) a_{k-2j}`,
//! valid for sequences with `a_0 = a_1 = 0`; it is the relation between
//! `x^k` and the rescaled Chebyshev polynomials `2 T_k(x/2)`.

use crate::error::{Error, Result};
use crate::rational::{binomial, ratio, Rational};
use crate::series::Coeff;

pub fn combinatorial_forward<C: Coeff>(b: &[C]) -> Vec<C> {
    (0..b.len())
        .map(|k| {
            let mut acc = C::zero();
            for j in 0..=k / 2 {
                let c = Rational::from_integer(binomial(k as u64, j as u64));
                acc = acc.add(&b[k - 2 * j].scale(&c));
            }
            acc
        })
        .collect()
}

pub fn combinatorial_invert<C: Coeff>(a: &[C]) -> Result<Vec<C>> {
    if a.iter().take(2).any(|v| !v.is_zero()) {
        return Err(Error::InvalidArgument("a_0 and a_1 must vanish".into()));
    }
    Ok((0..a.len())
        .map(|k| {
            if k == 0 {
                return C::zero();
            }
            let mut acc = C::zero();
            for j in 0..=k / 2 {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let c = Rational::from_integer(binomial((k - j) as u64, j as u64))
                    * ratio(sign * k as i64, (k - j) as i64);
                acc = acc.add(&a[k - 2 * j].scale(&c));
            }
            acc
        })
        .collect())
}
