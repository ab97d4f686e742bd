//! The extended algebra obtained by adjoining `(p#₁)^{±1/2}`.
//!
//! Elements are finite sums of `c · p#_ρ · (p#₁)^{m/2}` with `ρ` free of
//! parts equal to one and `m` any integer; `deg₁` of such a term is
//! `|ρ| + m`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::structure::structure_constants_with_cap;
use crate::algebra::{Basis, Observable, DEFAULT_STRUCTURE_CAP};
use crate::error::Result;
use crate::observables::PolynomialOnR;
use crate::partitions::YoungDiagram;
use crate::poly::Poly;
use crate::rational::{fmt_rational, int, Rational};

/// `(ρ without ones, m)`.
pub type ExtKey = (Vec<u32>, i64);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtendedElement {
    terms: BTreeMap<ExtKey, Rational>,
}

impl ExtendedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_raw(&[], 0, c);
        e
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `(p#₁)^{m/2}`.
    pub fn psharp1_power(m: i64) -> Self {
        let mut e = Self::zero();
        e.add_raw(&[], m, Rational::one());
        e
    }

    /// `p#_ρ (p#₁)^{m/2}` for any `ρ`, parts equal to one allowed.
    pub fn psharp(rho: &YoungDiagram, m: i64) -> Self {
        ext_normalize([(rho.rows().to_vec(), m, Rational::one())])
    }

    /// `p#_k / (p#₁)^{k/2} = √k η_k`.
    pub fn zeta(k: u32) -> Self {
        Self::psharp(&YoungDiagram::row(k), -(k as i64))
    }

    /// `p#_ρ / (p#₁)^{|ρ|₁/2}`, i.e. `η_ρ Π_{k≥2} k^{m_k/2}`.
    pub fn zeta_rho(rho: &YoungDiagram) -> Self {
        let weight = (rho.size() + rho.multiplicity(1)) as i64;
        Self::psharp(rho, -weight)
    }

    pub fn from_observable(e: &Observable) -> Self {
        let e = e.to_basis(Basis::PSharp);
        ext_normalize(e.poly().terms().iter().map(|(rho, c)| (rho.clone(), 0, c.clone())))
    }

    pub fn terms(&self) -> &BTreeMap<ExtKey, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_raw(&mut self, rho: &[u32], m: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (rho.to_vec(), m);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `max |ρ| + m` over the terms; `None` for zero.
    pub fn deg1(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|(rho, m)| rho.iter().map(|&k| k as i64).sum::<i64>() + m)
            .max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((rho, m), c) in &other.terms {
            out.add_raw(rho, *m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for ((rho, m), v) in &self.terms {
            out.add_raw(rho, *m, v * c);
        }
        out
    }

    /// Multiply by `(p#₁)^{s/2}`.
    pub fn shift(&self, s: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((rho, m), c)| ((rho.clone(), m + s), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with_cap(other, DEFAULT_STRUCTURE_CAP)
    }

    pub fn mul_with_cap(&self, other: &Self, cap: usize) -> Result<Self> {
        let mut raw = Vec::new();
        for ((r1, m1), c1) in &self.terms {
            for ((r2, m2), c2) in &other.terms {
                let c = c1 * c2;
                let m = m1 + m2;
                if r1.is_empty() || r2.is_empty() {
                    let mut rho = r1.clone();
                    rho.extend_from_slice(r2);
                    raw.push((rho, m, c));
                    continue;
                }
                let f = structure_constants_with_cap(
                    &YoungDiagram::from_parts(r1.clone()),
                    &YoungDiagram::from_parts(r2.clone()),
                    cap,
                )?;
                for (rho, v) in f {
                    raw.push((rho.rows().to_vec(), m, &c * v));
                }
            }
        }
        Ok(ext_normalize(raw))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `P(self)` for a polynomial in one variable, by Horner's rule.
    pub fn apply(&self, poly: &PolynomialOnR) -> Result<Self> {
        let Some(deg) = poly.degree() else {
            return Ok(Self::zero());
        };
        let mut acc = Self::constant(poly.coeff(deg));
        for k in (0..deg).rev() {
            acc = acc.mul(self)?.add(&Self::constant(poly.coeff(k)));
        }
        Ok(acc)
    }

    /// Terms of `deg₁` at least `d`.
    pub fn part_with_deg1_at_least(&self, d: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((rho, m), _)| rho.iter().map(|&k| k as i64).sum::<i64>() + m >= d)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Rewrite raw terms `c · p#_ρ (p#₁)^{m/2}` into the basis with no parts
/// equal to one, using `p#_{σ∪1} = p#_σ p#₁ - |σ| p#_σ`.
pub fn ext_normalize<I>(raw: I) -> ExtendedElement
where
    I: IntoIterator<Item = (Vec<u32>, i64, Rational)>,
{
    let mut out = ExtendedElement::zero();
    for (rho, m, c) in raw {
        let core: Vec<u32> = rho.iter().copied().filter(|&k| k != 1).collect();
        let ones = rho.len() - core.len();
        let s: i64 = core.iter().map(|&k| k as i64).sum();
        // Π_{i<ones} (x - s - i) as a polynomial in x = p#₁
        let mut factor = Poly::one();
        for i in 0..ones as i64 {
            factor = &factor * &(&Poly::var(1) - &Poly::constant(int(s + i)));
        }
        for (mono, v) in factor.terms() {
            out.add_raw(&core, m + 2 * mono.len() as i64, &c * v);
        }
    }
    out
}

impl fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<String> = Vec::new();
        for ((rho, m), c) in self.terms.iter().rev() {
            let mut s = fmt_rational(c);
            if !rho.is_empty() {
                let parts: Vec<String> = rho.iter().map(|k| k.to_string()).collect();
                s.push_str(&format!("·p#({})", parts.join(",")));
            }
            if *m != 0 {
                s.push_str(&format!("·(p#1)^({m}/2)"));
            }
            items.push(s);
        }
        f.write_str(&items.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    fn key(rho: &[u32], m: i64) -> ExtKey {
        (rho.to_vec(), m)
    }

    #[test]
    fn normalization_examples() {
        let e = ExtendedElement::psharp(&d("2,1"), 0);
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.terms()[&key(&[2], 2)], int(1));
        assert_eq!(e.terms()[&key(&[2], 0)], int(-2));

        let one = ExtendedElement::psharp(&d("1"), 0);
        assert_eq!(one, ExtendedElement::psharp1_power(2));

        let e = ExtendedElement::psharp(&d("1,1"), 0);
        assert_eq!(e.terms()[&key(&[], 4)], int(1));
        assert_eq!(e.terms()[&key(&[], 2)], int(-1));
    }

    #[test]
    fn eta_two_squared() {
        let z = ExtendedElement::zeta(2);
        let sq = z.mul(&z).unwrap();
        let lead = ExtendedElement::zeta_rho(&d("2,2")).add(&ExtendedElement::constant(int(2)));
        let rest = sq.sub(&lead);
        assert!(rest.deg1().unwrap() < 0);
    }

    #[test]
    fn no_common_part() {
        let prod = ExtendedElement::zeta(2).mul(&ExtendedElement::zeta(3)).unwrap();
        let rest = prod.sub(&ExtendedElement::zeta_rho(&d("3,2")));
        assert!(rest.deg1().unwrap() < 0);
    }

    #[test]
    fn unit_and_degree_bound() {
        let a = ExtendedElement::psharp(&d("3,1"), -1);
        assert_eq!(a.mul(&ExtendedElement::one()).unwrap(), a);
        let b = ExtendedElement::psharp(&d("2,2"), 1);
        let p = a.mul(&b).unwrap();
        assert!(p.deg1().unwrap() <= a.deg1().unwrap() + b.deg1().unwrap());
    }
}
