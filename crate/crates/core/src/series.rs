//! Truncated formal power series in one variable with coefficients in a
//! commutative ring containing the rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{int, Rational};

/// Coefficient ring of a [`FormalSeries`].
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    /// The value when the element is a rational constant.
    fn as_constant(&self) -> Option<Rational>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn as_constant(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        Poly::scale(self, c)
    }
    fn as_constant(&self) -> Option<Rational> {
        if self.terms().keys().all(|m| m.is_empty()) {
            Some(self.constant_term())
        } else {
            None
        }
    }
}

/// `Σ_{k<order} c_k t^k`; coefficients at and beyond `order` are unknown
/// and never consulted.
#[derive(Clone, PartialEq)]
pub struct FormalSeries<C: Coeff> {
    coeffs: Vec<C>,
    order: usize,
}

impl<C: Coeff> fmt::Debug for FormalSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(t^{})", self.coeffs, self.order)
    }
}

impl<C: Coeff> FormalSeries<C> {
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.truncate(order);
        coeffs.resize(order, C::zero());
        FormalSeries { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    /// `t` itself.
    pub fn t(order: usize) -> Self {
        Self::new(vec![C::zero(), C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `[t^k]`; zero past the truncation would be a lie, so this panics there.
    pub fn coeff(&self, k: usize) -> &C {
        assert!(k < self.order, "coefficient {k} beyond order {}", self.order);
        &self.coeffs[k]
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new(
            (0..order).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect(),
            order,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new(
            (0..order).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect(),
            order,
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.scale(c)).collect(), self.order)
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), self.order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = vec![C::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out, order)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiply by `t^s`, keeping the order.
    pub fn shift(&self, s: usize) -> Self {
        let mut c = vec![C::zero(); s];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c, self.order)
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !Zero::is_zero(c))
            .ok_or_else(|| Error::InvalidArgument("series not invertible".into()))?;
        let inv0 = c0.recip();
        let mut out: Vec<C> = vec![C::zero(); self.order];
        out[0] = C::one().scale(&inv0);
        for k in 1..self.order {
            let mut s = C::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                s = s.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = s.scale(&-inv0.clone());
        }
        Ok(Self::new(out, self.order))
    }

    /// Integer power, negative exponents through [`Self::inverse`].
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow((-e) as u32))
        }
    }

    /// `exp(f)` for `f` without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("exp needs zero constant term".into()));
        }
        // E' = f' E, so k e_k = Σ j f_j e_{k-j}
        let mut out: Vec<C> = vec![C::zero(); self.order];
        if self.order == 0 {
            return Ok(Self::new(out, 0));
        }
        out[0] = C::one();
        for k in 1..self.order {
            let mut s = C::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                s = s.add(&self.coeffs[j].mul(&out[k - j]).scale(&int(j as i64)));
            }
            out[k] = s.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Ok(Self::new(out, self.order))
    }

    /// `log(f)` for `f` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.order == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != C::one() {
            return Err(Error::InvalidArgument("log needs constant term 1".into()));
        }
        // L' = f'/f, so k l_k = k f_k - Σ_{j<k} j l_j f_{k-j}
        let mut out: Vec<C> = vec![C::zero(); self.order];
        for k in 1..self.order {
            let mut s = self.coeffs[k].scale(&int(k as i64));
            for j in 1..k {
                if out[j].is_zero() || self.coeffs[k - j].is_zero() {
                    continue;
                }
                s = s.sub(&out[j].mul(&self.coeffs[k - j]).scale(&int(j as i64)));
            }
            out[k] = s.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Ok(Self::new(out, self.order))
    }

    /// `f(g(t))` for `g` without constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("inner series has a constant term".into()));
        }
        let order = self.order.min(g.order);
        let mut acc = Self::zero(order);
        // Horner from the top coefficient down
        for k in (0..order).rev() {
            acc = acc.mul(g).add(&Self::new(vec![self.coeffs[k].clone()], order));
        }
        Ok(acc)
    }
}

/// The coefficient forms attached to `B(u) = 1 + Σ_{j≥2} b_j u^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeForms<C: Coeff> {
    /// `A(t)` with `a_k = [u^k] B^{k+1}(u) / (k+1)`.
    pub a: FormalSeries<C>,
    /// `ã_k = [u^k] B^k(u)`, where `ln A(t) = Σ ã_k t^k / k`.
    pub a_tilde: FormalSeries<C>,
}

/// Lagrange inversion for `B(u) = 1 + Σ_{j≥2} b_j u^j`.
///
/// The maps `x ↦ x A(x)` and `x ↦ x / B(x)` are mutually inverse.
pub fn lagrange_invert<C: Coeff>(b: &FormalSeries<C>) -> Result<LagrangeForms<C>> {
    let order = b.order();
    if order >= 1 && b.coeff(0) != &C::one() {
        return Err(Error::InvalidArgument("B must start with 1".into()));
    }
    if order >= 2 && !b.coeff(1).is_zero() {
        return Err(Error::InvalidArgument("B must have no linear term".into()));
    }
    let mut a = Vec::with_capacity(order);
    let mut a_tilde = Vec::with_capacity(order);
    let mut power = FormalSeries::<C>::one(order);
    for k in 0..order {
        // power = B^k here
        a_tilde.push(if k == 0 { C::zero() } else { power.coeff(k).clone() });
        power = power.mul(b);
        a.push(
            power
                .coeff(k)
                .scale(&Rational::new(1.into(), ((k + 1) as i64).into())),
        );
    }
    Ok(LagrangeForms {
        a: FormalSeries::new(a, order),
        a_tilde: FormalSeries::new(a_tilde, order),
    })
}

/// The reverse direction: `b_k = -[t^k] A^{-(k-1)}(t) / (k-1)` for
/// `A(t) = 1 + Σ_{j≥2} a_j t^j`.
pub fn lagrange_b_from_a<C: Coeff>(a: &FormalSeries<C>) -> Result<FormalSeries<C>> {
    let order = a.order();
    if order >= 1 && a.coeff(0) != &C::one() {
        return Err(Error::InvalidArgument("A must start with 1".into()));
    }
    if order >= 2 && !a.coeff(1).is_zero() {
        return Err(Error::InvalidArgument("A must have no linear term".into()));
    }
    let inv = a.inverse()?;
    let mut b = vec![C::zero(); order];
    if order > 0 {
        b[0] = C::one();
    }
    let mut power = inv.clone();
    for (k, slot) in b.iter_mut().enumerate().skip(2) {
        // power = A^{-(k-1)}
        *slot = power
            .coeff(k)
            .scale(&Rational::new((-1).into(), ((k - 1) as i64).into()));
        power = power.mul(&inv);
    }
    Ok(FormalSeries::new(b, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn s(v: &[i64], order: usize) -> FormalSeries<Rational> {
        FormalSeries::new(v.iter().map(|&x| int(x)).collect(), order)
    }

    #[test]
    fn exp_log_round_trip() {
        let f = s(&[0, 1, 2, -3, 5], 8);
        let e = f.exp().unwrap();
        assert_eq!(e.log().unwrap(), f);
        // exp(t) coefficients
        let e1 = s(&[0, 1], 5).exp().unwrap();
        assert_eq!(e1.coeff(4), &ratio(1, 24));
    }

    #[test]
    fn inverse_and_powers() {
        let f = s(&[1, 1], 6);
        let inv = f.inverse().unwrap();
        assert_eq!(inv, s(&[1, -1, 1, -1, 1, -1], 6));
        assert_eq!(f.powi(-2).unwrap().coeff(3), &int(-4));
        assert!(s(&[0, 1], 3).inverse().is_err());
    }

    #[test]
    fn compose_with_geometric() {
        // 1/(1-u) at u = t/(1+t) is 1+t
        let geo = s(&[1, 1, 1, 1, 1, 1], 6);
        let g = s(&[0, 1], 6).mul(&s(&[1, 1], 6).inverse().unwrap());
        assert_eq!(geo.compose(&g).unwrap(), s(&[1, 1], 6));
    }

    #[test]
    fn lagrange_small_cases() {
        let forms = lagrange_invert(&FormalSeries::<Rational>::one(6)).unwrap();
        assert_eq!(forms.a, FormalSeries::one(6));
        let c = ratio(3, 7);
        let b = FormalSeries::new(vec![int(1), int(0), c.clone()], 6);
        let forms = lagrange_invert(&b).unwrap();
        assert_eq!(forms.a.coeff(2), &c);
        assert!(lagrange_invert(&s(&[1, 1], 4)).is_err());
    }
}
