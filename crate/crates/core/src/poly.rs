//! Sparse multivariate polynomials over the rationals in generators indexed
//! by positive integers.
//!
//! A monomial is the multiset of generator indices it contains, stored as a
//! weakly decreasing list, so `x_3 x_1^2` is `[3, 1, 1]`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::rational::{fmt_rational, Rational};

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] >= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Sum of indices (canonical degree when `deg p_k = k`).
pub fn mono_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Vec::new(), c)
    }

    /// The generator `x_k`.
    pub fn var(k: u32) -> Self {
        Self::term(vec![k], Rational::one())
    }

    pub fn term(mut m: Monomial, c: Rational) -> Self {
        m.sort_unstable_by(|a, b| b.cmp(a));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&[])
    }

    pub fn add_term(&mut self, mut m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        if m.windows(2).any(|w| w[0] < w[1]) {
            m.sort_unstable_by(|a, b| b.cmp(a));
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Maximum canonical degree of a monomial; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.degree_by(|k| k)
    }

    /// Maximum degree with generator `k` of degree `w(k)`.
    pub fn degree_by<F: Fn(u32) -> u32>(&self, w: F) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&k| w(k)).sum())
            .max()
    }

    /// Part of degree exactly `d` under the weights `w`.
    pub fn homogeneous_part<F: Fn(u32) -> u32>(&self, d: u32, w: F) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().map(|&k| w(k)).sum::<u32>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest generator index appearing.
    pub fn max_index(&self) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.first().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn eval<F: FnMut(u32) -> Rational>(&self, mut gen: F) -> Rational {
        let mut values: HashMap<u32, Rational> = HashMap::new();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &k in m {
                let v = values.entry(k).or_insert_with(|| gen(k));
                t *= &*v;
            }
            total += t;
        }
        total
    }

    /// Replace every generator `x_k` by `sub(k)`.
    pub fn substitute<F: FnMut(u32) -> Poly>(&self, mut sub: F) -> Poly {
        let mut images: HashMap<u32, Poly> = HashMap::new();
        let mut powers: HashMap<(u32, usize), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut i = 0;
            while i < m.len() {
                let k = m[i];
                let e = m[i..].iter().take_while(|&&x| x == k).count();
                if !images.contains_key(&k) {
                    images.insert(k, sub(k));
                }
                let p = powers
                    .entry((k, e))
                    .or_insert_with(|| images[&k].pow(e as u32))
                    .clone();
                t = &t * &p;
                i += e;
            }
            out += t;
        }
        out
    }

    /// Renders with a generator name such as `p` or `p̃`, highest degree
    /// first: `4·p₃ + p₁`.
    pub fn display_with(&self, name: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut items: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            mono_degree(b.0)
                .cmp(&mono_degree(a.0))
                .then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (i, (m, c)) in items.into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = render_monomial(m, name);
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                let coeff = fmt_rational(&mag);
                if coeff.contains('/') {
                    out.push_str(&format!("({coeff})·{mono}"));
                } else {
                    out.push_str(&format!("{coeff}·{mono}"));
                }
            }
        }
        out
    }
}

pub fn subscript(k: u32) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn render_monomial(m: &[u32], name: &str) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let k = m[i];
        let e = m[i..].iter().take_while(|&&x| x == k).count();
        let mut s = format!("{name}{}", subscript(k));
        if e > 1 {
            s.push_str(&superscript(e));
        }
        parts.push(s);
        i += e;
    }
    parts.join("·")
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = mono_mul(ma, mb);
                *acc.entry(m).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { terms: acc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn arithmetic_and_display() {
        let p = &Poly::var(3).scale(&int(4)) + &Poly::var(1);
        assert_eq!(p.display_with("p"), "4·p₃ + p₁");
        let sq = &p * &p;
        assert_eq!(sq.coeff(&[3, 1]), int(8));
        assert_eq!(sq.coeff(&[1, 1]), int(1));
        let zero = &sq - &sq;
        assert!(zero.is_zero());
        let half = Poly::var(2).scale(&ratio(-1, 2));
        assert_eq!(half.display_with("p"), "-(1/2)·p₂");
    }

    #[test]
    fn substitution_and_eval() {
        // x1 -> x2 + 1 in x1^2
        let p = Poly::var(1).pow(2);
        let q = p.substitute(|k| {
            if k == 1 {
                &Poly::var(2) + &Poly::one()
            } else {
                Poly::var(k)
            }
        });
        assert_eq!(q.coeff(&[2, 2]), int(1));
        assert_eq!(q.coeff(&[2]), int(2));
        assert_eq!(q.constant_term(), int(1));
        assert_eq!(q.eval(|_| int(3)), int(16));
        assert_eq!(q.degree(), Some(4));
    }
}
