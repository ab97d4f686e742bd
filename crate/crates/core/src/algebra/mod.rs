//! The algebra of polynomial functions on Young diagrams in its generator
//! systems, with exact conversions between them.
//!
//! Every conversion goes through the `p` basis:
//! `p̃ ↔ p` by the transition formula and its triangular inverse,
//! `h̃ ↔ p̃` by `exp`/`log` of generating series, `f̃ ↔ h̃` by Lagrange
//! inversion, and `p# ↔ p` by evaluation fitting plus triangular
//! elimination on the top canonical-degree term.

pub mod extended;
pub mod fit;
pub mod inversion;
pub mod structure;
pub mod theorems;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observables::{eval_p, eval_psharp, eval_ptilde, free_cumulants_of_moments, htilde_from_ptilde};
use crate::partitions::YoungDiagram;
use crate::poly::{mono_degree, Monomial, Poly};
use crate::rational::{binomial, fmt_rational, int, parse_rational, ratio, Rational};
use crate::series::{lagrange_b_from_a, lagrange_invert, FormalSeries};

pub use extended::ExtendedElement;
pub use fit::{psharp_rho_in_p, psharp_rho_in_p_with_cap, DEFAULT_FIT_CAP};
pub use inversion::{combinatorial_forward, combinatorial_invert};
pub use structure::{structure_constants, structure_constants_with_cap, structure_constants_by_expansion, DEFAULT_STRUCTURE_CAP};
pub use theorems::{verify_leading_term_theorems, verify_leading_term_theorems_with_cap, CheckResult, LeadingTermReport};

/// Generator system of an [`Observable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// Power sums `p_k` in the modified Frobenius coordinates.
    P,
    /// Power sums `p̃_k` of the profile extrema.
    PTilde,
    /// Moments `h̃_k` of the transition measure.
    HTilde,
    /// Normalized characters `p#_ρ`; a linear basis, not a generating set.
    PSharp,
    /// Free cumulants `f̃_k` of the transition measure.
    FreeCumulant,
}

impl Basis {
    pub const ALL: [Basis; 5] = [
        Basis::P,
        Basis::PTilde,
        Basis::HTilde,
        Basis::PSharp,
        Basis::FreeCumulant,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Basis::P => "p",
            Basis::PTilde => "ptilde",
            Basis::HTilde => "htilde",
            Basis::PSharp => "psharp",
            Basis::FreeCumulant => "free",
        }
    }

    /// Symbol used for display.
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::P => "p",
            Basis::PTilde => "p̃",
            Basis::HTilde => "h̃",
            Basis::PSharp => "p#",
            Basis::FreeCumulant => "f̃",
        }
    }

    /// Smallest admissible generator index.
    pub fn min_index(self) -> u32 {
        match self {
            Basis::P | Basis::PSharp => 1,
            _ => 2,
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Basis::P),
            "ptilde" | "p̃" => Ok(Basis::PTilde),
            "htilde" | "h̃" => Ok(Basis::HTilde),
            "psharp" | "p#" => Ok(Basis::PSharp),
            "free" | "f̃" | "ftilde" => Ok(Basis::FreeCumulant),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// An exact element of the algebra in a named basis.
///
/// Keys are weakly decreasing index lists. For the generating systems they
/// are monomials (`[3, 1]` is `p_3 p_1`); in the `p#` basis the key `ρ`
/// stands for the single basis element `p#_ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observable {
    basis: Basis,
    poly: Poly,
}

impl Observable {
    pub fn new(basis: Basis, poly: Poly) -> Result<Self> {
        let min = basis.min_index();
        if poly.terms().keys().any(|m| m.iter().any(|&k| k < min)) {
            return Err(Error::InvalidArgument(format!(
                "{} generators start at index {min}",
                basis.symbol()
            )));
        }
        Ok(Observable { basis, poly })
    }

    fn raw(basis: Basis, poly: Poly) -> Self {
        Observable { basis, poly }
    }

    pub fn zero(basis: Basis) -> Self {
        Self::raw(basis, Poly::zero())
    }

    pub fn constant(basis: Basis, c: Rational) -> Self {
        Self::raw(basis, Poly::constant(c))
    }

    /// The generator with index `k` (`p#_k` in the `p#` basis).
    pub fn generator(basis: Basis, k: u32) -> Result<Self> {
        Self::new(basis, Poly::var(k))
    }

    /// `p#_ρ`.
    pub fn psharp(rho: &YoungDiagram) -> Self {
        Self::raw(Basis::PSharp, Poly::term(rho.rows().to_vec(), Rational::one()))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::raw(self.basis, self.poly.scale(c))
    }

    pub fn add(&self, other: &Observable) -> Observable {
        let other = other.to_basis(self.basis);
        Self::raw(self.basis, &self.poly + &other.poly)
    }

    pub fn sub(&self, other: &Observable) -> Observable {
        let other = other.to_basis(self.basis);
        Self::raw(self.basis, &self.poly - &other.poly)
    }

    /// Product, expressed in the basis of `self`.
    pub fn mul(&self, other: &Observable) -> Observable {
        match self.basis {
            Basis::PSharp => {
                let prod = &self.to_p() * &other.to_p();
                Self::raw(Basis::PSharp, p_to_psharp(&prod))
            }
            b => Self::raw(b, &self.poly * &other.to_basis(b).poly),
        }
    }

    pub fn pow(&self, e: u32) -> Observable {
        let mut acc = Observable::constant(self.basis, Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The same element written in the `p` basis.
    pub fn to_p(&self) -> Poly {
        match self.basis {
            Basis::P => self.poly.clone(),
            Basis::PTilde => ptilde_poly_to_p(&self.poly),
            Basis::HTilde => ptilde_poly_to_p(&self.poly.substitute(htilde_in_ptilde)),
            Basis::FreeCumulant => {
                let h = self.poly.substitute(|k| free_cumulant_in_htilde(k));
                ptilde_poly_to_p(&h.substitute(htilde_in_ptilde))
            }
            Basis::PSharp => {
                let mut out = Poly::zero();
                for (rho, c) in self.poly.terms() {
                    let rho = YoungDiagram::from_parts(rho.clone());
                    out += psharp_rho_in_p(&rho).scale(c);
                }
                out
            }
        }
    }

    pub fn to_basis(&self, target: Basis) -> Observable {
        if target == self.basis {
            return self.clone();
        }
        let p = self.to_p();
        let poly = match target {
            Basis::P => p,
            Basis::PTilde => p.substitute(p_in_ptilde),
            Basis::HTilde => p.substitute(p_in_ptilde).substitute(ptilde_in_htilde),
            Basis::FreeCumulant => p
                .substitute(p_in_ptilde)
                .substitute(ptilde_in_htilde)
                .substitute(htilde_in_free),
            Basis::PSharp => p_to_psharp(&p),
        };
        Self::raw(target, poly)
    }

    /// Value on a diagram, computed with the evaluators of the native basis.
    pub fn eval(&self, lambda: &YoungDiagram) -> Rational {
        let kmax = self.poly.max_index() as usize;
        match self.basis {
            Basis::P => self.poly.eval(|k| eval_p(k, lambda)),
            Basis::PTilde => self.poly.eval(|k| eval_ptilde(k, lambda)),
            Basis::HTilde => {
                let h = htilde_values(lambda, kmax);
                self.poly.eval(|k| h[k as usize].clone())
            }
            Basis::FreeCumulant => {
                let h = htilde_values(lambda, kmax);
                let f = free_cumulants_of_moments(&h);
                self.poly.eval(|k| f[k as usize].clone())
            }
            Basis::PSharp => self
                .poly
                .terms()
                .iter()
                .map(|(rho, c)| c * eval_psharp(&YoungDiagram::from_parts(rho.clone()), lambda))
                .sum(),
        }
    }

    /// `basis | [idx,...]:coeff ...`, terms in decreasing key order.
    pub fn to_canonical_text(&self) -> String {
        let mut s = self.basis.tag().to_string();
        s.push_str(" |");
        for (m, c) in self.poly.terms().iter().rev() {
            let idx: Vec<String> = m.iter().map(|k| k.to_string()).collect();
            s.push_str(&format!(" [{}]:{}", idx.join(","), fmt_rational(c)));
        }
        s
    }

    pub fn from_canonical_text(s: &str) -> Result<Self> {
        let (tag, rest) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse("missing '|'".into()))?;
        let basis: Basis = tag.trim().parse()?;
        let mut poly = Poly::zero();
        for item in rest.split_whitespace() {
            let (key, coeff) = item
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("bad term {item:?}")))?;
            let key = key
                .strip_prefix('[')
                .and_then(|k| k.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad key {key:?}")))?;
            let mono: Monomial = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                    .collect::<Result<_>>()?
            };
            let c = parse_rational(coeff).ok_or_else(|| Error::Parse(format!("bad coefficient {coeff:?}")))?;
            poly.add_term(mono, c);
        }
        Observable::new(basis, poly)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis != Basis::PSharp {
            return f.write_str(&self.poly.display_with(self.basis.symbol()));
        }
        // p#_ρ keys are partitions, rendered as p#₍₂,₁₎ style labels
        let mut relabeled = Vec::new();
        for (rho, c) in self.poly.terms() {
            relabeled.push((rho.clone(), c.clone()));
        }
        relabeled.sort_by(|a, b| mono_degree(&b.0).cmp(&mono_degree(&a.0)).then_with(|| b.0.cmp(&a.0)));
        if relabeled.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (rho, c)) in relabeled.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let label = if rho.is_empty() {
                String::new()
            } else {
                let inner: Vec<String> = rho.iter().map(|k| k.to_string()).collect();
                format!("p#({})", inner.join(","))
            };
            if label.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&label);
            } else {
                out.push_str(&format!("{}·{label}", fmt_rational(&mag)));
            }
        }
        f.write_str(&out)
    }
}

fn htilde_values(lambda: &YoungDiagram, kmax: usize) -> Vec<Rational> {
    let kmax = kmax.max(2);
    let pt: Vec<Rational> = (0..=kmax as u32).map(|k| eval_ptilde(k, lambda)).collect();
    htilde_from_ptilde(&pt, kmax)
}

fn memo<K, F>(cell: &'static OnceLock<Mutex<HashMap<K, Poly>>>, key: K, f: F) -> Poly
where
    K: Eq + Hash + Clone,
    F: FnOnce() -> Poly,
{
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("memo lock").get(&key) {
        return v.clone();
    }
    let v = f();
    map.lock().expect("memo lock").insert(key, v.clone());
    v
}

/// `p̃_k = Σ_j C(k, 2j+1) 2^{-2j} p_{k-1-2j}` with `p_0 = 0`.
pub fn ptilde_in_p(k: u32) -> Poly {
    let mut out = Poly::zero();
    let mut j = 0;
    while 2 * j < k.saturating_sub(1) {
        let idx = k - 1 - 2 * j;
        let c = Rational::from_integer(binomial(k as u64, 2 * j as u64 + 1))
            / Rational::from_integer(num_bigint::BigInt::from(4).pow(j));
        out.add_term(vec![idx], c);
        j += 1;
    }
    out
}

/// Inverse of [`ptilde_in_p`]: `p_k` as a polynomial in `p̃_2, ..., p̃_{k+1}`.
pub fn p_in_ptilde(k: u32) -> Poly {
    static CELL: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    memo(&CELL, k, || {
        if k == 0 {
            return Poly::zero();
        }
        // p̃_{k+1} = (k+1) p_k + Σ_{j≥1} C(k+1, 2j+1) 4^{-j} p_{k-2j}
        let mut rest = Poly::var(k + 1);
        for (m, c) in ptilde_in_p(k + 1).terms() {
            if m[0] != k {
                rest -= &p_in_ptilde(m[0]).scale(c);
            }
        }
        rest.scale(&ratio(1, k as i64 + 1))
    })
}

fn ptilde_poly_to_p(poly: &Poly) -> Poly {
    poly.substitute(ptilde_in_p)
}

/// `h̃_k` in the `p̃` basis: `1 + Σ h̃_k t^k = exp(Σ_{k≥2} p̃_k t^k / k)`.
pub fn htilde_in_ptilde(k: u32) -> Poly {
    static CELL: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    memo(&CELL, k, || {
        let order = k as usize + 1;
        let coeffs: Vec<Poly> = (0..order)
            .map(|j| {
                if j < 2 {
                    Poly::zero()
                } else {
                    Poly::var(j as u32).scale(&ratio(1, j as i64))
                }
            })
            .collect();
        FormalSeries::new(coeffs, order).exp().expect("no constant term").coeff(k as usize).clone()
    })
}

/// `p̃_k` in the `h̃` basis: `p̃_k = k [t^k] log(1 + Σ h̃_j t^j)`.
pub fn ptilde_in_htilde(k: u32) -> Poly {
    static CELL: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    memo(&CELL, k, || {
        if k < 2 {
            return Poly::zero();
        }
        let order = k as usize + 1;
        let log = h_series(order).log().expect("constant term 1");
        log.coeff(k as usize).scale(&int(k as i64))
    })
}

fn h_series(order: usize) -> FormalSeries<Poly> {
    let coeffs: Vec<Poly> = (0..order)
        .map(|j| match j {
            0 => Poly::one(),
            1 => Poly::zero(),
            _ => Poly::var(j as u32),
        })
        .collect();
    FormalSeries::new(coeffs, order)
}

/// `f̃_k = -[t^k] H^{-(k-1)}(t) / (k-1)` with `H = 1 + Σ_{j≥2} h̃_j t^j`.
pub fn free_cumulant_in_htilde(k: u32) -> Poly {
    static CELL: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    memo(&CELL, k, || {
        if k < 2 {
            return Poly::zero();
        }
        let b = lagrange_b_from_a(&h_series(k as usize + 1)).expect("well-formed H");
        b.coeff(k as usize).clone()
    })
}

/// `f̃_2, ..., f̃_kmax` as polynomials in the `h̃` generators.
pub fn free_cumulant_series(kmax: u32) -> Result<Vec<Observable>> {
    if kmax < 2 {
        return Err(Error::InvalidArgument("kmax must be at least 2".into()));
    }
    Ok((2..=kmax)
        .map(|k| Observable::raw(Basis::HTilde, free_cumulant_in_htilde(k)))
        .collect())
}

/// `h̃_k = [u^k] F^{k+1}(u) / (k+1)` with `F = 1 + Σ_{j≥2} f̃_j u^j`.
pub fn htilde_in_free(k: u32) -> Poly {
    static CELL: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    memo(&CELL, k, || {
        if k < 2 {
            return Poly::zero();
        }
        let forms = lagrange_invert(&h_series(k as usize + 1)).expect("well-formed F");
        forms.a.coeff(k as usize).clone()
    })
}

/// `p#_k` in the `p` basis from the product-exponential generating series
///
/// `p#_k = [t^{k+1}] { -(1/k) Π_{j=1}^k (1 - (j - 1/2) t)
///          · exp(Σ_j (p_j t^j / j)(1 - (1 - k t)^{-j})) }`.
pub fn psharp_in_p(k: u32) -> Poly {
    static CELL: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    memo(&CELL, k, || {
        assert!(k >= 1);
        let order = k as usize + 2;
        let kt = FormalSeries::<Poly>::new(
            vec![Poly::one(), Poly::constant(-int(k as i64))],
            order,
        );
        let kt_inv = kt.inverse().expect("unit");
        let mut inner = FormalSeries::<Poly>::zero(order);
        for j in 1..=k {
            let factor = FormalSeries::one(order).sub(&kt_inv.pow(j));
            let pj = FormalSeries::new(vec![Poly::var(j).scale(&ratio(1, j as i64))], order).shift(j as usize);
            inner = inner.add(&pj.mul(&factor));
        }
        let mut s = inner.exp().expect("no constant term");
        for j in 1..=k {
            let lin = FormalSeries::new(
                vec![Poly::one(), Poly::constant(-ratio(2 * j as i64 - 1, 2))],
                order,
            );
            s = s.mul(&lin);
        }
        s.coeff(k as usize + 1).scale(&ratio(-1, k as i64))
    })
}

/// `p#_k` as a polynomial in `p̃_2, ..., p̃_{k+1}`.
pub fn psharp_in_ptilde(k: u32) -> Poly {
    static CELL: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    memo(&CELL, k, || psharp_in_p(k).substitute(p_in_ptilde))
}

/// Rewrite a `p`-basis polynomial in the `p#_ρ` basis by repeatedly
/// removing a top canonical-degree monomial `p_μ` with `p#_μ`.
pub fn p_to_psharp(poly: &Poly) -> Poly {
    let mut rest = poly.clone();
    let mut out = Poly::zero();
    while !rest.is_zero() {
        let (mono, c) = rest
            .terms()
            .iter()
            .max_by(|a, b| mono_degree(a.0).cmp(&mono_degree(b.0)).then_with(|| a.0.cmp(b.0)))
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero");
        let rho = YoungDiagram::from_parts(mono.clone());
        let expansion = psharp_rho_in_p(&rho);
        rest -= &expansion.scale(&c);
        out.add_term(mono, c);
    }
    out
}

/// `deg_J` of an element of the `p#` basis: `max |ρ| + Σ_{j∈J} m_j(ρ)`.
///
/// `J = None` means all of `ℕ`.
pub fn filtration_degree(e: &Observable, j: Option<&[u32]>) -> Option<u32> {
    let e = e.to_basis(Basis::PSharp);
    e.poly
        .terms()
        .keys()
        .map(|rho| rho_degree(rho, j))
        .max()
}

/// `|ρ|_J`.
pub fn rho_degree(rho: &[u32], j: Option<&[u32]>) -> u32 {
    let size: u32 = rho.iter().sum();
    let extra = match j {
        None => rho.len() as u32,
        Some(set) => rho.iter().filter(|k| set.contains(k)).count() as u32,
    };
    size + extra
}

/// Weight degree (`wt p̃_k = k`).
pub fn weight_degree(e: &Observable) -> Option<u32> {
    e.to_basis(Basis::PTilde).poly.degree()
}

/// Homogeneous component of maximal weight, in the `p̃` basis.
pub fn top_weight_component(e: &Observable) -> Observable {
    let t = e.to_basis(Basis::PTilde);
    match t.poly.degree() {
        None => t,
        Some(d) => Observable::raw(Basis::PTilde, t.poly.homogeneous_part(d, |k| k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn transition_formula_examples() {
        assert_eq!(ptilde_in_p(2), Poly::var(1).scale(&int(2)));
        assert_eq!(ptilde_in_p(3), Poly::var(2).scale(&int(3)));
        let p4 = Observable::raw(Basis::P, ptilde_in_p(4));
        assert_eq!(p4.to_string(), "4·p₃ + p₁");
    }

    #[test]
    fn free_cumulant_examples() {
        let f = free_cumulant_series(4).unwrap();
        assert_eq!(f[0].poly(), &Poly::var(2));
        assert_eq!(f[1].poly(), &Poly::var(3));
        let expected = &Poly::var(4) - &Poly::var(2).pow(2).scale(&int(2));
        assert_eq!(f[2].poly(), &expected);
    }

    #[test]
    fn psharp_small_expansions() {
        assert_eq!(psharp_in_p(1), Poly::var(1));
        let p2 = psharp_in_p(2);
        assert_eq!(p2.coeff(&[2]), int(1));
        assert_eq!(p2.degree(), Some(2));
        let three = Observable::raw(Basis::P, psharp_in_p(3));
        assert_eq!(three.eval(&d("2,1")), int(-3));
    }

    #[test]
    fn canonical_text_round_trip() {
        let e = Observable::raw(Basis::P, ptilde_in_p(5));
        let text = e.to_canonical_text();
        assert_eq!(Observable::from_canonical_text(&text).unwrap(), e);
        assert!(Observable::from_canonical_text("ptilde | [1]:1").is_err());
    }

    #[test]
    fn filtration_examples() {
        let p2 = Observable::psharp(&d("2"));
        assert_eq!(filtration_degree(&p2, None), Some(3));
        assert_eq!(filtration_degree(&p2, Some(&[1])), Some(2));
        let pt4 = Observable::generator(Basis::PTilde, 4).unwrap();
        assert_eq!(filtration_degree(&pt4, None), Some(4));
        assert_eq!(weight_degree(&pt4), Some(4));
    }
}
