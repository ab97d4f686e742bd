//! Young diagrams and their three coordinate systems: row lengths, modified
//! Frobenius coordinates and the interlacing extrema of the profile.
//!
//! Half-integers are stored doubled so every coordinate stays an exact
//! integer.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default cap for [`enumerate_partitions`].
pub const DEFAULT_ENUMERATION_CAP: usize = 40;

/// A partition, drawn as a left-justified array of boxes.
///
/// Conjugate, Frobenius coordinates and profile extrema are computed lazily
/// and cached; equality, ordering and hashing only look at the rows.
pub struct YoungDiagram {
    rows: Vec<u32>,
    n: usize,
    conjugate: OnceLock<Vec<u32>>,
    frobenius: OnceLock<FrobeniusCoords>,
    extrema: OnceLock<InterlacingExtrema>,
}

/// Partitions indexing conjugacy classes use the same type.
pub type Partition = YoungDiagram;

/// Modified Frobenius coordinates `a_i = λ_i - i + 1/2`, `b_i = λ'_i - i + 1/2`,
/// stored doubled (`2a_i`, `2b_i` are odd positive integers).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrobeniusCoords {
    pub a2: Vec<i64>,
    pub b2: Vec<i64>,
}

/// Local minima `x_1 < y_1 < x_2 < ... < y_m < x_{m+1}` and maxima of the
/// profile; minima are contents of addable cells, maxima contents of
/// removable cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InterlacingExtrema {
    minima: Vec<i64>,
    maxima: Vec<i64>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.iter().any(|&r| r == 0) {
            return Err(Error::InvalidDiagram(format!("zero row in {rows:?}")));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!(
                "rows not weakly decreasing: {rows:?}"
            )));
        }
        Ok(Self::from_sorted(rows))
    }

    /// Rows may contain trailing zeros and be in any order.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(rows: Vec<u32>) -> Self {
        let n = rows.iter().map(|&r| r as usize).sum();
        YoungDiagram {
            rows,
            n,
            conjugate: OnceLock::new(),
            frobenius: OnceLock::new(),
            extrema: OnceLock::new(),
        }
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new())
    }

    /// The one-row diagram `(k)`; `(0)` is the empty diagram.
    pub fn row(k: u32) -> Self {
        Self::from_parts(vec![k])
    }

    /// `(1^k)`.
    pub fn column(k: u32) -> Self {
        Self::from_sorted(vec![1; k as usize])
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// `λ_i` with 1-based index; zero beyond the length.
    pub fn row_len(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Multiplicity `m_i` of the part `i`.
    pub fn multiplicity(&self, part: u32) -> usize {
        self.rows.iter().filter(|&&r| r == part).count()
    }

    /// Length of the main diagonal.
    pub fn diagonal(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .take_while(|(i, &r)| r as usize > *i)
            .count()
    }

    pub fn conjugate_rows(&self) -> &[u32] {
        self.conjugate.get_or_init(|| {
            let width = self.rows.first().copied().unwrap_or(0);
            (1..=width)
                .map(|j| self.rows.iter().take_while(|&&r| r >= j).count() as u32)
                .collect()
        })
    }

    pub fn conjugate(&self) -> YoungDiagram {
        Self::from_sorted(self.conjugate_rows().to_vec())
    }

    pub fn frobenius(&self) -> &FrobeniusCoords {
        self.frobenius.get_or_init(|| {
            let d = self.diagonal();
            let cols = self.conjugate_rows();
            let a2 = (0..d).map(|i| 2 * self.rows[i] as i64 - 2 * i as i64 - 1).collect();
            let b2 = (0..d).map(|i| 2 * cols[i] as i64 - 2 * i as i64 - 1).collect();
            FrobeniusCoords { a2, b2 }
        })
    }

    pub fn extrema(&self) -> &InterlacingExtrema {
        self.extrema.get_or_init(|| {
            let mut minima = Vec::with_capacity(self.rows.len() + 1);
            let mut maxima = Vec::with_capacity(self.rows.len());
            // Walk rows from the bottom so contents come out increasing.
            let len = self.rows.len();
            minima.push(-(len as i64));
            for i in (1..=len).rev() {
                let r = self.row_len(i) as i64;
                let above = self.row_len(i - 1);
                if self.row_len(i + 1) < self.row_len(i) {
                    maxima.push(r - i as i64);
                }
                if i == 1 || above as i64 > r {
                    minima.push(r + 1 - i as i64);
                }
            }
            InterlacingExtrema { minima, maxima }
        })
    }

    /// Cells `(row, col)`, 1-based, where a box can be added.
    pub fn addable_cells(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for i in 1..=self.rows.len() + 1 {
            let r = self.row_len(i);
            if i == 1 || self.row_len(i - 1) > r {
                out.push((i, r + 1));
            }
        }
        out
    }

    /// Diagram with one box added in row `i` (1-based).
    pub fn add_box(&self, row: usize) -> Result<YoungDiagram> {
        let mut rows = self.rows.clone();
        if row == rows.len() + 1 {
            rows.push(1);
        } else if row >= 1 && row <= rows.len() && (row == 1 || rows[row - 2] > rows[row - 1]) {
            rows[row - 1] += 1;
        } else {
            return Err(Error::InvalidArgument(format!(
                "row {row} of {self} has no addable cell"
            )));
        }
        Ok(Self::from_sorted(rows))
    }

    /// Profile `λ(x)` in the rotated coordinates `x = s - r`, `y = r + s`.
    pub fn profile_value(&self, x: f64) -> f64 {
        self.extrema().profile_value(x)
    }

    /// Hook lengths in row-major order.
    pub fn hooks(&self) -> impl Iterator<Item = u32> + '_ {
        let cols = self.conjugate_rows();
        self.rows.iter().enumerate().flat_map(move |(i, &r)| {
            (0..r).map(move |j| (r - j - 1) + (cols[j as usize] - i as u32 - 1) + 1)
        })
    }

    /// Whether `λ_1 <= A√n` and `λ'_1 <= A√n`.
    pub fn in_box(&self, a: f64) -> bool {
        let bound = a * (self.n as f64).sqrt();
        let w = self.row_len(1) as f64;
        let h = self.rows.len() as f64;
        w <= bound && h <= bound
    }

    /// Comma-separated row lengths, `-` for the empty diagram.
    pub fn to_text(&self) -> String {
        if self.rows.is_empty() {
            "-".to_string()
        } else {
            self.rows
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// `(3,1)` style.
    pub fn to_tuple_string(&self) -> String {
        let inner = self
            .rows
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("({inner})")
    }

    /// Union of parts (`σ ∪ τ`).
    pub fn union(&self, other: &YoungDiagram) -> YoungDiagram {
        let mut parts = self.rows.clone();
        parts.extend_from_slice(&other.rows);
        Self::from_parts(parts)
    }

    /// The partition with all parts equal to 1 removed.
    pub fn without_ones(&self) -> YoungDiagram {
        Self::from_sorted(self.rows.iter().copied().filter(|&r| r > 1).collect())
    }

    /// `ρ ∪ 1^k`.
    pub fn pad_ones(&self, k: usize) -> YoungDiagram {
        let mut rows = self.rows.clone();
        rows.extend(std::iter::repeat_n(1, k));
        Self::from_sorted(rows)
    }

    /// `z_ρ = Π i^{m_i} m_i!`.
    pub fn z(&self) -> num_bigint::BigInt {
        use num_bigint::BigInt;
        let mut acc = BigInt::from(1);
        let mut i = 0;
        while i < self.rows.len() {
            let part = self.rows[i];
            let m = self.multiplicity(part);
            for k in 1..=m {
                acc *= BigInt::from(part) * BigInt::from(k);
            }
            i += m;
        }
        acc
    }

    /// `(-1)^{|ρ| - ℓ(ρ)}`.
    pub fn sign(&self) -> i64 {
        if (self.n - self.rows.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl Clone for YoungDiagram {
    fn clone(&self) -> Self {
        Self::from_sorted(self.rows.clone())
    }
}

impl PartialEq for YoungDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for YoungDiagram {}

impl Hash for YoungDiagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
    }
}

impl PartialOrd for YoungDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Larger size first, then reverse-lexicographic within a size.
impl Ord for YoungDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .n
            .cmp(&self.n)
            .then_with(|| other.rows.cmp(&self.rows))
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YoungDiagram({})", self.to_text())
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        if s == "-" || s.is_empty() {
            return Ok(Self::empty());
        }
        let rows = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad row length {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

impl FrobeniusCoords {
    pub fn len(&self) -> usize {
        self.a2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a2.is_empty()
    }

    pub fn swap(&self) -> FrobeniusCoords {
        FrobeniusCoords {
            a2: self.b2.clone(),
            b2: self.a2.clone(),
        }
    }
}

impl InterlacingExtrema {
    /// Validates interlacing and the zero-sum condition.
    pub fn new(minima: Vec<i64>, maxima: Vec<i64>) -> Result<Self> {
        if minima.len() != maxima.len() + 1 {
            return Err(Error::InvalidExtrema(format!(
                "{} minima for {} maxima",
                minima.len(),
                maxima.len()
            )));
        }
        for (j, &y) in maxima.iter().enumerate() {
            if !(minima[j] < y && y < minima[j + 1]) {
                return Err(Error::InvalidExtrema(format!(
                    "maximum {y} does not separate {} and {}",
                    minima[j],
                    minima[j + 1]
                )));
            }
        }
        let sum: i64 = minima.iter().sum::<i64>() - maxima.iter().sum::<i64>();
        if sum != 0 {
            return Err(Error::InvalidExtrema(format!("center is {sum}, not 0")));
        }
        Ok(InterlacingExtrema { minima, maxima })
    }

    pub fn minima(&self) -> &[i64] {
        &self.minima
    }

    pub fn maxima(&self) -> &[i64] {
        &self.maxima
    }

    /// Number of maxima.
    pub fn m(&self) -> usize {
        self.maxima.len()
    }

    /// Negated and reversed sequences (the extrema of the conjugate).
    pub fn reflect(&self) -> InterlacingExtrema {
        InterlacingExtrema {
            minima: self.minima.iter().rev().map(|x| -x).collect(),
            maxima: self.maxima.iter().rev().map(|y| -y).collect(),
        }
    }

    /// Breakpoints `(x, λ(x))` of the profile, from `x_1` to `x_{m+1}`.
    pub fn corners(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(2 * self.maxima.len() + 1);
        let mut h = -self.minima[0];
        out.push((self.minima[0], h));
        for (j, &y) in self.maxima.iter().enumerate() {
            h += y - self.minima[j];
            out.push((y, h));
            h -= self.minima[j + 1] - y;
            out.push((self.minima[j + 1], h));
        }
        out
    }

    pub fn profile_value(&self, x: f64) -> f64 {
        let first = self.minima[0] as f64;
        let last = *self.minima.last().unwrap() as f64;
        if x <= first || x >= last {
            return x.abs();
        }
        let corners = self.corners();
        let idx = corners.partition_point(|&(cx, _)| (cx as f64) <= x);
        let (x0, h0) = corners[idx - 1];
        let (x1, h1) = corners[idx];
        let t = (x - x0 as f64) / (x1 - x0) as f64;
        h0 as f64 + t * (h1 - h0) as f64
    }

    /// Rebuild the diagram; the profile is walked from `x_1` rightwards.
    pub fn to_diagram(&self) -> YoungDiagram {
        let mut bottom_up = Vec::new();
        let mut width = 0i64;
        for (j, &y) in self.maxima.iter().enumerate() {
            width += y - self.minima[j];
            let height = self.minima[j + 1] - y;
            bottom_up.extend(std::iter::repeat_n(width as u32, height as usize));
        }
        bottom_up.reverse();
        YoungDiagram::from_sorted(bottom_up)
    }
}

pub fn conjugate(lambda: &YoungDiagram) -> YoungDiagram {
    lambda.conjugate()
}

pub fn frobenius_coords(lambda: &YoungDiagram) -> FrobeniusCoords {
    lambda.frobenius().clone()
}

pub fn profile_extrema(lambda: &YoungDiagram) -> InterlacingExtrema {
    lambda.extrema().clone()
}

pub fn from_extrema(e: &InterlacingExtrema) -> Result<YoungDiagram> {
    // Re-validate: callers may have built the value by hand via serde.
    let checked = InterlacingExtrema::new(e.minima.clone(), e.maxima.clone())?;
    Ok(checked.to_diagram())
}

pub fn profile_value(lambda: &YoungDiagram, x: f64) -> f64 {
    lambda.profile_value(x)
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize, cap: usize) -> Result<Vec<YoungDiagram>> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "partition size",
            value: n,
            cap,
        });
    }
    Ok(partitions_of(n))
}

/// Unchecked enumeration, reverse-lexicographic.
pub fn partitions_of(n: usize) -> Vec<YoungDiagram> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if remaining == 0 {
            out.push(YoungDiagram::from_sorted(prefix.clone()));
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// All partitions with at most `max_size` boxes, smallest sizes first.
pub fn partitions_up_to(max_size: usize) -> Vec<YoungDiagram> {
    (0..=max_size).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(conjugate(&d("3,1")), d("2,1,1"));
        assert_eq!(conjugate(&d("2,1")), d("2,1"));
        assert_eq!(conjugate(&d("-")), d("-"));
    }

    #[test]
    fn conjugate_by_cell_transposition() {
        for lambda in partitions_up_to(9) {
            let mut cells: Vec<(u32, u32)> = lambda
                .rows()
                .iter()
                .enumerate()
                .flat_map(|(i, &r)| (0..r).map(move |j| (j, i as u32)))
                .collect();
            cells.sort();
            let conj = conjugate(&lambda);
            let mut direct: Vec<(u32, u32)> = conj
                .rows()
                .iter()
                .enumerate()
                .flat_map(|(i, &r)| (0..r).map(move |j| (i as u32, j)))
                .collect();
            direct.sort();
            assert_eq!(cells, direct, "{lambda}");
            assert_eq!(conjugate(&conj), lambda);
        }
    }

    #[test]
    fn frobenius_examples() {
        let f = frobenius_coords(&d("3,1"));
        assert_eq!(f.a2, vec![5]);
        assert_eq!(f.b2, vec![3]);
        let f = frobenius_coords(&d("1"));
        assert_eq!((f.a2, f.b2), (vec![1], vec![1]));
        assert!(frobenius_coords(&d("-")).is_empty());
    }

    #[test]
    fn frobenius_invariants() {
        for lambda in partitions_up_to(10) {
            let f = lambda.frobenius();
            let total: i64 = f.a2.iter().chain(f.b2.iter()).sum();
            assert_eq!(total, 2 * lambda.size() as i64);
            assert!(f.a2.windows(2).all(|w| w[0] > w[1]));
            assert!(f.b2.windows(2).all(|w| w[0] > w[1]));
            assert!(f.a2.iter().chain(f.b2.iter()).all(|v| v % 2 == 1 && *v > 0));
            assert_eq!(conjugate(&lambda).frobenius(), &f.swap());
        }
    }

    #[test]
    fn extrema_examples() {
        let e = profile_extrema(&d("2,1"));
        assert_eq!(e.minima(), &[-2, 0, 2]);
        assert_eq!(e.maxima(), &[-1, 1]);
        let e = profile_extrema(&d("2"));
        assert_eq!(e.minima(), &[-1, 2]);
        assert_eq!(e.maxima(), &[1]);
        let e = profile_extrema(&d("-"));
        assert_eq!(e.minima(), &[0]);
        assert!(e.maxima().is_empty());
    }

    #[test]
    fn from_extrema_examples() {
        let e = InterlacingExtrema::new(vec![-2, 0, 2], vec![-1, 1]).unwrap();
        assert_eq!(from_extrema(&e).unwrap(), d("2,1"));
        let e = InterlacingExtrema::new(vec![0], vec![]).unwrap();
        assert_eq!(from_extrema(&e).unwrap(), d("-"));
        let e = InterlacingExtrema::new(vec![-1, 1], vec![0]).unwrap();
        assert_eq!(from_extrema(&e).unwrap(), d("1"));
    }

    #[test]
    fn from_extrema_rejects_bad_input() {
        assert!(InterlacingExtrema::new(vec![-1, 1], vec![2]).is_err());
        assert!(InterlacingExtrema::new(vec![-1, 2], vec![0]).is_err());
        assert!(InterlacingExtrema::new(vec![-1, 2], vec![]).is_err());
    }

    #[test]
    fn extrema_round_trip_and_reflection() {
        for lambda in partitions_up_to(12) {
            let e = profile_extrema(&lambda);
            let sum: i64 = e.minima().iter().sum::<i64>() - e.maxima().iter().sum::<i64>();
            assert_eq!(sum, 0);
            assert!(InterlacingExtrema::new(e.minima().to_vec(), e.maxima().to_vec()).is_ok());
            assert_eq!(from_extrema(&e).unwrap(), lambda);
            assert_eq!(profile_extrema(&conjugate(&lambda)), e.reflect());
        }
    }

    #[test]
    fn frobenius_lemma_partitions_half_integers() {
        // L(λ) and -L(λ') split Z + 1/2; check on a window of 2(|λ|+2) points.
        for lambda in partitions_up_to(12) {
            let conj = conjugate(&lambda);
            let w = lambda.size() as i64 + 2;
            let l_set = |mu: &YoungDiagram, count: usize| -> Vec<i64> {
                (1..=count).map(|i| 2 * mu.row_len(i) as i64 - 2 * i as i64 + 1).collect()
            };
            let depth = (2 * w + 2) as usize;
            let mine = l_set(&lambda, depth);
            let theirs: Vec<i64> = l_set(&conj, depth).into_iter().map(|v| -v).collect();
            for h in (-2 * w + 1..2 * w).step_by(2) {
                let a = mine.contains(&h);
                let b = theirs.contains(&h);
                assert!(a ^ b, "{lambda}: half-integer {h}/2 in both or neither");
            }
        }
    }

    #[test]
    fn profile_examples() {
        assert_eq!(profile_value(&d("-"), 0.7), 0.7);
        // One box: the corners (-1, 1), (0, 2), (1, 1); area above |x| is 2.
        assert_eq!(profile_value(&d("1"), 0.0), 2.0);
        assert_eq!(profile_value(&d("2,1"), 2.0), 2.0);
        assert_eq!(profile_value(&d("2,1"), 0.0), 2.0);
        assert_eq!(profile_value(&d("2,1"), -5.0), 5.0);
    }

    #[test]
    fn profile_area_and_lipschitz() {
        for lambda in partitions_up_to(10) {
            let corners = lambda.extrema().corners();
            // insert x = 0 so |x| is linear on every piece
            let mut pts: Vec<(i64, i64)> = corners.clone();
            if !pts.iter().any(|&(x, _)| x == 0) {
                let h = lambda.profile_value(0.0) as i64;
                pts.push((0, h));
                pts.sort();
            }
            let mut twice_area = 0i64;
            for w in pts.windows(2) {
                let (x0, h0) = w[0];
                let (x1, h1) = w[1];
                twice_area += (x1 - x0) * ((h0 - x0.abs()) + (h1 - x1.abs()));
            }
            assert_eq!(twice_area, 4 * lambda.size() as i64, "{lambda}");

            let grid: Vec<f64> = (0..60).map(|i| -7.5 + 0.25 * i as f64).collect();
            for a in &grid {
                for b in &grid {
                    let diff = (lambda.profile_value(*a) - lambda.profile_value(*b)).abs();
                    assert!(diff <= (a - b).abs() + 1e-12);
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0, 40).unwrap(), vec![d("-")]);
        assert_eq!(enumerate_partitions(4, 40).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(10, 40).unwrap().len(), 42);
        let four: Vec<String> = partitions_of(4).iter().map(|p| p.to_text()).collect();
        assert_eq!(four, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert!(matches!(
            enumerate_partitions(41, 40),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn text_format() {
        assert_eq!(d("3,1").to_text(), "3,1");
        assert_eq!(YoungDiagram::empty().to_text(), "-");
        assert!("1,2".parse::<YoungDiagram>().is_err());
        assert!("x".parse::<YoungDiagram>().is_err());
        assert_eq!(d("(2,2)"), YoungDiagram::new(vec![2, 2]).unwrap());
    }

    #[test]
    fn hooks_and_z() {
        let hooks: Vec<u32> = d("2,1").hooks().collect();
        assert_eq!(hooks, vec![3, 1, 1]);
        assert_eq!(d("2,1,1").z(), num_bigint::BigInt::from(2 * 2));
        assert_eq!(d("2,2").z(), num_bigint::BigInt::from(8));
    }
}
