//! Symmetric polynomials: elementary, complete homogeneous and Schur
//! polynomials, the Vandermonde-type products that weight the coefficient
//! formulas, and symmetry predicates.
//!
//! The constructors take an alphabet of arbitrary polynomials (usually plain
//! variables or linear forms such as Chern roots `x1 + x2`), so the same code
//! serves both plain variables and derived bundles.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::poly::{MultiPoly, Rational, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("negative index {0} for elementary symmetric polynomial")]
    NegativeIndex(i64),
    #[error("partition of length {length} needs at least {length} variables, got {arity}")]
    PartitionTooLong { length: usize, arity: usize },
    #[error("parts {0:?} are not weakly decreasing")]
    NotAPartition(Vec<u32>),
}

/// A weakly decreasing sequence of nonnegative parts. Trailing zeros are
/// dropped on construction, so `[2,1]` and `[2,1,0]` compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, SymError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymError::NotAPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    /// Complement inside the `rows × cols` box: part `i` becomes
    /// `cols - part(rows - 1 - i)`. `None` if the partition does not fit.
    pub fn complement(&self, rows: usize, cols: u32) -> Option<Partition> {
        if !self.fits_in_box(rows, cols) {
            return None;
        }
        let parts = (0..rows).map(|i| cols - self.part(rows - 1 - i)).collect();
        Partition::new(parts).ok()
    }

    /// Every partition fitting in the `rows × cols` box, in lexicographic order of parts.
    pub fn all_in_box(rows: usize, cols: u32) -> Vec<Partition> {
        fn go(rows: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if prefix.len() == rows {
                out.push(Partition::new(prefix.clone()).expect("decreasing by construction"));
                return;
            }
            for p in 0..=max {
                prefix.push(p);
                go(rows, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("[0]");
        }
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

pub fn forms_of(vars: &[VarId]) -> Vec<MultiPoly> {
    vars.iter().copied().map(MultiPoly::var).collect()
}

/// `e_i` of the alphabet; zero when `i` exceeds its length.
pub fn elementary(i: i64, alphabet: &[MultiPoly]) -> Result<MultiPoly, SymError> {
    if i < 0 {
        return Err(SymError::NegativeIndex(i));
    }
    let i = i as usize;
    if i > alphabet.len() {
        return Ok(MultiPoly::zero());
    }
    let mut e = vec![MultiPoly::zero(); i + 1];
    e[0] = MultiPoly::one();
    for (seen, f) in alphabet.iter().enumerate() {
        for j in (1..=i.min(seen + 1)).rev() {
            let t = f * &e[j - 1];
            e[j] += &t;
        }
    }
    Ok(e.pop().unwrap())
}

/// `h_0, ..., h_top` of the alphabet.
pub fn complete_homogeneous_upto(top: usize, alphabet: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut h = vec![MultiPoly::zero(); top + 1];
    h[0] = MultiPoly::one();
    for f in alphabet {
        for j in 1..=top {
            let t = f * &h[j - 1];
            h[j] += &t;
        }
    }
    h
}

/// `h_i` of the alphabet; zero for negative `i`.
pub fn complete_homogeneous(i: i64, alphabet: &[MultiPoly]) -> MultiPoly {
    if i < 0 {
        return MultiPoly::zero();
    }
    complete_homogeneous_upto(i as usize, alphabet)
        .pop()
        .unwrap()
}

/// Schur polynomial via the Jacobi–Trudi determinant `det(h_{λ_i - i + j})`.
pub fn schur(lambda: &Partition, alphabet: &[MultiPoly]) -> Result<MultiPoly, SymError> {
    let len = lambda.len();
    if len > alphabet.len() {
        return Err(SymError::PartitionTooLong {
            length: len,
            arity: alphabet.len(),
        });
    }
    if len == 0 {
        return Ok(MultiPoly::one());
    }
    let top = lambda.part(0) as usize + len;
    let h = complete_homogeneous_upto(top, alphabet);
    let entry = |i: usize, j: usize| -> MultiPoly {
        let idx = lambda.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            MultiPoly::zero()
        } else {
            h[idx as usize].clone()
        }
    };
    let matrix: Vec<Vec<MultiPoly>> = (0..len)
        .map(|i| (0..len).map(|j| entry(i, j)).collect())
        .collect();
    Ok(cofactor_det(&matrix))
}

// Laplace expansion along successive rows, memoised on the set of used columns.
fn cofactor_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    fn minor(m: &[Vec<MultiPoly>], used: u32, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
        let n = m.len();
        let row = used.count_ones() as usize;
        if row == n {
            return MultiPoly::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero();
        let mut free_before = 0;
        for col in 0..n {
            if used & (1 << col) != 0 {
                continue;
            }
            if !m[row][col].is_zero() {
                let rest = minor(m, used | (1 << col), memo);
                let t = &m[row][col] * &rest;
                if free_before % 2 == 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    assert!(m.len() < 32, "determinant too large for cofactor expansion");
    minor(m, 0, &mut HashMap::new())
}

/// Determinant over the rationals by fraction-exact Gaussian elimination.
pub fn rational_det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] / &pivot;
            let (upper, lower) = a.split_at_mut(r);
            for (dst, src) in lower[0][c..].iter_mut().zip(&upper[c][c..]) {
                *dst -= &factor * src;
            }
        }
    }
    det
}

/// Schur polynomial evaluated at a point as the bialternant ratio
/// `det(a_j^{λ_i + m - i}) / det(a_j^{m - i})`. Independent of [`schur`];
/// `None` when the point has repeated coordinates or λ is too long.
pub fn schur_bialternant_at(lambda: &Partition, point: &[Rational]) -> Option<Rational> {
    let m = point.len();
    if lambda.len() > m {
        return None;
    }
    let alternant = |shift: &dyn Fn(usize) -> u32| -> Rational {
        let rows = (0..m)
            .map(|i| point.iter().map(|a| Pow::pow(a, shift(i))).collect())
            .collect();
        rational_det(rows)
    };
    let denom = alternant(&|i| (m - 1 - i) as u32);
    if denom.is_zero() {
        return None;
    }
    let numer = alternant(&|i| lambda.part(i) + (m - 1 - i) as u32);
    Some(numer / denom)
}

/// `∏_i ∏_{j≠i} (v_i - v_j)`.
pub fn vandermonde_double(alphabet: &[MultiPoly]) -> MultiPoly {
    let mut acc = MultiPoly::one();
    let m = alphabet.len();
    for i in 0..m {
        for j in i + 1..m {
            let d = &alphabet[i] - &alphabet[j];
            acc = &acc * &(&d * &d);
        }
    }
    // each unordered pair contributes (v_i - v_j)(v_j - v_i) = -(v_i - v_j)^2
    if (m * m.saturating_sub(1) / 2) % 2 == 1 {
        acc = -acc;
    }
    acc
}

/// The linear factors `y_i - x_j` of [`cross_difference`], y-major.
pub fn cross_difference_factors(ys: &[MultiPoly], xs: &[MultiPoly]) -> Vec<MultiPoly> {
    ys.iter()
        .flat_map(|y| xs.iter().map(move |x| y - x))
        .collect()
}

/// `∏_i ∏_j (y_i - x_j)`.
pub fn cross_difference(ys: &[MultiPoly], xs: &[MultiPoly]) -> MultiPoly {
    cross_difference_factors(ys, xs).into_iter().product()
}

/// Invariance under every adjacent transposition of `vars`.
pub fn is_symmetric(p: &MultiPoly, vars: &[VarId]) -> bool {
    vars.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        let swapped = p.map_vars(|v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        });
        &swapped == p
    })
}

pub fn is_doubly_symmetric(p: &MultiPoly, xs: &[VarId], ys: &[VarId]) -> bool {
    is_symmetric(p, xs) && is_symmetric(p, ys)
}
