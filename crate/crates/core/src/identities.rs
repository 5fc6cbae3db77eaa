//! Executable forms of the Lagrange-interpolation identities and the
//! subset-sum / coefficient-extraction identities for symmetric and doubly
//! symmetric polynomials.
//!
//! Every sum over size-`k` subsets `I ⊂ [n]` has the shape
//!
//! ```text
//!   Σ_I  P(λ_I, λ_{I^c}) / ∏_{i∈I} ∏_{j∈I^c} (λ_i - λ_j)
//! ```
//!
//! and is evaluated in exact rational arithmetic. The matching "right-hand
//! sides" never look at λ: they read off one coefficient of `P` times a
//! Vandermonde-type weight.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::poly::{Alphabet, Degree, Monomial, MultiPoly, PolyError, Rational, VarId};
use crate::symmetric::{
    complete_homogeneous, cross_difference_factors, forms_of, is_doubly_symmetric, is_symmetric,
    vandermonde_double,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("weights must be pairwise distinct; {0} is repeated")]
    DuplicateWeight(Rational),
    #[error("at least {needed} weights are required, got {got}")]
    TooFewWeights { needed: usize, got: usize },
    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("need 0 < k < n, got k = {k}, n = {n}")]
    InvalidShape { k: usize, n: usize },
    #[error("polynomial has degree {degree}, above the bound {bound}")]
    DegreeTooHigh { degree: u64, bound: u64 },
    #[error("partial degree {degree} in {var} exceeds {bound}")]
    PartialDegreeTooHigh { var: VarId, degree: u32, bound: u32 },
    #[error("polynomial is not symmetric in x1..x{k}")]
    NotSymmetric { k: usize },
    #[error("polynomial is not doubly symmetric in x1..x{k} and y1..y{rest}")]
    NotDoublySymmetric { k: usize, rest: usize },
    #[error("polynomial must involve at most one variable")]
    NotUnivariate,
    #[error("variable {0} is not part of the alphabet here")]
    UnexpectedVariable(VarId),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Pairwise-distinct rational weights `λ_1, ..., λ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    values: Vec<Rational>,
}

impl WeightVector {
    pub fn new(values: Vec<Rational>) -> Result<Self, IdentityError> {
        if values.is_empty() {
            return Err(IdentityError::TooFewWeights { needed: 1, got: 0 });
        }
        let mut sorted = values.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(IdentityError::DuplicateWeight(w[0].clone()));
        }
        Ok(WeightVector { values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self, IdentityError> {
        WeightVector::new(
            values
                .iter()
                .map(|&v| Rational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    /// `n` distinct integers drawn without replacement from `[-5n, 5n]`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!(n > 0, "weight vector needs at least one entry");
        let half = 5 * n as i64;
        let picks = rand::seq::index::sample(rng, (2 * half + 1) as usize, n);
        let values = picks
            .into_iter()
            .map(|i| Rational::from_integer(BigInt::from(i as i64 - half)))
            .collect();
        WeightVector { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// 1-based access.
    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i - 1]
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A subset `I ⊂ [n]` with members in increasing order (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    members: Vec<usize>,
    ambient: usize,
}

impl IndexSubset {
    pub fn new(members: Vec<usize>, ambient: usize) -> Result<Self, IdentityError> {
        if let Some(&bad) = members.iter().find(|&&m| m == 0 || m > ambient) {
            return Err(IdentityError::IndexOutOfRange {
                index: bad,
                n: ambient,
            });
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            // treat unsorted or repeated input as a malformed index list
            let bad = members.windows(2).find(|w| w[0] >= w[1]).unwrap()[1];
            return Err(IdentityError::IndexOutOfRange {
                index: bad,
                n: ambient,
            });
        }
        Ok(IndexSubset { members, ambient })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..=self.ambient)
            .filter(|i| self.members.binary_search(i).is_err())
            .collect()
    }

    /// `x_r ↦ λ_{I_r}` and `y_r ↦ λ_{I^c_r}`, in increasing index order.
    pub fn restriction_point(&self, lambdas: &WeightVector) -> BTreeMap<VarId, Rational> {
        let xs = self
            .members
            .iter()
            .enumerate()
            .map(|(r, &i)| (VarId::x(r as u32 + 1), lambdas.get(i).clone()));
        let ys = self
            .complement()
            .into_iter()
            .enumerate()
            .map(|(r, j)| (VarId::y(r as u32 + 1), lambdas.get(j).clone()));
        xs.chain(ys).collect()
    }

    /// `∏_{i∈I} ∏_{j∈I^c} (λ_i - λ_j)`.
    pub fn cross_product(&self, lambdas: &WeightVector) -> Rational {
        let comp = self.complement();
        let mut acc = Rational::one();
        for &i in &self.members {
            for &j in &comp {
                acc *= lambdas.get(i) - lambdas.get(j);
            }
        }
        acc
    }
}

/// All size-`k` subsets of `[n]` in colexicographic order.
pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets {
        n,
        current: if k <= n {
            Some((1..=k).collect())
        } else {
            None
        },
    }
}

pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = IndexSubset;

    fn next(&mut self) -> Option<IndexSubset> {
        let cur = self.current.take()?;
        let out = IndexSubset {
            members: cur.clone(),
            ambient: self.n,
        };
        let k = cur.len();
        let mut next = cur;
        // bump the lowest member that has room, reset everything below it
        let pos = (0..k).find(|&i| {
            let limit = if i + 1 < k { next[i + 1] } else { self.n + 1 };
            next[i] + 1 < limit
        });
        if let Some(i) = pos {
            next[i] += 1;
            for (r, slot) in next.iter_mut().enumerate().take(i) {
                *slot = r + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

pub fn factorial(m: usize) -> Rational {
    Rational::from_integer((1..=m).map(BigInt::from).product())
}

fn check_shape(k: usize, n: usize) -> Result<(), IdentityError> {
    if k == 0 || k >= n {
        return Err(IdentityError::InvalidShape { k, n });
    }
    Ok(())
}

fn check_degree(p: &MultiPoly, bound: u64) -> Result<(), IdentityError> {
    match p.total_degree() {
        Degree::Finite(d) if d > bound => Err(IdentityError::DegreeTooHigh { degree: d, bound }),
        _ => Ok(()),
    }
}

/// Rejects any variable outside `x1..x{k}`, `y1..y{rest}`.
pub(crate) fn check_alphabet(p: &MultiPoly, k: usize, rest: usize) -> Result<(), IdentityError> {
    for v in p.variables() {
        let ok = match v.alphabet {
            Alphabet::X => v.index >= 1 && (v.index as usize) <= k,
            Alphabet::Y => v.index >= 1 && (v.index as usize) <= rest,
            Alphabet::Z => false,
        };
        if !ok {
            return Err(IdentityError::UnexpectedVariable(v));
        }
    }
    Ok(())
}

fn x_vars(k: usize) -> Vec<VarId> {
    VarId::range(Alphabet::X, k as u32)
}

fn y_vars(k: usize) -> Vec<VarId> {
    VarId::range(Alphabet::Y, k as u32)
}

/// `L_i(z) = ∏_{j≠i} (z - λ_j)/(λ_i - λ_j)`, with `i` 1-based.
pub fn lagrange_basis(i: usize, lambdas: &WeightVector) -> Result<MultiPoly, IdentityError> {
    let n = lambdas.len();
    if i == 0 || i > n {
        return Err(IdentityError::IndexOutOfRange { index: i, n });
    }
    let z = MultiPoly::var(VarId::z());
    let li = lambdas.get(i);
    let mut acc = MultiPoly::one();
    for j in (1..=n).filter(|&j| j != i) {
        let lj = lambdas.get(j);
        let factor = (&z - &MultiPoly::constant(lj.clone())).scale(&(li - lj).recip());
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// The unique polynomial in `z` of degree below `n` taking `values[i]` at `λ_i`.
pub fn lagrange_interpolate(
    values: &[Rational],
    lambdas: &WeightVector,
) -> Result<MultiPoly, IdentityError> {
    if values.len() != lambdas.len() {
        return Err(IdentityError::LengthMismatch {
            expected: lambdas.len(),
            got: values.len(),
        });
    }
    let mut acc = MultiPoly::zero();
    for (i, v) in values.iter().enumerate() {
        acc += &lagrange_basis(i + 1, lambdas)?.scale(v);
    }
    Ok(acc)
}

// ∏_{j≠i} (λ_i - λ_j)
fn others_product(i: usize, lambdas: &WeightVector) -> Rational {
    let li = lambdas.get(i);
    (1..=lambdas.len())
        .filter(|&j| j != i)
        .fold(Rational::one(), |acc, j| acc * (li - lambdas.get(j)))
}

/// `(Σ_i λ_i^m / ∏_{j≠i}(λ_i - λ_j),  h_{m-n+1}(λ))`.
pub fn power_sum_identity(
    m: u32,
    lambdas: &WeightVector,
) -> Result<(Rational, Rational), IdentityError> {
    let n = lambdas.len();
    if n < 2 {
        return Err(IdentityError::TooFewWeights { needed: 2, got: n });
    }
    let lhs = (1..=n)
        .map(|i| num_traits::Pow::pow(lambdas.get(i), m) / others_product(i, lambdas))
        .fold(Rational::zero(), |a, b| a + b);
    let consts: Vec<MultiPoly> = lambdas
        .values()
        .iter()
        .cloned()
        .map(MultiPoly::constant)
        .collect();
    let h = complete_homogeneous(i64::from(m) - n as i64 + 1, &consts);
    let rhs = h.as_constant().expect("h of constants is constant");
    Ok((lhs, rhs))
}

/// `Σ_i p(λ_i) / ∏_{j≠i}(λ_i - λ_j)` for univariate `p` of degree below `n`.
pub fn prop1_sum(p: &MultiPoly, lambdas: &WeightVector) -> Result<Rational, IdentityError> {
    let n = lambdas.len();
    let vars = p.variables();
    if vars.len() > 1 {
        return Err(IdentityError::NotUnivariate);
    }
    check_degree(p, n as u64 - 1)?;
    let var = vars.into_iter().next();
    let mut acc = Rational::zero();
    for i in 1..=n {
        let point: BTreeMap<_, _> = var.iter().map(|&v| (v, lambdas.get(i).clone())).collect();
        acc += p.evaluate(&point)? / others_product(i, lambdas);
    }
    Ok(acc)
}

/// Coefficient of `z^{n-1}` (or of the single variable's `(n-1)`-th power).
pub fn leading_coefficient_for(p: &MultiPoly, n: usize) -> Rational {
    match p.variables().into_iter().next() {
        Some(v) => p.coefficient_of(&Monomial::uniform(&[v], n as u32 - 1)),
        None if n == 1 => p.coefficient_of(&Monomial::one()),
        None => Rational::zero(),
    }
}

fn validate_symmetric(p: &MultiPoly, k: usize, n: usize) -> Result<(), IdentityError> {
    check_shape(k, n)?;
    check_alphabet(p, k, 0)?;
    if !is_symmetric(p, &x_vars(k)) {
        return Err(IdentityError::NotSymmetric { k });
    }
    check_degree(p, (k * (n - k)) as u64)
}

fn validate_doubly_symmetric(p: &MultiPoly, k: usize, n: usize) -> Result<(), IdentityError> {
    check_shape(k, n)?;
    check_alphabet(p, k, n - k)?;
    if !is_doubly_symmetric(p, &x_vars(k), &y_vars(n - k)) {
        return Err(IdentityError::NotDoublySymmetric { k, rest: n - k });
    }
    check_degree(p, (k * (n - k)) as u64)
}

fn subset_sum(p: &MultiPoly, k: usize, lambdas: &WeightVector) -> Result<Rational, IdentityError> {
    let mut acc = Rational::zero();
    for subset in subsets(lambdas.len(), k) {
        let value = p.evaluate(&subset.restriction_point(lambdas))?;
        if !value.is_zero() {
            acc += value / subset.cross_product(lambdas);
        }
    }
    Ok(acc)
}

/// `Σ_{|I|=k} P(λ_I) / ∏_{i∈I}∏_{j∈I^c}(λ_i - λ_j)` for symmetric `P(x1..xk)`.
pub fn theorem_main_lhs(
    p: &MultiPoly,
    k: usize,
    lambdas: &WeightVector,
) -> Result<Rational, IdentityError> {
    validate_symmetric(p, k, lambdas.len())?;
    subset_sum(p, k, lambdas)
}

/// `c(k,n)`: coefficient of `x1^{n-1}...xk^{n-1}` in `P · ∏_i∏_{j≠i}(x_i - x_j)`.
/// No preconditions are checked.
pub fn main_coefficient(p: &MultiPoly, k: usize, n: usize) -> Rational {
    let xs = x_vars(k);
    let target = Monomial::uniform(&xs, n as u32 - 1);
    let weight = vandermonde_double(&forms_of(&xs));
    p.mul_bounded(&weight, &target).coefficient_of(&target)
}

/// `c(k,n) / k!`.
pub fn theorem_main_rhs(p: &MultiPoly, k: usize, n: usize) -> Result<Rational, IdentityError> {
    validate_symmetric(p, k, n)?;
    Ok(main_coefficient(p, k, n) / factorial(k))
}

/// `d(k,n)`: coefficient of `x^{n-1} y^{n-1}` (all variables) in
/// `P · V(x) · V(y) · ∏(y_i - x_j)` where `V` is the double Vandermonde
/// product. No preconditions are checked.
pub fn double_coefficient(p: &MultiPoly, k: usize, n: usize) -> Rational {
    let xs = x_vars(k);
    let ys = y_vars(n - k);
    let all: Vec<VarId> = xs.iter().chain(ys.iter()).copied().collect();
    let target = Monomial::uniform(&all, n as u32 - 1);
    let xf = forms_of(&xs);
    let yf = forms_of(&ys);
    let mut acc = p.truncate_to(&target);
    acc = acc.mul_bounded(&vandermonde_double(&xf), &target);
    acc = acc.mul_bounded(&vandermonde_double(&yf), &target);
    for factor in cross_difference_factors(&yf, &xf) {
        if acc.is_zero() {
            break;
        }
        acc = acc.mul_bounded(&factor, &target);
    }
    acc.coefficient_of(&target)
}

/// `Σ_{|I|=k} P(λ_I, λ_{I^c}) / ∏_{i∈I}∏_{j∈I^c}(λ_i - λ_j)` for doubly symmetric `P`.
pub fn theorem_double_lhs(
    p: &MultiPoly,
    k: usize,
    lambdas: &WeightVector,
) -> Result<Rational, IdentityError> {
    validate_doubly_symmetric(p, k, lambdas.len())?;
    subset_sum(p, k, lambdas)
}

/// `d(k,n) / (k! (n-k)!)`.
pub fn theorem_double_rhs(p: &MultiPoly, k: usize, n: usize) -> Result<Rational, IdentityError> {
    validate_doubly_symmetric(p, k, n)?;
    Ok(double_coefficient(p, k, n) / (factorial(k) * factorial(n - k)))
}

/// Rebuilds a symmetric `P(x1..xk)` with partial degrees at most `n-k` from its
/// values at the points `λ_I`:
///
/// ```text
///   Σ_I  P(λ_I) · ∏_{r=1..k} ∏_{j∈I^c} (x_r - λ_j) / ∏_{i∈I}∏_{j∈I^c} (λ_i - λ_j)
/// ```
pub fn chen_louck_interpolate(
    p: &MultiPoly,
    k: usize,
    lambdas: &WeightVector,
) -> Result<MultiPoly, IdentityError> {
    let n = lambdas.len();
    check_shape(k, n)?;
    check_alphabet(p, k, 0)?;
    if !is_symmetric(p, &x_vars(k)) {
        return Err(IdentityError::NotSymmetric { k });
    }
    let bound = (n - k) as u32;
    if let Some((&var, &degree)) = p.degree_info().partial.iter().find(|(_, &d)| d > bound) {
        return Err(IdentityError::PartialDegreeTooHigh { var, degree, bound });
    }
    let xs = forms_of(&x_vars(k));
    let mut acc = MultiPoly::zero();
    for subset in subsets(n, k) {
        let value = p.evaluate(&subset.restriction_point(lambdas))?;
        if value.is_zero() {
            continue;
        }
        let comp = subset.complement();
        let mut basis = MultiPoly::constant(value / subset.cross_product(lambdas));
        for x in &xs {
            for &j in &comp {
                basis = &basis * &(x - &MultiPoly::constant(lambdas.get(j).clone()));
            }
        }
        acc += &basis;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{frac, rat};
    use crate::symmetric::elementary;
    use num_traits::Signed;
    use rand::SeedableRng;

    fn x(i: u32) -> MultiPoly {
        MultiPoly::var(VarId::x(i))
    }

    fn y(i: u32) -> MultiPoly {
        MultiPoly::var(VarId::y(i))
    }

    fn z() -> MultiPoly {
        MultiPoly::var(VarId::z())
    }

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::from_integers(v).unwrap()
    }

    #[test]
    fn weight_vector_rejects_duplicates() {
        assert_eq!(
            WeightVector::from_integers(&[1, 2, 1]),
            Err(IdentityError::DuplicateWeight(rat(1)))
        );
        assert!(WeightVector::new(vec![]).is_err());
    }

    #[test]
    fn random_weights_are_distinct_and_in_window() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..10 {
            let wv = WeightVector::random(n, &mut rng);
            assert!(WeightVector::new(wv.values().to_vec()).is_ok());
            let bound = rat(5 * n as i64);
            assert!(wv.values().iter().all(|v| v.abs() <= bound));
        }
    }

    #[test]
    fn colex_enumeration() {
        let all: Vec<Vec<usize>> = subsets(4, 2).map(|s| s.members().to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 4],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(subsets(5, 0).count(), 1);
        assert_eq!(subsets(3, 4).count(), 0);
        assert_eq!(subsets(6, 3).count(), 20);
    }

    #[test]
    fn subset_complement() {
        let s = IndexSubset::new(vec![2, 4], 5).unwrap();
        assert_eq!(s.complement(), vec![1, 3, 5]);
        assert!(IndexSubset::new(vec![0, 1], 3).is_err());
        assert!(IndexSubset::new(vec![2, 2], 3).is_err());
        assert!(IndexSubset::new(vec![4], 3).is_err());
    }

    #[test]
    fn lagrange_basis_values() {
        let l = w(&[0, 1]);
        assert_eq!(lagrange_basis(1, &l).unwrap(), &MultiPoly::one() - &z());
        let l = WeightVector::new(vec![rat(-2), frac(1, 3), rat(5), frac(7, 2)]).unwrap();
        for i in 1..=4 {
            let b = lagrange_basis(i, &l).unwrap();
            for j in 1..=4 {
                let pt = BTreeMap::from([(VarId::z(), l.get(j).clone())]);
                let expected = if i == j { rat(1) } else { rat(0) };
                assert_eq!(b.evaluate(&pt).unwrap(), expected);
            }
        }
        assert_eq!(
            lagrange_basis(5, &l),
            Err(IdentityError::IndexOutOfRange { index: 5, n: 4 })
        );
    }

    #[test]
    fn interpolation() {
        let p = lagrange_interpolate(&[rat(1), rat(3)], &w(&[0, 1])).unwrap();
        assert_eq!(p, &MultiPoly::one() + &z().scale(&rat(2)));
        let c = lagrange_interpolate(&vec![frac(2, 3); 3], &w(&[4, -1, 7])).unwrap();
        assert_eq!(c, MultiPoly::constant(frac(2, 3)));
        let sq = lagrange_interpolate(&[rat(0), rat(1), rat(4)], &w(&[0, 1, 2])).unwrap();
        assert_eq!(sq, &z() * &z());
        assert!(lagrange_interpolate(&[rat(0)], &w(&[0, 1])).is_err());
    }

    #[test]
    fn power_sum_examples() {
        let l = w(&[1, 2]);
        assert_eq!(power_sum_identity(0, &l).unwrap(), (rat(0), rat(0)));
        assert_eq!(power_sum_identity(1, &l).unwrap(), (rat(1), rat(1)));
        assert_eq!(power_sum_identity(3, &l).unwrap(), (rat(7), rat(7)));
        assert!(power_sum_identity(1, &w(&[3])).is_err());
    }

    #[test]
    fn prop1_examples() {
        assert_eq!(prop1_sum(&(&z() * &z()), &w(&[0, 1, 2])).unwrap(), rat(1));
        assert_eq!(prop1_sum(&MultiPoly::one(), &w(&[3, 9])).unwrap(), rat(0));
        for n in 1..6 {
            let l = WeightVector::random(n, &mut rand_chacha::ChaCha8Rng::seed_from_u64(n as u64));
            let p = z().checked_pow(n as u32 - 1).unwrap();
            assert_eq!(prop1_sum(&p, &l).unwrap(), rat(1));
        }
        assert_eq!(
            prop1_sum(&z().checked_pow(3).unwrap(), &w(&[0, 1, 2])),
            Err(IdentityError::DegreeTooHigh {
                degree: 3,
                bound: 2
            })
        );
        assert_eq!(
            prop1_sum(&(&x(1) + &y(1)), &w(&[0, 1, 2])),
            Err(IdentityError::NotUnivariate)
        );
    }

    #[test]
    fn main_theorem_examples() {
        let l = w(&[0, 1, 2]);
        let p = &x(1) * &x(2);
        assert_eq!(theorem_main_lhs(&p, 2, &l).unwrap(), rat(1));
        assert_eq!(theorem_main_rhs(&p, 2, 3).unwrap(), rat(1));
        let sq = &x(1) * &x(1);
        assert_eq!(theorem_main_lhs(&sq, 1, &l).unwrap(), rat(1));
        assert_eq!(theorem_main_rhs(&sq, 1, 3).unwrap(), rat(1));
        assert_eq!(theorem_main_lhs(&MultiPoly::one(), 2, &l).unwrap(), rat(0));
        assert_eq!(theorem_main_rhs(&MultiPoly::one(), 2, 3).unwrap(), rat(0));
        assert_eq!(theorem_main_rhs(&x(1), 1, 2).unwrap(), rat(1));
    }

    #[test]
    fn main_theorem_preconditions() {
        let l = w(&[0, 1, 2]);
        assert_eq!(
            theorem_main_lhs(&(&x(1) - &x(2)), 2, &l),
            Err(IdentityError::NotSymmetric { k: 2 })
        );
        let high = &(&x(1) * &x(2)) * &(&x(1) + &x(2));
        assert_eq!(
            theorem_main_rhs(&high, 2, 3),
            Err(IdentityError::DegreeTooHigh {
                degree: 3,
                bound: 2
            })
        );
        assert_eq!(
            theorem_main_rhs(&y(1), 2, 3),
            Err(IdentityError::UnexpectedVariable(VarId::y(1)))
        );
        assert_eq!(
            theorem_main_rhs(&x(1), 3, 3),
            Err(IdentityError::InvalidShape { k: 3, n: 3 })
        );
    }

    #[test]
    fn double_theorem_examples() {
        let p = &y(1) - &x(1);
        assert_eq!(theorem_double_lhs(&p, 1, &w(&[0, 1])).unwrap(), rat(-2));
        assert_eq!(double_coefficient(&p, 1, 2), rat(-2));
        assert_eq!(theorem_double_rhs(&p, 1, 2).unwrap(), rat(-2));

        let q = &x(1) * &x(2);
        assert_eq!(theorem_double_rhs(&q, 2, 3).unwrap(), rat(1));
        assert_eq!(theorem_main_rhs(&q, 2, 3).unwrap(), rat(1));

        assert_eq!(
            theorem_double_lhs(&MultiPoly::one(), 1, &w(&[0, 1])).unwrap(),
            rat(0)
        );
        assert_eq!(theorem_double_rhs(&MultiPoly::one(), 1, 2).unwrap(), rat(0));

        assert_eq!(
            theorem_double_rhs(&(&x(1) * &y(1)), 2, 4),
            Err(IdentityError::NotDoublySymmetric { k: 2, rest: 2 })
        );
    }

    #[test]
    fn chen_louck_examples() {
        let l = w(&[0, 1, 2]);
        let p = &x(1) * &x(2);
        assert_eq!(chen_louck_interpolate(&p, 2, &l).unwrap(), p);
        assert_eq!(
            chen_louck_interpolate(&MultiPoly::one(), 2, &l).unwrap(),
            MultiPoly::one()
        );
        let e1 = elementary(1, &forms_of(&x_vars(2))).unwrap();
        assert_eq!(
            chen_louck_interpolate(&e1, 2, &w(&[0, 1, 2, 3])).unwrap(),
            &x(1) + &x(2)
        );
        let sq = &(&x(1) * &x(1)) + &(&x(2) * &x(2));
        assert_eq!(
            chen_louck_interpolate(&sq, 2, &l),
            Err(IdentityError::PartialDegreeTooHigh {
                var: VarId::x(1),
                degree: 2,
                bound: 1
            })
        );
    }

    // The identity stated alongside the interpolation formula reads
    // "c(n,k) = d(k,n) k!". With c(k,n) as in theorem_main_rhs it holds; the
    // literal swapped-index reading (coefficient of x1^{k-1}...xn^{k-1} in
    // P · V(x1..xn)) does not.
    #[test]
    fn remark_relation_index_order() {
        let (k, n) = (2, 4);
        let p = &elementary(2, &forms_of(&x_vars(2))).unwrap() + &(&x(1) + &x(2));
        let top = Monomial::uniform(&x_vars(k), (n - k) as u32);
        let d = p.coefficient_of(&top);
        assert_eq!(d, rat(0));
        let p = &(&x(1) * &x(2)) * &(&x(1) * &x(2));
        let d = p.coefficient_of(&top);
        assert_eq!(main_coefficient(&p, k, n), d.clone() * factorial(k));
        assert_eq!(main_coefficient(&p, k, n), rat(2));

        let all = x_vars(n);
        let swapped_target = Monomial::uniform(&all, k as u32 - 1);
        let swapped = (&p * &vandermonde_double(&forms_of(&all))).coefficient_of(&swapped_target);
        assert_ne!(swapped, d * factorial(k));
    }
}
