//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic with `x1 > x2 > ... > y1 > ... > z`. Iteration (and therefore
//! printing) is deterministic. Zero coefficients are never stored, so two
//! polynomials are equal exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingAssignment(VarId),
    #[error("exponent overflow: degree exceeds the supported range")]
    ExponentOverflow,
}

/// Which family of formal variables a [`VarId`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    /// Chern roots of the tautological sub-bundle.
    X,
    /// Chern roots of the quotient bundle.
    Y,
    /// Auxiliary variable for univariate work.
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub alphabet: Alphabet,
    pub index: u32,
}

impl VarId {
    pub const fn x(index: u32) -> Self {
        VarId {
            alphabet: Alphabet::X,
            index,
        }
    }

    pub const fn y(index: u32) -> Self {
        VarId {
            alphabet: Alphabet::Y,
            index,
        }
    }

    pub const fn z() -> Self {
        VarId {
            alphabet: Alphabet::Z,
            index: 1,
        }
    }

    /// `x1..=xk` (or `y1..=yk`).
    pub fn range(alphabet: Alphabet, count: u32) -> Vec<VarId> {
        (1..=count).map(|index| VarId { alphabet, index }).collect()
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alphabet {
            Alphabet::X => write!(f, "x{}", self.index),
            Alphabet::Y => write!(f, "y{}", self.index),
            Alphabet::Z if self.index == 1 => f.write_str("z"),
            Alphabet::Z => write!(f, "z{}", self.index),
        }
    }
}

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with every exponent positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    powers: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial {
            powers: vec![(v, 1)],
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged and
    /// zero exponents dropped.
    pub fn from_powers<I>(powers: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (VarId, u32)>,
    {
        let mut acc: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in powers {
            let slot = acc.entry(v).or_insert(0);
            *slot = slot.checked_add(e).ok_or(PolyError::ExponentOverflow)?;
        }
        Ok(Monomial {
            powers: acc.into_iter().filter(|&(_, e)| e > 0).collect(),
        })
    }

    /// The monomial `v1^e * v2^e * ...` over the given variables.
    pub fn uniform(vars: &[VarId], exponent: u32) -> Self {
        if exponent == 0 {
            return Monomial::one();
        }
        let mut powers: Vec<_> = vars.iter().map(|&v| (v, exponent)).collect();
        powers.sort();
        powers.dedup_by_key(|p| p.0);
        Monomial { powers }
    }

    pub fn powers(&self) -> &[(VarId, u32)] {
        &self.powers
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.powers.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.powers
            .binary_search_by(|p| p.0.cmp(&v))
            .map(|i| self.powers[i].1)
            .unwrap_or(0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut a, mut b) = (
            self.powers.iter().peekable(),
            other.powers.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        powers.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        powers.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        powers.push((va, ea.checked_add(eb)?));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    powers.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    powers.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Some(Monomial { powers })
    }

    pub fn checked_pow(&self, e: u32) -> Option<Monomial> {
        if e == 0 {
            return Some(Monomial::one());
        }
        let powers = self
            .powers
            .iter()
            .map(|&(v, x)| x.checked_mul(e).map(|p| (v, p)))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial { powers })
    }

    /// True when every exponent of `self` is at most the matching exponent of `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.powers.iter().all(|&(v, e)| e <= other.exponent(v))
    }

    /// Renames variables; `f` must be injective on the variables present.
    pub fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> Monomial {
        let mut powers: Vec<_> = self.powers.iter().map(|&(v, e)| (f(v), e)).collect();
        powers.sort();
        Monomial { powers }
    }

    // Lexicographic with earlier variables more significant.
    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let mut a = self.powers.iter();
        let mut b = other.powers.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        return if va < vb {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.powers.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeInfo {
    pub total: Degree,
    pub partial: BTreeMap<VarId, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        MultiPoly::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// `Some(c)` if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.powers.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_info(&self) -> DegreeInfo {
        let mut partial = BTreeMap::new();
        for m in self.terms.keys() {
            for &(v, e) in &m.powers {
                let slot = partial.entry(v).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        DegreeInfo {
            total: self.total_degree(),
            partial,
        }
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u64, MultiPoly> {
        let mut out: BTreeMap<u64, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn evaluate(&self, point: &BTreeMap<VarId, Rational>) -> Result<Rational, PolyError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.powers {
                let x = point.get(&v).ok_or(PolyError::MissingAssignment(v))?;
                t *= Pow::pow(x, e);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(PolyError::ExponentOverflow)?;
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    /// Product with every term not dividing `bound` discarded.
    ///
    /// Exact for all coefficients of monomials dividing `bound` as long as both
    /// factors have nonnegative exponents, which they always do here.
    pub fn mul_bounded(&self, other: &MultiPoly, bound: &Monomial) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            if !ma.divides(bound) {
                continue;
            }
            for (mb, cb) in &other.terms {
                if let Some(m) = ma.checked_mul(mb) {
                    if m.divides(bound) {
                        out.add_term(m, ca * cb);
                    }
                }
            }
        }
        out
    }

    pub fn truncate_to(&self, bound: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.divides(bound))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn checked_pow(&self, mut e: u32) -> Result<MultiPoly, PolyError> {
        // a lone term raises directly; this also catches overflow before any work
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let m = m.checked_pow(e).ok_or(PolyError::ExponentOverflow)?;
            return Ok(MultiPoly::term(Pow::pow(c, e), m));
        }
        if let Degree::Finite(d) = self.total_degree() {
            if d.checked_mul(u64::from(e))
                .is_none_or(|t| t > u64::from(u32::MAX))
            {
                return Err(PolyError::ExponentOverflow);
            }
        }
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Replaces each variable by a polynomial; variables without an image are kept.
    pub fn substitute(&self, images: &BTreeMap<VarId, MultiPoly>) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for &(v, e) in &m.powers {
                let factor = match images.get(&v) {
                    Some(p) => p.checked_pow(e)?,
                    None => MultiPoly::term(
                        Rational::one(),
                        Monomial {
                            powers: vec![(v, e)],
                        },
                    ),
                };
                t = t.checked_mul(&factor)?;
            }
            out += &t;
        }
        Ok(out)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<VarId> for MultiPoly {
    fn from(v: VarId) -> Self {
        MultiPoly::var(v)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Panics if an exponent overflows `u32`; use [`MultiPoly::checked_mul`] on
/// untrusted input.
impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs)
            .expect("exponent overflow in polynomial product")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for MultiPoly {
    fn product<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::one(), |acc, p| &acc * &p)
    }
}

/// Canonical text: terms in descending graded-lex order, coefficients as `p/q`
/// (integers without a denominator), `*` between every factor.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
