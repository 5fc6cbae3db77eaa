//! Characteristic classes of bundles built from the tautological bundles on a
//! Grassmannian, and their integrals by coefficient extraction.
//!
//! A class is expanded into a doubly symmetric polynomial in the Chern roots
//! `x1..xk` of `S` and `y1..y{n-k}` of `Q` (splitting principle: every derived
//! bundle is described by its list of roots). The integral of such a polynomial
//! `P` is
//!
//! ```text
//!   (-1)^{k(n-k)} d(k,n) / (k! (n-k)!)
//! ```
//!
//! where `d(k,n)` is the coefficient of `x^{n-1} y^{n-1}` in
//! `P · V(x) · V(y) · ∏(y_i - x_j)`.
//!
//! Inhomogeneous classes are split into homogeneous components. Components
//! below the dimension integrate to zero; a component above the dimension is
//! an error, since no constant answer exists for it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::identities::{
    check_alphabet, double_coefficient, factorial, main_coefficient, IdentityError, WeightVector,
};
use crate::poly::{Alphabet, MultiPoly, PolyError, Rational, VarId};
use crate::symmetric::{elementary, forms_of, is_doubly_symmetric, schur, Partition};

/// Upper limit on the number of Chern roots of a derived bundle.
pub const MAX_RANK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegralError {
    #[error("need 0 < k < n, got k = {k}, n = {n}")]
    InvalidSpec { k: u32, n: u32 },
    #[error("class has a component of degree {degree}, above the dimension {dimension}")]
    DegreeExceedsDimension { degree: u64, dimension: u64 },
    #[error("class is not doubly symmetric in the Chern roots of S and Q")]
    NotDoublySymmetric,
    #[error("variable {0} is not a Chern root on this Grassmannian")]
    VariableOutOfRange(VarId),
    #[error("bundle {bundle} has rank {rank}, above the supported limit")]
    RankTooLarge { bundle: String, rank: String },
    #[error("bundle classes need a Grassmannian (pass k and n)")]
    MissingSpec,
    #[error("{0}")]
    NotConstant(Box<Disagreement>),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Two weight vectors at which the localization sum took different values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("localization values differ: {first_value} at {first} but {second_value} at {second}")]
pub struct Disagreement {
    pub first: WeightVector,
    pub first_value: Rational,
    pub second: WeightVector,
    pub second_value: Rational,
}

impl IntegralError {
    /// Errors that come from the mathematics (a violated hypothesis) rather
    /// than from malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            IntegralError::DegreeExceedsDimension { .. }
                | IntegralError::NotDoublySymmetric
                | IntegralError::NotConstant(_)
        )
    }
}

/// The Grassmannian `G(k,n)` of `k`-planes in `n`-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct GrassmannSpec {
    k: u32,
    n: u32,
}

impl GrassmannSpec {
    pub fn new(k: u32, n: u32) -> Result<Self, IntegralError> {
        if k == 0 || k >= n {
            return Err(IntegralError::InvalidSpec { k, n });
        }
        Ok(GrassmannSpec { k, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Rank of the quotient bundle, `n - k`.
    pub fn corank(&self) -> u32 {
        self.n - self.k
    }

    pub fn dimension(&self) -> u64 {
        u64::from(self.k) * u64::from(self.corank())
    }

    pub fn sub_roots(&self) -> Vec<VarId> {
        VarId::range(Alphabet::X, self.k)
    }

    pub fn quotient_roots(&self) -> Vec<VarId> {
        VarId::range(Alphabet::Y, self.corank())
    }
}

impl fmt::Display for GrassmannSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.k, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    /// Tautological sub-bundle.
    Sub,
    /// Tautological quotient bundle.
    Quotient,
    Dual(Box<BundleExpr>),
    Sym(u32, Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Wedge(u32, Box<BundleExpr>),
}

impl BundleExpr {
    pub fn dual(self) -> Self {
        BundleExpr::Dual(Box::new(self))
    }

    pub fn sym(m: u32, b: BundleExpr) -> Self {
        BundleExpr::Sym(m, Box::new(b))
    }

    pub fn wedge(m: u32, b: BundleExpr) -> Self {
        BundleExpr::Wedge(m, Box::new(b))
    }

    pub fn tensor(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Tensor(Box::new(a), Box::new(b))
    }

    /// Exact rank; `None` only on overflow of `u128`.
    pub fn rank(&self, spec: &GrassmannSpec) -> Option<u128> {
        match self {
            BundleExpr::Sub => Some(u128::from(spec.k)),
            BundleExpr::Quotient => Some(u128::from(spec.corank())),
            BundleExpr::Dual(b) => b.rank(spec),
            BundleExpr::Tensor(a, b) => a.rank(spec)?.checked_mul(b.rank(spec)?),
            BundleExpr::Sym(m, b) => {
                let r = b.rank(spec)?;
                if r == 0 {
                    return Some(u128::from(*m == 0));
                }
                binomial((r - 1).checked_add(u128::from(*m))?, u128::from(*m))
            }
            BundleExpr::Wedge(m, b) => binomial(b.rank(spec)?, u128::from(*m)),
        }
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Sub => f.write_str("S"),
            BundleExpr::Quotient => f.write_str("Q"),
            BundleExpr::Dual(b) => write!(f, "dual({b})"),
            BundleExpr::Sym(m, b) => write!(f, "sym({m},{b})"),
            BundleExpr::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            BundleExpr::Wedge(m, b) => write!(f, "wedge({m},{b})"),
        }
    }
}

/// Chern roots of a bundle as linear forms in the `x` and `y` alphabets; the
/// list length is the rank.
pub fn roots_of(b: &BundleExpr, spec: &GrassmannSpec) -> Result<Vec<MultiPoly>, IntegralError> {
    match b.rank(spec) {
        Some(r) if r <= u128::from(MAX_RANK) => {}
        r => {
            return Err(IntegralError::RankTooLarge {
                bundle: b.to_string(),
                rank: r.map_or_else(|| "overflow".to_string(), |r| r.to_string()),
            })
        }
    }
    Ok(roots_unchecked(b, spec))
}

fn roots_unchecked(b: &BundleExpr, spec: &GrassmannSpec) -> Vec<MultiPoly> {
    match b {
        BundleExpr::Sub => forms_of(&spec.sub_roots()),
        BundleExpr::Quotient => forms_of(&spec.quotient_roots()),
        BundleExpr::Dual(inner) => roots_unchecked(inner, spec).iter().map(|r| -r).collect(),
        BundleExpr::Tensor(a, c) => {
            let ra = roots_unchecked(a, spec);
            let rc = roots_unchecked(c, spec);
            ra.iter()
                .flat_map(|p| rc.iter().map(move |q| p + q))
                .collect()
        }
        BundleExpr::Sym(m, inner) => {
            let r = roots_unchecked(inner, spec);
            let mut out = Vec::new();
            index_sums(&r, *m as usize, 0, true, &mut MultiPoly::zero(), &mut out);
            out
        }
        BundleExpr::Wedge(m, inner) => {
            let r = roots_unchecked(inner, spec);
            let mut out = Vec::new();
            index_sums(&r, *m as usize, 0, false, &mut MultiPoly::zero(), &mut out);
            out
        }
    }
}

// Sums of `left` roots taken with indices >= `from`, nondecreasing when
// `repeat` (multisets) and strictly increasing otherwise (subsets).
fn index_sums(
    roots: &[MultiPoly],
    left: usize,
    from: usize,
    repeat: bool,
    acc: &mut MultiPoly,
    out: &mut Vec<MultiPoly>,
) {
    if left == 0 {
        out.push(acc.clone());
        return;
    }
    for i in from..roots.len() {
        *acc += &roots[i];
        let next = if repeat { i } else { i + 1 };
        index_sums(roots, left - 1, next, repeat, acc, out);
        *acc -= &roots[i];
    }
}

/// Syntax tree of a characteristic-class integrand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassExpr {
    Const(Rational),
    /// A Chern root used directly, e.g. `x1`.
    Root(VarId),
    Chern(u32, BundleExpr),
    Euler(BundleExpr),
    Schur(Partition, BundleExpr),
    Add(Box<ClassExpr>, Box<ClassExpr>),
    Sub(Box<ClassExpr>, Box<ClassExpr>),
    Mul(Box<ClassExpr>, Box<ClassExpr>),
    Neg(Box<ClassExpr>),
    Pow(Box<ClassExpr>, u32),
}

impl ClassExpr {
    pub fn integer(v: i64) -> Self {
        ClassExpr::Const(Rational::from_integer(BigInt::from(v)))
    }

    pub fn chern(i: u32, b: BundleExpr) -> Self {
        ClassExpr::Chern(i, b)
    }

    pub fn euler(b: BundleExpr) -> Self {
        ClassExpr::Euler(b)
    }

    pub fn schur(lambda: Partition, b: BundleExpr) -> Self {
        ClassExpr::Schur(lambda, b)
    }

    pub fn pow(self, e: u32) -> Self {
        ClassExpr::Pow(Box::new(self), e)
    }

    /// True if the expression mentions no bundle, i.e. it is a plain
    /// polynomial literal.
    pub fn is_polynomial_literal(&self) -> bool {
        match self {
            ClassExpr::Const(_) | ClassExpr::Root(_) => true,
            ClassExpr::Chern(..) | ClassExpr::Euler(_) | ClassExpr::Schur(..) => false,
            ClassExpr::Add(a, b) | ClassExpr::Sub(a, b) | ClassExpr::Mul(a, b) => {
                a.is_polynomial_literal() && b.is_polynomial_literal()
            }
            ClassExpr::Neg(a) | ClassExpr::Pow(a, _) => a.is_polynomial_literal(),
        }
    }

    /// Expands a bundle-free expression into a polynomial.
    pub fn to_polynomial(&self) -> Result<MultiPoly, IntegralError> {
        expand(self, None)
    }

    fn precedence(&self) -> u8 {
        match self {
            ClassExpr::Add(..) | ClassExpr::Sub(..) | ClassExpr::Neg(_) => 1,
            ClassExpr::Mul(..) => 2,
            ClassExpr::Pow(..) => 3,
            ClassExpr::Const(c) if c.is_negative() => 1,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            ClassExpr::Const(c) => write!(f, "{c}"),
            ClassExpr::Root(v) => write!(f, "{v}"),
            ClassExpr::Chern(i, b) => write!(f, "c({i},{b})"),
            ClassExpr::Euler(b) => write!(f, "euler({b})"),
            ClassExpr::Schur(l, b) => write!(f, "schur({l},{b})"),
            ClassExpr::Add(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_at(f, 2)
            }
            ClassExpr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" - ")?;
                b.fmt_at(f, 2)
            }
            ClassExpr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_at(f, 2)
            }
            ClassExpr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str("*")?;
                b.fmt_at(f, 3)
            }
            ClassExpr::Pow(a, e) => {
                a.fmt_at(f, 4)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Renders in the expression grammar accepted by [`crate::parse`].
macro_rules! class_op {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl std::ops::$trait for ClassExpr {
            type Output = ClassExpr;

            fn $method(self, rhs: ClassExpr) -> ClassExpr {
                ClassExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

class_op!(Add, add, Add);
class_op!(Sub, sub, Sub);
class_op!(Mul, mul, Mul);

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

fn expand(c: &ClassExpr, spec: Option<&GrassmannSpec>) -> Result<MultiPoly, IntegralError> {
    let roots = |b: &BundleExpr| match spec {
        Some(s) => roots_of(b, s),
        None => Err(IntegralError::MissingSpec),
    };
    Ok(match c {
        ClassExpr::Const(r) => MultiPoly::constant(r.clone()),
        ClassExpr::Root(v) => MultiPoly::var(*v),
        ClassExpr::Chern(i, b) => elementary(i64::from(*i), &roots(b)?).expect("nonnegative index"),
        ClassExpr::Euler(b) => roots(b)?.into_iter().product(),
        // s_λ vanishes on fewer variables than parts
        ClassExpr::Schur(l, b) => schur(l, &roots(b)?).unwrap_or_else(|_| MultiPoly::zero()),
        ClassExpr::Add(a, b) => &expand(a, spec)? + &expand(b, spec)?,
        ClassExpr::Sub(a, b) => &expand(a, spec)? - &expand(b, spec)?,
        ClassExpr::Mul(a, b) => expand(a, spec)?.checked_mul(&expand(b, spec)?)?,
        ClassExpr::Neg(a) => -expand(a, spec)?,
        ClassExpr::Pow(a, e) => expand(a, spec)?.checked_pow(*e)?,
    })
}

/// Chern-root polynomial representing `c` on the given Grassmannian.
pub fn expand_class(c: &ClassExpr, spec: &GrassmannSpec) -> Result<MultiPoly, IntegralError> {
    expand(c, Some(spec))
}

/// Checks the hypotheses of the integral formula: only Chern roots of this
/// Grassmannian appear, the polynomial is doubly symmetric, and no
/// homogeneous component exceeds the dimension.
pub fn validate_integrand(p: &MultiPoly, spec: &GrassmannSpec) -> Result<(), IntegralError> {
    check_alphabet(p, spec.k as usize, spec.corank() as usize).map_err(|e| match e {
        IdentityError::UnexpectedVariable(v) => IntegralError::VariableOutOfRange(v),
        other => unreachable!("alphabet check only reports variables: {other}"),
    })?;
    if !is_doubly_symmetric(p, &spec.sub_roots(), &spec.quotient_roots()) {
        return Err(IntegralError::NotDoublySymmetric);
    }
    let dimension = spec.dimension();
    if let Some((&degree, _)) = p.homogeneous_components().range(dimension + 1..).next() {
        return Err(IntegralError::DegreeExceedsDimension { degree, dimension });
    }
    Ok(())
}

fn orientation_sign(spec: &GrassmannSpec) -> Rational {
    if spec.dimension().is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Integral of a doubly symmetric Chern-root polynomial over `G(k,n)`.
pub fn integrate_polynomial(
    p: &MultiPoly,
    spec: &GrassmannSpec,
) -> Result<Rational, IntegralError> {
    validate_integrand(p, spec)?;
    let top = p
        .homogeneous_components()
        .remove(&spec.dimension())
        .unwrap_or_default();
    if top.is_zero() {
        return Ok(Rational::zero());
    }
    let (k, n) = (spec.k as usize, spec.n as usize);
    let d = double_coefficient(&top, k, n);
    Ok(orientation_sign(spec) * d / (factorial(k) * factorial(n - k)))
}

pub fn integrate(c: &ClassExpr, spec: &GrassmannSpec) -> Result<Rational, IntegralError> {
    integrate_polynomial(&expand_class(c, spec)?, spec)
}

/// `(-1)^{k(n-k)} c(k,n) / k!` for a class in the roots of `S` only.
pub fn integrate_sub_class(p: &MultiPoly, spec: &GrassmannSpec) -> Result<Rational, IntegralError> {
    validate_integrand(p, spec)?;
    if let Some(v) = p
        .variables()
        .into_iter()
        .find(|v| v.alphabet != Alphabet::X)
    {
        return Err(IntegralError::VariableOutOfRange(v));
    }
    let (k, n) = (spec.k as usize, spec.n as usize);
    Ok(orientation_sign(spec) * main_coefficient(p, k, n) / factorial(k))
}

/// `c / (n-k)!` with `c` the coefficient of `y^{n-1}` in `P · V(y)`, for a
/// class in the roots of `Q` only. Note there is no orientation sign.
pub fn integrate_quotient_class(
    p: &MultiPoly,
    spec: &GrassmannSpec,
) -> Result<Rational, IntegralError> {
    validate_integrand(p, spec)?;
    if let Some(v) = p
        .variables()
        .into_iter()
        .find(|v| v.alphabet != Alphabet::Y)
    {
        return Err(IntegralError::VariableOutOfRange(v));
    }
    let as_x = p.map_vars(|v| VarId::x(v.index));
    let (rest, n) = (spec.corank() as usize, spec.n as usize);
    Ok(main_coefficient(&as_x, rest, n) / factorial(rest))
}
