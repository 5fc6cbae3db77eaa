//! Fixed-point localization on `G(k,n)`.
//!
//! The torus acting diagonally on `C^n` has one fixed point `p_I` per
//! coordinate `k`-plane, indexed by `I ⊂ [n]` with `|I| = k`. At `p_I` the
//! tangent weights are `λ_j - λ_i` for `i ∈ I`, `j ∉ I`, and a class restricts
//! to its Chern-root polynomial with `x ↦ λ_I`, `y ↦ λ_{I^c}`. Summing
//! restriction over Euler class gives the integral, which must not depend on
//! the weights. This path never extracts a coefficient, so it serves as an
//! independent check on [`crate::integrals::integrate`].

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::identities::{subsets, IdentityError, IndexSubset, WeightVector};
use crate::integrals::{
    expand_class, validate_integrand, ClassExpr, Disagreement, GrassmannSpec, IntegralError,
};
use crate::poly::{MultiPoly, Rational};

pub const DEFAULT_SEED: u64 = 0x5eed_2015;

/// The torus-fixed point `p_I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    subset: IndexSubset,
}

impl FixedPoint {
    pub fn new(members: Vec<usize>, spec: &GrassmannSpec) -> Result<Self, IdentityError> {
        if members.len() != spec.k() as usize {
            return Err(IdentityError::LengthMismatch {
                expected: spec.k() as usize,
                got: members.len(),
            });
        }
        Ok(FixedPoint {
            subset: IndexSubset::new(members, spec.n() as usize)?,
        })
    }

    pub fn subset(&self) -> &IndexSubset {
        &self.subset
    }
}

/// All `C(n,k)` fixed points, colex order.
pub fn fixed_points(spec: &GrassmannSpec) -> impl Iterator<Item = FixedPoint> {
    subsets(spec.n() as usize, spec.k() as usize).map(|subset| FixedPoint { subset })
}

/// Equivariant Euler class of the tangent space, `∏_{i∈I}∏_{j∉I} (λ_j - λ_i)`.
pub fn euler_class_at(p: &FixedPoint, lambdas: &WeightVector) -> Rational {
    let comp = p.subset.complement();
    let mut acc = Rational::one();
    for &i in p.subset.members() {
        for &j in &comp {
            acc *= lambdas.get(j) - lambdas.get(i);
        }
    }
    acc
}

fn check_weights(spec: &GrassmannSpec, lambdas: &WeightVector) {
    assert_eq!(
        lambdas.len(),
        spec.n() as usize,
        "need one weight per coordinate of C^{}",
        spec.n()
    );
}

fn restrict_polynomial(p: &MultiPoly, point: &FixedPoint, lambdas: &WeightVector) -> Rational {
    p.evaluate(&point.subset.restriction_point(lambdas))
        .expect("restriction assigns every Chern root")
}

/// Value of the equivariant lift of `c` at `p_I`.
pub fn restrict_class(
    c: &ClassExpr,
    point: &FixedPoint,
    lambdas: &WeightVector,
    spec: &GrassmannSpec,
) -> Result<Rational, IntegralError> {
    check_weights(spec, lambdas);
    let p = expand_class(c, spec)?;
    validate_alphabet_only(&p, spec)?;
    Ok(restrict_polynomial(&p, point, lambdas))
}

fn validate_alphabet_only(p: &MultiPoly, spec: &GrassmannSpec) -> Result<(), IntegralError> {
    match validate_integrand(p, spec) {
        Err(IntegralError::VariableOutOfRange(v)) => Err(IntegralError::VariableOutOfRange(v)),
        _ => Ok(()),
    }
}

/// `Σ_I p(λ_I, λ_{I^c}) / e_{p_I}` for an already validated polynomial.
pub fn localization_sum(p: &MultiPoly, spec: &GrassmannSpec, lambdas: &WeightVector) -> Rational {
    check_weights(spec, lambdas);
    let mut acc = Rational::zero();
    for point in fixed_points(spec) {
        let value = restrict_polynomial(p, &point, lambdas);
        if !value.is_zero() {
            acc += value / euler_class_at(&point, lambdas);
        }
    }
    acc
}

pub fn abbv_integrate(
    c: &ClassExpr,
    spec: &GrassmannSpec,
    lambdas: &WeightVector,
) -> Result<Rational, IntegralError> {
    let p = expand_class(c, spec)?;
    validate_integrand(&p, spec)?;
    Ok(localization_sum(&p, spec, lambdas))
}

/// Outcome of [`certify_constant`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub value: Rational,
    pub trials: usize,
    pub weights: Vec<WeightVector>,
}

/// Evaluates the localization sum at `trials` random weight vectors drawn from
/// a generator seeded with `seed`, and checks that every value agrees.
pub fn certify_constant(
    c: &ClassExpr,
    spec: &GrassmannSpec,
    trials: usize,
    seed: u64,
) -> Result<Certificate, IntegralError> {
    assert!(trials >= 2, "certification needs at least two trials");
    let p = expand_class(c, spec)?;
    validate_integrand(&p, spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<WeightVector> = Vec::with_capacity(trials);
    let mut first: Option<Rational> = None;
    for _ in 0..trials {
        let lambdas = WeightVector::random(spec.n() as usize, &mut rng);
        let value = localization_sum(&p, spec, &lambdas);
        match &first {
            None => first = Some(value),
            Some(v) if *v != value => {
                return Err(IntegralError::NotConstant(Box::new(Disagreement {
                    first: weights[0].clone(),
                    first_value: v.clone(),
                    second: lambdas,
                    second_value: value,
                })))
            }
            Some(_) => {}
        }
        weights.push(lambdas);
    }
    Ok(Certificate {
        value: first.expect("at least one trial"),
        trials,
        weights,
    })
}
