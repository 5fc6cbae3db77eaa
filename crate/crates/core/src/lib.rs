//! Exact integrals of characteristic classes over Grassmannians `G(k,n)`.
//!
//! Classes are expanded into doubly symmetric polynomials in Chern roots and
//! integrated by reading off a single coefficient of a Vandermonde-weighted
//! product ([`integrals`]). The same integrals are recomputed independently as
//! fixed-point sums over the torus-fixed coordinate planes ([`localization`]).
//! [`identities`] holds the subset-sum identities connecting the two.
//!
//! All arithmetic is exact over the rationals.

pub mod cli;
pub mod identities;
pub mod integrals;
pub mod localization;
pub mod parse;
pub mod poly;
pub mod symmetric;

pub use integrals::{integrate, BundleExpr, ClassExpr, GrassmannSpec, IntegralError};
pub use localization::{abbv_integrate, certify_constant};
pub use parse::{parse_expression, parse_polynomial, ParseError};
pub use poly::{Monomial, MultiPoly, Rational, VarId};
