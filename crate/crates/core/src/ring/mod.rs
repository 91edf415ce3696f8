//! Exact coefficient rings: rationals, polynomials in `y`, Laurent
//! polynomials in `x`, and degree-truncated power series.
//!
//! Every matrix in the crate has entries in one of these rings. The
//! [`Ring`] trait is the minimal interface the linear algebra needs; the
//! [`Domain`] trait adds exact division, which is what fraction-free
//! elimination relies on.

mod monomial;
mod parse;
mod poly;
mod rational;
mod series;

use std::fmt;

use thiserror::Error;

pub use monomial::ExponentVector;
pub use parse::{parse_poly, parse_rational};
pub use poly::{Laurent, LaurentPoly, MultiPoly, Ordinary, Poly, PolyKind};
pub use rational::{rat, Rational};
pub use series::{exp_substitute, linear_part, linearize, TruncatedSeries};

/// Default truncation order for power series; degree two is the highest
/// order any of the identities checked here needs.
pub const DEFAULT_CAP: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable x{var} has a negative exponent but is evaluated at zero")]
    ZeroAtPole { var: usize },
    #[error("point has {got} coordinates, ring has {expected} variables")]
    VariableCountMismatch { expected: usize, got: usize },
    #[error("negative exponent in a polynomial ring")]
    NegativeExponent,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Commutative ring with unit, over the rationals.
///
/// `nvars` is the ambient variable count; rationals report zero and ignore
/// it on construction.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_of(nvars: usize) -> Self;
    fn one_of(nvars: usize) -> Self;
    fn from_rational(c: &Rational, nvars: usize) -> Self;
    fn nvars(&self) -> usize;
    fn is_zero_elt(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;

    fn is_one_elt(&self) -> bool {
        *self == Self::one_of(self.nvars())
    }
}

/// Integral domain with an exact division test.
pub trait Domain: Ring {
    /// Returns `self / divisor` when the quotient lies in the ring.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

/// Exact evaluation at a rational point.
pub trait Evaluate {
    fn evaluate(&self, point: &[Rational]) -> Result<Rational, RingError>;
}
