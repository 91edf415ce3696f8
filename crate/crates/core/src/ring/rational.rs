use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Domain, Evaluate, Ring, RingError};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `p/q` as a [`Rational`].
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

impl Ring for Rational {
    fn zero_of(_: usize) -> Self {
        Zero::zero()
    }

    fn one_of(_: usize) -> Self {
        One::one()
    }

    fn from_rational(c: &Rational, _: usize) -> Self {
        c.clone()
    }

    fn nvars(&self) -> usize {
        0
    }

    fn is_zero_elt(&self) -> bool {
        Zero::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Domain for Rational {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            None
        } else {
            Some(self / divisor)
        }
    }
}

impl Evaluate for Rational {
    fn evaluate(&self, _: &[Rational]) -> Result<Rational, RingError> {
        Ok(self.clone())
    }
}
