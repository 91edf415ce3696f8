use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Evaluate, ExponentVector, LaurentPoly, MultiPoly, Rational, Ring, RingError};

/// Power series in `y` truncated above total degree `cap`, stored as one
/// homogeneous polynomial per degree.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    cap: usize,
    parts: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, cap: usize) -> Self {
        Self {
            cap,
            parts: vec![MultiPoly::zero(nvars); cap + 1],
        }
    }

    /// Splits `p` into homogeneous parts, discarding those above `cap`.
    pub fn from_poly(p: &MultiPoly, cap: usize) -> Self {
        Self {
            cap,
            parts: (0..=cap).map(|d| p.homogeneous_part(d as i64)).collect(),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn nvars(&self) -> usize {
        self.parts[0].nvars()
    }

    /// Homogeneous part of degree `d` (zero above the cap).
    pub fn part(&self, d: usize) -> MultiPoly {
        self.parts
            .get(d)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.nvars()))
    }

    pub fn parts(&self) -> &[MultiPoly] {
        &self.parts
    }

    pub fn to_poly(&self) -> MultiPoly {
        self.parts
            .iter()
            .fold(MultiPoly::zero(self.nvars()), |acc, p| &acc + p)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.cap, other.cap, "truncation caps differ");
        Self {
            cap: self.cap,
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.cap, other.cap, "truncation caps differ");
        Self {
            cap: self.cap,
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Product with every term above the cap discarded.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cap, other.cap, "truncation caps differ");
        let mut out = Self::zero(self.nvars(), self.cap);
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in other.parts.iter().enumerate().take(self.cap + 1 - i) {
                out.parts[i + j] = &out.parts[i + j] + &(a * b);
            }
        }
        out
    }
}

impl Evaluate for TruncatedSeries {
    fn evaluate(&self, point: &[Rational]) -> Result<Rational, RingError> {
        self.to_poly().evaluate(point)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.to_poly(), self.cap + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

/// The linear form `m_1 y_1 + ... + m_n y_n` attached to `x^m`.
fn exponent_form(e: &ExponentVector) -> MultiPoly {
    let coeffs: Vec<BigInt> = e.as_slice().iter().map(|&m| BigInt::from(m)).collect();
    MultiPoly::from_linear_form(&coeffs)
}

/// Substitutes `x_j = exp(y_j)` into `p` and expands to total degree `cap`.
///
/// Each monomial `c x^m` becomes `c exp(m·y) = c Σ_k (m·y)^k / k!`.
pub fn exp_substitute(p: &LaurentPoly, cap: usize) -> TruncatedSeries {
    let n = p.nvars();
    let mut parts = vec![MultiPoly::zero(n); cap + 1];
    for (e, c) in p.terms() {
        let form = exponent_form(e);
        let mut power = MultiPoly::one(n);
        let mut factorial = Rational::one();
        for (k, part) in parts.iter_mut().enumerate() {
            if k > 0 {
                power = &power * &form;
                factorial *= Rational::from_integer(BigInt::from(k));
            }
            *part = &*part + &power.scale(&(c / &factorial));
        }
    }
    TruncatedSeries { cap, parts }
}

/// Constant and linear term of `p(exp(y))`: the constant is `p(1)`, the
/// linear term is `Σ c·(m·y)` over the terms `c x^m`.
pub fn linearize(p: &LaurentPoly) -> (Rational, MultiPoly) {
    let n = p.nvars();
    let mut constant = Rational::zero();
    let mut linear = MultiPoly::zero(n);
    for (e, c) in p.terms() {
        constant += c;
        linear = &linear + &exponent_form(e).scale(c);
    }
    (constant, linear)
}

/// Degree-one part of `p(exp(y))`.
pub fn linear_part(p: &LaurentPoly) -> MultiPoly {
    linearize(p).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn x(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 4).unwrap()
    }

    fn y(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 4).unwrap()
    }

    #[test]
    fn exp_of_single_variable() {
        let s = exp_substitute(&x("x1"), 2);
        assert_eq!(s.to_poly(), y("1 + y1 + 1/2*y1^2"));
        assert_eq!(s.part(2), y("1/2*y1^2"));
    }

    #[test]
    fn constants_cancel() {
        assert_eq!(exp_substitute(&x("x1 - 1"), 1).to_poly(), y("y1"));
    }

    #[test]
    fn product_of_exponentials() {
        let s = exp_substitute(&x("x1*x2"), 2);
        assert_eq!(s.to_poly(), y("1 + y1 + y2 + 1/2*(y1^2 + 2*y1*y2 + y2^2)"));
    }

    #[test]
    fn negative_powers_use_exp_minus_y() {
        let s = exp_substitute(&x("x1^-1"), 3);
        assert_eq!(s.to_poly(), y("1 - y1 + 1/2*y1^2 - 1/6*y1^3"));
    }

    #[test]
    fn linear_parts_of_boundary_entries() {
        assert_eq!(linear_part(&x("x3 - x2*x3")), y("-y2"));
        assert_eq!(linear_part(&x("1 - x4")), y("-y4"));
        assert!(linear_part(&x("1")).is_zero());
        let (c, l) = linearize(&x("1 - x1 + x1*x2"));
        assert_eq!(c, rat(1, 1));
        assert_eq!(l, y("y2"));
    }

    #[test]
    fn truncated_product() {
        let a = TruncatedSeries::from_poly(&y("1 + y1"), 1);
        let b = TruncatedSeries::from_poly(&y("1 + y2"), 1);
        assert_eq!(a.mul(&b).to_poly(), y("1 + y1 + y2"));
    }
}
