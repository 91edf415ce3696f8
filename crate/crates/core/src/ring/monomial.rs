use std::cmp::Ordering;

/// Exponents of a monomial `x_1^{m_1} ... x_n^{m_n}`.
///
/// Ordered graded-lexicographically: total degree first, then the first
/// differing exponent (larger exponent of an earlier variable is larger).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<i32>);

impl ExponentVector {
    pub fn new(exponents: Vec<i32>) -> Self {
        Self(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    /// The exponent vector of the single variable `index` (0-based).
    pub fn unit(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|e| -e).collect())
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `self` divides `other` in the polynomial monoid.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(v: Vec<i32>) -> Self {
        Self(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = ExponentVector::new(vec![2, 0]);
        let b = ExponentVector::new(vec![1, 1]);
        let c = ExponentVector::new(vec![0, 1]);
        let d = ExponentVector::new(vec![0, 3]);
        assert!(a > b);
        assert!(b > c);
        assert!(d > a);
        assert!(ExponentVector::new(vec![-1, 0]) < ExponentVector::zero(2));
    }
}
