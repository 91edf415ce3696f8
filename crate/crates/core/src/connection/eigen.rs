//! Certified eigenvalue factorizations.
//!
//! Candidates come from cheap specializations; every reported factor is
//! then proven by exact synthetic division of the symbolic characteristic
//! polynomial, and the final quotient must be exactly `1`. A wrong
//! candidate can therefore cost time but never produce a wrong answer.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{char_poly, CharPoly, Matrix};
use crate::ring::{ExponentVector, LaurentPoly, MultiPoly, Rational, Ring};

use super::ConnectionError;

/// A certified eigenvalue: a monomial `x^m` or an integral linear form
/// `Σ c_j y_j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Eigenvalue {
    Monomial(ExponentVector),
    LinearForm(Vec<BigInt>),
}

impl Eigenvalue {
    /// Exponent or coefficient vector.
    pub fn vector(&self) -> Vec<BigInt> {
        match self {
            Eigenvalue::Monomial(e) => e.as_slice().iter().map(|&m| BigInt::from(m)).collect(),
            Eigenvalue::LinearForm(c) => c.clone(),
        }
    }

    /// The linear form with the same coefficients as the exponents of a
    /// monomial (`log` under `x = exp(y)`); linear forms map to themselves.
    pub fn log(&self) -> Eigenvalue {
        Eigenvalue::LinearForm(self.vector())
    }

    /// Value at a rational point (`t` for monomials, `λ` for forms).
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        match self {
            Eigenvalue::Monomial(e) => e
                .as_slice()
                .iter()
                .zip(point)
                .fold(Rational::one(), |acc, (&m, t)| acc * t.pow(m)),
            Eigenvalue::LinearForm(c) => {
                c.iter().zip(point).fold(Rational::zero(), |acc, (c, l)| {
                    acc + Rational::from_integer(c.clone()) * l
                })
            }
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Monomial(e) => {
                write!(f, "{}", LaurentPoly::monomial(Rational::one(), e.clone()))
            }
            Eigenvalue::LinearForm(c) => write!(f, "{}", MultiPoly::from_linear_form(c)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenFactor {
    pub value: Eigenvalue,
    pub multiplicity: usize,
}

/// `char_poly = Π (z − value)^multiplicity`, each factor certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenReport {
    pub size: usize,
    pub factors: Vec<EigenFactor>,
}

impl EigenReport {
    fn new(size: usize, mut factors: Vec<EigenFactor>) -> Self {
        factors.sort_by(|a, b| a.value.cmp(&b.value));
        Self { size, factors }
    }

    /// Values with repetition, in report order.
    pub fn multiset(&self) -> Vec<Eigenvalue> {
        self.factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.value.clone(), f.multiplicity))
            .collect()
    }

    pub fn multiplicity_of(&self, v: &Eigenvalue) -> usize {
        self.factors
            .iter()
            .find(|f| &f.value == v)
            .map_or(0, |f| f.multiplicity)
    }

    /// Monomial spectrum mapped through `x^m ↦ m·y`.
    pub fn log(&self) -> EigenReport {
        EigenReport::new(
            self.size,
            self.factors
                .iter()
                .map(|f| EigenFactor {
                    value: f.value.log(),
                    multiplicity: f.multiplicity,
                })
                .collect(),
        )
    }
}

impl fmt::Display for EigenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("{} (mult {})", x.value, x.multiplicity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

const PRIMES: [i64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

fn prime_probe(n: usize, offset: usize) -> Vec<Rational> {
    assert!(
        n + offset <= PRIMES.len(),
        "too many variables for the prime probes"
    );
    PRIMES[offset..offset + n]
        .iter()
        .map(|&p| Rational::from_integer(p.into()))
        .collect()
}

fn valuation_int(mut a: BigInt, p: &BigInt) -> i64 {
    let mut v = 0;
    while (&a % p).is_zero() {
        a /= p;
        v += 1;
    }
    v
}

fn valuation(r: &Rational, p: &BigInt) -> i64 {
    valuation_int(r.numer().clone(), p) - valuation_int(r.denom().clone(), p)
}

/// Root valuations at `p` read off the Newton polygon; `None` when some
/// slope is not an integer.
fn newton_valuations(coeffs: &[Rational], p: &BigInt) -> Option<Vec<i64>> {
    let pts: Vec<(i64, i64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64, valuation(c, p)))
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i + 1 < pts.len() {
        let (xi, yi) = pts[i];
        // next hull vertex: smallest slope, farthest on ties
        let mut best = i + 1;
        for j in i + 1..pts.len() {
            let (xj, yj) = pts[j];
            let (xb, yb) = pts[best];
            // (yj − yi)/(xj − xi) ≤ (yb − yi)/(xb − xi)
            if (yj - yi) * (xb - xi) <= (yb - yi) * (xj - xi) {
                best = j;
            }
        }
        let (xb, yb) = pts[best];
        let (run, rise) = (xb - xi, yb - yi);
        if rise % run != 0 {
            return None;
        }
        out.extend(std::iter::repeat_n(-(rise / run), run as usize));
        i = best;
    }
    Some(out)
}

fn cartesian(sets: &[Vec<i64>]) -> Vec<Vec<i64>> {
    sets.iter().fold(vec![Vec::new()], |acc, s| {
        acc.iter()
            .flat_map(|prefix| {
                s.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

fn dedup_sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v.dedup();
    v
}

fn prime_power(probe: &[Rational], m: &[i64]) -> Rational {
    probe
        .iter()
        .zip(m)
        .fold(Rational::one(), |acc, (p, &k)| acc * p.pow(k as i32))
}

fn strip<R: Ring>(cp: &CharPoly<R>, root: &R) -> (usize, CharPoly<R>) {
    cp.multiplicity(root)
}

/// Certifies that the eigenvalues of a Laurent matrix are monomials.
pub fn eigen_monomials(phi: &Matrix<LaurentPoly>) -> Result<EigenReport, ConnectionError> {
    let n = phi.nvars();
    let size = phi.rows();
    super::check_identity_at_one(0, phi)?;
    let cp = char_poly(phi)?;
    let probe = prime_probe(n, 0);
    let cross = prime_probe(n, n);
    let cp_p = cp.evaluate_at(&probe)?;
    let mut per_prime = Vec::with_capacity(n);
    for p in &probe {
        let vals = newton_valuations(cp_p.coeffs(), p.numer()).ok_or_else(|| {
            ConnectionError::NonIntegerRootAtProbe {
                probe: format_point(&probe),
            }
        })?;
        per_prime.push(dedup_sorted(vals));
    }
    let mut rem_p = cp_p.clone();
    let mut rem_sym = cp.clone();
    let mut cp_q = cp.evaluate_at(&cross)?;
    let mut factors = Vec::new();
    for m in cartesian(&per_prime) {
        let (k, rest) = strip(&rem_p, &prime_power(&probe, &m));
        if k == 0 {
            continue;
        }
        rem_p = rest;
        let e = ExponentVector::new(m.iter().map(|&v| v as i32).collect());
        // cross-check at the second probe before the symbolic division
        let (kq, rest_q) = strip(&cp_q, &prime_power(&cross, &m));
        if kq < k {
            return Err(ConnectionError::FactorizationFailed {
                remaining: format!("candidate x^{e:?} fails the cross-check probe"),
            });
        }
        cp_q = rest_q;
        let root = LaurentPoly::monomial(Rational::one(), e.clone());
        let (ks, rest_sym) = strip(&rem_sym, &root);
        if ks != k {
            return Err(ConnectionError::FactorizationFailed {
                remaining: format!("{rest_sym}"),
            });
        }
        rem_sym = rest_sym;
        factors.push(EigenFactor {
            value: Eigenvalue::Monomial(e),
            multiplicity: k,
        });
    }
    if rem_p.degree() > 0 {
        return Err(ConnectionError::NonIntegerRootAtProbe {
            probe: format_point(&probe),
        });
    }
    if rem_sym.degree() != 0 || !rem_sym.coeffs()[0].is_one_elt() {
        return Err(ConnectionError::FactorizationFailed {
            remaining: rem_sym.to_string(),
        });
    }
    Ok(EigenReport::new(size, factors))
}

/// Integer roots of a monic rational polynomial, with multiplicities.
fn integer_roots(cp: &CharPoly<Rational>) -> (Vec<(BigInt, usize)>, CharPoly<Rational>) {
    let mut out = Vec::new();
    let (k0, mut rest) = strip(cp, &Rational::zero());
    if k0 > 0 {
        out.push((BigInt::zero(), k0));
    }
    // Cauchy bound
    let bound: BigInt = rest
        .coeffs()
        .iter()
        .map(|c| c.abs().ceil().to_integer())
        .max()
        .unwrap_or_default()
        + 1;
    let limit = bound.to_i64().unwrap_or(i64::MAX).min(1 << 20);
    for r in 1..=limit {
        if rest.degree() == 0 {
            break;
        }
        for s in [r, -r] {
            let (k, next) = strip(&rest, &Rational::from_integer(s.into()));
            if k > 0 {
                out.push((s.into(), k));
                rest = next;
            }
        }
    }
    (out, rest)
}

/// Certifies that the eigenvalues of a matrix of linear forms are integral
/// linear forms. `seed` fixes the generic probe point.
pub fn eigen_linear_forms(
    omega: &Matrix<MultiPoly>,
    seed: u64,
) -> Result<EigenReport, ConnectionError> {
    let n = omega.nvars();
    let size = omega.rows();
    for ((row, col), e) in omega.entries() {
        if e.integral_linear_form().is_none() {
            return Err(ConnectionError::NotIntegralLinearForm {
                row: row + 1,
                col: col + 1,
            });
        }
    }
    let cp = char_poly(omega)?;
    let mut coordinate_values = Vec::with_capacity(n);
    for j in 0..n {
        let unit: Vec<Rational> = (0..n)
            .map(|i| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let (roots, rest) = integer_roots(&cp.evaluate_at(&unit)?);
        if rest.degree() > 0 {
            return Err(ConnectionError::FactorizationFailed {
                remaining: format!("non-integral root at e{}: {rest}", j + 1),
            });
        }
        coordinate_values.push(
            roots
                .iter()
                .map(|(r, _)| r.to_i64().expect("small root"))
                .collect::<Vec<_>>(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generic: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=997)).collect();
    let generic_q: Vec<Rational> = generic
        .iter()
        .map(|&g| Rational::from_integer(g.into()))
        .collect();
    let cp_g = cp.evaluate_at(&generic_q)?;
    let mut rem_sym = cp.clone();
    let mut factors = Vec::new();
    for c in cartesian(&coordinate_values) {
        let value: i64 = c.iter().zip(&generic).map(|(a, b)| a * b).sum();
        if !cp_g.eval(&Rational::from_integer(value.into())).is_zero() {
            continue;
        }
        let coeffs: Vec<BigInt> = c.iter().map(|&v| v.into()).collect();
        let (k, rest) = strip(&rem_sym, &MultiPoly::from_linear_form(&coeffs));
        // k = 0 means a coincidence at the generic point
        if k > 0 {
            rem_sym = rest;
            factors.push(EigenFactor {
                value: Eigenvalue::LinearForm(coeffs),
                multiplicity: k,
            });
        }
    }
    if rem_sym.degree() != 0 || !rem_sym.coeffs()[0].is_one_elt() {
        return Err(ConnectionError::FactorizationFailed {
            remaining: rem_sym.to_string(),
        });
    }
    Ok(EigenReport::new(size, factors))
}

fn format_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::parse_matrix;
    use crate::ring::rat;

    #[test]
    fn newton_polygon() {
        // (z − 2)(z − 1/4) = z² − 9/4 z + 1/2
        let c = vec![rat(1, 2), rat(-9, 4), rat(1, 1)];
        let mut v = newton_valuations(&c, &BigInt::from(2)).unwrap();
        v.sort();
        assert_eq!(v, vec![-2, 1]);
        // z² − 2 has roots of valuation 1/2
        assert!(newton_valuations(&[rat(-2, 1), rat(0, 1), rat(1, 1)], &BigInt::from(2)).is_none());
    }

    #[test]
    fn triangular_monomials() {
        let m: Matrix<LaurentPoly> = parse_matrix("x1*x2, 0\nx2 - 1, 1", 4).unwrap();
        let r = eigen_monomials(&m).unwrap();
        assert_eq!(r.to_string(), "{1 (mult 1), x1*x2 (mult 1)}");
    }

    #[test]
    fn inverse_monomials() {
        let m: Matrix<LaurentPoly> = parse_matrix("x1^-1, 1 - x2\n0, x2^2", 2).unwrap();
        let r = eigen_monomials(&m).unwrap();
        assert_eq!(r.multiset().len(), 2);
        assert_eq!(
            r.multiplicity_of(&Eigenvalue::Monomial(vec![-1, 0].into())),
            1
        );
    }

    #[test]
    fn non_monomial_spectrum() {
        // eigenvalues x1 and 2 − x1; the second vanishes at the probe
        let m: Matrix<LaurentPoly> = parse_matrix("1, x1 - 1\nx1 - 1, 1", 1).unwrap();
        assert!(eigen_monomials(&m).is_err());
    }

    #[test]
    fn linear_forms() {
        let m: Matrix<MultiPoly> =
            parse_matrix("y1 + y2, 0, 0\n0, y1 + y2, -y3\n0, 0, 0", 3).unwrap();
        let r = eigen_linear_forms(&m, 1).unwrap();
        assert_eq!(r.to_string(), "{0 (mult 1), y1 + y2 (mult 2)}");
        let z: Matrix<MultiPoly> = Matrix::zeros(3, 3, 2);
        assert_eq!(
            eigen_linear_forms(&z, 1).unwrap().to_string(),
            "{0 (mult 3)}"
        );
    }

    #[test]
    fn non_integral_forms_rejected() {
        let m: Matrix<MultiPoly> = parse_matrix("0, y1\ny2, 0", 2).unwrap();
        assert!(matches!(
            eigen_linear_forms(&m, 1),
            Err(ConnectionError::FactorizationFailed { .. })
        ));
        let m: Matrix<MultiPoly> = parse_matrix("1/2 y1", 2).unwrap();
        assert!(matches!(
            eigen_linear_forms(&m, 1),
            Err(ConnectionError::NotIntegralLinearForm { row: 1, col: 1 })
        ));
    }
}
