use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{Domain, Evaluate, ExponentVector, Rational, Ring, RingError};

/// Marker selecting which exponents a [`Poly`] admits.
pub trait PolyKind:
    Clone + Copy + fmt::Debug + Default + PartialEq + Eq + Send + Sync + 'static
{
    /// Whether negative exponents are allowed.
    const LAURENT: bool;
    /// Letter used for variables when printing and parsing.
    const VAR: char;
}

/// Ordinary polynomials `Q[y_1, ..., y_n]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ordinary;

/// Laurent polynomials `Q[x_1^{±1}, ..., x_n^{±1}]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent;

impl PolyKind for Ordinary {
    const LAURENT: bool = false;
    const VAR: char = 'y';
}

impl PolyKind for Laurent {
    const LAURENT: bool = true;
    const VAR: char = 'x';
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms live in a `BTreeMap` keyed by exponent vector, so iteration is in
/// ascending graded-lex order and the representation is canonical: no zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<K: PolyKind> {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
    _kind: PhantomData<K>,
}

pub type MultiPoly = Poly<Ordinary>;
pub type LaurentPoly = Poly<Laurent>;

impl<K: PolyKind> Poly<K> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    pub fn constant(c: Rational, nvars: usize) -> Self {
        Self::monomial(c, ExponentVector::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rational::one(), nvars)
    }

    /// The variable with 0-based index `index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(Rational::one(), ExponentVector::unit(nvars, index))
    }

    /// `c * x^exponents`. Panics on a negative exponent in an ordinary ring.
    pub fn monomial(c: Rational, exponents: ExponentVector) -> Self {
        assert!(
            K::LAURENT || exponents.is_nonnegative(),
            "negative exponent in polynomial ring"
        );
        let nvars = exponents.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Self {
            nvars,
            terms,
            _kind: PhantomData,
        }
    }

    pub fn try_from_terms<I>(nvars: usize, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(RingError::VariableCountMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            if !K::LAURENT && !e.is_nonnegative() {
                return Err(RingError::NegativeExponent);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::zero(self.nvars))
    }

    /// Single term `c x^m`, returned as `(c, m)`.
    pub fn as_monomial(&self) -> Option<(&Rational, &ExponentVector)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, e))
        } else {
            None
        }
    }

    /// Multiply by the monomial `x^shift` (Laurent rings only, or a
    /// nonnegative shift).
    pub fn shift(&self, shift: &ExponentVector) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.add(shift), c.clone()))
            .collect::<BTreeMap<_, _>>();
        assert!(K::LAURENT || terms.keys().all(|e| e.is_nonnegative()));
        Self {
            nvars: self.nvars,
            terms,
            _kind: PhantomData,
        }
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: i64) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            _kind: PhantomData,
        }
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: i64) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            _kind: PhantomData,
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.degree()).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    /// Integer coefficient vector `(c_1, ..., c_n)` when the polynomial is
    /// the linear form `c_1 v_1 + ... + c_n v_n` with integer `c_j`
    /// (zero counts as a linear form).
    pub fn integral_linear_form(&self) -> Option<Vec<BigInt>> {
        let mut coeffs = vec![BigInt::zero(); self.nvars];
        for (e, c) in &self.terms {
            if e.degree() != 1 || !e.is_nonnegative() || !c.is_integer() {
                return None;
            }
            let j = e.as_slice().iter().position(|&x| x == 1)?;
            coeffs[j] = c.to_integer();
        }
        Some(coeffs)
    }

    /// The linear form `Σ c_j v_j`.
    pub fn from_linear_form(coeffs: &[BigInt]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (j, c) in coeffs.iter().enumerate() {
            p.add_term(
                ExponentVector::unit(n, j),
                Rational::from_integer(c.clone()),
            );
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    fn scale_impl(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
            _kind: PhantomData,
        }
    }

    /// Reinterpret in the other polynomial kind. Fails when negative
    /// exponents would land in an ordinary ring.
    pub fn convert<L: PolyKind>(&self) -> Result<Poly<L>, RingError> {
        Poly::<L>::try_from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Canonical serialization: array of `[coefficient, exponents]` pairs
    /// in descending graded-lex order, coefficients as `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(e, c)| json!([c.to_string(), e.as_slice()]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value, nvars: usize) -> Result<Self, RingError> {
        let bad = || RingError::Parse(format!("malformed polynomial {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let c = super::parse_rational(pair[0].as_str().ok_or_else(bad)?)?;
            let e = pair[1]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_i64().map(|x| x as i32).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()?;
            terms.push((ExponentVector::new(e), c));
        }
        Self::try_from_terms(nvars, terms)
    }
}

impl MultiPoly {
    /// Exact division in `Q[y]` by the leading-term division algorithm.
    /// If `divisor` divides `self`, every intermediate remainder has a
    /// leading term divisible by that of `divisor`; the first failure
    /// therefore proves non-divisibility.
    fn div_poly(&self, divisor: &Self) -> Option<Self> {
        let (lead_e, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term() {
            if !lead_e.divides(e) {
                return None;
            }
            let t = Self::monomial(c / lead_c, e.sub(lead_e));
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl LaurentPoly {
    /// Splits `p = x^shift * q` with `q` an ordinary polynomial not
    /// divisible by any variable.
    fn split_monomial(&self) -> (ExponentVector, MultiPoly) {
        let mut keys = self.terms.keys();
        let Some(first) = keys.next() else {
            return (
                ExponentVector::zero(self.nvars),
                MultiPoly::zero(self.nvars),
            );
        };
        let low = keys.fold(first.clone(), |acc, e| acc.meet(e));
        let q = MultiPoly::try_from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.sub(&low), c.clone())),
        )
        .expect("shifted exponents are nonnegative");
        (low, q)
    }

    /// The inverse of a unit `c x^m`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), e.neg()))
    }
}

impl<K: PolyKind> Ring for Poly<K> {
    fn zero_of(nvars: usize) -> Self {
        Poly::zero(nvars)
    }

    fn one_of(nvars: usize) -> Self {
        Poly::one(nvars)
    }

    fn from_rational(c: &Rational, nvars: usize) -> Self {
        Poly::constant(c.clone(), nvars)
    }

    fn nvars(&self) -> usize {
        self.nvars
    }

    fn is_zero_elt(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self.mul_impl(other)
    }

    fn negated(&self) -> Self {
        -self
    }

    fn scale(&self, c: &Rational) -> Self {
        self.scale_impl(c)
    }
}

impl Domain for MultiPoly {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div_poly(divisor)
    }
}

impl Domain for LaurentPoly {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        // The variables are units, so divisibility reduces to the ordinary
        // parts once common monomial factors are split off.
        let (sa, qa) = self.split_monomial();
        let (sb, qb) = divisor.split_monomial();
        let q = qa.div_poly(&qb)?;
        let q: LaurentPoly = q.convert().expect("ordinary into Laurent");
        Some(q.shift(&sa.sub(&sb)))
    }
}

impl<K: PolyKind> Evaluate for Poly<K> {
    fn evaluate(&self, point: &[Rational]) -> Result<Rational, RingError> {
        if point.len() != self.nvars {
            return Err(RingError::VariableCountMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (j, &m) in e.as_slice().iter().enumerate() {
                if m == 0 {
                    continue;
                }
                if m < 0 && point[j].is_zero() {
                    return Err(RingError::ZeroAtPole { var: j + 1 });
                }
                v *= point[j].pow(m);
            }
            acc += v;
        }
        Ok(acc)
    }
}

impl<K: PolyKind> Add for &Poly<K> {
    type Output = Poly<K>;

    fn add(self, other: &Poly<K>) -> Poly<K> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<K: PolyKind> Sub for &Poly<K> {
    type Output = Poly<K>;

    fn sub(self, other: &Poly<K>) -> Poly<K> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<K: PolyKind> Mul for &Poly<K> {
    type Output = Poly<K>;

    fn mul(self, other: &Poly<K>) -> Poly<K> {
        self.mul_impl(other)
    }
}

impl<K: PolyKind> Neg for &Poly<K> {
    type Output = Poly<K>;

    fn neg(self) -> Poly<K> {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            _kind: PhantomData,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<K: PolyKind> $tr for Poly<K> {
            type Output = Poly<K>;

            fn $m(self, other: Poly<K>) -> Poly<K> {
                (&self).$m(&other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<K: PolyKind> Neg for Poly<K> {
    type Output = Poly<K>;

    fn neg(self) -> Poly<K> {
        -&self
    }
}

impl<K: PolyKind> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &m)| m != 0)
                .map(|(j, &m)| {
                    if m == 1 {
                        format!("{}{}", K::VAR, j + 1)
                    } else {
                        format!("{}{}^{}", K::VAR, j + 1, m)
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<K: PolyKind> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
