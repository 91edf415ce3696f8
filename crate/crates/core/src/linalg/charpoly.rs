use std::fmt;

use num_bigint::BigInt;

use crate::ring::{Evaluate, Rational, Ring, RingError};

use super::{LinalgError, Matrix};

/// Monic characteristic polynomial `det(zI − M)`, coefficients stored in
/// ascending powers of `z`.
#[derive(Clone, PartialEq, Eq)]
pub struct CharPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> CharPoly<R> {
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(
            coeffs.last().is_some_and(|c| c.is_one_elt()),
            "characteristic polynomial must be monic"
        );
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    /// Divides by `(z − root)` synthetically; `None` when the remainder is
    /// nonzero.
    pub fn deflate(&self, root: &R) -> Option<Self> {
        let n = self.degree();
        if n == 0 {
            return None;
        }
        let mut quot = vec![R::zero_of(self.nvars()); n];
        quot[n - 1] = self.coeffs[n].clone();
        for k in (1..n).rev() {
            quot[k - 1] = self.coeffs[k].plus(&root.times(&quot[k]));
        }
        let rem = self.coeffs[0].plus(&root.times(&quot[0]));
        rem.is_zero_elt().then_some(Self { coeffs: quot })
    }

    /// Multiplicity of `root`, dividing out `(z − root)` as often as exact.
    pub fn multiplicity(&self, root: &R) -> (usize, Self) {
        let mut cur = self.clone();
        let mut k = 0;
        while let Some(next) = cur.deflate(root) {
            cur = next;
            k += 1;
        }
        (k, cur)
    }

    /// Evaluates the polynomial at `z := value`.
    pub fn eval(&self, value: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero_of(self.nvars()), |acc, c| acc.times(value).plus(c))
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<R>) -> Result<Matrix<R>, LinalgError> {
        if !m.is_square() {
            return Err(LinalgError::NotSquare(m.shape()));
        }
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n, m.nvars());
        for c in self.coeffs.iter().rev() {
            acc = acc.mat_mul(m)?;
            for i in 0..n {
                acc[(i, i)] = acc[(i, i)].plus(c);
            }
        }
        Ok(acc)
    }
}

impl<R: Ring + Evaluate> CharPoly<R> {
    pub fn evaluate_at(&self, point: &[Rational]) -> Result<CharPoly<Rational>, RingError> {
        Ok(CharPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.evaluate(point))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// `det(zI − M)` by the Faddeev–LeVerrier recurrence, which needs only ring
/// operations and division by the integers `1..n`.
pub fn char_poly<R: Ring>(m: &Matrix<R>) -> Result<CharPoly<R>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.shape()));
    }
    let n = m.rows();
    let nvars = m.nvars();
    let mut coeffs = vec![R::zero_of(nvars); n + 1];
    coeffs[n] = R::one_of(nvars);
    // N_k = M·N_{k-1} + c_{n-k+1}·I, c_{n-k} = −tr(M·N_k)/k
    let mut nk = Matrix::<R>::zeros(n, n, nvars);
    for k in 1..=n {
        let mut next = m.mat_mul(&nk)?;
        for i in 0..n {
            next[(i, i)] = next[(i, i)].plus(&coeffs[n - k + 1]);
        }
        let tr = m.mat_mul(&next)?.trace();
        let inv_k = Rational::new(BigInt::from(-1), BigInt::from(k));
        coeffs[n - k] = tr.scale(&inv_k);
        nk = next;
    }
    Ok(CharPoly { coeffs })
}

impl<R: Ring> fmt::Display for CharPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_elt() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let zk = match k {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{k}"),
            };
            if c.is_one_elt() && k > 0 {
                write!(f, "{zk}")?;
            } else if k == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{zk}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for CharPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPoly({self})")
    }
}
