use std::fmt;

use crate::linalg::Matrix;
use crate::ring::{Evaluate, ExponentVector, LaurentPoly, MultiPoly, Rational, Ring};

use super::ConnectionError;

/// A subtorus of `(C*)ⁿ` cut out by `x_j = x^{m_j}` for some variables,
/// e.g. the resonant component `x₃ = x₁⁻¹x₂⁻¹, x₄ = 1`. Images must only
/// involve free variables.
///
/// Restriction substitutes the monomials; on the `y` side the same data
/// acts linearly, `y_j ↦ m_j·y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Locus {
    nvars: usize,
    images: Vec<Option<ExponentVector>>,
}

impl Locus {
    pub fn whole(nvars: usize) -> Self {
        Self {
            nvars,
            images: vec![None; nvars],
        }
    }

    /// One `x<j> = <monomial>` per line, `#` comments allowed.
    pub fn parse(text: &str, nvars: usize) -> Result<Self, ConnectionError> {
        let mut images = vec![None; nvars];
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| ConnectionError::LocusParse { line: k + 1, msg };
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| bad("expected `x<j> = <monomial>`".into()))?;
            let j: usize = lhs
                .trim()
                .strip_prefix('x')
                .and_then(|s| s.parse().ok())
                .filter(|&j| (1..=nvars).contains(&j))
                .ok_or_else(|| bad(format!("bad variable `{}`", lhs.trim())))?;
            let p = LaurentPoly::parse(rhs.trim(), nvars).map_err(|e| bad(e.to_string()))?;
            let e = match p.as_monomial() {
                Some((c, e)) if c.is_one_elt() => e.clone(),
                _ => return Err(bad(format!("`{}` is not a monic monomial", rhs.trim()))),
            };
            if images[j - 1].is_some() {
                return Err(bad(format!("x{j} assigned twice")));
            }
            images[j - 1] = Some(e);
        }
        for (j, img) in images.iter().enumerate() {
            if let Some(e) = img {
                if let Some(k) = (0..nvars).find(|&k| e.as_slice()[k] != 0 && images[k].is_some()) {
                    return Err(ConnectionError::LocusParse {
                        line: 0,
                        msg: format!("image of x{} involves the bound variable x{}", j + 1, k + 1),
                    });
                }
            }
        }
        Ok(Self { nvars, images })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_whole(&self) -> bool {
        self.images.iter().all(Option::is_none)
    }

    fn image(&self, j: usize) -> ExponentVector {
        self.images[j]
            .clone()
            .unwrap_or_else(|| ExponentVector::unit(self.nvars, j))
    }

    pub fn restrict(&self, p: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in p.terms() {
            let mut m = vec![0i32; self.nvars];
            for (j, &k) in e.as_slice().iter().enumerate() {
                for (slot, v) in m.iter_mut().zip(self.image(j).as_slice()) {
                    *slot += k * v;
                }
            }
            out = out.plus(&LaurentPoly::monomial(c.clone(), ExponentVector::new(m)));
        }
        out
    }

    pub fn restrict_linear(&self, p: &MultiPoly) -> MultiPoly {
        let n = self.nvars;
        let forms: Vec<MultiPoly> = (0..n)
            .map(|j| {
                let mut f = MultiPoly::zero(n);
                for (k, &v) in self.image(j).as_slice().iter().enumerate() {
                    if v != 0 {
                        f = f.plus(&MultiPoly::var(n, k).scale(&Rational::from_integer(v.into())));
                    }
                }
                f
            })
            .collect();
        let mut out = MultiPoly::zero(n);
        for (e, c) in p.terms() {
            let mut t = MultiPoly::constant(c.clone(), n);
            for (j, &k) in e.as_slice().iter().enumerate() {
                t = t.times(&forms[j].pow(k as u32));
            }
            out = out.plus(&t);
        }
        out
    }

    pub fn restrict_matrix(&self, m: &Matrix<LaurentPoly>) -> Matrix<LaurentPoly> {
        m.map(self.nvars, |e| self.restrict(e))
    }

    pub fn restrict_linear_matrix(&self, m: &Matrix<MultiPoly>) -> Matrix<MultiPoly> {
        m.map(self.nvars, |e| self.restrict_linear(e))
    }

    /// Whether a torus point satisfies the defining equations.
    pub fn contains(&self, t: &[Rational]) -> bool {
        t.len() == self.nvars
            && self.images.iter().enumerate().all(|(j, img)| match img {
                None => true,
                Some(e) => LaurentPoly::monomial(Rational::from_integer(1.into()), e.clone())
                    .evaluate(t)
                    .is_ok_and(|v| v == t[j]),
            })
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter_map(|(j, e)| {
                e.as_ref().map(|e| {
                    format!(
                        "x{} = {}",
                        j + 1,
                        LaurentPoly::monomial(Rational::from_integer(1.into()), e.clone())
                    )
                })
            })
            .collect();
        if parts.is_empty() {
            write!(f, "(whole torus)")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn resonant() -> Locus {
        Locus::parse("x3 = x1^-1*x2^-1\nx4 = 1\n", 4).unwrap()
    }

    #[test]
    fn restricts_resonance_ideal_to_zero() {
        let l = resonant();
        let p = LaurentPoly::parse("x1*x2*x3 - 1", 4).unwrap();
        assert!(l.restrict(&p).is_zero());
        assert!(l
            .restrict(&LaurentPoly::parse("x4 - 1", 4).unwrap())
            .is_zero());
        assert_eq!(
            l.restrict(&LaurentPoly::parse("x1", 4).unwrap()),
            LaurentPoly::parse("x1", 4).unwrap()
        );
    }

    #[test]
    fn linear_side_matches_linearization() {
        let l = resonant();
        let y = |s: &str| MultiPoly::parse(s, 4).unwrap();
        assert!(l.restrict_linear(&y("y1 + y2 + y3")).is_zero());
        assert_eq!(l.restrict_linear(&y("y3^2")), y("y1^2 + 2*y1*y2 + y2^2"));
    }

    #[test]
    fn membership() {
        let l = resonant();
        assert!(l.contains(&[rat(2, 1), rat(3, 1), rat(1, 6), rat(1, 1)]));
        assert!(!l.contains(&vec![rat(2, 1); 4]));
    }

    #[test]
    fn rejects_bound_variable_in_image() {
        assert!(Locus::parse("x1 = x2\nx2 = x3", 3).is_err());
        assert!(Locus::parse("x1 = 2*x2", 3).is_err());
    }
}
