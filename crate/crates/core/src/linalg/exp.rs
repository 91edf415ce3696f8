use num_bigint::BigInt;

use crate::ring::{MultiPoly, Rational, Ring, TruncatedSeries};

use super::{LinalgError, Matrix};

/// `exp(M) = Σ_{k ≤ cap} M^k / k!` for a matrix of polynomials without
/// constant term, truncated at total degree `cap`.
///
/// Since every entry has order at least one, `M^k` starts in degree `k`
/// and the truncated sum is exact up to degree `cap`.
pub fn mat_exp_truncated(
    m: &Matrix<MultiPoly>,
    cap: usize,
) -> Result<Matrix<TruncatedSeries>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.shape()));
    }
    if let Some(((i, j), _)) = m.entries().find(|(_, e)| !e.constant_term().is_zero_elt()) {
        return Err(LinalgError::NonzeroConstantTerm { row: i, col: j });
    }
    let n = m.rows();
    let nvars = m.nvars();
    let mut sum = Matrix::<MultiPoly>::identity(n, nvars);
    let mut power = Matrix::<MultiPoly>::identity(n, nvars);
    let mut fact = BigInt::from(1);
    for k in 1..=cap {
        power = m.mat_mul(&power)?.map(nvars, |e| e.truncate(cap as i64));
        fact *= k;
        let inv = Rational::new(BigInt::from(1), fact.clone());
        sum = sum.mat_add(&power.mat_scale(&inv))?;
    }
    Ok(sum.map(nvars, |e| TruncatedSeries::from_poly(e, cap)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn nilpotent_block() {
        let m = Matrix::from_rows_in(vec![vec![y("0"), y("y1")], vec![y("0"), y("0")]], 2);
        let e = mat_exp_truncated(&m, 2).unwrap();
        assert_eq!(e[(0, 1)].to_poly(), y("y1"));
        assert_eq!(e[(0, 0)].to_poly(), y("1"));
    }

    #[test]
    fn scalar_exponential() {
        let m = Matrix::from_rows_in(vec![vec![y("y1 + y2")]], 2);
        let e = mat_exp_truncated(&m, 2).unwrap();
        assert_eq!(
            e[(0, 0)].to_poly(),
            y("1 + y1 + y2 + 1/2 y1^2 + y1 y2 + 1/2 y2^2")
        );
    }

    #[test]
    fn rejects_constant_terms() {
        let m = Matrix::from_rows_in(vec![vec![y("1 + y1")]], 2);
        assert!(matches!(
            mat_exp_truncated(&m, 2),
            Err(LinalgError::NonzeroConstantTerm { row: 0, col: 0 })
        ));
    }
}
