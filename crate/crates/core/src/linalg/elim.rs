//! Fraction-free elimination over integral domains.
//!
//! Every step `a_ij ← (p·a_ij − a_ic·a_rj) / prev` divides exactly (all
//! intermediate entries are minors of the input), so the same code runs
//! over `Q`, `Q[y]` and `Q[x^±]` without ever forming fractions. After the
//! Gauss–Jordan sweep every pivot equals the last pivot `d`, and solutions
//! over the fraction field are read off as `numerator / d`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::{Domain, Evaluate, Rational, Ring, RingError};

use super::{LinalgError, Matrix};

/// Reduced row echelon form scaled by a common denominator.
#[derive(Debug, Clone)]
pub struct FractionFreeRref<R: Ring> {
    /// The reduced matrix: pivot entries all equal `denom`, other entries
    /// in pivot columns vanish.
    pub reduced: Matrix<R>,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
    /// Common pivot value (1 when the matrix is zero).
    pub denom: R,
}

fn ff_step<R: Domain>(num: R, prev: &R) -> R {
    num.exact_div(prev)
        .unwrap_or_else(|| panic!("fraction-free step is not exact: {num} / {prev}"))
}

/// Chooses the pivot with the fewest terms, by its printed length.
fn pick_pivot<R: Ring>(a: &Matrix<R>, from: usize, col: usize) -> Option<usize> {
    (from..a.rows())
        .filter(|&i| !a[(i, col)].is_zero_elt())
        .min_by_key(|&i| a[(i, col)].to_string().len())
}

/// Fraction-free Gauss–Jordan elimination restricted to the first
/// `pivot_cols` columns (the remaining columns ride along as right-hand
/// sides).
pub fn fraction_free_rref_partial<R: Domain>(
    m: &Matrix<R>,
    pivot_cols: usize,
) -> FractionFreeRref<R> {
    let mut a = m.clone();
    let nvars = m.nvars();
    let mut prev = R::one_of(nvars);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(a.cols()) {
        if r == a.rows() {
            break;
        }
        let Some(p) = pick_pivot(&a, r, c) else {
            continue;
        };
        a.swap_rows(p, r);
        let piv = a[(r, c)].clone();
        for i in 0..a.rows() {
            if i == r {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..a.cols() {
                if j == c {
                    continue;
                }
                let num = piv.times(&a[(i, j)]).minus(&f.times(&a[(r, j)]));
                a[(i, j)] = ff_step(num, &prev);
            }
            a[(i, c)] = R::zero_of(nvars);
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    FractionFreeRref {
        reduced: a,
        pivots,
        denom: prev,
    }
}

pub fn fraction_free_rref<R: Domain>(m: &Matrix<R>) -> FractionFreeRref<R> {
    fraction_free_rref_partial(m, m.cols())
}

/// Rank over the fraction field.
pub fn rank<R: Domain>(m: &Matrix<R>) -> usize {
    let mut a = m.clone();
    let mut prev = R::one_of(m.nvars());
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = pick_pivot(&a, r, c) else {
            continue;
        };
        a.swap_rows(p, r);
        let piv = a[(r, c)].clone();
        for i in r + 1..a.rows() {
            let f = a[(i, c)].clone();
            for j in c + 1..a.cols() {
                let num = piv.times(&a[(i, j)]).minus(&f.times(&a[(r, j)]));
                a[(i, j)] = ff_step(num, &prev);
            }
            a[(i, c)] = R::zero_of(m.nvars());
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Determinant by Bareiss elimination.
pub fn determinant<R: Domain>(m: &Matrix<R>) -> Result<R, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.shape()));
    }
    let n = m.rows();
    let nvars = m.nvars();
    if n == 0 {
        return Ok(R::one_of(nvars));
    }
    let mut a = m.clone();
    let mut prev = R::one_of(nvars);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero_elt()) else {
            return Ok(R::zero_of(nvars));
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(k, k)]
                    .times(&a[(i, j)])
                    .minus(&a[(i, k)].times(&a[(k, j)]));
                a[(i, j)] = ff_step(num, &prev);
            }
            a[(i, k)] = R::zero_of(nvars);
        }
        prev = a[(k, k)].clone();
    }
    Ok(if negate { prev.negated() } else { prev })
}

/// Rank of `m` evaluated at `point`.
pub fn rank_at<T: Clone + Evaluate>(m: &Matrix<T>, point: &[Rational]) -> Result<usize, RingError> {
    Ok(rank(&m.evaluate(point)?))
}

/// Result of [`solve_right`].
#[derive(Debug, Clone)]
pub struct Solution<R: Ring> {
    /// Particular solution numerators; the solution is `numerator / denom`.
    pub numerator: Matrix<R>,
    pub denom: R,
    /// True when every entry of the particular solution lies in the ring;
    /// `denom` is then one.
    pub in_ring: bool,
    /// Basis of the right kernel of `A`, as column vectors with ring
    /// entries.
    pub kernel: Vec<Vec<R>>,
}

impl<R: Domain> Solution<R> {
    /// The particular solution when it has ring entries.
    pub fn ring_solution(&self) -> Option<&Matrix<R>> {
        self.in_ring.then_some(&self.numerator)
    }

    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }
}

/// Solves `A·X = B` over the fraction field of the entries' ring.
///
/// Free variables are set to zero. The particular solution is cleared to
/// ring entries whenever the common denominator divides every numerator.
pub fn solve_right<R: Domain>(a: &Matrix<R>, b: &Matrix<R>) -> Result<Solution<R>, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::ShapeMismatch {
            op: "solve",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let n = a.cols();
    let k = b.cols();
    let nvars = a.nvars();
    let rref = fraction_free_rref_partial(&a.hconcat(b)?, n);
    let rank = rref.pivots.len();
    for i in rank..a.rows() {
        if let Some(j) = (n..n + k).find(|&j| !rref.reduced[(i, j)].is_zero_elt()) {
            return Err(LinalgError::NoSolution { row: i, col: j - n });
        }
    }
    let mut numerator = Matrix::zeros(n, k, nvars);
    for (row, &pc) in rref.pivots.iter().enumerate() {
        for j in 0..k {
            numerator[(pc, j)] = rref.reduced[(row, n + j)].clone();
        }
    }
    let d = rref.denom.clone();
    let cleared: Option<Vec<R>> = numerator.entries().map(|(_, e)| e.exact_div(&d)).collect();
    let (numerator, denom, in_ring) = match cleared {
        Some(data) => (Matrix::from_vec(n, k, nvars, data), R::one_of(nvars), true),
        None => (numerator, d.clone(), false),
    };
    let kernel = kernel_from_rref(&rref, n, nvars);
    Ok(Solution {
        numerator,
        denom,
        in_ring,
        kernel,
    })
}

fn kernel_from_rref<R: Domain>(rref: &FractionFreeRref<R>, n: usize, nvars: usize) -> Vec<Vec<R>> {
    let d = &rref.denom;
    (0..n)
        .filter(|c| !rref.pivots.contains(c))
        .map(|free| {
            let mut v = vec![R::zero_of(nvars); n];
            v[free] = d.clone();
            for (row, &pc) in rref.pivots.iter().enumerate() {
                v[pc] = rref.reduced[(row, free)].negated();
            }
            // scale down to a unit in the free slot when possible
            match v.iter().map(|e| e.exact_div(d)).collect::<Option<Vec<_>>>() {
                Some(w) => w,
                None => v,
            }
        })
        .collect()
}

/// Basis of `{k : A·k = 0}` (column vectors).
pub fn right_kernel<R: Domain>(a: &Matrix<R>) -> Vec<Vec<R>> {
    let rref = fraction_free_rref(a);
    kernel_from_rref(&rref, a.cols(), a.nvars())
}

/// Basis of `{v : v·A = 0}` (row vectors).
pub fn left_kernel<R: Domain>(a: &Matrix<R>) -> Vec<Vec<R>> {
    right_kernel(&a.transpose())
}

/// Pivot rows of a row-space basis: returns rows of `m` spanning its row
/// space, as a fraction-free echelon basis.
pub fn row_space_basis<R: Domain>(m: &Matrix<R>) -> Vec<Vec<R>> {
    let rref = fraction_free_rref(m);
    (0..rref.pivots.len())
        .map(|i| rref.reduced.row(i).to_vec())
        .collect()
}

/// Outcome of [`generic_rank`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericRank {
    pub rank: usize,
    /// True when two random probes disagreed and exact symbolic
    /// elimination decided the rank.
    pub symbolic_fallback: bool,
}

/// Generic rank of a symbolic matrix: rank at a seeded random point,
/// confirmed at a second point; symbolic elimination on disagreement.
pub fn generic_rank<R: Domain + Evaluate>(m: &Matrix<R>, seed: u64) -> GenericRank {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probe = || -> Option<usize> {
        let point: Vec<Rational> = (0..m.nvars())
            .map(|_| {
                let p: i64 = rng.gen_range(2..=997);
                let q: i64 = rng.gen_range(1..=13);
                Rational::new(p.into(), q.into())
            })
            .collect();
        rank_at(m, &point).ok()
    };
    match (probe(), probe()) {
        (Some(a), Some(b)) if a == b => GenericRank {
            rank: a,
            symbolic_fallback: false,
        },
        _ => GenericRank {
            rank: rank(m),
            symbolic_fallback: true,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, LaurentPoly, MultiPoly};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
    }

    fn lx(rows: &[&[&str]]) -> Matrix<LaurentPoly> {
        Matrix::from_rows_in(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| LaurentPoly::parse(s, 2).unwrap())
                        .collect()
                })
                .collect(),
            2,
        )
    }

    #[test]
    fn rank_and_det_of_rationals() {
        let m = q(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(determinant(&m).unwrap(), rat(0, 1));
        let m = q(&[&[2, 1], &[1, 3]]);
        assert_eq!(determinant(&m).unwrap(), rat(5, 1));
        let m = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m).unwrap(), rat(-1, 1));
        assert!(determinant(&q(&[&[1, 2]])).is_err());
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::<Rational>::identity(3, 0);
        let b = q(&[&[1, 2], &[3, 4], &[5, 6]]);
        let s = solve_right(&a, &b).unwrap();
        assert!(s.in_ring && s.is_unique());
        assert_eq!(s.numerator, b);
    }

    #[test]
    fn inconsistent_system() {
        let a = q(&[&[1, 1], &[2, 2]]);
        let b = q(&[&[1], &[3]]);
        assert!(matches!(
            solve_right(&a, &b),
            Err(LinalgError::NoSolution { .. })
        ));
    }

    #[test]
    fn symbolic_solution_leaves_ring() {
        // (x1 - 1)·X = 1 has no Laurent solution
        let a = lx(&[&["x1 - 1"]]);
        let b = lx(&[&["1"]]);
        let s = solve_right(&a, &b).unwrap();
        assert!(!s.in_ring);
        assert_eq!(s.denom, LaurentPoly::parse("x1 - 1", 2).unwrap());
        // (x1 - 1)·X = x1^2 - 1 does
        let b = lx(&[&["x1^2 - 1"]]);
        let s = solve_right(&a, &b).unwrap();
        assert_eq!(
            s.ring_solution().unwrap()[(0, 0)],
            LaurentPoly::parse("x1 + 1", 2).unwrap()
        );
    }

    #[test]
    fn kernels_annihilate() {
        let a = lx(&[
            &["x1 - 1", "x2 - 1", "0"],
            &["x1^2 - x1", "x1*x2 - x1", "x2"],
        ]);
        let ker = right_kernel(&a);
        assert_eq!(ker.len(), 1);
        let k = Matrix::from_rows_in(ker[0].iter().map(|e| vec![e.clone()]).collect(), 2);
        assert!(a.mat_mul(&k).unwrap().is_zero());
        let left = left_kernel(&a.transpose());
        assert_eq!(left.len(), 1);
    }

    #[test]
    fn generic_rank_of_polynomial_matrix() {
        let m: Matrix<MultiPoly> = Matrix::from_rows_in(
            vec![
                vec![
                    MultiPoly::parse("y1", 2).unwrap(),
                    MultiPoly::parse("y2", 2).unwrap(),
                ],
                vec![
                    MultiPoly::parse("y1^2", 2).unwrap(),
                    MultiPoly::parse("y1*y2", 2).unwrap(),
                ],
            ],
            2,
        );
        let g = generic_rank(&m, 7);
        assert_eq!(g.rank, 1);
        assert_eq!(rank(&m), 1);
    }
}
