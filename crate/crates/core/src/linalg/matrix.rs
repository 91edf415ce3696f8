use std::fmt;
use std::ops::{Index, IndexMut};

use crate::ring::{
    exp_substitute, linear_part, Evaluate, LaurentPoly, MultiPoly, Rational, Ring, RingError,
    TruncatedSeries,
};

use super::LinalgError;

/// Dense matrix stored row-major.
///
/// Matrices act on row vectors from the right (`v ↦ v·M`), so a chain map
/// `Φ` of a complex with boundaries `Δ` satisfies `Δ^q · Φ^{q+1} = Φ^q · Δ^q`
/// as a literal matrix identity. `nvars` is the variable count of the
/// entries' ring, kept so that empty matrices still know their ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, nvars: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Self {
            rows,
            cols,
            nvars,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| ((k / cols, k % cols), v))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self::from_vec(self.cols, self.rows, self.nvars, data)
    }

    pub fn map<U: Clone>(&self, nvars: usize, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix::from_vec(
            self.rows,
            self.cols,
            nvars,
            self.data.iter().map(f).collect(),
        )
    }

    pub fn try_map<U: Clone, E>(
        &self,
        nvars: usize,
        f: impl Fn(&T) -> Result<U, E>,
    ) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix::from_vec(self.rows, self.cols, nvars, data))
    }

    /// Rows and columns picked out by index lists, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Self::from_vec(rows.len(), cols.len(), self.nvars, data)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "hconcat",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self::from_vec(
            self.rows,
            self.cols + other.cols,
            self.nvars,
            data,
        ))
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        Self::from_vec(rows, cols, nvars, vec![R::zero_of(nvars); rows * cols])
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m[(i, i)] = R::one_of(nvars);
        }
        m
    }

    /// Builds a matrix from rows; `nvars` is taken from the first entry.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let nvars = rows.iter().flatten().next().map(|e| e.nvars()).unwrap_or(0);
        Self::from_rows_in(rows, nvars)
    }

    pub fn from_rows_in(rows: Vec<Vec<R>>, nvars: usize) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_vec(r, c, nvars, rows.into_iter().flatten().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero_elt())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.entries().all(|((i, j), e)| {
                if i == j {
                    e.is_one_elt()
                } else {
                    e.is_zero_elt()
                }
            })
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero_elt() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero_elt() {
                        out[(i, j)] = out[(i, j)].plus(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(&R, &R) -> R,
    ) -> Result<Self, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self::from_vec(self.rows, self.cols, self.nvars, data))
    }

    pub fn mat_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "add", |a, b| a.plus(b))
    }

    pub fn mat_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "sub", |a, b| a.minus(b))
    }

    pub fn mat_scale(&self, c: &Rational) -> Self {
        self.map(self.nvars, |e| e.scale(c))
    }

    /// Multiplies every entry by the ring element `r`.
    pub fn mul_elem(&self, r: &R) -> Self {
        self.map(self.nvars, |e| e.times(r))
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero_of(self.nvars), |acc, i| acc.plus(&self[(i, i)]))
    }

    /// Positions of the nonzero entries of `self - other`.
    pub fn differing_entries(&self, other: &Self) -> Vec<(usize, usize)> {
        assert_eq!(self.shape(), other.shape());
        self.entries()
            .zip(other.data.iter())
            .filter(|((_, a), b)| a != b)
            .map(|((ij, _), _)| ij)
            .collect()
    }
}

impl<T: Clone + Evaluate> Matrix<T> {
    /// Entrywise evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Matrix<Rational>, RingError> {
        self.try_map(0, |e| e.evaluate(point))
    }
}

impl Matrix<LaurentPoly> {
    /// Entrywise degree-one part under `x = exp(y)`.
    pub fn linear_part(&self) -> Matrix<MultiPoly> {
        self.map(self.nvars, linear_part)
    }

    /// Entrywise `x = exp(y)` expansion truncated at `cap`.
    pub fn exp_substitute(&self, cap: usize) -> Matrix<TruncatedSeries> {
        self.map(self.nvars, |e| exp_substitute(e, cap))
    }

    /// Value at `x = (1, ..., 1)`.
    pub fn at_one(&self) -> Matrix<Rational> {
        let ones = vec![<Rational as Ring>::one_of(0); self.nvars];
        self.evaluate(&ones).expect("1 is never a pole")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display + Clone> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|e| e.to_string()).collect();
        let mut widths = vec![0; self.cols];
        for (k, c) in cells.iter().enumerate() {
            widths[k % self.cols.max(1)] = widths[k % self.cols.max(1)].max(c.chars().count());
        }
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                let c = &cells[i * self.cols + j];
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{c:>w$}", w = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display + Clone> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}
