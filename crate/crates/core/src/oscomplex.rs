//! Orlik–Solomon algebra on the nbc basis, the Aomoto complex, and finite
//! cochain complexes of free modules in general.
//!
//! # Rewriting to the nbc basis
//!
//! A monomial `a_S` is reduced as follows. If `S` contains a minimal set
//! with empty intersection, `a_S = 0`. Otherwise take the
//! lexicographically largest broken circuit `T = C \ {c₀}` inside `S`.
//! The relation `∂a_C = Σ_k (−1)^k a_{C∖c_k} = 0` expresses `a_T` through
//! the sets `C ∖ c_k` (k ≥ 1), each of which replaces an element of `T` by
//! the smaller `c₀`. Wedging back with `a_{S∖T}` therefore produces sets
//! that are strictly smaller than `S` in lexicographic order, and since
//! there are finitely many `|S|`-sets the rewriting terminates.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arrangement::{Arrangement, IndexSet, NbcBasis};
use crate::linalg::{rank, Matrix};
use crate::ring::{Evaluate, MultiPoly, Rational, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("boundaries {degree} and {next} do not compose to zero (entry ({row},{col}))", next = degree + 1)]
    NotAComplex {
        degree: usize,
        row: usize,
        col: usize,
    },
    #[error("boundary {degree} has shape {got:?}, expected {expected:?}")]
    ShapeMismatch {
        degree: usize,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Sign and sorted union of `a ∧ b`, or `None` when they share an index.
pub fn wedge(a: &[usize], b: &[usize]) -> Option<(i64, IndexSet)> {
    let mut seq: Vec<usize> = a.iter().chain(b).copied().collect();
    // sign of the sorting permutation, counted by inversions
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return None;
            }
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    seq.sort_unstable();
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, seq))
}

/// Element of one graded piece of the OS algebra, keyed by nbc sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OsElement {
    pub terms: BTreeMap<IndexSet, i64>,
}

impl OsElement {
    pub fn coefficient(&self, s: &[usize]) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, s: IndexSet, c: i64) {
        let e = self.terms.entry(s.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&s);
        }
    }
}

/// Expresses `a_S` (S strictly increasing) in the nbc basis.
pub fn reduce_to_nbc(basis: &NbcBasis, s: &[usize]) -> OsElement {
    let deps = basis.dependencies();
    let mut pending: BTreeMap<IndexSet, i64> = BTreeMap::new();
    pending.insert(s.to_vec(), 1);
    let mut out = OsElement::default();
    // always rewrite the largest pending set first; new sets are smaller
    while let Some((set, c)) = pending.pop_last() {
        if c == 0 || deps.contains_empty_min(&set) {
            continue;
        }
        let Some(circuit) = deps.largest_broken_in(&set) else {
            out.add_term(set, c);
            continue;
        };
        let t = &circuit[1..];
        let rest: IndexSet = set.iter().copied().filter(|i| !t.contains(i)).collect();
        let (sign, _) = wedge(t, &rest).expect("disjoint by construction");
        // a_T = −Σ_{k≥1} (−1)^k a_{C∖c_k}
        for k in 1..circuit.len() {
            let face: IndexSet = [&circuit[..k], &circuit[k + 1..]].concat();
            let coeff = if k % 2 == 0 { -1 } else { 1 };
            if let Some((s2, term)) = wedge(&face, &rest) {
                *pending.entry(term).or_insert(0) += c * sign * coeff * s2;
            }
        }
    }
    out
}

/// Finite cochain complex `C⁰ → C¹ → … → C^N` of free modules, with
/// boundary `δ^q` stored as a `dim C^q × dim C^{q+1}` matrix acting on row
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingComplex<R: Ring> {
    dims: Vec<usize>,
    nvars: usize,
    boundaries: Vec<Matrix<R>>,
}

impl<R: Ring> RingComplex<R> {
    /// Checks shapes and `δ^q·δ^{q+1} = 0`.
    pub fn new(boundaries: Vec<Matrix<R>>, nvars: usize) -> Result<Self, ComplexError> {
        let mut dims = Vec::with_capacity(boundaries.len() + 1);
        for (q, d) in boundaries.iter().enumerate() {
            if q == 0 {
                dims.push(d.rows());
            } else if d.rows() != dims[q] {
                return Err(ComplexError::ShapeMismatch {
                    degree: q,
                    expected: (dims[q], d.cols()),
                    got: d.shape(),
                });
            }
            dims.push(d.cols());
        }
        let c = Self {
            dims,
            nvars,
            boundaries,
        };
        c.check_complex()?;
        Ok(c)
    }

    fn check_complex(&self) -> Result<(), ComplexError> {
        for q in 0..self.boundaries.len().saturating_sub(1) {
            let p = self.boundaries[q]
                .mat_mul(&self.boundaries[q + 1])
                .expect("shapes checked");
            let bad = p
                .entries()
                .find(|(_, e)| !e.is_zero_elt())
                .map(|(ij, _)| ij);
            if let Some((row, col)) = bad {
                return Err(ComplexError::NotAComplex {
                    degree: q,
                    row,
                    col,
                });
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `δ^q`.
    pub fn boundary(&self, q: usize) -> &Matrix<R> {
        &self.boundaries[q]
    }

    pub fn boundaries(&self) -> &[Matrix<R>] {
        &self.boundaries
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

impl<R: Ring + Evaluate> RingComplex<R> {
    /// Entrywise evaluation; the complex property is re-verified.
    pub fn specialize(&self, point: &[Rational]) -> Result<RingComplex<Rational>, ComplexError> {
        if point.len() != self.nvars {
            return Err(RingError::VariableCountMismatch {
                expected: self.nvars,
                got: point.len(),
            }
            .into());
        }
        let boundaries = self
            .boundaries
            .iter()
            .map(|b| b.evaluate(point))
            .collect::<Result<Vec<_>, _>>()?;
        RingComplex::new(boundaries, 0)
    }
}

impl RingComplex<Rational> {
    /// `h^q = dim C^q − rank δ^q − rank δ^{q−1}`.
    pub fn cohomology_betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(rank).collect();
        (0..self.dims.len())
            .map(|q| {
                let out = ranks.get(q).copied().unwrap_or(0);
                let inc = if q > 0 { ranks[q - 1] } else { 0 };
                self.dims[q] - out - inc
            })
            .collect()
    }
}

pub fn alternating_sum(xs: &[usize]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

/// The Aomoto complex `(A•_R, a_y ∧)` with rows and columns labelled by
/// nbc sets.
#[derive(Debug, Clone)]
pub struct AomotoComplex {
    basis: NbcBasis,
    complex: RingComplex<MultiPoly>,
}

impl AomotoComplex {
    pub fn new(a: &Arrangement) -> Self {
        let basis = a.nbc_basis();
        let n = a.len();
        let boundaries = (0..basis.top_degree())
            .map(|q| aomoto_boundary(&basis, q, n))
            .collect();
        let complex =
            RingComplex::new(boundaries, n).expect("the Aomoto differential squares to zero");
        Self { basis, complex }
    }

    pub fn basis(&self) -> &NbcBasis {
        &self.basis
    }

    pub fn complex(&self) -> &RingComplex<MultiPoly> {
        &self.complex
    }

    /// `μ^q`.
    pub fn mu(&self, q: usize) -> &Matrix<MultiPoly> {
        self.complex.boundary(q)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.basis.betti()
    }

    /// Positions `(q, row, col)` of entries of `μ^q` that are not integral
    /// linear forms.
    pub fn non_linear_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for (q, m) in self.complex.boundaries().iter().enumerate() {
            for ((i, j), e) in m.entries() {
                if !e.is_zero() && e.integral_linear_form().is_none() {
                    bad.push((q, i, j));
                }
            }
        }
        bad
    }
}

/// Row for nbc set `S` is the expansion of `Σ_j y_j · a_j ∧ a_S`.
fn aomoto_boundary(basis: &NbcBasis, q: usize, n: usize) -> Matrix<MultiPoly> {
    let rows = basis.degree(q);
    let cols = basis.degree(q + 1);
    let mut m = Matrix::<MultiPoly>::zeros(rows.len(), cols.len(), n);
    for (i, s) in rows.iter().enumerate() {
        for j in 0..n {
            let Some((sign, set)) = wedge(&[j], s) else {
                continue;
            };
            for (t, c) in reduce_to_nbc(basis, &set).terms {
                let col = basis
                    .position(&t)
                    .expect("reduction lands in the nbc basis");
                let y = MultiPoly::var(n, j).scale(&Rational::from_integer((sign * c).into()));
                m[(i, col)] = m[(i, col)].plus(&y);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    const EXAMPLE: &str = "dim 2\n0 1 1\n0 2 1\n0 3 1\n1 5 1\n";

    fn basis() -> NbcBasis {
        Arrangement::parse(EXAMPLE).unwrap().nbc_basis()
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(&[1], &[0]), Some((-1, vec![0, 1])));
        assert_eq!(wedge(&[0, 2], &[1]), Some((-1, vec![0, 1, 2])));
        assert_eq!(wedge(&[2], &[0, 1]), Some((1, vec![0, 1, 2])));
        assert_eq!(wedge(&[1], &[1]), None);
    }

    #[test]
    fn broken_circuit_rewrites() {
        let b = basis();
        let e = reduce_to_nbc(&b, &[1, 2]);
        assert_eq!(e.coefficient(&[0, 2]), 1);
        assert_eq!(e.coefficient(&[0, 1]), -1);
        assert_eq!(e.terms.len(), 2);
        assert!(reduce_to_nbc(&b, &[0, 1, 3]).is_zero());
        assert_eq!(reduce_to_nbc(&b, &[0, 1]).terms.len(), 1);
    }

    #[test]
    fn example_aomoto() {
        let a = AomotoComplex::new(&Arrangement::parse(EXAMPLE).unwrap());
        let y = |s: &str| MultiPoly::parse(s, 4).unwrap();
        assert_eq!(a.mu(0).row(0), &[y("y1"), y("y2"), y("y3"), y("y4")]);
        assert_eq!(
            a.mu(1).row(1),
            &[y("y1 + y3"), y("-y3"), y("0"), y("-y4"), y("0")]
        );
        assert!(a.non_linear_entries().is_empty());
    }

    #[test]
    fn boolean_pair() {
        let a = AomotoComplex::new(&Arrangement::boolean(2));
        let y = |s: &str| MultiPoly::parse(s, 2).unwrap();
        assert_eq!(a.mu(1).col(0), vec![y("-y2"), y("y1")]);
    }

    #[test]
    fn specialization_at_zero_gives_betti() {
        let a = AomotoComplex::new(&Arrangement::parse(EXAMPLE).unwrap());
        let zero = vec![rat(0, 1); 4];
        let c = a.complex().specialize(&zero).unwrap();
        assert_eq!(c.cohomology_betti(), vec![1, 4, 5]);
        let generic = vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(5, 1)];
        let h = a.complex().specialize(&generic).unwrap().cohomology_betti();
        assert_eq!(alternating_sum(&h), 2);
    }

    #[test]
    fn non_complex_rejected() {
        let one = Matrix::from_rows(vec![vec![rat(1, 1)]]);
        assert!(matches!(
            RingComplex::new(vec![one.clone(), one], 0),
            Err(ComplexError::NotAComplex { degree: 0, .. })
        ));
    }
}
