//! Affine hyperplane arrangements over the rationals, their matroid
//! dependencies and nbc bases.
//!
//! Hyperplanes are indexed from 0 internally; files, reports and the CLI
//! number them from 1. The input order is the nbc order.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::linalg::{rank, Matrix};
use crate::parallel::Execution;
use crate::ring::{parse_rational, Rational, Ring};

/// Strictly increasing list of hyperplane indices.
pub type IndexSet = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("hyperplane {index} has a zero normal")]
    ZeroNormal { index: usize },
    #[error("hyperplanes {first} and {second} coincide")]
    DuplicateHyperplane { first: usize, second: usize },
    #[error("normals span a space of dimension {rank}, ambient dimension is {dim}")]
    RankDeficient { rank: usize, dim: usize },
}

/// The hyperplane `offset + normal·u = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(offset: Rational, normal: Vec<Rational>) -> Self {
        Self { normal, offset }
    }

    fn augmented(&self) -> Vec<Rational> {
        let mut row = self.normal.clone();
        row.push(-self.offset.clone());
        row
    }

    fn is_multiple_of(&self, other: &Hyperplane) -> bool {
        let a = self.augmented();
        let b = other.augmented();
        rank(&Matrix::from_rows_in(vec![a, b], 0)) < 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        for (i, h) in hyperplanes.iter().enumerate() {
            assert_eq!(
                h.normal.len(),
                dim,
                "hyperplane {} has the wrong length",
                i + 1
            );
            if h.normal.iter().all(|c| c.is_zero_elt()) {
                return Err(ArrangementError::ZeroNormal { index: i + 1 });
            }
            for (j, g) in hyperplanes[..i].iter().enumerate() {
                if h.is_multiple_of(g) {
                    return Err(ArrangementError::DuplicateHyperplane {
                        first: j + 1,
                        second: i + 1,
                    });
                }
            }
        }
        let a = Self { dim, hyperplanes };
        let r = a.normal_rank(&(0..a.len()).collect::<Vec<_>>());
        if r != dim {
            return Err(ArrangementError::RankDeficient { rank: r, dim });
        }
        Ok(a)
    }

    /// Parses `dim ℓ` followed by one `offset a1 … aℓ` line per hyperplane.
    pub fn parse(text: &str) -> Result<Self, ArrangementError> {
        let mut dim = None;
        let mut hyperplanes = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| ArrangementError::Parse { line: k + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match dim {
                None => {
                    if fields.len() != 2 || fields[0] != "dim" {
                        return Err(err("expected `dim <l>`".into()));
                    }
                    let l: usize = fields[1]
                        .parse()
                        .map_err(|_| err(format!("bad dimension {:?}", fields[1])))?;
                    dim = Some(l);
                }
                Some(l) => {
                    if fields.len() != l + 1 {
                        return Err(err(format!(
                            "expected {} numbers, found {}",
                            l + 1,
                            fields.len()
                        )));
                    }
                    let nums = fields
                        .iter()
                        .map(|f| parse_rational(f).map_err(|e| err(e.to_string())))
                        .collect::<Result<Vec<_>, _>>()?;
                    hyperplanes.push(Hyperplane::new(nums[0].clone(), nums[1..].to_vec()));
                }
            }
        }
        let dim = dim.ok_or(ArrangementError::Parse {
            line: 0,
            msg: "empty arrangement file".into(),
        })?;
        Self::new(dim, hyperplanes)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for h in &self.hyperplanes {
            let mut fields = vec![h.offset.to_string()];
            fields.extend(h.normal.iter().map(|c| c.to_string()));
            out += &fields.join(" ");
            out.push('\n');
        }
        out
    }

    /// The `n` coordinate hyperplanes of `Q^n`.
    pub fn boolean(n: usize) -> Self {
        let hs = (0..n)
            .map(|i| {
                let normal = (0..n)
                    .map(|j| Rational::from_integer((i == j).into()))
                    .collect();
                Hyperplane::new(Rational::from_integer(0.into()), normal)
            })
            .collect();
        Self::new(n, hs).expect("coordinate hyperplanes are valid")
    }

    /// Random arrangement with small integer coefficients; retries until
    /// the result is valid.
    pub fn random<R: Rng>(rng: &mut R, dim: usize, n: usize) -> Self {
        assert!(n >= dim, "need at least {dim} hyperplanes");
        loop {
            let hs = (0..n)
                .map(|_| {
                    let mut c = || Rational::from_integer(rng.gen_range(-3i64..=3).into());
                    let offset = c();
                    Hyperplane::new(offset, (0..dim).map(|_| c()).collect())
                })
                .collect();
            if let Ok(a) = Self::new(dim, hs) {
                return a;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// Same hyperplanes in the order `perm` (a permutation of indices).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, ArrangementError> {
        Self::new(
            self.dim,
            perm.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
        )
    }

    /// The arrangement without its last hyperplane, if it still spans.
    pub fn delete_last(&self) -> Result<Self, ArrangementError> {
        Self::new(self.dim, self.hyperplanes[..self.len() - 1].to_vec())
    }

    fn normal_rank(&self, s: &[usize]) -> usize {
        let rows = s
            .iter()
            .map(|&i| self.hyperplanes[i].normal.clone())
            .collect();
        rank(&Matrix::from_rows_in(rows, 0))
    }

    fn augmented_rank(&self, s: &[usize]) -> usize {
        let rows = s.iter().map(|&i| self.hyperplanes[i].augmented()).collect();
        rank(&Matrix::from_rows_in(rows, 0))
    }

    pub fn is_dependent(&self, s: &[usize]) -> bool {
        self.normal_rank(s) < s.len()
    }

    /// True when the hyperplanes of `s` have a common point.
    pub fn meets(&self, s: &[usize]) -> bool {
        self.normal_rank(s) == self.augmented_rank(s)
    }

    pub fn dependencies(&self) -> DependencyData {
        self.dependencies_with(Execution::default())
    }

    /// Scans subsets of size at most `ℓ + 1`; each size is processed as one
    /// batch under `exec`.
    pub fn dependencies_with(&self, exec: Execution) -> DependencyData {
        let n = self.len();
        let mut circuits = Vec::new();
        let mut empty_min = Vec::new();
        for size in 1..=(self.dim + 1).min(n) {
            let subsets = subsets_of_size(n, size);
            let flags = exec.map(&subsets, |s| {
                let dependent = self.is_dependent(s);
                let meets = self.meets(s);
                let faces: Vec<IndexSet> = (0..s.len())
                    .map(|k| [&s[..k], &s[k + 1..]].concat())
                    .collect();
                let circuit = dependent && meets && faces.iter().all(|f| !self.is_dependent(f));
                let empty = !meets && faces.iter().all(|f| self.meets(f));
                (circuit, empty)
            });
            for (s, (circuit, empty)) in subsets.into_iter().zip(flags) {
                if circuit {
                    circuits.push(s.clone());
                }
                if empty {
                    empty_min.push(s);
                }
            }
        }
        let broken: BTreeSet<IndexSet> = circuits.iter().map(|c| c[1..].to_vec()).collect();
        DependencyData {
            circuits,
            empty_min,
            broken_circuits: broken.into_iter().collect(),
        }
    }

    pub fn nbc_basis(&self) -> NbcBasis {
        NbcBasis::new(self, &self.dependencies())
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// All `k`-subsets of `0..n`, lexicographically.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<IndexSet> {
    fn go(start: usize, n: usize, k: usize, cur: &mut IndexSet, out: &mut Vec<IndexSet>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Circuits (minimal dependent sets whose hyperplanes meet), minimal sets
/// with empty intersection, and broken circuits `C \ min C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyData {
    pub circuits: Vec<IndexSet>,
    pub empty_min: Vec<IndexSet>,
    pub broken_circuits: Vec<IndexSet>,
}

impl DependencyData {
    /// True when `s` contains neither a broken circuit nor an empty-min set.
    pub fn is_nbc(&self, s: &[usize]) -> bool {
        !self.broken_circuits.iter().any(|b| is_subset(b, s))
            && !self.empty_min.iter().any(|e| is_subset(e, s))
    }

    pub fn contains_empty_min(&self, s: &[usize]) -> bool {
        self.empty_min.iter().any(|e| is_subset(e, s))
    }

    /// Lexicographically largest broken circuit inside `s`, with its
    /// circuit.
    pub fn largest_broken_in(&self, s: &[usize]) -> Option<&IndexSet> {
        self.circuits
            .iter()
            .filter(|c| is_subset(&c[1..], s))
            .max_by(|a, b| a[1..].cmp(&b[1..]).then(b.cmp(a)))
    }
}

/// nbc sets of each size `0..=ℓ`, lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbcBasis {
    n: usize,
    degrees: Vec<Vec<IndexSet>>,
    deps: DependencyData,
}

impl NbcBasis {
    pub fn new(a: &Arrangement, deps: &DependencyData) -> Self {
        let degrees = (0..=a.dim())
            .map(|q| {
                subsets_of_size(a.len(), q)
                    .into_iter()
                    .filter(|s| deps.is_nbc(s))
                    .collect()
            })
            .collect();
        Self {
            n: a.len(),
            degrees,
            deps: deps.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, q: usize) -> &[IndexSet] {
        self.degrees.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.degree(s.len())
            .binary_search_by(|t| t.as_slice().cmp(s))
            .ok()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti()
            .iter()
            .enumerate()
            .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn dependencies(&self) -> &DependencyData {
        &self.deps
    }
}

/// Renders an index set 1-based, e.g. `{1,3}`; the empty set is `{}`.
pub fn label(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const EXAMPLE: &str = "dim 2\n0 1 1\n0 2 1\n0 3 1\n1 5 1\n";

    fn sets(v: &[&[usize]]) -> Vec<IndexSet> {
        v.iter()
            .map(|s| s.iter().map(|i| i - 1).collect())
            .collect()
    }

    #[test]
    fn example_dependencies() {
        let a = Arrangement::parse(EXAMPLE).unwrap();
        let d = a.dependencies();
        assert_eq!(d.circuits, sets(&[&[1, 2, 3]]));
        assert_eq!(d.empty_min, sets(&[&[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]));
        assert_eq!(d.broken_circuits, sets(&[&[2, 3]]));
    }

    #[test]
    fn example_nbc() {
        let b = Arrangement::parse(EXAMPLE).unwrap().nbc_basis();
        assert_eq!(b.degree(0), sets(&[&[]]).as_slice());
        assert_eq!(b.degree(1), sets(&[&[1], &[2], &[3], &[4]]).as_slice());
        assert_eq!(
            b.degree(2),
            sets(&[&[1, 2], &[1, 3], &[1, 4], &[2, 4], &[3, 4]]).as_slice()
        );
        assert_eq!(b.betti(), vec![1, 4, 5]);
        assert_eq!(b.euler_characteristic(), 2);
    }

    #[test]
    fn boolean_has_no_dependencies() {
        let d = Arrangement::boolean(3).dependencies();
        assert!(d.circuits.is_empty() && d.empty_min.is_empty());
        assert_eq!(
            Arrangement::boolean(3).nbc_basis().betti(),
            vec![1, 3, 3, 1]
        );
    }

    #[test]
    fn parallel_lines_are_empty_min() {
        let a = Arrangement::parse("dim 2\n0 1 0\n1 1 0\n0 0 1\n").unwrap();
        let d = a.dependencies();
        assert_eq!(d.empty_min, vec![vec![0, 1]]);
        assert_eq!(a.nbc_basis().betti(), vec![1, 3, 2]);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Arrangement::parse("dim 2\n0 1 1\n0 2 2\n"),
            Err(ArrangementError::DuplicateHyperplane {
                first: 1,
                second: 2
            })
        ));
        assert!(matches!(
            Arrangement::parse("dim 2\n0 0 0\n"),
            Err(ArrangementError::ZeroNormal { index: 1 })
        ));
        assert!(matches!(
            Arrangement::parse("dim 2\n0 1 1\n1 1 1\n"),
            Err(ArrangementError::RankDeficient { rank: 1, dim: 2 })
        ));
        assert!(Arrangement::parse("dim 2\n0 1\n").is_err());
    }

    #[test]
    fn permutation_keeps_betti() {
        let a = Arrangement::parse(EXAMPLE).unwrap();
        let p = a.permuted(&[3, 1, 0, 2]).unwrap();
        assert_eq!(p.nbc_basis().betti(), a.nbc_basis().betti());
    }

    #[test]
    fn text_round_trip_and_strategies() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Arrangement::random(&mut rng, 2, 6);
        assert_eq!(Arrangement::parse(&a.to_text()).unwrap(), a);
        assert_eq!(
            a.dependencies_with(Execution::Sequential),
            a.dependencies_with(Execution::Parallel)
        );
    }
}
