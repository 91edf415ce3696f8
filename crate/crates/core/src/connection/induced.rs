use crate::linalg::{generic_rank, left_kernel, rank, row_space_basis, solve_right, Matrix};
use crate::oscomplex::{alternating_sum, RingComplex};
use crate::ring::{Domain, Evaluate, LaurentPoly, MultiPoly, Rational, Ring};

use super::{ConnectionError, Locus};

/// Projection `Ξ` of the top cochains onto cohomology, with its linear part
/// `Υ`; the constructor verifies `Δ·Ξ = 0`, `μ·Υ = 0` and full generic
/// column rank.
#[derive(Debug, Clone)]
pub struct ProjectionData {
    xi: Matrix<LaurentPoly>,
    upsilon: Matrix<MultiPoly>,
    locus: Locus,
}

impl ProjectionData {
    pub fn new(
        xi: Matrix<LaurentPoly>,
        delta: &Matrix<LaurentPoly>,
        mu: &Matrix<MultiPoly>,
        seed: u64,
    ) -> Result<Self, ConnectionError> {
        let whole = Locus::whole(xi.nvars());
        Self::on_locus(xi, delta, mu, whole, seed)
    }

    /// As [`ProjectionData::new`], with the identities and the rank checked
    /// only after restriction to `locus`: a projection onto resonant
    /// cohomology is typically a cocycle only on the resonant subtorus.
    pub fn on_locus(
        xi: Matrix<LaurentPoly>,
        delta: &Matrix<LaurentPoly>,
        mu: &Matrix<MultiPoly>,
        locus: Locus,
        seed: u64,
    ) -> Result<Self, ConnectionError> {
        let dx = locus.restrict_matrix(&delta.mat_mul(&xi)?);
        if let Some(((r, c), _)) = dx.entries().find(|(_, e)| !e.is_zero_elt()) {
            return Err(ConnectionError::ProjectionInvalid(format!(
                "Δ·Ξ is nonzero at ({},{}) on {locus}",
                r + 1,
                c + 1
            )));
        }
        let upsilon = xi.linear_part();
        let my = locus.restrict_linear_matrix(&mu.mat_mul(&upsilon)?);
        if let Some(((r, c), _)) = my.entries().find(|(_, e)| !e.is_zero_elt()) {
            return Err(ConnectionError::ProjectionInvalid(format!(
                "μ·Υ is nonzero at ({},{}) on {locus}",
                r + 1,
                c + 1
            )));
        }
        let g = generic_rank(&locus.restrict_matrix(&xi), seed);
        if g.rank != xi.cols() {
            return Err(ConnectionError::ProjectionInvalid(format!(
                "generic rank of Ξ on {locus} is {}, expected {}",
                g.rank,
                xi.cols()
            )));
        }
        Ok(Self { xi, upsilon, locus })
    }

    pub fn locus(&self) -> &Locus {
        &self.locus
    }

    pub fn xi(&self) -> &Matrix<LaurentPoly> {
        &self.xi
    }

    pub fn upsilon(&self) -> &Matrix<MultiPoly> {
        &self.upsilon
    }
}

/// The map `X` with `M·Ξ = Ξ·X`.
pub type InducedMap<R> = Matrix<R>;

/// Solves `map·Ξ = Ξ·X`; `Ξ` must have full column rank so that `X` is
/// unique, and `X` must have ring entries.
pub fn induced_map<R: Domain + Evaluate>(
    xi: &Matrix<R>,
    map: &Matrix<R>,
) -> Result<InducedMap<R>, ConnectionError> {
    let rhs = map.mat_mul(xi)?;
    let sol = solve_right(xi, &rhs).map_err(|e| ConnectionError::NoSolution(e.to_string()))?;
    if !sol.is_unique() {
        return Err(ConnectionError::ProjectionInvalid(format!(
            "Ξ has a {}-dimensional column kernel",
            sol.kernel.len()
        )));
    }
    if !sol.in_ring {
        return Err(ConnectionError::NotInRing {
            denominator: sol.denom.to_string(),
        });
    }
    Ok(sol.numerator)
}

/// Action of a chain map on the cohomology of a rational complex.
///
/// `delta[q]` is `Δ^q(t)`, `phi[q]` is `Φ^q(t)`. For each degree a basis of
/// `H^q` is chosen as cocycles completing a basis of the coboundaries; the
/// returned `Ψ^q` satisfies `[c_i]·Φ = Σ_j Ψ^q[i,j]·[c_j]`.
pub fn cohomology_action(
    delta: &[Matrix<Rational>],
    phi: &[Matrix<Rational>],
) -> Result<Vec<Matrix<Rational>>, ConnectionError> {
    for (q, d) in delta.iter().enumerate() {
        let lhs = d.mat_mul(&phi[q + 1])?;
        let rhs = phi[q].mat_mul(d)?;
        if let Some(&(row, col)) = lhs.differing_entries(&rhs).first() {
            return Err(ConnectionError::ChainIdentityFailed {
                degree: q,
                row: row + 1,
                col: col + 1,
            });
        }
    }
    let mut out = Vec::with_capacity(phi.len());
    for (q, p) in phi.iter().enumerate() {
        let dim = p.rows();
        let cocycles: Vec<Vec<Rational>> = match delta.get(q) {
            Some(d) => left_kernel(d),
            None => (0..dim)
                .map(|i| Matrix::<Rational>::identity(dim, 0).row(i).to_vec())
                .collect(),
        };
        let mut basis: Vec<Vec<Rational>> = match q {
            0 => Vec::new(),
            _ => row_space_basis(&delta[q - 1]),
        };
        let nb = basis.len();
        let mut reps = Vec::new();
        for z in cocycles {
            let mut trial = basis.clone();
            trial.push(z.clone());
            if rank(&Matrix::from_rows_in(trial, 0)) > basis.len() {
                basis.push(z.clone());
                reps.push(z);
            }
        }
        let h = reps.len();
        if h == 0 {
            out.push(Matrix::zeros(0, 0, 0));
            continue;
        }
        let images = Matrix::from_rows_in(reps, 0).mat_mul(p)?;
        let frame = Matrix::from_rows_in(basis, 0);
        let coords = solve_right(&frame.transpose(), &images.transpose()).map_err(|_| {
            ConnectionError::ChainIdentityFailed {
                degree: q,
                row: 0,
                col: 0,
            }
        })?;
        let cols: Vec<usize> = (nb..nb + h).collect();
        let rows: Vec<usize> = (0..h).collect();
        out.push(coords.numerator.transpose().select(&rows, &cols));
    }
    Ok(out)
}

/// Cohomology of a specialization compared with the combinatorial data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceReport {
    pub point: Vec<Rational>,
    /// `h^q` of the specialized complex.
    pub cohomology: Vec<usize>,
    /// Ranks of the chain groups (the Betti numbers of the complement).
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    /// Cohomology vanishes below the top degree.
    pub non_resonant: bool,
    /// Top cohomology has dimension `|e(M)|`.
    pub top_matches_euler: bool,
}

impl ResonanceReport {
    pub fn is_trivial_system(&self) -> bool {
        self.cohomology == self.betti
    }
}

pub fn classify_weights<R: Ring + Evaluate>(
    complex: &RingComplex<R>,
    point: &[Rational],
) -> Result<ResonanceReport, ConnectionError> {
    let specialized = complex.specialize(point)?;
    let h = specialized.cohomology_betti();
    let betti = complex.dims().to_vec();
    let e = alternating_sum(&betti);
    let top = h.len() - 1;
    Ok(ResonanceReport {
        point: point.to_vec(),
        non_resonant: h[..top].iter().all(|&x| x == 0),
        top_matches_euler: h[top] as i64 == e.abs(),
        cohomology: h,
        betti,
        euler_characteristic: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::parse_matrix;
    use crate::ring::rat;

    #[test]
    fn identity_projection_returns_map() {
        let m: Matrix<LaurentPoly> = parse_matrix("x1, 1\n0, x2", 2).unwrap();
        let id = Matrix::identity(2, 2);
        assert_eq!(induced_map(&id, &m).unwrap(), m);
    }

    #[test]
    fn identity_chain_map_acts_trivially() {
        let d0 = Matrix::from_rows(vec![vec![rat(1, 1), rat(-1, 1)]]);
        let phi = vec![Matrix::identity(1, 0), Matrix::identity(2, 0)];
        let psi = cohomology_action(&[d0], &phi).unwrap();
        assert_eq!(psi[0].shape(), (0, 0));
        assert!(psi[1].is_identity() && psi[1].rows() == 1);
    }

    #[test]
    fn swap_acts_by_sign_on_quotient() {
        // C⁰ = Q → C¹ = Q², δ = [1 1]; swapping the coordinates fixes the
        // image and acts by −1 on H¹ = Q²/⟨(1,1)⟩
        let d0 = Matrix::from_rows(vec![vec![rat(1, 1), rat(1, 1)]]);
        let swap = Matrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]]);
        let psi = cohomology_action(&[d0], &[Matrix::identity(1, 0), swap]).unwrap();
        assert_eq!(psi[1][(0, 0)], rat(-1, 1));
    }
}
