//! Formal connection `Ω = linear part of Φ` under `x = exp(y)`, its
//! relation to `Φ`, Gauss–Manin specializations, certified eigenvalues,
//! and induced maps on cohomology.

mod eigen;
mod induced;
mod locus;
mod report;

use thiserror::Error;

use crate::fox::FoxError;
use crate::linalg::{char_poly, mat_exp_truncated, LinalgError, Matrix};
use crate::oscomplex::ComplexError;
use crate::ring::{LaurentPoly, MultiPoly, Rational, Ring, RingError, TruncatedSeries};

pub use eigen::{eigen_linear_forms, eigen_monomials, EigenFactor, EigenReport, Eigenvalue};
pub use induced::{
    classify_weights, cohomology_action, induced_map, InducedMap, ProjectionData, ResonanceReport,
};
pub use locus::Locus;
pub use report::{ConnectionReport, DegreeReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("Φ^{degree}(1) differs from the identity at entry ({row},{col})")]
    NotIdentityAtOne {
        degree: usize,
        row: usize,
        col: usize,
    },
    #[error("entry ({row},{col}) is not an integral linear form")]
    NotIntegralLinearForm { row: usize, col: usize },
    #[error("characteristic polynomial does not split as certified; left over: {remaining}")]
    FactorizationFailed { remaining: String },
    #[error("specialized characteristic polynomial at {probe} has a root that is not a monomial in the probe")]
    NonIntegerRootAtProbe { probe: String },
    #[error("projection is not compatible with the map: {0}")]
    NoSolution(String),
    #[error("induced map leaves the ring (denominator {denominator})")]
    NotInRing { denominator: String },
    #[error("invalid projection data: {0}")]
    ProjectionInvalid(String),
    #[error("locus line {line}: {msg}")]
    LocusParse { line: usize, msg: String },
    #[error("chain identity fails in degree {degree} at entry ({row},{col})")]
    ChainIdentityFailed {
        degree: usize,
        row: usize,
        col: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Fox(#[from] FoxError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Requires `Φ(1) = I`.
pub fn check_identity_at_one(
    degree: usize,
    phi: &Matrix<LaurentPoly>,
) -> Result<(), ConnectionError> {
    if !phi.is_square() {
        return Err(LinalgError::NotSquare(phi.shape()).into());
    }
    let at_one = phi.at_one();
    let id = Matrix::<Rational>::identity(phi.rows(), 0);
    match at_one.differing_entries(&id).first() {
        Some(&(row, col)) => Err(ConnectionError::NotIdentityAtOne {
            degree,
            row: row + 1,
            col: col + 1,
        }),
        None => Ok(()),
    }
}

/// `Ω^q` for every degree, each an integral-linear-form matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalConnection {
    pub omega: Vec<Matrix<MultiPoly>>,
}

impl FormalConnection {
    pub fn degree(&self, q: usize) -> &Matrix<MultiPoly> {
        &self.omega[q]
    }
}

/// `Ω^q = linear_part(Φ^q)`, after checking `Φ^q(1) = I`.
pub fn formal_connection(phi: &[Matrix<LaurentPoly>]) -> Result<FormalConnection, ConnectionError> {
    let mut omega = Vec::with_capacity(phi.len());
    for (q, p) in phi.iter().enumerate() {
        check_identity_at_one(q, p)?;
        let o = p.linear_part();
        if let Some(((row, col), _)) = o
            .entries()
            .find(|(_, e)| e.integral_linear_form().is_none())
        {
            return Err(ConnectionError::NotIntegralLinearForm {
                row: row + 1,
                col: col + 1,
            });
        }
        omega.push(o);
    }
    Ok(FormalConnection { omega })
}

/// Value of `Ω` at the weights `λ`.
pub fn gauss_manin_matrix(
    omega: &Matrix<MultiPoly>,
    lambda: &[Rational],
) -> Result<Matrix<Rational>, RingError> {
    if lambda.len() != omega.nvars() {
        return Err(RingError::VariableCountMismatch {
            expected: omega.nvars(),
            got: lambda.len(),
        });
    }
    omega.evaluate(lambda)
}

/// One entry where `Φ(exp y)` and `exp(Ω)` disagree below the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesMismatch {
    pub row: usize,
    pub col: usize,
    pub substituted: TruncatedSeries,
    pub exponential: TruncatedSeries,
}

/// Outcome of comparing `Φ(exp y)` with `exp(Ω(y))` up to degree `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpRelationReport {
    pub cap: usize,
    /// Entries (1-based) where the truncated series differ.
    pub mismatches: Vec<SeriesMismatch>,
    /// Largest degree `d ≤ cap` through which all entries agree.
    pub agrees_through_degree: Option<usize>,
    /// Whether the two truncated matrices have the same characteristic
    /// polynomial, i.e. the same spectrum up to degree `cap`.
    pub char_polys_agree: bool,
}

impl ExpRelationReport {
    /// True when the entrywise identity holds.
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `exp_substitute(Φ, cap)` with `mat_exp_truncated(Ω, cap)`
/// entrywise, and their characteristic polynomials modulo degree `cap + 1`.
pub fn verify_exp_relation(
    phi: &Matrix<LaurentPoly>,
    omega: &Matrix<MultiPoly>,
    cap: usize,
) -> Result<ExpRelationReport, ConnectionError> {
    if phi.shape() != omega.shape() {
        return Err(LinalgError::ShapeMismatch {
            op: "exp relation",
            left: phi.shape(),
            right: omega.shape(),
        }
        .into());
    }
    let lhs = phi.exp_substitute(cap);
    let rhs = mat_exp_truncated(omega, cap)?;
    let mut mismatches = Vec::new();
    let mut first_bad_degree = None::<usize>;
    for ((i, j), a) in lhs.entries() {
        let b = &rhs[(i, j)];
        if a != b {
            let d = (0..=cap)
                .find(|&d| a.part(d) != b.part(d))
                .expect("some part differs");
            first_bad_degree = Some(first_bad_degree.map_or(d, |f| f.min(d)));
            mismatches.push(SeriesMismatch {
                row: i + 1,
                col: j + 1,
                substituted: a.clone(),
                exponential: b.clone(),
            });
        }
    }
    let agrees_through_degree = match first_bad_degree {
        None => Some(cap),
        Some(0) => None,
        Some(d) => Some(d - 1),
    };
    let n = phi.nvars();
    let cap_i = cap as i64;
    let lp = char_poly(&lhs.map(n, TruncatedSeries::to_poly))?;
    let rp = char_poly(&rhs.map(n, TruncatedSeries::to_poly))?;
    let char_polys_agree = lp
        .coeffs()
        .iter()
        .zip(rp.coeffs())
        .all(|(a, b)| a.truncate(cap_i) == b.truncate(cap_i));
    Ok(ExpRelationReport {
        cap,
        mismatches,
        agrees_through_degree,
        char_polys_agree,
    })
}

/// Checks the degree-`d` parts of `Δ^q·Φ^{q+1} = Φ^q·Δ^q` under
/// `x = exp(y)` for `d ≤ cap`; returns the first failing `(d, row, col)`.
pub fn verify_series_chain_identity(
    delta: &Matrix<LaurentPoly>,
    phi_q: &Matrix<LaurentPoly>,
    phi_next: &Matrix<LaurentPoly>,
    cap: usize,
) -> Result<Option<(usize, usize, usize)>, ConnectionError> {
    let n = delta.nvars();
    let series = |m: &Matrix<LaurentPoly>| m.exp_substitute(cap).map(n, TruncatedSeries::to_poly);
    let lhs = series(delta).mat_mul(&series(phi_next))?;
    let rhs = series(phi_q).mat_mul(&series(delta))?;
    for d in 0..=cap {
        let part = |m: &Matrix<MultiPoly>| m.map(n, |e| e.homogeneous_part(d as i64));
        if let Some(&(i, j)) = part(&lhs).differing_entries(&part(&rhs)).first() {
            return Ok(Some((d, i + 1, j + 1)));
        }
    }
    Ok(None)
}

/// `μ^q · Ω^{q+1} = Ω^q · μ^q` for every `q`.
pub fn verify_aomoto_chain_map(
    mu: &[Matrix<MultiPoly>],
    omega: &[Matrix<MultiPoly>],
) -> Result<(), ConnectionError> {
    for (q, m) in mu.iter().enumerate() {
        let lhs = m.mat_mul(&omega[q + 1])?;
        let rhs = omega[q].mat_mul(m)?;
        if let Some(&(row, col)) = lhs.differing_entries(&rhs).first() {
            return Err(ConnectionError::ChainIdentityFailed {
                degree: q,
                row: row + 1,
                col: col + 1,
            });
        }
    }
    Ok(())
}

/// Identity at `x = 1`, zero linear part: the trivial pair `(I, 0)`.
pub fn is_trivial_pair(phi: &Matrix<LaurentPoly>, omega: &Matrix<MultiPoly>) -> bool {
    phi.is_identity() && omega.entries().all(|(_, e)| e.is_zero_elt())
}
