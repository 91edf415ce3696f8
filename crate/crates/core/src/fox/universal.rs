use crate::linalg::{solve_right, Matrix, Solution};
use crate::oscomplex::RingComplex;
use crate::parallel::Execution;
use crate::ring::{LaurentPoly, Ring};

use super::{Endomorphism, FoxError, Presentation, RelatorCertificate};

/// The universal complex `Λ → Λⁿ → Λ^m` of a presentation.
#[derive(Debug, Clone)]
pub struct UniversalComplex {
    delta0: Matrix<LaurentPoly>,
    delta1: Matrix<LaurentPoly>,
}

impl UniversalComplex {
    /// `Δ⁰ = [x_j − 1]`, `Δ¹[i,k] = ∂r_k/∂g_i`; checks `Δ⁰·Δ¹ = 0`.
    pub fn new(p: &Presentation) -> Result<Self, FoxError> {
        let n = p.ngens();
        let one = LaurentPoly::one(n);
        let delta0 = Matrix::from_rows_in(
            vec![(0..n).map(|j| LaurentPoly::var(n, j).minus(&one)).collect()],
            n,
        );
        let mut delta1 = Matrix::zeros(n, p.nrelators(), n);
        for (k, r) in p.relators().iter().enumerate() {
            for i in 0..n {
                delta1[(i, k)] = r.fox_derivative(i);
            }
        }
        let prod = delta0.mat_mul(&delta1)?;
        if let Some(((_, column), _)) = prod.entries().find(|(_, e)| !e.is_zero_elt()) {
            return Err(FoxError::FundamentalIdentityFailed { column: column + 1 });
        }
        Ok(Self { delta0, delta1 })
    }

    pub fn delta0(&self) -> &Matrix<LaurentPoly> {
        &self.delta0
    }

    pub fn delta1(&self) -> &Matrix<LaurentPoly> {
        &self.delta1
    }

    /// `Δ^q` for `q ∈ {0, 1}`.
    pub fn delta(&self, q: usize) -> &Matrix<LaurentPoly> {
        match q {
            0 => &self.delta0,
            1 => &self.delta1,
            _ => panic!("the universal complex stops in degree 2"),
        }
    }

    pub fn complex(&self) -> RingComplex<LaurentPoly> {
        let n = self.delta0.nvars();
        RingComplex::new(vec![self.delta0.clone(), self.delta1.clone()], n)
            .expect("checked on construction")
    }
}

/// `Φ¹[i,j] = ∂φ(g_j)/∂g_i`.
pub fn phi1(phi: &Endomorphism) -> Result<Matrix<LaurentPoly>, FoxError> {
    phi.check_abelianization()?;
    let n = phi.ngens();
    let mut m = Matrix::zeros(n, n, n);
    for (j, w) in phi.images().iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = w.fox_derivative(i);
        }
    }
    Ok(m)
}

/// Asserts `Δ^q · Φ^{q+1} = Φ^q · Δ^q`, naming the first failing entry.
pub fn check_chain_map(
    degree: usize,
    delta: &Matrix<LaurentPoly>,
    phi_q: &Matrix<LaurentPoly>,
    phi_next: &Matrix<LaurentPoly>,
) -> Result<(), FoxError> {
    let lhs = delta.mat_mul(phi_next)?;
    let rhs = phi_q.mat_mul(delta)?;
    match lhs.differing_entries(&rhs).first() {
        Some(&(row, col)) => Err(FoxError::ChainIdentityFailed {
            degree,
            row: row + 1,
            col: col + 1,
        }),
        None => Ok(()),
    }
}

/// `Φ²[k,l] = Σ ε·w^ab` over the certificate terms `(w, k, ε)` of `r_l`.
pub fn phi2_from_certificate(
    p: &Presentation,
    phi: &Endomorphism,
    cert: &RelatorCertificate,
) -> Result<Matrix<LaurentPoly>, FoxError> {
    let p1 = phi1(phi)?;
    cert.validate(p, phi)?;
    let n = p.ngens();
    let m = p.nrelators();
    let mut p2 = Matrix::<LaurentPoly>::zeros(m, m, n);
    for (l, line) in cert.terms().iter().enumerate() {
        for t in line {
            let w = t.conjugator.ab_monomial();
            let term = if t.sign > 0 { w } else { w.negated() };
            p2[(t.relator, l)] = p2[(t.relator, l)].plus(&term);
        }
    }
    let uc = UniversalComplex::new(p)?;
    check_chain_map(1, uc.delta1(), &p1, &p2)?;
    Ok(p2)
}

/// A solution of `Δ¹·X = Φ¹·Δ¹` without a certificate. The chain condition
/// does not pin `Φ²` down whenever `Δ¹` has a column kernel, so the result
/// is never canonical.
#[derive(Debug, Clone)]
pub struct Phi2Fallback {
    pub solution: Solution<LaurentPoly>,
}

impl Phi2Fallback {
    pub const NON_CANONICAL: bool = true;

    pub fn kernel_dimension(&self) -> usize {
        self.solution.kernel.len()
    }
}

pub fn phi2_solve_fallback(
    delta1: &Matrix<LaurentPoly>,
    phi1: &Matrix<LaurentPoly>,
) -> Result<Phi2Fallback, FoxError> {
    let rhs = phi1.mat_mul(delta1)?;
    let solution = solve_right(delta1, &rhs)?;
    Ok(Phi2Fallback { solution })
}

/// `Φ⁰ = [1]`, `Φ¹`, `Φ²` of an endomorphism with a certificate.
#[derive(Debug, Clone)]
pub struct Monodromy {
    pub phi: [Matrix<LaurentPoly>; 3],
}

impl Monodromy {
    pub fn new(
        p: &Presentation,
        phi: &Endomorphism,
        cert: &RelatorCertificate,
    ) -> Result<Self, FoxError> {
        let n = p.ngens();
        let phi0 = Matrix::identity(1, n);
        let p1 = phi1(phi)?;
        let p2 = phi2_from_certificate(p, phi, cert)?;
        let uc = UniversalComplex::new(p)?;
        check_chain_map(0, uc.delta0(), &phi0, &p1)?;
        Ok(Self {
            phi: [phi0, p1, p2],
        })
    }

    pub fn degree(&self, q: usize) -> &Matrix<LaurentPoly> {
        &self.phi[q]
    }
}

/// [`Monodromy::new`] over many endomorphisms of one presentation.
pub fn monodromy_batch(
    p: &Presentation,
    items: &[(Endomorphism, RelatorCertificate)],
    exec: Execution,
) -> Vec<Result<Monodromy, FoxError>> {
    exec.map(items, |(phi, cert)| Monodromy::new(p, phi, cert))
}
