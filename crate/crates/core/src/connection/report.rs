use serde_json::{json, Value};

use crate::fox::{Monodromy, UniversalComplex};
use crate::linalg::Matrix;
use crate::ring::{LaurentPoly, MultiPoly};

use super::{
    eigen_linear_forms, eigen_monomials, formal_connection, verify_exp_relation,
    verify_series_chain_identity, ConnectionError, EigenReport, ExpRelationReport,
};

/// Everything computed for one cochain degree.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub degree: usize,
    pub phi: Matrix<LaurentPoly>,
    pub omega: Matrix<MultiPoly>,
    pub monomials: EigenReport,
    pub linear_forms: EigenReport,
    pub exp_relation: ExpRelationReport,
}

impl DegreeReport {
    /// The logarithms of the monomial eigenvalues are exactly the linear
    /// eigenvalues of `Ω`, with multiplicity.
    pub fn spectra_correspond(&self) -> bool {
        self.monomials.log() == self.linear_forms
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "phi": self.phi.to_json(),
            "omega": self.omega.to_json(),
            "eigen_monomials": self.monomials.to_string(),
            "eigen_linear_forms": self.linear_forms.to_string(),
            "spectra_correspond": self.spectra_correspond(),
            "exp_relation": {
                "cap": self.exp_relation.cap,
                "passed": self.exp_relation.passed(),
                "agrees_through_degree": self.exp_relation.agrees_through_degree,
                "char_polys_agree": self.exp_relation.char_polys_agree,
                "mismatches": self.exp_relation.mismatches.iter()
                    .map(|m| json!({
                        "row": m.row,
                        "col": m.col,
                        "substituted": m.substituted.to_string(),
                        "exponential": m.exponential.to_string(),
                    }))
                    .collect::<Vec<_>>(),
            },
        })
    }
}

/// Monodromy, connection and spectra in every degree, plus the series form
/// of the chain identities.
#[derive(Debug, Clone)]
pub struct ConnectionReport {
    pub degrees: Vec<DegreeReport>,
    /// First `(d, row, col)` where the series chain identity fails, per `q`.
    pub series_chain: Vec<Option<(usize, usize, usize)>>,
}

impl ConnectionReport {
    pub fn build(
        uc: &UniversalComplex,
        monodromy: &Monodromy,
        cap: usize,
        seed: u64,
    ) -> Result<Self, ConnectionError> {
        let fc = formal_connection(&monodromy.phi)?;
        let mut degrees = Vec::with_capacity(3);
        for (q, (phi, omega)) in monodromy.phi.iter().zip(fc.omega).enumerate() {
            degrees.push(DegreeReport {
                degree: q,
                monomials: eigen_monomials(phi)?,
                linear_forms: eigen_linear_forms(&omega, seed)?,
                exp_relation: verify_exp_relation(phi, &omega, cap)?,
                phi: phi.clone(),
                omega,
            });
        }
        let series_chain = (0..2)
            .map(|q| {
                verify_series_chain_identity(
                    uc.delta(q),
                    monodromy.degree(q),
                    monodromy.degree(q + 1),
                    cap,
                )
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            degrees,
            series_chain,
        })
    }

    pub fn omega(&self) -> Vec<Matrix<MultiPoly>> {
        self.degrees.iter().map(|d| d.omega.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degrees": self.degrees.iter().map(DegreeReport::to_json).collect::<Vec<_>>(),
            "series_chain_identity": self.series_chain.iter()
                .map(|f| match f {
                    None => json!(null),
                    Some((d, r, c)) => json!({"degree": d, "row": r, "col": c}),
                })
                .collect::<Vec<_>>(),
        })
    }
}
