//! Free groups, presentations, abelianized Fox calculus, and the universal
//! complex with its representation matrices `Φ⁰, Φ¹, Φ²`.

mod certificate;
mod endomorphism;
mod presentation;
mod universal;
mod word;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use certificate::{CertTerm, RelatorCertificate};
pub use endomorphism::Endomorphism;
pub use presentation::Presentation;
pub use universal::{
    check_chain_map, monodromy_batch, phi1, phi2_from_certificate, phi2_solve_fallback, Monodromy,
    Phi2Fallback, UniversalComplex,
};
pub use word::{FreeWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoxError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator g{gen} out of range (there are {ngens})")]
    GeneratorOutOfRange { gen: usize, ngens: usize },
    #[error("relator {index} reduces to the empty word")]
    EmptyRelator { index: usize },
    #[error("expected {expected} generator images, found {got}")]
    ImageCountMismatch { expected: usize, got: usize },
    #[error("Δ⁰·Δ¹ is nonzero in column {column}")]
    FundamentalIdentityFailed { column: usize },
    #[error("image of g{generator} ({image}) does not abelianize to x{generator}")]
    AbelianizationNotPreserved { generator: usize, image: String },
    #[error("certificate has {got} relator lines, presentation has {expected} relators")]
    CertificateShape { expected: usize, got: usize },
    #[error("certificate for relator {relator} refers to relator {index}")]
    RelatorIndexOutOfRange { relator: usize, index: usize },
    #[error("certificate for relator {relator} reduces to {got}, expected {expected}")]
    CertificateInvalid {
        relator: usize,
        expected: String,
        got: String,
    },
    #[error("chain identity fails in degree {degree} at entry ({row},{col})")]
    ChainIdentityFailed {
        degree: usize,
        row: usize,
        col: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
