//! The worked example shipped with the crate: an arrangement of four lines
//! in the plane, a presentation of its complement's fundamental group, a
//! pure braid acting on it with a relator certificate, and two projection
//! matrices onto top-degree cohomology, the second valid on the resonant
//! subtorus.

use crate::arrangement::Arrangement;
use crate::connection::Locus;
use crate::fox::{Endomorphism, Presentation, RelatorCertificate};
use crate::linalg::{parse_matrix, Matrix};
use crate::ring::LaurentPoly;

pub const ARRANGEMENT: &str = include_str!("../fixtures/example/arrangement.txt");
pub const PRESENTATION: &str = include_str!("../fixtures/example/presentation.txt");
pub const ARTIN_A12: &str = include_str!("../fixtures/example/artin_a12.txt");
pub const ARTIN_A12_CERT: &str = include_str!("../fixtures/example/artin_a12.cert");
pub const XI_NONRESONANT: &str = include_str!("../fixtures/example/xi_nonresonant.txt");
pub const XI_RESONANT: &str = include_str!("../fixtures/example/xi_resonant.txt");
pub const RESONANT_LOCUS: &str = include_str!("../fixtures/example/resonant_locus.txt");

pub fn arrangement() -> Arrangement {
    Arrangement::parse(ARRANGEMENT).expect("shipped arrangement parses")
}

pub fn presentation() -> Presentation {
    Presentation::parse(PRESENTATION).expect("shipped presentation parses")
}

pub fn artin_a12() -> Endomorphism {
    Endomorphism::parse(ARTIN_A12, 4).expect("shipped endomorphism parses")
}

pub fn artin_a12_certificate() -> RelatorCertificate {
    RelatorCertificate::parse(ARTIN_A12_CERT, 4).expect("shipped certificate parses")
}

pub fn xi_nonresonant() -> Matrix<LaurentPoly> {
    parse_matrix(XI_NONRESONANT, 4).expect("shipped matrix parses")
}

pub fn xi_resonant() -> Matrix<LaurentPoly> {
    parse_matrix(XI_RESONANT, 4).expect("shipped matrix parses")
}

/// The subtorus on which the resonant projection is a cocycle.
pub fn resonant_locus() -> Locus {
    Locus::parse(RESONANT_LOCUS, 4).expect("shipped locus parses")
}
