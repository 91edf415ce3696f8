//! Relator certificates: each image `φ(r_l)` written as an explicit product
//! `Π w r_k^ε w⁻¹` of conjugated relators. Validation is plain free
//! reduction, so a certificate is data to be checked, never trusted.

use super::presentation::content_lines;
use super::{Endomorphism, FoxError, FreeWord, Presentation};

/// One factor `w · r_relator^sign · w⁻¹` (relator 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTerm {
    pub conjugator: FreeWord,
    pub relator: usize,
    pub sign: i8,
}

/// Per relator `r_l`, the factors whose product reduces to `φ(r_l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorCertificate {
    terms: Vec<Vec<CertTerm>>,
}

impl RelatorCertificate {
    pub fn new(terms: Vec<Vec<CertTerm>>) -> Self {
        Self { terms }
    }

    /// `r_l ↦ r_l`, the certificate of the identity.
    pub fn trivial(ngens: usize, nrelators: usize) -> Self {
        Self::conjugating(&FreeWord::identity(ngens), nrelators)
    }

    /// Certificate of the inner automorphism by `w`.
    pub fn conjugating(w: &FreeWord, nrelators: usize) -> Self {
        Self::new(
            (0..nrelators)
                .map(|l| {
                    vec![CertTerm {
                        conjugator: w.clone(),
                        relator: l,
                        sign: 1,
                    }]
                })
                .collect(),
        )
    }

    /// One line per relator holding `(word, index, sign)` triples; the
    /// index is 1-based and `1` denotes the empty conjugator.
    pub fn parse(text: &str, ngens: usize) -> Result<Self, FoxError> {
        let terms = content_lines(text)
            .map(|(k, line)| {
                parse_line(line, ngens).map_err(|msg| FoxError::Parse { line: k, msg })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { terms })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.terms {
            let cells: Vec<String> = line
                .iter()
                .map(|t| format!("({}, {}, {:+})", t.conjugator, t.relator + 1, t.sign))
                .collect();
            out += &cells.join(" ");
            out.push('\n');
        }
        out
    }

    pub fn terms(&self) -> &[Vec<CertTerm>] {
        &self.terms
    }

    /// The word `Π w r_k^ε w⁻¹` certified for relator `l`.
    pub fn product(&self, p: &Presentation, l: usize) -> FreeWord {
        self.terms[l]
            .iter()
            .fold(FreeWord::identity(p.ngens()), |acc, t| {
                let r = p.relators()[t.relator].pow(t.sign as i32);
                acc.mul(&r.conjugate_by(&t.conjugator))
            })
    }

    /// Checks that every product freely reduces to `φ(r_l)`.
    pub fn validate(&self, p: &Presentation, phi: &Endomorphism) -> Result<(), FoxError> {
        if self.terms.len() != p.nrelators() {
            return Err(FoxError::CertificateShape {
                expected: p.nrelators(),
                got: self.terms.len(),
            });
        }
        for (l, line) in self.terms.iter().enumerate() {
            if let Some(t) = line.iter().find(|t| t.relator >= p.nrelators()) {
                return Err(FoxError::RelatorIndexOutOfRange {
                    relator: l + 1,
                    index: t.relator + 1,
                });
            }
            let expected = phi.apply(&p.relators()[l]);
            let got = self.product(p, l);
            if got != expected {
                return Err(FoxError::CertificateInvalid {
                    relator: l + 1,
                    expected: expected.to_string(),
                    got: got.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Certificate of `φ∘ψ` from certificates of `φ` (self) and `ψ`.
    ///
    /// `φ(ψ(r_l)) = Π_t φ(w_t) φ(r_{k_t})^{ε_t} φ(w_t)⁻¹`, and each
    /// `φ(r_k)^{±1}` expands through the certificate of `φ`, reversed for
    /// the inverse.
    pub fn compose(&self, phi: &Endomorphism, psi_cert: &RelatorCertificate) -> Self {
        let terms = psi_cert
            .terms
            .iter()
            .map(|line| {
                let mut out = Vec::new();
                for t in line {
                    let outer = phi.apply(&t.conjugator);
                    let inner = &self.terms[t.relator];
                    let expand = |s: &CertTerm| CertTerm {
                        conjugator: outer.mul(&s.conjugator),
                        relator: s.relator,
                        sign: s.sign * t.sign,
                    };
                    if t.sign > 0 {
                        out.extend(inner.iter().map(expand));
                    } else {
                        out.extend(inner.iter().rev().map(expand));
                    }
                }
                out
            })
            .collect();
        Self { terms }
    }
}

fn parse_line(line: &str, ngens: usize) -> Result<Vec<CertTerm>, String> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        if chars[i] != '(' {
            return Err(format!("expected `(` at column {}", i + 1));
        }
        // find the matching parenthesis and the top-level commas
        let mut depth = 0;
        let mut commas = Vec::new();
        let mut end = None;
        for (j, &c) in chars.iter().enumerate().skip(i) {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(j);
                        break;
                    }
                }
                ',' if depth == 1 => commas.push(j),
                _ => {}
            }
        }
        let end = end.ok_or("unbalanced parentheses")?;
        if commas.len() != 2 {
            return Err("a term must be (word, relator, sign)".into());
        }
        let text = |a: usize, b: usize| chars[a..b].iter().collect::<String>();
        let word = FreeWord::parse(&text(i + 1, commas[0]), ngens).map_err(|e| e.to_string())?;
        let relator: usize = text(commas[0] + 1, commas[1])
            .trim()
            .parse()
            .map_err(|_| "bad relator index".to_string())?;
        if relator == 0 {
            return Err("relator indices start at 1".into());
        }
        let sign = match text(commas[1] + 1, end).trim() {
            "1" | "+1" => 1,
            "-1" => -1,
            s => return Err(format!("sign must be ±1, got {s:?}")),
        };
        out.push(CertTerm {
            conjugator: word,
            relator: relator - 1,
            sign,
        });
        i = end + 1;
    }
    Ok(out)
}
