use std::fmt;

use crate::ring::{ExponentVector, LaurentPoly, Rational, Ring};

use super::FoxError;

/// A generator `g_gen` (0-based) to the power `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// Freely reduced word in the free group on `ngens` generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    ngens: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(ngens: usize) -> Self {
        Self {
            ngens,
            letters: Vec::new(),
        }
    }

    pub fn generator(ngens: usize, gen: usize) -> Self {
        assert!(gen < ngens);
        Self::from_letters(
            ngens,
            [Letter {
                gen,
                inverse: false,
            }],
        )
    }

    /// Freely reduces the given letter sequence.
    pub fn from_letters(ngens: usize, letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            assert!(l.gen < ngens, "generator g{} out of range", l.gen + 1);
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self {
            ngens,
            letters: out,
        }
    }

    /// Parses words such as `g1 g2^-1`, `[g3 g1, g2]`, `(g1 g2)^2` or `1`.
    pub fn parse(s: &str, ngens: usize) -> Result<Self, FoxError> {
        let mut p = WordParser {
            chars: s.chars().collect(),
            pos: 0,
            ngens,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(w)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_letters(
            self.ngens,
            self.letters.iter().chain(&other.letters).copied(),
        )
    }

    pub fn inverse(&self) -> Self {
        Self {
            ngens: self.ngens,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(self.ngens), |acc, _| acc.mul(&base))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// `w · self · w⁻¹`.
    pub fn conjugate_by(&self, w: &Self) -> Self {
        w.mul(self).mul(&w.inverse())
    }

    /// Exponent sums per generator.
    pub fn abelianization(&self) -> ExponentVector {
        let mut e = vec![0i32; self.ngens];
        for l in &self.letters {
            e[l.gen] += if l.inverse { -1 } else { 1 };
        }
        ExponentVector::new(e)
    }

    /// Image in the Laurent ring, `x^{abelianization}`.
    pub fn ab_monomial(&self) -> LaurentPoly {
        LaurentPoly::monomial(Rational::from_integer(1.into()), self.abelianization())
    }

    /// Abelianized Fox derivative `∂w/∂g_j`, using
    /// `∂(uv) = ∂u + u^ab·∂v`, `∂g_j = 1`, `∂g_j⁻¹ = −x_j⁻¹`.
    pub fn fox_derivative(&self, j: usize) -> LaurentPoly {
        let n = self.ngens;
        let mut prefix = vec![0i32; n];
        let mut acc = LaurentPoly::zero(n);
        let one = Rational::from_integer(1.into());
        for l in &self.letters {
            if l.inverse {
                prefix[l.gen] -= 1;
                if l.gen == j {
                    acc = acc.minus(&LaurentPoly::monomial(one.clone(), prefix.clone().into()));
                }
            } else {
                if l.gen == j {
                    acc = acc.plus(&LaurentPoly::monomial(one.clone(), prefix.clone().into()));
                }
                prefix[l.gen] += 1;
            }
        }
        acc
    }

    /// Substitutes `images[i]` for each `g_i`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let ngens = images.first().map_or(self.ngens, |w| w.ngens);
        let letters = self.letters.iter().flat_map(|l| {
            let img = &images[l.gen];
            if l.inverse {
                img.inverse().letters
            } else {
                img.letters.clone()
            }
        });
        FreeWord::from_letters(ngens, letters)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}", l.gen + 1)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}

struct WordParser {
    chars: Vec<char>,
    pos: usize,
    ngens: usize,
}

impl WordParser {
    fn error(&self, what: &str) -> FoxError {
        FoxError::Parse {
            line: 0,
            msg: format!(
                "{what} at offset {} in {:?}",
                self.pos,
                self.chars.iter().collect::<String>()
            ),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), FoxError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn word(&mut self) -> Result<FreeWord, FoxError> {
        let mut w = FreeWord::identity(self.ngens);
        while matches!(self.peek(), Some('g' | '1' | '(' | '[')) {
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<FreeWord, FoxError> {
        let atom = match self.peek() {
            Some('g') => {
                self.pos += 1;
                let idx = self.integer()?;
                if idx < 1 || idx as usize > self.ngens {
                    return Err(FoxError::GeneratorOutOfRange {
                        gen: idx.max(0) as usize,
                        ngens: self.ngens,
                    });
                }
                FreeWord::generator(self.ngens, idx as usize - 1)
            }
            Some('1') => {
                self.pos += 1;
                FreeWord::identity(self.ngens)
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                w
            }
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                FreeWord::commutator(&a, &b)
            }
            _ => return Err(self.error("expected a generator")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            Ok(atom.pow(k as i32))
        } else {
            Ok(atom)
        }
    }

    fn integer(&mut self) -> Result<i64, FoxError> {
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }
}
