//! Human-readable polynomial syntax, e.g. `1 - x1 + x1*x2`, `x1x3 - 1`,
//! `3/2*y1^2`, `(x1 - 1)^2`, `x4^-1`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, PolyKind, Rational, RingError};

/// Parses `p/q`, `p`, or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, RingError> {
    let s = s.trim();
    let bad = || RingError::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Parses a polynomial whose variables are written `x1..xn` (Laurent) or
/// `y1..yn` (ordinary).
pub fn parse_poly<K: PolyKind>(s: &str, nvars: usize) -> Result<Poly<K>, RingError> {
    let mut p = Parser {
        chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        nvars,
    };
    let out = p.expr::<K>()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl<K: PolyKind> Poly<K> {
    pub fn parse(s: &str, nvars: usize) -> Result<Self, RingError> {
        parse_poly(s, nvars)
    }
}

impl Parser {
    fn error(&self, what: &str) -> RingError {
        RingError::Parse(format!(
            "{what} at offset {} in {:?}",
            self.pos,
            self.chars.iter().collect::<String>()
        ))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<K: PolyKind>(&mut self) -> Result<Poly<K>, RingError> {
        let mut acc = if self.eat('-') {
            -self.term::<K>()?
        } else {
            self.eat('+');
            self.term::<K>()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term::<K>()?;
            } else if self.eat('-') {
                acc = &acc - &self.term::<K>()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<K: PolyKind>(&mut self) -> Result<Poly<K>, RingError> {
        let mut acc = self.power::<K>()?;
        loop {
            // juxtaposition multiplies too: "2x1", "x1(x2 - 1)"
            if self.eat('*')
                || matches!(self.peek(), Some(c) if c == K::VAR || c == '(' || c.is_ascii_digit())
            {
                acc = &acc * &self.power::<K>()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power<K: PolyKind>(&mut self) -> Result<Poly<K>, RingError> {
        let base = self.atom::<K>()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let k = self.integer()?;
        let k: u32 = k
            .try_into()
            .map_err(|_| self.error("exponent out of range"))?;
        if !neg {
            return Ok(base.pow(k));
        }
        match base.as_monomial() {
            Some((c, e)) if K::LAURENT => Ok(Poly::monomial(c.recip(), e.neg()).pow(k)),
            _ => Err(self.error("negative power of a non-unit")),
        }
    }

    fn atom<K: PolyKind>(&mut self) -> Result<Poly<K>, RingError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr::<K>()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c == K::VAR => {
                self.pos += 1;
                let j = self.integer()?;
                let j = usize::try_from(j).map_err(|_| self.error("bad variable index"))?;
                if j == 0 || j > self.nvars {
                    return Err(self.error("variable index out of range"));
                }
                Ok(Poly::var(self.nvars, j - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Rational::from_integer(BigInt::from(num));
                // `a/b` binds as a literal only when followed by digits
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den == 0 {
                        return Err(self.error("zero denominator"));
                    }
                    value /= Rational::from_integer(BigInt::from(den));
                }
                Ok(Poly::constant(value, self.nvars))
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn integer(&mut self) -> Result<i64, RingError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.error("integer overflow"))
    }
}
