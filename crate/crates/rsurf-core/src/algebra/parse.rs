//! Recursive descent parser for curve expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `3/4*x` is the rational
//! coefficient 3/4 times x.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bivariate::BivariatePoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Parse with variables `x`, `y` and no other identifiers.
pub fn parse_poly(text: &str) -> Result<BivariatePoly> {
    parse_poly_with(text, &BTreeMap::new())
}

/// Parse with extra identifiers bound to rational constants.
pub fn parse_poly_with(text: &str, subs: &BTreeMap<String, Rational>) -> Result<BivariatePoly> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, subs };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(r)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    subs: &'a BTreeMap<String, Rational>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<BivariatePoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BivariatePoly> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let f = self.unary()?;
            if c == b'*' {
                acc = &acc * &f;
            } else {
                let d = f.coeff(0, 0);
                if f.len() != 1 || d.is_zero() {
                    self.pos = at;
                    return Err(self.err("division only by a nonzero constant"));
                }
                acc = acc.scale(&(Rational::one() / d));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BivariatePoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BivariatePoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected non-negative integer exponent"));
            }
            let txt = core::str::from_utf8(&self.s[start..self.pos]).unwrap();
            let e: u32 = txt.parse().map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".to_string() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BivariatePoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let txt = core::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let n: BigInt = txt.parse().unwrap();
                Ok(BivariatePoly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match name {
                    "x" => Ok(BivariatePoly::monomial(Rational::one(), 1, 0)),
                    "y" => Ok(BivariatePoly::monomial(Rational::one(), 0, 1)),
                    _ => match self.subs.get(name) {
                        Some(v) => Ok(BivariatePoly::constant(v.clone())),
                        None => Err(Error::UnknownIdentifier { name: name.to_string(), pos: start }),
                    },
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn basic_curve() {
        let p = parse_poly("y^2 - x^2 + 4").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(0, 2), rat(1, 1));
        assert_eq!(p.coeff(2, 0), rat(-1, 1));
        assert_eq!(p.coeff(0, 0), rat(4, 1));
    }

    #[test]
    fn zero_poly() {
        assert!(parse_poly("0").unwrap().is_zero());
        assert!(parse_poly("x - x").unwrap().is_zero());
    }

    #[test]
    fn substitution() {
        let mut subs = BTreeMap::new();
        subs.insert("c".to_string(), rat(3, 1));
        let p = parse_poly_with("1 + c*x*y", &subs).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(0, 0), rat(1, 1));
        assert_eq!(p.coeff(1, 1), rat(3, 1));
        match parse_poly("1 + c*x*y") {
            Err(Error::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "c");
                assert_eq!(pos, 4);
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_poly("x^"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("(x+1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x/y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^-1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x $ y"), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn rationals_and_parens() {
        let p = parse_poly("(x - 1/2)^2").unwrap();
        assert_eq!(p.coeff(2, 0), rat(1, 1));
        assert_eq!(p.coeff(1, 0), rat(-1, 1));
        assert_eq!(p.coeff(0, 0), rat(1, 4));
    }

    #[test]
    fn printer_order() {
        let p = parse_poly("y^2 - x^2 + 4").unwrap();
        assert_eq!(alloc::format!("{}", p), "-x^2 + y^2 + 4");
        let q = parse_poly("-3/4*x*y^3 + x").unwrap();
        assert_eq!(alloc::format!("{}", q), "-3/4*x*y^3 + x");
    }
}
