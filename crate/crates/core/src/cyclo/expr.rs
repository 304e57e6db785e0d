//! Text syntax for cyclotomic numbers.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'z' | '(' expr ')'
//! ```
//!
//! `z` stands for ζ_n where n is the conductor passed to [`parse_expr`].
//! Whitespace is ignored between tokens.

use num_bigint::BigInt;

use super::num::{CycloNum, Rational};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    conductor: u32,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: 1, column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<CycloNum> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycloNum> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::Parse { line: 1, column: at + 1, message: "division by zero".into() });
                }
                acc = acc.div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CycloNum> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycloNum> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let at = self.pos;
        let e = self.integer()?;
        let e: i64 = e.try_into().map_err(|_| Error::Parse {
            line: 1,
            column: at + 1,
            message: "exponent too large".into(),
        })?;
        if neg && base.is_zero() {
            return Err(self.err("zero raised to a negative power"));
        }
        base.pow(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<CycloNum> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                CycloNum::zeta(self.conductor)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                CycloNum::from_rational(&Rational::from_integer(v), self.conductor)
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse an expression such as `1/2*z^4 - z^2 + 3` at the given conductor.
pub fn parse_expr(text: &str, conductor: u32) -> Result<CycloNum> {
    CycloNum::zero(conductor)?;
    let mut p = Parser { src: text.as_bytes(), pos: 0, conductor };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_expression() {
        let v = parse_expr("1/2*z^4 - z^2", 12).unwrap();
        let half = Rational::new(1.into(), 2.into());
        let expect = &CycloNum::zeta_pow(12, 4).unwrap().scale(&half) - &CycloNum::zeta_pow(12, 2).unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse_expr("-2^2", 1).unwrap(), CycloNum::from_int(-4, 1).unwrap());
        assert_eq!(parse_expr("(1+2)*3 - 4/2", 1).unwrap(), CycloNum::from_int(7, 1).unwrap());
        assert_eq!(parse_expr("z^-1", 7).unwrap(), CycloNum::zeta_pow(7, 6).unwrap());
    }

    #[test]
    fn reports_column() {
        match parse_expr("1 + * 2", 3) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_expr("(1", 3).is_err());
        assert!(parse_expr("1/0", 3).is_err());
        assert!(parse_expr("1 2", 3).is_err());
        assert!(parse_expr("", 3).is_err());
    }

    #[test]
    fn round_trips_to_expr() {
        let v = parse_expr("3*z^3 - 1/5*z + 7", 9).unwrap();
        assert_eq!(parse_expr(&v.to_expr(), 9).unwrap(), v);
        assert_eq!(parse_expr(&v.to_string(), 9).unwrap(), v);
    }
}
