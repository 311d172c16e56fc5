//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := number ['i'] | identifier | '(' expr ')'
//! ```
//!
//! Division is only accepted by a single-term expression, which keeps the
//! result a Laurent polynomial. A bare `i` denotes the imaginary unit unless
//! it is declared as a variable or parameter.

use std::collections::BTreeMap;

use thiserror::Error;

use super::LaurentPoly;
use crate::C64;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub message: String,
    /// 1-based character column within the parsed string.
    pub column: usize,
}

pub(super) fn parse_expression(
    input: &str,
    vars: &[String],
    params: &BTreeMap<String, C64>,
) -> Result<LaurentPoly, ParseError> {
    let mut p = Parser { chars: input.chars().collect(), pos: 0, vars, params };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
    params: &'a BTreeMap<String, C64>,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { message: message.into(), column: self.pos + 1 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let (exps, c) = d.as_single_term().ok_or_else(|| ParseError {
                        message: "division is only supported by a single term".into(),
                        column: at + 1,
                    })?;
                    let inv: Vec<i32> = exps.iter().map(|e| -e).collect();
                    acc = acc.mul_monomial(&inv).scale(C64::new(1.0, 0.0) / c);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let k: u32 = digits.parse().map_err(|_| self.error("exponent out of range"))?;
        if !negative {
            return Ok(base.pow(k));
        }
        let (exps, c) = base.as_single_term().ok_or_else(|| ParseError {
            message: "negative powers need a single-term base".into(),
            column: start + 1,
        })?;
        let exps: Vec<i32> = exps.iter().map(|e| -e * k as i32).collect();
        let c = C64::new(1.0, 0.0) / c.powi(k as i32);
        Ok(LaurentPoly::monomial(base.vars(), exps, c))
    }

    fn atom(&mut self) -> Result<LaurentPoly, ParseError> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of input"))?;
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(')') {
                return Err(self.error("expected `)`"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() || c == '.' {
            return self.number();
        }
        if c.is_alphabetic() || c == '_' {
            let start = self.pos;
            while self.pos < self.chars.len()
                && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
            {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            if let Some(v) = self.params.get(&name) {
                return Ok(LaurentPoly::constant(self.vars, *v));
            }
            if let Ok(p) = LaurentPoly::var(self.vars, &name) {
                return Ok(p);
            }
            if name == "i" {
                return Ok(LaurentPoly::constant(self.vars, C64::new(0.0, 1.0)));
            }
            return Err(ParseError { message: format!("unknown identifier `{name}`"), column: start + 1 });
        }
        Err(self.error(format!("unexpected `{c}`")))
    }

    fn number(&mut self) -> Result<LaurentPoly, ParseError> {
        let start = self.pos;
        let n = self.chars.len();
        while self.pos < n && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '.') {
            self.pos += 1;
        }
        // Exponent part, only when followed by digits.
        if self.pos < n && (self.chars[self.pos] == 'e' || self.chars[self.pos] == 'E') {
            let mut look = self.pos + 1;
            if look < n && (self.chars[look] == '-' || self.chars[look] == '+') {
                look += 1;
            }
            if look < n && self.chars[look].is_ascii_digit() {
                self.pos = look;
                while self.pos < n && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let value: f64 = text
            .parse()
            .map_err(|_| ParseError { message: format!("bad number `{text}`"), column: start + 1 })?;
        let imaginary = self.pos < n
            && self.chars[self.pos] == 'i'
            && !(self.pos + 1 < n && (self.chars[self.pos + 1].is_alphanumeric() || self.chars[self.pos + 1] == '_'));
        let c = if imaginary {
            self.pos += 1;
            C64::new(0.0, value)
        } else {
            C64::new(value, 0.0)
        };
        Ok(LaurentPoly::constant(self.vars, c))
    }
}
