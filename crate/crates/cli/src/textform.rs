//! Parser for the textual polynomial and series grammar used in tables and
//! JSON output.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := NUMBER ['/' NUMBER]
//!         | IDENT ['^' NUMBER]
//!         | '(' expr ')' ['^' NUMBER]
//! IDENT  := [A-Za-z_][A-Za-z0-9_]*
//! NUMBER := [0-9]+
//! ```
//!
//! `/` occurs only between integer literals (rational constants). Parsed
//! expressions normalize into a sparse polynomial over string-named
//! variables, so two renderings compare structurally; a series is the same
//! polynomial read with `t` as the distinguished variable.

use std::collections::BTreeMap;
use std::fmt;

use curveideal_core::{ParametricSeries, Polynomial, Rat, Variable};

/// Exponent map of one monomial over string-named variables.
pub type SMono = BTreeMap<String, u32>;

/// Normalized polynomial over string-named variables; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SPoly {
    pub terms: BTreeMap<SMono, Rat>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = SPoly::zero();
        p.add_term(SMono::new(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut m = SMono::new();
        m.insert(name.to_string(), 1);
        let mut p = SPoly::zero();
        p.add_term(m, Rat::from_integer(1.into()));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: SMono, c: Rat) {
        use num_traits::Zero;
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &SPoly) -> SPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SPoly {
        SPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &SPoly) -> SPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SPoly) -> SPoly {
        let mut out = SPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> SPoly {
        let mut out = SPoly::constant(Rat::from_integer(1.into()));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

/// A series over string-named variables: exponent of `t` mapped to the
/// coefficient polynomial in the remaining variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SSeries {
    pub terms: BTreeMap<u64, SPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub at: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.at, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_poly(input: &str) -> Result<SPoly, ParseError> {
    let mut p = Parser::new(input);
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(poly)
}

/// Parses a polynomial in `t` and the parameters, splitting on the power of
/// `t`.
pub fn parse_series(input: &str) -> Result<SSeries, ParseError> {
    let poly = parse_poly(input)?;
    let mut out = SSeries::default();
    for (m, c) in &poly.terms {
        let t_exp = m.get("t").copied().unwrap_or(0) as u64;
        let mut rest = m.clone();
        rest.remove("t");
        out.terms
            .entry(t_exp)
            .or_insert_with(SPoly::zero)
            .add_term(rest, c.clone());
    }
    out.terms.retain(|_, p| !p.is_zero());
    Ok(out)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            at: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SPoly, ParseError> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SPoly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.number()?;
                let denom = if self.eat(b'/') { self.number()? } else { 1 };
                if denom == 0 {
                    return Err(self.error("zero denominator"));
                }
                Ok(SPoly::constant(Rat::new(numer.into(), denom.into())))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident();
                let exp = if self.eat(b'^') { self.number()? } else { 1 };
                Ok(SPoly::var(&name).pow(exp as u32))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                let exp = if self.eat(b'^') { self.number()? } else { 1 };
                Ok(inner.pow(exp as u32))
            }
            _ => Err(self.error("expected a number, name, or '('")),
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number out of range"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }
}

/// Converts an exact polynomial into the string-keyed form under a naming.
pub fn spoly_from_polynomial(p: &Polynomial, names: &dyn Fn(Variable) -> String) -> SPoly {
    let mut out = SPoly::zero();
    for (m, c) in p.terms() {
        let mono: SMono = m.factors().iter().map(|&(v, e)| (names(v), e)).collect();
        out.add_term(mono, c.clone());
    }
    out
}

/// Converts a series with polynomial coefficients into string-keyed form;
/// `None` if some coefficient is a genuine quotient.
pub fn sseries_from_series(
    s: &ParametricSeries,
    names: &dyn Fn(Variable) -> String,
) -> Option<SSeries> {
    let mut out = SSeries::default();
    for (&e, c) in s.terms() {
        let p = c.as_polynomial()?;
        out.terms.insert(e, spoly_from_polynomial(p, names));
    }
    Some(out)
}
