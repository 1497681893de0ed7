//! Text syntax for polynomials.
//!
//! ```text
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := int ["/" nat] | var ["^" nat]
//! ```
//!
//! Whitespace is ignored. The canonical output of [`Polynomial`]'s
//! `Display` is a subset of this grammar.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::{Polynomial, Ring, Term};

pub fn parse_polynomial<F: Field>(text: &str, ring: &Arc<Ring<F>>) -> Result<Polynomial<F>> {
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let terms = p.poly(ring)?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(ring.from_terms(terms))
}

/// Parses a comma-separated list of polynomials.
pub fn parse_list<F: Field>(text: &str, ring: &Arc<Ring<F>>) -> Result<Vec<Polynomial<F>>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_polynomial(s, ring))
        .collect()
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            input: self.text.to_string(),
            pos: self.pos,
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

    fn poly<F: Field>(&mut self, ring: &Arc<Ring<F>>) -> Result<Vec<Term<F>>> {
        let field = ring.field();
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return Err(self.error("empty polynomial")),
            _ => false,
        };
        loop {
            let mut t = self.term(ring)?;
            if negative {
                t.coeff = field.neg(&t.coeff);
            }
            terms.push(t);
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term<F: Field>(&mut self, ring: &Arc<Ring<F>>) -> Result<Term<F>> {
        let field = ring.field();
        let mut coeff = field.one();
        let mut monomial = Monomial::one(ring.nvars());
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.nat()?;
                    let den = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        self.nat()?
                    } else {
                        BigInt::one()
                    };
                    if den == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                    let c = field
                        .from_ratio(&num, &den)
                        .ok_or_else(|| Error::NotInvertible(format!("{num}/{den}")))?;
                    coeff = field.mul(&coeff, &c);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.bytes.len()
                        && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = &self.text[start..self.pos];
                    let slot = ring
                        .slot(name)
                        .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let e = self.nat()?;
                        u16::try_from(e).map_err(|_| self.error("exponent too large"))?
                    } else {
                        1
                    };
                    monomial.exps_mut()[slot] += e;
                }
                _ => return Err(self.error("expected a number or a variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Term { coeff, monomial })
    }

    fn nat(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.text[start..self.pos].parse().expect("ascii digits"))
    }
}
