//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (usual precedence, `^` binds tightest, unary minus applies to a
//! power):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants. The identifier `zeta`
//! denotes the field's distinguished root of unity.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{Scalar, ZETA};
use super::poly::{Poly, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` at offset {i} in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn err(&self, msg: &str) -> Error {
        let at = self.toks.get(self.pos).map_or(self.src.len(), |(o, _)| *o);
        Error::Parse(format!("{msg} at offset {at} in `{}`", self.src))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc.add_assign_ref(&t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = &acc - &t;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let t = self.unary()?;
                acc = &acc * &t;
            } else if self.eat('/') {
                let t = self.unary()?;
                let c = t
                    .as_constant()
                    .ok_or_else(|| self.err("division by a non-constant"))?;
                let inv = c.inv().ok_or_else(|| self.err("division by zero"))?;
                acc = acc.scalar_mul(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let q = BigRational::from_integer(n);
                Ok(self.ring.constant(Scalar::from_rational(self.ring.field(), q)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == ZETA {
                    Ok(self.ring.constant(self.ring.field().zeta()))
                } else {
                    self.ring.var(&name).map_err(|_| self.err(&format!("unknown variable `{name}`")))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

pub(crate) fn parse_poly(ring: &Ring, src: &str) -> Result<Poly> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial expression".into()));
    }
    let mut p = Parser { ring, src, toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}
