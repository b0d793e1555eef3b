//! Text syntax for polynomials: `3/2*x^2*y - z + 1`.
//!
//! Variables are identifiers declared by the ring, `^` takes non-negative
//! integer exponents, and `*` is optional between factors (`3x^2 y` works;
//! note `xy` lexes as one identifier, not a product). The printer emits the
//! canonical descending-order form with explicit `*`, and parsing that form
//! reproduces the polynomial exactly.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::poly::{Monomial, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

fn err_at(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digit run parses");
                toks.push((Tok::Int(n), start + 1));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start + 1));
            }
            other => return Err(err_at(col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.len + 1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }
}

struct Parser<'a> {
    lx: Lexer,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        while matches!(self.lx.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
            if let Some(Tok::Minus) = self.lx.peek() {
                negate = !negate;
            }
            self.lx.next();
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.lx.peek() {
                Some(Tok::Plus) | Some(Tok::Minus) => {
                    let mut neg = matches!(self.lx.peek(), Some(Tok::Minus));
                    self.lx.next();
                    while matches!(self.lx.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
                        if let Some(Tok::Minus) = self.lx.peek() {
                            neg = !neg;
                        }
                        self.lx.next();
                    }
                    let t = self.term()?;
                    acc = if neg { acc.sub(&t) } else { acc.add(&t) };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Star) => {
                    self.lx.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // implicit multiplication by juxtaposition
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.lx.peek() {
            self.lx.next();
            let col = self.lx.col();
            match self.lx.next() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err_at(col, "exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(err_at(col, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Polynomial> {
        let col = self.lx.col();
        match self.lx.next() {
            Some(Tok::Int(n)) => {
                // `a/b` forms an exact rational literal
                if let Some(Tok::Slash) = self.lx.peek() {
                    self.lx.next();
                    let dcol = self.lx.col();
                    match self.lx.next() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return Err(err_at(dcol, "zero denominator"));
                            }
                            let r = BigRational::new(n, d);
                            let c = self
                                .ring
                                .field()
                                .from_rational(&r)
                                .map_err(|e| err_at(dcol, e.to_string()))?;
                            Ok(Polynomial::constant(self.ring, c))
                        }
                        _ => Err(err_at(dcol, "expected an integer denominator")),
                    }
                } else {
                    let r = BigRational::from(n);
                    let c = self
                        .ring
                        .field()
                        .from_rational(&r)
                        .expect("integer literal always reduces");
                    Ok(Polynomial::constant(self.ring, c))
                }
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::variable(self.ring, i)),
                None => Err(err_at(col, format!("unknown variable `{name}`"))),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let ccol = self.lx.col();
                match self.lx.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err_at(ccol, "expected `)`")),
                }
            }
            Some(Tok::Minus) => {
                let f = self.factor()?;
                Ok(f.neg())
            }
            Some(tok) => Err(err_at(col, format!("unexpected token `{tok:?}`"))),
            None => Err(err_at(col, "unexpected end of input")),
        }
    }
}

pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err_at(1, "empty polynomial"));
    }
    let mut parser = Parser {
        lx: Lexer {
            toks,
            pos: 0,
            len: text.len(),
        },
        ring,
    };
    let poly = parser.expr()?;
    if parser.lx.peek().is_some() {
        return Err(err_at(parser.lx.col(), "trailing input after polynomial"));
    }
    Ok(poly)
}

fn write_monomial(vars: &[String], m: &Monomial, out: &mut String) {
    let mut first = true;
    for (name, &e) in vars.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(name);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

pub(crate) fn write_polynomial(poly: &Polynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if poly.is_zero() {
        return f.write_str("0");
    }
    let ring = poly.ring();
    let field = ring.field();
    let mut out = String::new();
    for (idx, (c, m)) in poly.terms().iter().enumerate() {
        // Over Q split the sign out of the coefficient; F_p residues are
        // canonical in [0, p) and always join with `+`.
        let (neg, mag) = match c {
            Coeff::Rat(r) => (r.is_negative(), Coeff::Rat(r.abs())),
            Coeff::Fp(x) => (false, Coeff::Fp(*x)),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag_is_one = match &mag {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Fp(x) => *x == 1,
        };
        if m.is_one() {
            out.push_str(&field.format(&mag));
        } else if mag_is_one {
            write_monomial(ring.vars(), m, &mut out);
        } else {
            out.push_str(&field.format(&mag));
            out.push('*');
            write_monomial(ring.vars(), m, &mut out);
        }
    }
    f.write_str(&out)
}
