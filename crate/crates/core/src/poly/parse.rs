//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := integer | identifier | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Positions in errors are 1-based columns.

use std::iter::Peekable;
use std::str::CharIndices;

use num_bigint::BigInt;
use num_traits::One;

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars: Peekable<CharIndices<'_>> = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let pos = text[..i].chars().count() + 1;
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                let mut ident = String::new();
                while let Some(&(_, a)) = chars.peek() {
                    if !(a.is_ascii_alphanumeric() || a == '_') {
                        break;
                    }
                    ident.push(a);
                    chars.next();
                }
                out.push((pos, Tok::Ident(ident)));
                continue;
            }
            other => return Err(err(pos, format!("unexpected character `{other}`"))),
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MultiPoly<BigInt>> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            Some(Tok::Plus) => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<BigInt>> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly<BigInt>> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            return match self.toks.get(self.at).cloned() {
                Some((_, Tok::Int(n))) => {
                    self.at += 1;
                    let e: u32 = n.try_into().map_err(|_| err(pos, "exponent too large"))?;
                    Ok(base.pow(e, &BigInt::one()))
                }
                Some((_, Tok::Minus)) => Err(err(pos, "negative exponent")),
                _ => Err(err(pos, "expected a nonnegative integer exponent")),
            };
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MultiPoly<BigInt>> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((_, Tok::Int(n))) => {
                self.at += 1;
                Ok(MultiPoly::constant(self.nvars(), n))
            }
            Some((_, Tok::Ident(name))) => {
                self.at += 1;
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| err(pos, format!("unknown identifier `{name}`")))?;
                Ok(MultiPoly::term(
                    Monomial::var(self.nvars(), i, 1),
                    BigInt::one(),
                ))
            }
            Some((_, Tok::LParen)) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => Err(err(self.pos(), "expected `)`")),
                }
            }
            Some((_, t)) => Err(err(pos, format!("unexpected token {t:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

/// Parses an integer-coefficient polynomial in the declared variables.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<MultiPoly<BigInt>> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        vars,
        end: text.chars().count() + 1,
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a polynomial and maps its integer coefficients into a field.
pub fn parse_poly_over<F: Field>(
    text: &str,
    vars: &[String],
    desc: &F::Desc,
) -> Result<MultiPoly<F>> {
    Ok(parse_poly(text, vars)?.map_coeffs(|c| F::from_int(desc, c)))
}
