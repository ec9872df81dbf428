//! Polynomial text grammar shared by every input surface: identifiers from
//! the descriptor's variable names, integer literals, `+ - * ^`, parentheses;
//! whitespace insignificant; coefficients reduced mod p.

use std::sync::Arc;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    line_off: usize,
    col_off: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line_off: usize, col_off: usize) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1, line_off, col_off }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let col = if self.line == 1 { self.col + self.col_off } else { self.col };
        Error::Parse { line: self.line + self.line_off, col, msg: msg.into() }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let (line, col) = (self.line + self.line_off, if self.line == 1 { self.col + self.col_off } else { self.col });
            let c = self.src[self.pos];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'+' => {
                    self.bump();
                    out.push((Tok::Plus, line, col));
                }
                b'-' => {
                    self.bump();
                    out.push((Tok::Minus, line, col));
                }
                b'*' => {
                    self.bump();
                    out.push((Tok::Star, line, col));
                }
                b'^' => {
                    self.bump();
                    out.push((Tok::Caret, line, col));
                }
                b'(' => {
                    self.bump();
                    out.push((Tok::LParen, line, col));
                }
                b')' => {
                    self.bump();
                    out.push((Tok::RParen, line, col));
                }
                b'0'..=b'9' => {
                    let mut v: u64 = 0;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        let d = (self.bump() - b'0') as u64;
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(d))
                            .ok_or_else(|| self.err("integer literal too large"))?;
                    }
                    out.push((Tok::Int(v), line, col));
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.bump();
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                    out.push((Tok::Ident(name), line, col));
                }
                other => {
                    return Err(self.err(format!("unexpected character '{}'", other as char)));
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    desc: &'a Arc<RingDescriptor>,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err_at(&self, idx: usize, msg: impl Into<String>) -> Error {
        let (line, col) = if idx < self.toks.len() {
            (self.toks[idx].1, self.toks[idx].2)
        } else {
            self.toks.last().map(|t| (t.1, t.2 + 1)).unwrap_or((1, 1))
        };
        Error::Parse { line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.next();
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    // factor := atom ['^' int]
    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let idx = self.pos;
            match self.next() {
                Some(Tok::Int(n)) => {
                    if n > u32::MAX as u64 {
                        return Err(self.err_at(idx, "exponent too large"));
                    }
                    return base.pow(n);
                }
                _ => return Err(self.err_at(idx, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let idx = self.pos;
        match self.next() {
            Some(Tok::Ident(name)) => match self.desc.var_index(&name) {
                Some(j) => Ok(Polynomial::var(self.desc, j)),
                None => Err(self.err_at(idx, format!("unknown variable '{name}'"))),
            },
            Some(Tok::Int(v)) => Ok(Polynomial::constant(self.desc, v % self.desc.p)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err_at(self.pos.saturating_sub(1), "expected ')'")),
                }
            }
            Some(Tok::Minus) => {
                // unary minus inside a factor: -x^2 parses as -(x^2)
                let f = self.factor()?;
                Ok(f.neg())
            }
            Some(other) => Err(self.err_at(idx, format!("unexpected token {other:?}"))),
            None => Err(self.err_at(idx, "unexpected end of input")),
        }
    }
}

/// Parses a polynomial, reporting positions relative to (line_off, col_off)
/// so jobspec errors can point into the enclosing file.
pub fn parse_polynomial_at(
    desc: &Arc<RingDescriptor>,
    text: &str,
    line_off: usize,
    col_off: usize,
) -> Result<Polynomial> {
    let toks = Lexer::new(text, line_off, col_off).tokens()?;
    if toks.is_empty() {
        return Err(Error::Parse {
            line: 1 + line_off,
            col: 1 + col_off,
            msg: "empty polynomial".into(),
        });
    }
    let mut parser = Parser { desc, toks, pos: 0 };
    let poly = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err_at(parser.pos, "trailing input after polynomial"));
    }
    Ok(poly)
}

pub fn parse_polynomial(desc: &Arc<RingDescriptor>, text: &str) -> Result<Polynomial> {
    parse_polynomial_at(desc, text, 0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces_mod_p() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let f = parse_polynomial(&d, "7*x + 10 - y").unwrap();
        assert_eq!(f.to_string(), "2*x + 4*y");
        let g = parse_polynomial(&d, "(x + y)^2").unwrap();
        assert_eq!(g.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn unary_minus_and_parens() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        assert_eq!(parse_polynomial(&d, "-x^2").unwrap(), parse_polynomial(&d, "4*x^2").unwrap());
        assert_eq!(
            parse_polynomial(&d, "-(x - y)").unwrap(),
            parse_polynomial(&d, "y - x").unwrap()
        );
    }

    #[test]
    fn unknown_variable_named_in_error() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let e = parse_polynomial(&d, "x + w^2").unwrap_err();
        assert!(e.to_string().contains("'w'"), "{e}");
    }

    #[test]
    fn implicit_products_are_rejected() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        // "xy" lexes as one identifier, which is not a declared variable
        let e = parse_polynomial(&d, "xy").unwrap_err();
        assert!(e.to_string().contains("'xy'"), "{e}");
    }

    #[test]
    fn error_positions() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        match parse_polynomial(&d, "x + ?") {
            Err(Error::Parse { line: 1, col: 5, .. }) => {}
            other => panic!("expected parse error at 1:5, got {other:?}"),
        }
    }
}
