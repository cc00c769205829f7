//! Canonical polynomial text and its parser.
//!
//! Grammar: integer coefficients, ring-variable identifiers, operators
//! `+ - * ^` and parentheses; juxtaposition is not multiplication.  As a
//! display-round-trip superset, `/` between constants is also accepted so
//! canonical forms like `2/3*X` re-parse.

use crate::error::Result as CoreResult;
use crate::field::Field;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::fmt;

/// A positioned parse failure; `col` is 1-based within the given text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "col {}: {}", self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_polynomial(self))
    }
}

pub fn render_polynomial<F: Field>(p: &Polynomial<F>) -> String {
    let ring = p.ring();
    let field = ring.field();
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = field.is_negative(c);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = field.abs(c);
        let mono = render_monomial(ring, m);
        if mono.is_empty() {
            out.push_str(&field.elem_to_string(&mag));
        } else if field.is_one(&mag) {
            out.push_str(&mono);
        } else {
            out.push_str(&field.elem_to_string(&mag));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn render_monomial<F: Field>(ring: &PolyRing<F>, m: &crate::monomial::Monomial) -> String {
    let mut parts = Vec::new();
    for i in m.support() {
        let e = m.exp(i);
        if e == 1 {
            parts.push(ring.var_name(i).to_string());
        } else {
            parts.push(format!("{}^{}", ring.var_name(i), e));
        }
    }
    parts.join("*")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push((col, Tok::Plus));
                i += 1;
            }
            '-' | '\u{2212}' => {
                toks.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((col, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((col, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((col, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((col, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((col, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start + 1, Tok::Int(chars[start..i].iter().collect())));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((start + 1, Tok::Ident(chars[start..i].iter().collect())));
            }
            other => {
                return Err(ParseError { col, msg: format!("unexpected character {other:?}") })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a, F: Field> {
    ring: &'a PolyRing<F>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { col: self.col(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let col = self.col();
                    self.bump();
                    let rhs = self.factor()?;
                    if !rhs.is_constant() {
                        return Err(ParseError {
                            col,
                            msg: "division is only defined by nonzero constants".into(),
                        });
                    }
                    let c = rhs.constant_term();
                    match self.ring.field().inv(&c) {
                        Some(inv) => acc = acc.scale(&inv),
                        None => {
                            return Err(ParseError { col, msg: "division by zero".into() })
                        }
                    }
                }
                // Juxtaposition like `X Y` or `2X` is a grammar error.
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                    return self.err("expected an operator (juxtaposition is not multiplication)")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let mut base = self.primary()?;
        while let Some(Tok::Caret) = self.peek() {
            let col = self.col();
            self.bump();
            match self.bump() {
                Some(Tok::Int(digits)) => {
                    let e: u32 = digits.parse().map_err(|_| ParseError {
                        col,
                        msg: format!("exponent {digits} out of range"),
                    })?;
                    base = base.pow(e);
                }
                _ => {
                    return Err(ParseError {
                        col,
                        msg: "exponent must be a non-negative integer literal".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial<F>, ParseError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(digits)) => {
                let f = self.ring.field();
                let ten = f.from_int(10);
                let mut acc = f.zero();
                for d in digits.chars() {
                    let dv = f.from_int(d.to_digit(10).unwrap() as i64);
                    acc = f.add(&f.mul(&acc, &ten), &dv);
                }
                Ok(Polynomial::constant(self.ring, acc))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i).expect("index in range")),
                None => Err(ParseError { col, msg: format!("unknown variable {name}") }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError { col: self.col(), msg: "expected `)`".into() }),
                }
            }
            Some(tok) => Err(ParseError { col, msg: format!("unexpected token {tok:?}") }),
            None => Err(ParseError { col, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses one polynomial in the ring's variables.
pub fn parse_polynomial<F: Field>(
    ring: &PolyRing<F>,
    text: &str,
) -> Result<Polynomial<F>, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError { col: 1, msg: "empty polynomial".into() });
    }
    let end_col = text.chars().count() + 1;
    let mut parser = Parser { ring, toks, pos: 0, end_col };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}

/// Convenience used across tests and the CLI: parse or propagate as core error.
pub fn parse_poly_core<F: Field>(ring: &PolyRing<F>, text: &str) -> CoreResult<Polynomial<F>> {
    parse_polynomial(ring, text)
        .map_err(|e| crate::error::Error::Internal(format!("parse error: {e}")))
}
