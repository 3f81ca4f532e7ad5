//! Text parser for polynomial input.
//!
//! Grammar: signed rational literals `a` or `a/b`, variables
//! `[A-Za-z][A-Za-z0-9]*`, `^` with a non-negative integer exponent, `*`,
//! `+`, `-` and parentheses. Implicit multiplication by juxtaposition is
//! rejected; `/` is only accepted inside a rational literal. When the
//! coefficient field is an extension, its generator name is accepted as a
//! constant.

use crate::poly::{Polynomial, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("division is not allowed outside rational literals (position {pos})")]
    Division { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = vec![];
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '/' => return Err(ParseError::Division { pos: i }),
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = text[start..i].parse().unwrap();
                let mut value = BigRational::from_integer(numer);
                // rational literal a/b
                if i < bytes.len() && bytes[i] == b'/' {
                    let slash = i;
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(ParseError::Syntax {
                            pos: slash,
                            msg: "expected denominator digits after `/`".into(),
                        });
                    }
                    let denom: BigInt = text[dstart..i].parse().unwrap();
                    if denom.is_zero() {
                        return Err(ParseError::Syntax {
                            pos: dstart,
                            msg: "zero denominator".into(),
                        });
                    }
                    value = BigRational::new(value.to_integer(), denom);
                }
                out.push((start, Tok::Num(value)));
            }
            'A'..='Z' | 'a'..='z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
            }
            _ => {
                return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character `{c}`") })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a Arc<Ring>,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.bump();
            }
            Some(Tok::Plus) => {
                // no unary plus per the grammar
                return Err(ParseError::Syntax { pos: self.here(), msg: "unary `+` not allowed".into() });
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same ring");
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same ring");
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f).expect("same ring");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.here();
        let atom = match self.bump() {
            Some(Tok::Num(r)) => {
                let c = self.ring.field.from_rat(&r).map_err(|e| ParseError::Syntax {
                    pos,
                    msg: format!("literal has no image in the coefficient field: {e}"),
                })?;
                Polynomial::constant(self.ring, c)
            }
            Some(Tok::Name(name)) => {
                if self.ring.var_index(&name).is_some() {
                    Polynomial::var(self.ring, &name).expect("index checked")
                } else if self.ring.field.generator_name() == Some(name.as_str()) {
                    Polynomial::constant(
                        self.ring,
                        self.ring.field.generator().expect("extension field"),
                    )
                } else {
                    return Err(ParseError::UnknownVariable { pos, name });
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => inner,
                    _ => {
                        return Err(ParseError::Syntax { pos: self.here(), msg: "expected `)`".into() })
                    }
                }
            }
            Some(Tok::Minus) => {
                let f = self.factor()?;
                return Ok(f.neg());
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("expected a number, variable or `(`, found {other:?}"),
                })
            }
        };
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let epos = self.here();
            match self.bump() {
                Some(Tok::Num(r)) if r.denom() == &BigInt::from(1) && !r.numer().sign().eq(&num_bigint::Sign::Minus) => {
                    let exp: u32 = r.numer().to_string().parse().map_err(|_| ParseError::Syntax {
                        pos: epos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(atom.pow(exp));
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos: epos,
                        msg: "expected a non-negative integer exponent".into(),
                    })
                }
            }
        }
        Ok(atom)
    }
}

/// Parse `text` into a canonical polynomial in `ring`.
pub fn parse(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, ring, end: text.len() };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Syntax {
            pos: p.here(),
            msg: "trailing input (note: implicit multiplication is not accepted)".into(),
        });
    }
    Ok(poly)
}
