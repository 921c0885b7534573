//! Polynomial expression grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" INTEGER)?
//! atom   := INTEGER ("/" INTEGER)? | NAME | "(" expr ")"
//! ```
//!
//! Juxtaposition (`2x`) is rejected, as is `/` anywhere except inside a
//! rational literal.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{AlgebraError, Result};
use crate::poly::{Polynomial, Rational};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(AlgebraError::Syntax { position: start, message: format!("unexpected character `{other}`") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Syntax { position: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Int(_)) | Some(Tok::Name(_)) | Some(Tok::LParen) => {
                    return self.err("implicit multiplication is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| AlgebraError::Syntax {
                        position: self.offset(),
                        message: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    if self.peek() == Some(&Tok::Caret) {
                        return self.err("chained exponents need parentheses");
                    }
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Polynomial::constant(self.ring, Rational::new(n, d)))
                        }
                        Some(Tok::Int(_)) => self.err("zero denominator"),
                        _ => self.err("expected an integer denominator"),
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
                }
            }
            Some(Tok::Name(name)) => {
                let i = self.ring.var(&name)?;
                self.pos += 1;
                Ok(Polynomial::var(self.ring, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Slash) => self.err("`/` is only allowed inside rational literals"),
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), ring };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    fn ring() -> Ring {
        RingContext::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn parses_examples() {
        let f = parse_polynomial("x^4+z^3-y*z^2", &ring()).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.total_degree(), 4);
        assert!(parse_polynomial("0", &ring()).unwrap().is_zero());
        assert_eq!(
            parse_polynomial("(x-1)*(x+1)", &ring()).unwrap(),
            parse_polynomial("x^2 - 1", &ring()).unwrap()
        );
        assert_eq!(parse_polynomial("-(-x)", &ring()).unwrap().to_string(), "x");
        assert_eq!(parse_polynomial("1/10*x - 3/6", &ring()).unwrap().to_string(), "1/10*x-1/2");
    }

    #[test]
    fn reports_errors() {
        assert_eq!(
            parse_polynomial("x+q", &ring()).unwrap_err(),
            AlgebraError::UnknownVariable("q".into())
        );
        match parse_polynomial("2x", &ring()).unwrap_err() {
            AlgebraError::Syntax { position, .. } => assert_eq!(position, 1),
            e => panic!("{e:?}"),
        }
        assert!(parse_polynomial("x/2", &ring()).is_err());
        assert!(parse_polynomial("x^", &ring()).is_err());
        assert!(parse_polynomial("(x+1", &ring()).is_err());
        assert!(parse_polynomial("x^2^2", &ring()).is_err());
        assert!(parse_polynomial("1.5", &ring()).is_err());
        assert!(parse_polynomial("1/0", &ring()).is_err());
        assert!(parse_polynomial("", &ring()).is_err());
    }
}
