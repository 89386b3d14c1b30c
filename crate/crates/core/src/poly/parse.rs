//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := factor ("*" factor)*
//! factor   := rational | var | "(" expr ")" | "-" factor
//! rational := integer ("/" positive-integer)?
//! var      := "d" | "l" | "m" | "g" | "b"
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{Poly, Rational, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    NonConstantDivision,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
            ParseErrorKind::UnknownIdentifier(id) => write!(f, "unknown identifier `{id}`"),
            ParseErrorKind::NonConstantDivision => {
                f.write_str("division is only allowed between integer literals")
            }
        }
    }
}

/// Parse failure with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(ParseError {
                    pos: start,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{ch}`")),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            kind: ParseErrorKind::Syntax(msg.into()),
        })
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc += self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                Tok::Slash => {
                    return Err(ParseError {
                        pos: self.pos(),
                        kind: ParseErrorKind::NonConstantDivision,
                    })
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() != Tok::Slash {
                    return Ok(Poly::constant(Rational::from_integer(n)));
                }
                let slash = self.pos();
                self.bump();
                match self.peek().clone() {
                    Tok::Int(d) if d.is_positive() => {
                        self.bump();
                        Ok(Poly::constant(Rational::new(n, d)))
                    }
                    Tok::Int(d) if d.is_zero() => self.syntax("denominator must be positive"),
                    _ => Err(ParseError {
                        pos: slash,
                        kind: ParseErrorKind::NonConstantDivision,
                    }),
                }
            }
            Tok::Ident(id) => match Var::from_symbol(&id) {
                Some(v) => Ok(Poly::var(v)),
                None => Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnknownIdentifier(id),
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => Ok(-self.factor()?),
            Tok::End => Err(ParseError {
                pos,
                kind: ParseErrorKind::Syntax("unexpected end of input".into()),
            }),
            other => Err(ParseError {
                pos,
                kind: ParseErrorKind::Syntax(format!("unexpected token {other:?}")),
            }),
        }
    }
}

/// Parses an expression into canonical form.
pub fn parse(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::Slash => Err(ParseError {
            pos: p.pos(),
            kind: ParseErrorKind::NonConstantDivision,
        }),
        _ => p.syntax("trailing input"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn vir_coefficient() {
        let q = parse("d + 2*l").unwrap();
        assert_eq!(q, Poly::var(Var::D) + Poly::var(Var::L) * Poly::int(2));
    }

    #[test]
    fn zero() {
        assert!(parse("0").unwrap().is_zero());
        assert!(parse(" 0 * d ").unwrap().is_zero());
    }

    #[test]
    fn clw_right_rule() {
        let q = parse("-(b*d + (b-1)*l)").unwrap();
        let b = Poly::var(Var::B);
        let expected = -(&b * &Poly::var(Var::D) + (&b - &Poly::one()) * Poly::var(Var::L));
        assert_eq!(q, expected);
        assert_eq!(q.to_string(), "-d*b - l*b + l");
    }

    #[test]
    fn rationals() {
        assert_eq!(parse("-3/2").unwrap(), Poly::constant(rat(-3, 2)));
        assert_eq!(parse("6/4*d").unwrap(), Poly::var(Var::D).scale(&rat(3, 2)));
        assert_eq!(parse("--d").unwrap(), Poly::var(Var::D));
        assert_eq!(parse("2*-l").unwrap(), Poly::var(Var::L).scale(&rat(-2, 1)));
    }

    #[test]
    fn errors_carry_position() {
        let e = parse("d + x").unwrap_err();
        assert_eq!(e.pos, 4);
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("x".into()));

        let e = parse("d + ").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));

        let e = parse("(d + l").unwrap_err();
        assert_eq!(e.pos, 6);

        assert!(matches!(
            parse("d $").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            parse("d l").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            parse("lambda").unwrap_err().kind,
            ParseErrorKind::UnknownIdentifier(_)
        ));
    }

    #[test]
    fn division_only_between_literals() {
        for bad in ["d/2", "2/d", "(1)/2", "1/(2)", "1/-2"] {
            let e = parse(bad).unwrap_err();
            assert_eq!(e.kind, ParseErrorKind::NonConstantDivision, "{bad}");
        }
        let e = parse("1/0").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        // literal rational followed by a product is fine
        assert!(parse("3/4*l").is_ok());
    }
}
