//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := ident | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! A leading `-` in factor position negates that factor, which is how the
//! printer writes a negative first term (`-u1*u3`, `-3/4`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::poly::Polynomial;
use super::vars::VarTable;
use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownIdentifier(String),
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    NegativeExponent,
    NonIntegerExponent,
    ExponentTooLarge,
    Division,
    ZeroDenominator,
    DecimalLiteral,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnknownIdentifier(s) => write!(f, "unknown identifier `{s}`"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::NegativeExponent => write!(f, "negative exponent"),
            ParseErrorKind::NonIntegerExponent => {
                write!(f, "exponent must be a nonnegative integer literal")
            }
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
            ParseErrorKind::Division => {
                write!(f, "division is only allowed inside rational literals")
            }
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
            ParseErrorKind::DecimalLiteral => write!(f, "decimal literals are not supported"),
        }
    }
}

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at column {}", .pos + 1)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Decimal,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Decimal => write!(f, "decimal literal"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    out.push((Tok::Decimal, start));
                } else {
                    let n: BigInt = text[start..i].parse().expect("digits");
                    out.push((Tok::Int(n), start));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(ch),
                    pos: i,
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    vars: &'a VarTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.1).unwrap_or(self.end)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            kind,
            pos: self.pos(),
        })
    }

    fn unexpected<T>(&self) -> Result<T, ParseError> {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.to_string())),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => return self.err(ParseErrorKind::Division),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.at += 1;
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let k = self.exponent()?;
            if let Some(Tok::Slash) = self.peek() {
                return self.err(ParseErrorKind::NonIntegerExponent);
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let k: u32 = match u16::try_from(n.clone()) {
                    Ok(k) => k as u32,
                    Err(_) => return self.err(ParseErrorKind::ExponentTooLarge),
                };
                self.at += 1;
                Ok(k)
            }
            Some(Tok::Minus) => self.err(ParseErrorKind::NegativeExponent),
            Some(Tok::Decimal) | Some(Tok::LParen) | Some(Tok::Ident(_)) => {
                self.err(ParseErrorKind::NonIntegerExponent)
            }
            _ => self.unexpected(),
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let nvars = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => match self.vars.get(&name) {
                Some(v) => {
                    self.at += 1;
                    Ok(Polynomial::var(nvars, v))
                }
                None => self.err(ParseErrorKind::UnknownIdentifier(name)),
            },
            Some(Tok::Int(n)) => {
                self.at += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return self.err(ParseErrorKind::ZeroDenominator);
                            }
                            self.at += 1;
                            Ok(Polynomial::constant(nvars, Rational::new(n, d)))
                        }
                        Some(_) => self.err(ParseErrorKind::Division),
                        None => self.err(ParseErrorKind::UnexpectedEnd),
                    }
                } else {
                    Ok(Polynomial::constant(nvars, Rational::from_integer(n)))
                }
            }
            Some(Tok::Decimal) => self.err(ParseErrorKind::DecimalLiteral),
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => self.unexpected(),
                }
            }
            _ => self.unexpected(),
        }
    }
}

/// Parses `text` into a canonical polynomial over `vars`.
pub fn parse_expr(text: &str, vars: &VarTable) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        vars,
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return match p.peek() {
            Some(Tok::Slash) => p.err(ParseErrorKind::Division),
            _ => p.unexpected(),
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::Var;

    fn table() -> VarTable {
        VarTable::new(["u1", "u2", "u3"]).unwrap()
    }

    #[test]
    fn parses_documented_examples() {
        let t = table();
        let u1 = Polynomial::var(3, Var(0));
        let u3 = Polynomial::var(3, Var(2));
        assert_eq!(parse_expr("u1*u3", &t).unwrap(), &u1 * &u3);
        assert_eq!(parse_expr("u1 + u3", &t).unwrap().len(), 2);
        let p = parse_expr("(u1+u3)^2 - u1^2 - u3^2", &t).unwrap();
        assert_eq!(p, (&u1 * &u3).scale(&Rational::from_integer(2.into())));
        assert_eq!(p.to_string_with(&t), "2*u1*u3");
    }

    #[test]
    fn rational_literals_and_unary_minus() {
        let t = table();
        let p = parse_expr("-3/4*u1^2 + 1/2 - -1", &t).unwrap();
        assert_eq!(p.to_string_with(&t), "-3/4*u1^2 + 3/2");
        assert_eq!(parse_expr("-u1^2", &t).unwrap().to_string_with(&t), "-u1^2");
    }

    #[test]
    fn errors_carry_positions() {
        let t = table();
        let e = parse_expr("u1 + u9", &t).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("u9".into()));
        assert_eq!(e.pos, 5);
        assert_eq!(
            parse_expr("u1^-1", &t).unwrap_err().kind,
            ParseErrorKind::NegativeExponent
        );
        assert_eq!(
            parse_expr("u1^1.5", &t).unwrap_err().kind,
            ParseErrorKind::NonIntegerExponent
        );
        assert_eq!(
            parse_expr("u1^3/2", &t).unwrap_err().kind,
            ParseErrorKind::NonIntegerExponent
        );
        assert_eq!(parse_expr("u1/u2", &t).unwrap_err().kind, ParseErrorKind::Division);
        assert_eq!(parse_expr("u1/2", &t).unwrap_err().kind, ParseErrorKind::Division);
        assert_eq!(parse_expr("(u1", &t).unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(parse_expr("u1 $", &t).unwrap_err().pos, 3);
        assert_eq!(parse_expr("1/0", &t).unwrap_err().kind, ParseErrorKind::ZeroDenominator);
        assert!(parse_expr("", &t).is_err());
    }
}
