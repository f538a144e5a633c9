//! Text form of polynomials.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := '-' factor | base ('^' uint)?
//! base     := rational | ident | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`. Inside a
//! cyclotomic context (M > 1) the identifier `w` is ζ_M. Multiplication is
//! always explicit.
//!
//! [`format`] prints terms in decreasing monomial order and is the inverse of
//! [`parse`].

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::arith::{CycloNum, Rational};
use crate::error::ParseError;
use crate::poly::{Context, MPoly, Monomial};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
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
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().unwrap())));
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
                let ch = text[i..].chars().next().unwrap();
                return err(i, format!("unexpected character `{ch}`"));
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
    ctx: &'a Context,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.eat(&Tok::Caret) {
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().or_else(|_| err(at, "exponent too large"))?;
                    return Ok(base.pow(k));
                }
                _ => return err(at, "exponent must be a non-negative integer literal"),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MPoly, ParseError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return err(at, "unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let mut value = Rational::from_integer(n);
                if self.eat(&Tok::Slash) {
                    let d_at = self.offset();
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            value /= Rational::from_integer(d);
                        }
                        Some(Tok::Num(_)) => return err(d_at, "zero denominator"),
                        _ => return err(d_at, "expected an integer denominator"),
                    }
                }
                Ok(self.ctx.from_rational(value))
            }
            Tok::Ident(name) => {
                if let Some(slot) = self.ctx.slot_of(&name) {
                    Ok(self.ctx.var(slot))
                } else if name == "w" {
                    if self.ctx.field().index() > 1 {
                        Ok(self.ctx.constant(self.ctx.field().generator()))
                    } else {
                        err(at, "`w` needs a cyclotomic field (M > 1)")
                    }
                } else {
                    err(at, format!("unknown identifier `{name}`"))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return err(self.offset(), "expected `)`");
                }
                Ok(inner)
            }
            Tok::Slash => err(at, "`/` is only allowed between integer literals"),
            _ => err(at, "expected a number, variable or `(`"),
        }
    }
}

/// Parses `text` into a polynomial of `ctx`.
pub fn parse(text: &str, ctx: &Context) -> Result<MPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ctx,
    };
    let value = parser.expr()?;
    if parser.pos < parser.toks.len() {
        let at = parser.offset();
        if parser.peek() == Some(&Tok::Slash) {
            return err(at, "`/` is only allowed between integer literals");
        }
        return err(at, "unexpected trailing input");
    }
    Ok(value)
}

/// A signed part of a sum: `(negative, magnitude text)`.
type Piece = (bool, String);

fn join(pieces: &[Piece]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in pieces.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn rational_piece(q: &Rational, unit: Option<&str>) -> Piece {
    let a = q.abs();
    let body = match unit {
        None => a.to_string(),
        Some(u) if a.is_one() => u.to_string(),
        Some(u) => format!("{a}*{u}"),
    };
    (q.is_negative(), body)
}

fn w_polynomial(c: &CycloNum) -> String {
    let pieces: Vec<Piece> = c
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, q)| !q.is_zero())
        .map(|(k, q)| {
            let unit = match k {
                0 => None,
                1 => Some("w".to_string()),
                k => Some(format!("w^{k}")),
            };
            rational_piece(q, unit.as_deref())
        })
        .collect();
    join(&pieces)
}

fn monomial_text(m: &Monomial, names: &[String]) -> Option<String> {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| {
            if e == 1 {
                n.clone()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

/// Canonical text of `f`; `parse(&format(f), f.context()) == f`.
pub fn format(f: &MPoly) -> String {
    let names = f.context().names();
    let pieces: Vec<Piece> = f
        .terms()
        .map(|(m, c)| {
            let mono = monomial_text(m, names);
            match c.as_rational() {
                Some(q) => rational_piece(q, mono.as_deref()),
                None => {
                    let w = format!("({})", w_polynomial(c));
                    match mono {
                        None => (false, w),
                        Some(mono) => (false, format!("{w}*{mono}")),
                    }
                }
            }
        })
        .collect();
    join(&pieces)
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

/// Rationals print as `a` or `a/b`; other field elements as a parenthesised
/// polynomial in `w`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "({})", w_polynomial(self)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, CycloField};

    fn ctx(names: &[&str], m: u32) -> Context {
        Context::new(names, CycloField::new(m).unwrap()).unwrap()
    }

    #[test]
    fn parses_the_documented_examples() {
        let c = Context::xyz();
        let (x, y, z) = (c.var(0), c.var(1), c.var(2));
        assert_eq!(parse("-(x+y+z)", &c).unwrap(), -(&(&x + &y) + &z));
        let b = parse("z*(x+y+z)", &c).unwrap();
        assert_eq!(b, &(&(&z * &z) + &(&x * &z)) + &(&y * &z));
        assert_eq!(
            parse("3/2*x^2 - z", &c).unwrap(),
            &(&x * &x).scale(&c.field().from_rational(frac(3, 2))) - &z
        );

        let c3 = ctx(&["x", "z"], 3);
        let f = parse("w*z + x", &c3).unwrap();
        assert_eq!(f, &c3.z().scale(&c3.field().generator()) + &c3.var(0));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let c = Context::xyz();
        assert_eq!(parse("-x^2", &c).unwrap(), -c.var(0).pow(2));
        assert_eq!(parse("(-x)^2", &c).unwrap(), c.var(0).pow(2));
        assert_eq!(
            parse("2*-x", &c).unwrap(),
            c.var(0).scale(&c.field().from_int(-2))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let c = Context::xyz();
        let e = parse("x + q", &c).unwrap_err();
        assert_eq!(e.position, 4);
        assert!(e.message.contains("unknown identifier"));

        let e = parse("x^y", &c).unwrap_err();
        assert_eq!(e.position, 2);
        assert!(e.message.contains("exponent"));

        assert!(parse("w*x", &c).unwrap_err().message.contains("cyclotomic"));
        assert_eq!(parse("(x + y", &c).unwrap_err().position, 6);
        assert!(parse("x/2", &c).is_err());
        assert!(parse("1/0", &c).is_err());
        assert!(parse("2x", &c).is_err());
        assert!(parse("", &c).is_err());
        assert!(parse("x $ y", &c).is_err());
    }

    #[test]
    fn formats_canonically() {
        let c = Context::xyz();
        assert_eq!(format(&c.zero()), "0");
        assert_eq!(
            format(&parse("y^2 + x*y + x^2", &c).unwrap()),
            "x^2 + x*y + y^2"
        );
        assert_eq!(
            format(&parse("-z*(x+y+z)", &c).unwrap()),
            "-x*z - y*z - z^2"
        );
        assert_eq!(format(&parse("-3/2 + x*3/4", &c).unwrap()), "3/4*x - 3/2");

        let c3 = ctx(&["x", "z"], 3);
        let w2 = c3.constant(c3.field().generator().pow(2));
        assert_eq!(format(&w2), "(-w - 1)");
        assert_eq!(format(&parse("w*z + x", &c3).unwrap()), "x + (w)*z");
        assert_eq!(c3.field().generator().pow(2).to_string(), "(-w - 1)");
    }

    #[test]
    fn format_parse_round_trip_over_cyclotomic_field() {
        let c = ctx(&["a", "b", "z"], 12);
        let f = parse("(w^3 - 2/3*w + 5)*a^2*z - (w + 1)^5*b + 7/9", &c).unwrap();
        assert_eq!(parse(&format(&f), &c).unwrap(), f);
    }
}
