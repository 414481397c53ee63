//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{Poly, PolyError, Rational, Vars};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Int(u32),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
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
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = text[start..i].parse().unwrap();
                let mut value = Rational::from_integer(num.clone());
                let mut plain = true;
                if i < bytes.len() && bytes[i] == b'/' {
                    let ds = i + 1;
                    let mut j = ds;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == ds {
                        return Err(PolyError::Syntax {
                            offset: ds,
                            message: "expected denominator digits after `/`".into(),
                        });
                    }
                    let den: BigInt = text[ds..j].parse().unwrap();
                    if num_traits::Zero::is_zero(&den) {
                        return Err(PolyError::Syntax {
                            offset: ds,
                            message: "zero denominator".into(),
                        });
                    }
                    value = Rational::new(num, den);
                    plain = false;
                    i = j;
                }
                out.push((start, Tok::Num(value.clone())));
                if plain {
                    // integers may also serve as exponents
                    if let Ok(k) = text[start..i].parse::<u32>() {
                        out.last_mut().unwrap().1 = Tok::Int(k);
                    }
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(PolyError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{other}`"),
                })
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
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Int(k)) => {
                    let k = *k;
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Poly::constant(self.vars, r))
            }
            Some(Tok::Int(k)) => {
                self.pos += 1;
                Ok(Poly::constant(self.vars, Rational::from_integer(k.into())))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.index_of(&name) {
                    Some(i) => Ok(Poly::var(self.vars, i)),
                    None => Err(PolyError::UnknownVariable { name, offset }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(_) => Err(self.err("expected a number, variable or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a polynomial expression over the given coordinate names.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<Poly, PolyError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
    };
    let out = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn vars() -> Vars {
        Vars::numbered("x", 3)
    }

    #[test]
    fn parses_documented_examples() {
        let v = vars();
        let a = parse_poly("x1*x3", &v).unwrap();
        assert_eq!(a, Poly::var(&v, 0) * Poly::var(&v, 2));
        let b = parse_poly("1/2*x1^2 - x2", &v).unwrap();
        let expect = Poly::var(&v, 0).pow(2).scale(&rat(1, 2)) - Poly::var(&v, 1);
        assert_eq!(b, expect);
    }

    #[test]
    fn dangling_operator_reports_end_offset() {
        let err = parse_poly("x1 +", &vars()).unwrap_err();
        assert!(matches!(err, PolyError::Syntax { offset: 4, .. }), "{err:?}");
    }

    #[test]
    fn unknown_variable() {
        let err = parse_poly("x1 + y", &vars()).unwrap_err();
        assert_eq!(
            err,
            PolyError::UnknownVariable {
                name: "y".into(),
                offset: 5
            }
        );
    }

    #[test]
    fn other_errors() {
        assert!(parse_poly("(x1", &vars()).is_err());
        assert!(parse_poly("x1^x2", &vars()).is_err());
        assert!(parse_poly("1/0", &vars()).is_err());
        assert!(parse_poly("x1 x2", &vars()).is_err());
        assert!(parse_poly("", &vars()).is_err());
        assert!(parse_poly("2 $", &vars()).is_err());
    }

    #[test]
    fn nested_and_unary() {
        let v = vars();
        let a = parse_poly("-(x1 - 2)^2 + +3", &v).unwrap();
        let b = parse_poly("-x1^2 + 4*x1 - 1", &v).unwrap();
        assert_eq!(a, b);
    }
}
