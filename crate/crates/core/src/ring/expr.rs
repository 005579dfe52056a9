//! Small parser for weight expressions such as `1-AB`, `-(A+B)` or `gamma`.

use super::{RingElem, RingError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Name(&'static str),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

const WORDS: [&str; 8] = ["gamma", "ainv", "mu", "xi", "O", "A", "B", "a"];

fn lex(src: &str) -> Result<Vec<Tok>, RingError> {
    let bad = || RingError::BadExpression(src.to_string());
    let mut out = Vec::new();
    let mut rest = src.trim();
    while let Some(c) = rest.chars().next() {
        if c.is_whitespace() {
            rest = &rest[1..];
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            _ => None,
        };
        if let Some(t) = simple {
            out.push(t);
            rest = &rest[1..];
        } else if c.is_ascii_digit() {
            let end = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            out.push(Tok::Num(rest[..end].parse().map_err(|_| bad())?));
            rest = &rest[end..];
        } else {
            let w = WORDS.iter().find(|w| rest.starts_with(**w)).ok_or_else(bad)?;
            out.push(Tok::Name(w));
            rest = &rest[w.len()..];
        }
    }
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'s str,
}

impl Parser<'_> {
    fn err(&self) -> RingError {
        RingError::BadExpression(self.src.to_string())
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<RingElem, RingError> {
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

    fn term(&mut self) -> Result<RingElem, RingError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::Open) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RingElem, RingError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => RingElem::int(n),
            Some(Tok::Name(w)) => RingElem::constant(w)?,
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err());
                }
                inner
            }
            _ => return Err(self.err()),
        };
        self.pos += 1;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(self.err());
            };
            self.pos += 1;
            let e = if neg { -(n as i32) } else { n as i32 };
            return base.pow_i(e).ok_or_else(|| self.err());
        }
        Ok(base)
    }
}

/// Parse a weight expression over the structure constants.
pub fn parse_expr(src: &str) -> Result<RingElem, RingError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        src,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err());
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::constants;

    #[test]
    fn parses_rule_weights() {
        let ab = RingElem::monomial(1, [1, 1, 0]);
        assert_eq!(parse_expr("AB").unwrap(), ab);
        assert_eq!(parse_expr("1-AB").unwrap(), &RingElem::one() - &ab);
        assert_eq!(parse_expr("-xi").unwrap(), -constants::xi());
        assert_eq!(parse_expr("gamma").unwrap(), constants::gamma());
        let a_plus_b = RingElem::from_poly(crate::ring::LaurentPoly::from_terms([([1, 0, 0], 1), ([0, 1, 0], 1)]));
        assert_eq!(parse_expr("-(A+B)").unwrap(), -a_plus_b);
        assert_eq!(parse_expr("a^-2").unwrap(), RingElem::monomial(1, [0, 0, -2]));
        assert_eq!(parse_expr("2*mu").unwrap(), &RingElem::int(2) * &constants::mu());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("q").is_err());
        assert!(parse_expr("(A").is_err());
    }
}
