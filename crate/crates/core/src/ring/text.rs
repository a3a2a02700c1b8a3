//! Canonical text form: `1 - z + t^2*z^2`.
//!
//! Terms are printed in ascending order of the lexicographically last
//! variable (then the previous one, and so on), joined by ` + ` / ` - `.
//! Inside a term the variables appear in name order; unit coefficients and
//! unit exponents are elided.

use std::fmt::{self, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{MPoly, RingError, VarName};

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (exps, coeff)) in self.display_order().into_iter().enumerate() {
            let negative = coeff.is_negative();
            match (n, negative) {
                (0, true) => f.write_char('-')?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = coeff.abs();
            let mut first = true;
            if !abs.is_one() || exps.iter().all(|&e| e == 0) {
                write!(f, "{abs}")?;
                first = false;
            }
            for (v, &e) in self.vars.iter().zip(exps.iter()) {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_char('*')?;
                }
                first = false;
                f.write_str(v.as_str())?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, RingError> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '+' => {
                it.next();
                out.push((pos, Tok::Plus));
            }
            '-' | '\u{2212}' => {
                it.next();
                out.push((pos, Tok::Minus));
            }
            '*' => {
                it.next();
                out.push((pos, Tok::Star));
            }
            '^' => {
                it.next();
                out.push((pos, Tok::Caret));
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Num(digits.parse().expect("digits"))));
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Ident(name)));
            }
            other => {
                return Err(RingError::Parse {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |t| t.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T, RingError> {
        Err(RingError::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn poly(&mut self) -> Result<MPoly, RingError> {
        let mut acc = MPoly::zero();
        let mut negative = match self.peek() {
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
        loop {
            let t = self.term()?;
            acc = if negative { acc - t } else { acc + t };
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                None => return Ok(acc),
                _ => return self.err("expected `+` or `-`"),
            }
            self.at += 1;
        }
    }

    fn term(&mut self) -> Result<MPoly, RingError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, RingError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(MPoly::from_bigint(n))
            }
            Some(Tok::Ident(name)) => {
                let pos = self.pos();
                self.at += 1;
                let v = VarName::new(&name).map_err(|_| RingError::Parse {
                    pos,
                    msg: format!("invalid variable `{name}`"),
                })?;
                let mut e = 1u32;
                if let Some(Tok::Caret) = self.peek() {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(n)) => {
                            self.at += 1;
                            e = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
                        }
                        _ => return self.err("expected exponent"),
                    }
                }
                Ok(MPoly::var(&v).pow(e))
            }
            None => self.err("unexpected end of input"),
            _ => self.err("expected a number or a variable"),
        }
    }
}

impl FromStr for MPoly {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(RingError::Parse {
                pos: 0,
                msg: "empty polynomial".into(),
            });
        }
        let mut p = Parser {
            toks,
            at: 0,
            len: s.len(),
        };
        p.poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_printing() {
        let cases = [
            "1 - z + t^2*z^2",
            "1 - 3*t^2 + t^4",
            "-t",
            "0",
            "-7",
            "1 - t1*z - t2*z^2 - t1*t2^2*z^3 + t2^4*z^4",
        ];
        for c in cases {
            assert_eq!(c.parse::<MPoly>().unwrap().to_string(), c);
        }
    }

    #[test]
    fn term_order_groups_by_last_variable() {
        let p: MPoly = "t2^2*z^3 + z + 1 + t1^2*z^2 + t2*z^2".parse().unwrap();
        assert_eq!(p.to_string(), "1 + z + t1^2*z^2 + t2*z^2 + t2^2*z^3");
    }

    #[test]
    fn parser_accepts_whitespace_and_repeats() {
        let p: MPoly = "  - 2 * t *t  +3*  z^ 2 ".parse().unwrap();
        assert_eq!(p.to_string(), "-2*t^2 + 3*z^2");
        let q: MPoly = "1 \u{2212} z".parse().unwrap();
        assert_eq!(q.to_string(), "1 - z");
    }

    #[test]
    fn parser_errors() {
        assert!("".parse::<MPoly>().is_err());
        assert!("1 +".parse::<MPoly>().is_err());
        assert!("(1 + z)".parse::<MPoly>().is_err());
        assert!("t^".parse::<MPoly>().is_err());
        assert!("2 t".parse::<MPoly>().is_err());
    }
}
