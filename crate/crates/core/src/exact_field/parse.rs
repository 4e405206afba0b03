//! Recursive-descent parser for rational-function expressions:
//! integers, variable names, `+ - * / ^`, parentheses. Exponents are
//! (possibly negative) integer literals, e.g. `(z1 - z2)^-1`.

use num_bigint::BigInt;

use super::vars::is_identifier;
use super::{FieldError, RatFunc, Rational, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset} in `{input}`: {message}")]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

pub(crate) fn parse_ratfunc(src: &str, vars: &VarTable) -> Result<RatFunc, FieldError> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0, vars };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a VarTable,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> FieldError {
        FieldError::Parse(ParseError { input: self.src.to_string(), offset: self.pos, message: message.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                let at = self.pos;
                acc.checked_div(&rhs).map_err(|_| {
                    let mut e = self.error("division by zero");
                    if let FieldError::Parse(p) = &mut e {
                        p.offset = at;
                    }
                    e
                })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, FieldError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, FieldError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let e: i64 = digits.parse().map_err(|_| self.error("expected integer exponent"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| self.error("zero raised to a negative power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().expect("digits");
                Ok(RatFunc::constant(self.vars, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                debug_assert!(is_identifier(&name));
                match self.vars.index_of(&name) {
                    Some(i) => Ok(RatFunc::var(self.vars, i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len() && f(self.bytes[self.pos]) {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }
}
