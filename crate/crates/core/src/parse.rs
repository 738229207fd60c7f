//! Expression parser.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ('-' factor) | atom ['^' uint]
//! atom   := uint | ident | '(' expr ')'
//! ```
//!
//! Positions in errors are byte offsets into the input.

use std::sync::Arc;

use crate::error::{ParseError, Result};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input").into());
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = Polynomial::zero(self.ring);
        let mut sign_neg = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if sign_neg { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => sign_neg = false,
                Some(b'-') => sign_neg = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(ParseError::NegativeExponent { pos: self.pos });
            }
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.syntax("expected exponent"));
            }
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|&e| e <= u8::MAX as u32)
                .ok_or(ParseError::ExponentTooLarge { pos: start })?;
            if let Some(d) = base.degree() {
                if d * e > u8::MAX as u32 {
                    return Err(ParseError::ExponentTooLarge { pos: start });
                }
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.syntax("unexpected end of input"));
        };
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.syntax("expected `)`"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let field = self.ring.field();
            let p = field.characteristic() as u64;
            let mut v = 0u64;
            for d in self.digits().bytes() {
                v = (v * 10 + (d - b'0') as u64) % p;
            }
            return Ok(Polynomial::constant(self.ring, v as u32));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            return match self.ring.index_of(name) {
                Some(v) => Ok(Polynomial::monomial(self.ring, Monomial::var(self.ring.nvars(), v), 1)),
                None => Err(ParseError::UnknownIdentifier { name: name.to_string(), pos: start }),
            };
        }
        Err(self.syntax(&format!("unexpected character `{}`", c as char)))
    }
}
