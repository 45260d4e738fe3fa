//! Text form of group-ring elements.
//!
//! ```text
//! element  := term (('+' | '-') term)*
//! term     := [rational '*'] 'g(' int ',' int ')'
//! rational := int ['/' positive-int]
//! ```
//!
//! Whitespace is ignored. A leading sign on the first term is accepted, and the
//! literal `0` denotes the zero element (which has no terms to print).
//! [`RingElement`]'s `Display` emits the same grammar with terms sorted by
//! `(i, j)`, so printing and parsing round-trip.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::element::GroupElement;
use crate::ring::RingElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let line_start = before
            .iter()
            .rposition(|&b| b == b'\n')
            .map_or(0, |p| p + 1);
        ParseError {
            line,
            column: at - line_start + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{}`", b as char)))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> ParseError {
        let at = self.pos;
        match self.peek() {
            Some(c) => self.error(
                self.pos,
                format!("expected {wanted}, found `{}`", c as char),
            ),
            None => self.error(at, format!("expected {wanted}, found end of input")),
        }
    }

    /// A signed decimal literal that fits in `i64`.
    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.unexpected("an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<i64>()
            .map_err(|_| self.error(start, format!("integer literal `{text}` is out of range")))
    }

    fn group_element(&mut self) -> Result<GroupElement, ParseError> {
        self.skip_ws();
        if !self.src[self.pos..].starts_with(b"g") {
            return Err(self.unexpected("`g(`"));
        }
        self.pos += 1;
        self.expect(b'(')?;
        let i = self.int()?;
        self.expect(b',')?;
        let j = self.int()?;
        self.expect(b')')?;
        Ok(GroupElement::new(i, j))
    }

    fn term(&mut self) -> Result<(GroupElement, Coefficient), ParseError> {
        if self.peek() == Some(b'g') {
            return Ok((self.group_element()?, Coefficient::one()));
        }
        let numer = self.int()?;
        let mut c = Coefficient::from(numer);
        if self.eat(b'/') {
            let at = self.pos;
            let denom = self.int()?;
            if denom <= 0 {
                return Err(self.error(at, "denominator must be a positive integer"));
            }
            c = Coefficient::ratio(numer, denom).unwrap();
        }
        if !self.eat(b'*') {
            return Err(self.unexpected("`*`"));
        }
        Ok((self.group_element()?, c))
    }

    fn element(&mut self) -> Result<RingElement, ParseError> {
        let mut out = RingElement::zero();
        let save = self.pos;
        if self.peek() == Some(b'0') {
            // bare `0` is the zero element
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(out);
            }
            self.pos = save;
        }
        let mut sign = 1;
        match self.peek() {
            Some(b'-') if self.src.get(self.pos + 1) == Some(&b'g') => {
                self.pos += 1;
                sign = -1;
            }
            Some(b'+') if self.src.get(self.pos + 1) == Some(&b'g') => {
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let (g, c) = self.term()?;
            out.add_term(g, if sign < 0 { -c } else { c });
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                None => break,
                Some(_) => return Err(self.unexpected("`+`, `-` or end of input")),
            };
            self.pos += 1;
        }
        Ok(out)
    }
}

pub fn parse_element(src: &str) -> Result<RingElement, ParseError> {
    let mut p = Parser::new(src);
    if p.peek().is_none() {
        return Err(p.error(p.pos, "empty expression"));
    }
    p.element()
}

impl FromStr for RingElement {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_element(s)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (g, c)) in self.terms().enumerate() {
            let magnitude = if k == 0 {
                c.clone()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "g({},{})", g.i, g.j)?;
        }
        Ok(())
    }
}
