//! Small cursor used by the text parsers.

use crate::error::{Error, Result};

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected '{}'", c as char)))
        }
    }

    pub fn unexpected(&mut self, what: &str) -> Error {
        let found = match self.peek() {
            Some(c) => format!("found '{}'", c as char),
            None => "found end of input".to_string(),
        };
        Error::parse(self.pos, format!("{what}, {found}"))
    }

    pub fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    /// Comma separated numbers, possibly empty, stopping before `close`.
    pub fn number_list(&mut self, close: u8) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            if !self.eat(b',') {
                break;
            }
        }
        Ok(out)
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.unexpected("trailing input"))
        } else {
            Ok(())
        }
    }
}
