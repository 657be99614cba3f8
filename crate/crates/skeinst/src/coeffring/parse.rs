use std::str::FromStr;

use num_bigint::BigInt;

use super::poly::Poly;
use super::{CoeffError, LaurentRational, Variable};

/// Recursive-descent parser for `+ - * / ^`, parentheses, integers and variables.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> CoeffError {
        CoeffError::Parse { pos: self.pos, msg: msg.into() }
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

    fn expr(&mut self) -> Result<LaurentRational, CoeffError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentRational, CoeffError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| CoeffError::Parse { pos: at, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentRational, CoeffError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentRational, CoeffError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.signed_int()?;
            let e: i32 = e.try_into().map_err(|_| CoeffError::Parse { pos: at, msg: "exponent too large".into() })?;
            return base.pow(e).map_err(|_| CoeffError::Parse { pos: at, msg: "division by zero".into() });
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64, CoeffError> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer exponent"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let n: i64 = s.parse().map_err(|_| CoeffError::Parse { pos: start, msg: "exponent too large".into() })?;
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<LaurentRational, CoeffError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let n: BigInt = s.parse().map_err(|_| self.err("bad integer"))?;
                Ok(LaurentRational::from_poly(Poly::constant(n)))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let v = Variable::parse(name).map_err(|_| CoeffError::Parse { pos: start, msg: format!("unknown variable '{name}'") })?;
                Ok(LaurentRational::var(v))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for LaurentRational {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, CoeffError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}
