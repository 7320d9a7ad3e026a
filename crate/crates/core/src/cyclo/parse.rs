//! Recursive-descent reader for scalar expressions such as `3/2*z12^4 - (1 + z3)^2`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{CycloError, CycloNum};

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn error(&self, message: &str) -> CycloError {
        CycloError::Syntax { offset: self.pos, message: message.to_string() }
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    /// Unsigned decimal integer, optionally wrapped in braces (`{12}`).
    pub(crate) fn uint(&mut self) -> Result<BigInt, CycloError> {
        let braced = self.eat('{');
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let n: BigInt = self.src[start..self.pos].parse().expect("digits");
        if braced && !self.eat('}') {
            return Err(self.error("expected '}'"));
        }
        Ok(n)
    }

    pub(crate) fn small_uint(&mut self) -> Result<u64, CycloError> {
        let at = self.pos;
        let n = self.uint()?;
        u64::try_from(n).map_err(|_| CycloError::Syntax { offset: at, message: "integer too large".into() })
    }

    /// Exponent after `^`: an optionally signed, optionally braced integer.
    pub(crate) fn exponent(&mut self) -> Result<i64, CycloError> {
        let braced = self.eat('{');
        let neg = self.eat('-');
        let at = self.pos;
        let n = self.uint()?;
        let n =
            i64::try_from(n).map_err(|_| CycloError::Syntax { offset: at, message: "exponent too large".into() })?;
        if braced && !self.eat('}') {
            return Err(self.error("expected '}'"));
        }
        Ok(if neg { -n } else { n })
    }

    pub(crate) fn expr(&mut self) -> Result<CycloNum, CycloError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycloNum, CycloError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    /// A signed atom with optional exponent, e.g. `-z12^4`, `3/2`, `(1 + z3)^2`.
    pub(crate) fn factor(&mut self) -> Result<CycloNum, CycloError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CycloNum, CycloError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some('z') => {
                self.pos += 1;
                let at = self.pos;
                let n = self.small_uint()?;
                CycloNum::root_of_unity(n, 1).map_err(|_| CycloError::Syntax {
                    offset: at,
                    message: "root of unity level must be positive".into(),
                })
            }
            Some(c) if c.is_ascii_digit() || c == '{' => {
                let p = self.uint()?;
                if self.eat('/') {
                    let at = self.pos;
                    let q = self.uint()?;
                    if q == BigInt::from(0) {
                        return Err(CycloError::Syntax { offset: at, message: "zero denominator".into() });
                    }
                    return Ok(CycloNum::from_rational(BigRational::new(p, q)));
                }
                Ok(CycloNum::from_rational(BigRational::from_integer(p)))
            }
            _ => Err(self.error("expected a number, z<N>, or '('")),
        }
    }
}
