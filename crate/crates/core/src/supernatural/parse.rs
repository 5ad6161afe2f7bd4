//! Parser for supernatural literals.
//!
//! Grammar: `literal := factor ("*" factor)*` where a factor is a decimal
//! integer (`900`), a prime power (`2^3`, `2^inf`), or an omega form
//! (`Omega`, `Omega({2,3})`, `Omega(~{2})`). Whitespace may separate
//! tokens.

use crate::arith::is_prime;

use super::{Error, Exponent, PrimeSet, SupernaturalNumber};

pub fn parse_supernatural(input: &str) -> Result<SupernaturalNumber, Error> {
    let mut parser = Parser { bytes: input.as_bytes(), pos: 0 };
    parser.skip_ws();
    let mut acc = parser.factor()?;
    parser.skip_ws();
    while parser.peek() == Some(b'*') {
        parser.pos += 1;
        parser.skip_ws();
        acc = acc.mul(&parser.factor()?);
        parser.skip_ws();
    }
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(acc)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse { msg: msg.to_string(), pos: self.pos }
    }

    fn factor(&mut self) -> Result<SupernaturalNumber, Error> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => self.numeric_factor(),
            Some(b'O') => self.omega_factor(),
            _ => Err(self.error("expected integer, prime power, or Omega")),
        }
    }

    fn numeric_factor(&mut self) -> Result<SupernaturalNumber, Error> {
        let start = self.pos;
        let base = self.integer()?;
        if self.peek() != Some(b'^') {
            if base == 0 {
                return Err(Error::Parse { msg: "0 is not a supernatural number".into(), pos: start });
            }
            return SupernaturalNumber::from_natural(base);
        }
        self.pos += 1;
        if !is_prime(base) {
            return Err(Error::Parse {
                msg: format!("exponent base {base} must be prime"),
                pos: start,
            });
        }
        let exponent = self.exponent()?;
        match exponent {
            Exponent::Finite(0) => Ok(SupernaturalNumber::one()),
            e => SupernaturalNumber::from_parts(Exponent::ZERO, [(base, e)]),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, Error> {
        if self.bytes[self.pos..].starts_with(b"inf") {
            self.pos += 3;
            return Ok(Exponent::Infinite);
        }
        let value = self.integer()?;
        u32::try_from(value)
            .map(Exponent::Finite)
            .map_err(|_| self.error("exponent too large"))
    }

    fn integer(&mut self) -> Result<u64, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| Error::Parse { msg: "integer too large".into(), pos: start })
    }

    fn omega_factor(&mut self) -> Result<SupernaturalNumber, Error> {
        if !self.bytes[self.pos..].starts_with(b"Omega") {
            return Err(self.error("expected Omega"));
        }
        self.pos += 5;
        if self.peek() != Some(b'(') {
            return Ok(SupernaturalNumber::omega());
        }
        self.pos += 1;
        self.skip_ws();
        let cofinite = if self.peek() == Some(b'~') {
            self.pos += 1;
            true
        } else {
            false
        };
        let primes = self.prime_braces()?;
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(self.error("expected ')'"));
        }
        self.pos += 1;
        let set = if cofinite { PrimeSet::cofinite(primes) } else { PrimeSet::of(primes) }?;
        Ok(SupernaturalNumber::omega_over(&set))
    }

    fn prime_braces(&mut self) -> Result<Vec<u64>, Error> {
        if self.peek() != Some(b'{') {
            return Err(self.error("expected '{'"));
        }
        self.pos += 1;
        let mut primes = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'}') => {
                    self.pos += 1;
                    return Ok(primes);
                }
                Some(b) if b.is_ascii_digit() => {
                    let start = self.pos;
                    let p = self.integer()?;
                    if !is_prime(p) {
                        return Err(Error::Parse { msg: format!("{p} is not prime"), pos: start });
                    }
                    primes.push(p);
                    self.skip_ws();
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                    }
                }
                _ => return Err(self.error("expected prime or '}'")),
            }
        }
    }
}
