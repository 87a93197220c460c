//! The human-readable polynomial format, e.g. `-3*y1^2*z3 + 1/2*w1 - 7`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MAX_VARS};
use super::poly::Polynomial;
use super::scalar::CoeffField;
use crate::error::{Error, Result};

/// Coefficient field plus variable names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ring {
    #[serde(rename = "coeff")]
    pub field: CoeffField,
    pub vars: Vec<String>,
}

impl Ring {
    pub fn new(field: CoeffField, vars: Vec<String>) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::RingMismatch(format!("at most {MAX_VARS} variables")));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || vars[..i].contains(v) {
                return Err(Error::Parse(format!("bad variable name {v:?}")));
            }
        }
        Ok(Ring { field, vars })
    }

    /// `y1..yn', z1..zn', w1..wn''`.
    pub fn framed(field: CoeffField, n_prime: usize, n_doubleprime: usize) -> Result<Self> {
        let vars = (1..=n_prime)
            .map(|j| format!("y{j}"))
            .chain((1..=n_prime).map(|j| format!("z{j}")))
            .chain((1..=n_doubleprime).map(|j| format!("w{j}")))
            .collect();
        Ring::new(field, vars)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), i)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field, self.nvars())
    }

    pub fn from_int(&self, c: i64) -> Polynomial {
        Polynomial::from_int(self.field, self.nvars(), c)
    }

    pub fn with_field(&self, field: CoeffField) -> Ring {
        Ring { field, vars: self.vars.clone() }
    }

    /// Same names with variable `i` removed.
    pub fn without_var(&self, i: usize) -> Ring {
        let mut vars = self.vars.clone();
        vars.remove(i);
        Ring { field: self.field, vars }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, &e) in m.exponents(self.nvars()).iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.vars[i]);
            if e > 1 {
                write!(s, "^{e}").unwrap();
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn format(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                write!(out, "{abs}").unwrap();
            } else if abs.is_one() {
                out.push_str(&self.format_monomial(m));
            } else {
                write!(out, "{abs}*{}", self.format_monomial(m)).unwrap();
            }
        }
        out
    }

    /// Parses sums, differences, products, integer powers, parentheses, integers and `a/b`
    /// numerals.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        let mut p = Parser { ring: self, src: text.as_bytes(), pos: 0 };
        let poly = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.src)))
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

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.product()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    value /= BigRational::from_integer(den);
                }
                let c = self.ring.field.from_rational(&value)?;
                Ok(Polynomial::constant(self.ring.field, self.ring.nvars(), c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable {name:?}")))
                    }
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn framed_names() {
        let r = Ring::framed(CoeffField::Rational, 2, 1).unwrap();
        assert_eq!(r.vars, ["y1", "y2", "z1", "z2", "w1"]);
    }

    #[test]
    fn format_and_parse_round_trip() {
        let r = Ring::framed(CoeffField::Rational, 2, 0).unwrap();
        let p = r.parse("-y1 + y2 + z1 - z2").unwrap();
        assert_eq!(r.format(&p), "-y1 + y2 + z1 - z2");
        let q = r.parse("(y1 - 1)*(y1 + 1) - 1/2*z2^3 + 3").unwrap();
        assert_eq!(r.format(&q), "-1/2*z2^3 + y1^2 + 2");
        assert_eq!(r.parse(&r.format(&q)).unwrap(), q);
        assert_eq!(r.format(&r.zero()), "0");
    }

    #[test]
    fn parse_errors() {
        let r = Ring::framed(CoeffField::Rational, 1, 0).unwrap();
        for bad in ["y2", "y1 +", "2/0", "(y1", "y1 z1", ""] {
            assert!(r.parse(bad).is_err(), "{bad}");
        }
        let f5 = r.with_field(CoeffField::Prime(5));
        assert_eq!(f5.format(&f5.parse("7*y1 - 1").unwrap()), "2*y1 + 4");
    }
}
