//! Dense univariate polynomials over a coefficient field.

use std::fmt;

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::scalar::{CoeffField, Scalar};
use crate::error::{Error, Result};

/// `coeffs[i]` is the coefficient of `x^i`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Univariate {
    field: CoeffField,
    coeffs: Vec<Scalar>,
}

impl Univariate {
    pub fn new(field: CoeffField, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Univariate { field, coeffs }
    }

    pub fn from_ints(field: CoeffField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Parses text in a single variable `x`.
    pub fn parse(field: CoeffField, text: &str) -> Result<Self> {
        let ring = super::text::Ring::new(field, vec!["x".into()])?;
        Ok(Self::from_polynomial(&ring.parse(text)?, 0))
    }

    /// Reads `p` as a polynomial in variable `var`, ignoring all other variables' exponents.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Self {
        let field = p.field();
        let deg = p.terms().iter().map(|(m, _)| m.exponent(var) as usize).max().unwrap_or(0);
        let mut coeffs = vec![field.zero(); deg + 1];
        for (m, c) in p.terms() {
            let e = m.exponent(var) as usize;
            coeffs[e] = coeffs[e].add(c);
        }
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = lc.inv().expect("nonzero");
                Self::new(self.field, self.coeffs.iter().map(|c| c.mul(&inv)).collect())
            }
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&self.field.from_int(i as i64))).collect();
        Self::new(self.field, coeffs)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Univariate) -> Result<(Univariate, Univariate)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().mul(&dl);
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub(&c.mul(dc));
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((Self::new(self.field, q), Self::new(self.field, r)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Univariate) -> Univariate {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic. Valid in characteristic zero and for
    /// polynomials of degree below the characteristic.
    pub fn squarefree_part(&self) -> Univariate {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("nonzero").0.monic()
    }

    pub fn evaluate(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Image in `F_p`; `None` when `p` divides a denominator or the leading coefficient.
    pub fn reduce_mod(&self, p: u64) -> Option<Univariate> {
        let f = CoeffField::Prime(p);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                Scalar::Rational(r) => f.from_rational(r).ok(),
                Scalar::Fp { value, modulus } if *modulus == p => Some(f.from_int(*value as i64)),
                Scalar::Fp { .. } => None,
            })
            .collect::<Option<Vec<_>>>()?;
        let u = Self::new(f, coeffs);
        (u.degree() == self.degree()).then_some(u)
    }

    /// Number of distinct roots in `F_p` by direct search.
    pub fn count_roots_mod(&self, p: u64) -> Option<usize> {
        let u = self.reduce_mod(p)?;
        let f = CoeffField::Prime(p);
        Some((0..p).filter(|&x| u.evaluate(&f.from_int(x as i64)).is_zero()).count())
    }

    /// Whether the reduction mod `p` exists, keeps its degree and stays squarefree.
    pub fn is_good_prime(&self, p: u64) -> bool {
        match self.reduce_mod(p) {
            Some(u) => u.degree().unwrap_or(0) == 0 || u.gcd(&u.derivative()).degree() == Some(0),
            None => false,
        }
    }

    /// As a polynomial in variable `var` of a ring with `nvars` variables.
    pub fn to_polynomial(&self, nvars: usize, var: usize) -> Polynomial {
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::var_pow(var, i as u16), c.clone()));
        Polynomial::from_terms(self.field, nvars, terms.collect::<Vec<_>>())
    }

    /// Text form in the variable `x`, highest degree first.
    pub fn format(&self, x: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => x.to_string(),
                _ => format!("{x}^{i}"),
            };
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono),
                (false, false) => out.push_str(&format!("{abs}*{mono}")),
            }
        }
        out
    }
}

impl fmt::Debug for Univariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("x"))
    }
}
