use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use super::scalar::{CoeffField, Scalar};
use crate::error::{Error, Result};

/// Sparse polynomial with exact coefficients. Terms are kept sorted by descending degrevlex,
/// with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: CoeffField,
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

const STORAGE: MonomialOrder = MonomialOrder::DegRevLex;

impl Polynomial {
    pub fn zero(field: CoeffField, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Polynomial { field, nvars, terms: Vec::new() }
    }

    pub fn constant(field: CoeffField, nvars: usize, c: Scalar) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(), c)])
    }

    pub fn from_int(field: CoeffField, nvars: usize, c: i64) -> Self {
        Self::constant(field, nvars, field.from_int(c))
    }

    pub fn var(field: CoeffField, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} outside ring of {nvars}");
        Self::from_terms(field, nvars, [(Monomial::var(i), field.one())])
    }

    /// Sums like terms and drops zeros. Panics on a coefficient from another field or a
    /// monomial using a variable past `nvars`.
    pub fn from_terms(field: CoeffField, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            assert!(m.used_vars() <= nvars, "monomial outside the ring");
            assert_eq!(c.field(), field, "coefficient from another field");
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| STORAGE.cmp(&b.0, &a.0));
        let mut p = Self::zero(field, nvars);
        p.terms = terms;
        p
    }

    /// Terms already sorted in descending `order`, combined and non-zero.
    pub(crate) fn from_ordered(
        field: CoeffField,
        nvars: usize,
        mut terms: Vec<(Monomial, Scalar)>,
        order: MonomialOrder,
    ) -> Self {
        if order != STORAGE {
            terms.sort_by(|a, b| STORAGE.cmp(&b.0, &a.0));
        }
        Polynomial { field, nvars, terms }
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    /// Terms in descending `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, Scalar)> {
        let mut t = self.terms.clone();
        if order != STORAGE {
            t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        }
        t
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        let best = self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))?;
        Some((&best.0, &best.1))
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.iter().find(|(t, _)| t == m).map_or(self.field.zero(), |(_, c)| c.clone())
    }

    /// Bitmask of the variables that occur.
    pub fn support(&self) -> u64 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::RingMismatch(format!("fields {} and {}", self.field, other.field)));
        }
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(format!("{} and {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match STORAGE.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Polynomial { field: self.field, nvars: self.nvars, terms: out })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let terms = self.terms.iter().flat_map(|(m, c)| other.terms.iter().map(move |(n, d)| (m.mul(n), c.mul(d))));
        Ok(Self::from_terms(self.field, self.nvars, terms.collect::<Vec<_>>()))
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg())).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, d)| (*m, d.mul(c))).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Self::from_int(self.field, self.nvars, 1);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Scales so that the leading coefficient under `order` is one.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Substitutes `point[i]` for variable `i`.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::RingMismatch(format!("{} values for {} variables", point.len(), self.nvars)));
        }
        if let Some(bad) = point.iter().find(|s| s.field() != self.field) {
            return Err(Error::RingMismatch(format!("value from {}", bad.field())));
        }
        let mut total = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(m.exponents(self.nvars)) {
                if e > 0 {
                    t = t.mul(&v.pow(e as u32));
                }
            }
            total = total.add(&t);
        }
        Ok(total)
    }

    /// Replaces variable `i` by `value`, a polynomial in the same ring.
    pub fn substitute(&self, i: usize, value: &Polynomial) -> Result<Polynomial> {
        self.check(value)?;
        let mut powers: Vec<Polynomial> = vec![Self::from_int(self.field, self.nvars, 1)];
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.without_var(i);
            while powers.len() <= e as usize {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            for (n, d) in &powers[e as usize].terms {
                let key = rest.mul(n);
                let v = c.mul(d);
                match acc.get_mut(&key) {
                    Some(x) => *x = x.add(&v),
                    None => {
                        acc.insert(key, v);
                    }
                }
            }
        }
        Ok(Self::from_terms(self.field, self.nvars, acc))
    }

    /// Drops a variable that does not occur, shifting later variables down.
    pub fn remove_var(&self, i: usize) -> Result<Polynomial> {
        if self.support() & (1 << i) != 0 {
            return Err(Error::RingMismatch(format!("variable {} still occurs", i + 1)));
        }
        let terms = self.terms.iter().map(|(m, c)| (m.remove_var(i), c.clone())).collect();
        Ok(Polynomial { field: self.field, nvars: self.nvars - 1, terms })
    }

    /// Same polynomial in a ring with more variables appended.
    pub fn extend_vars(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        Polynomial { field: self.field, nvars, terms: self.terms.clone() }
    }

    /// Reduction of a rational polynomial into another field; fails on a denominator divisible
    /// by the characteristic.
    pub fn to_field(&self, field: CoeffField) -> Result<Polynomial> {
        if field == self.field {
            return Ok(self.clone());
        }
        let rational = |c: &Scalar| {
            c.as_rational().cloned().ok_or_else(|| Error::RingMismatch(format!("cannot map {} to {field}", self.field)))
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((*m, field.from_rational(&rational(c)?)?));
        }
        Ok(Self::from_terms(field, self.nvars, terms))
    }

    /// For a rational polynomial, `(g, f)` where `f` has coprime integer coefficients and a
    /// positive leading coefficient, and `self` is a rational multiple of `f` whose numerator is `g`
    /// once denominators are cleared.
    pub fn integer_content(&self) -> Option<(BigInt, Vec<(Monomial, BigInt)>)> {
        let rs: Vec<_> = self.terms.iter().map(|(m, c)| Some((*m, c.as_rational()?.clone()))).collect::<Option<_>>()?;
        let den = rs.iter().fold(BigInt::one(), |acc, (_, r)| acc.lcm(r.denom()));
        let ints: Vec<(Monomial, BigInt)> = rs.iter().map(|(m, r)| (*m, r.numer() * (&den / r.denom()))).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        if g.is_zero() {
            return Some((g, ints));
        }
        if ints[0].1.is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|(m, c)| (*m, c / &g)).collect();
        Some((g, prim))
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vars = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let ring = super::text::Ring { field: self.field, vars };
        f.write_str(&ring.format(self))
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs).expect("polynomials from one ring")
            }
        }
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$inner(&rhs).expect("polynomials from one ring")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(&self)
    }
}

/// `det [a b c]` by cofactor expansion along the first column.
pub fn det3(cols: [&[Polynomial; 3]; 3]) -> Polynomial {
    let [a, b, c] = cols;
    let minor = |i: usize, j: usize| &(&b[i] * &c[j]) - &(&b[j] * &c[i]);
    let t0 = &a[0] * &minor(1, 2);
    let t1 = &a[1] * &minor(0, 2);
    let t2 = &a[2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(nvars: usize, i: usize) -> Polynomial {
        Polynomial::var(CoeffField::Rational, nvars, i)
    }

    fn c(nvars: usize, v: i64) -> Polynomial {
        Polynomial::from_int(CoeffField::Rational, nvars, v)
    }

    #[test]
    fn difference_of_squares() {
        let y = q(1, 0);
        let p = &(&y - &c(1, 1)) * &(&y + &c(1, 1));
        assert_eq!(p, &(&y * &y) - &c(1, 1));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn evaluation_and_mismatch() {
        let f = CoeffField::Rational;
        let p = &(&(&q(4, 2) - &q(4, 0)) + &q(4, 1)) - &q(4, 3);
        let pt: Vec<Scalar> = [1, 0, 0, 1].iter().map(|&v| f.from_int(v)).collect();
        assert_eq!(p.evaluate(&pt).unwrap(), f.from_int(-2));
        assert!(p.evaluate(&pt[..3]).is_err());
        assert!(q(2, 0).try_add(&q(3, 0)).is_err());
    }

    #[test]
    fn substitution_and_removal() {
        let (x, y) = (q(2, 0), q(2, 1));
        let p = &(&x * &x) + &y;
        let s = p.substitute(0, &(&y + &c(2, 1))).unwrap();
        assert_eq!(s, &(&(&y * &y) + &(&y * &c(2, 3))) + &c(2, 1));
        let r = s.remove_var(0).unwrap();
        assert_eq!(r.nvars(), 1);
        assert!(p.remove_var(0).is_err());
    }

    #[test]
    fn determinant_is_alternating() {
        let n = 3;
        let col = |i: usize| [q(n, i), c(n, 1), &q(n, i) * &q(n, (i + 1) % n)];
        let (a, b) = (col(0), col(1));
        assert!(det3([&a, &b, &a]).is_zero());
        assert_eq!(det3([&a, &b, &col(2)]), -det3([&b, &a, &col(2)]));
    }

    #[test]
    fn content_of_a_constant() {
        let (g, prim) = c(2, -2).integer_content().unwrap();
        assert_eq!(g, BigInt::from(-2));
        assert_eq!(prim[0].1, BigInt::from(1));
    }
}
