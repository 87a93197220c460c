use std::collections::HashMap;

use serde_json::json;

use super::buchberger::GroebnerBasis;
use crate::algebra::{Monomial, Polynomial, Scalar, Univariate};
use crate::error::{Error, Result};

/// Dimension of the scheme cut out by `gb`: `-1` for the unit ideal, otherwise the size of a
/// largest set of variables containing the support of no leading monomial.
pub fn krull_dimension(gb: &GroebnerBasis) -> i64 {
    if gb.is_unit() {
        return -1;
    }
    let n = gb.ring.nvars();
    let mut supports: Vec<u64> = gb.leading_monomials().iter().map(Monomial::support).collect();
    supports.sort_by_key(|s| s.count_ones());
    supports.dedup();
    // Smallest set of variables meeting every support; its complement is independent.
    fn min_hitting(supports: &[u64], chosen: u64, size: u32, best: &mut u32) {
        if size >= *best {
            return;
        }
        match supports.iter().find(|&&s| s & chosen == 0) {
            None => *best = size,
            Some(&s) => {
                let mut rest = s;
                while rest != 0 {
                    let v = rest & rest.wrapping_neg();
                    rest ^= v;
                    min_hitting(supports, chosen | v, size + 1, best);
                }
            }
        }
    }
    let mut best = n as u32;
    min_hitting(&supports, 0, 0, &mut best);
    n as i64 - best as i64
}

/// Monomials outside the leading-term ideal, or `None` if there are infinitely many.
pub fn staircase(gb: &GroebnerBasis) -> Option<Vec<Monomial>> {
    let n = gb.ring.nvars();
    let lms = gb.leading_monomials();
    let bounded = (0..n).all(|v| lms.iter().any(|m| m.support() == 1 << v));
    if !bounded || gb.is_unit() {
        return if gb.is_unit() { Some(Vec::new()) } else { None };
    }
    let mut out = vec![Monomial::one()];
    let mut k = 0;
    while k < out.len() {
        let m = out[k];
        for v in 0..n {
            let next = m.mul(&Monomial::var(v));
            if !lms.iter().any(|l| l.divides(&next)) && !out.contains(&next) {
                out.push(next);
            }
        }
        k += 1;
    }
    out.sort_by(|a, b| gb.order.cmp(a, b));
    Some(out)
}

/// Krylov sequence of multiplication by `f` in the quotient algebra.
struct Quotient<'a> {
    gb: &'a GroebnerBasis,
    index: HashMap<Monomial, usize>,
}

impl<'a> Quotient<'a> {
    fn new(gb: &'a GroebnerBasis) -> Result<(Self, usize)> {
        let stairs = staircase(gb).ok_or(Error::NotZeroDimensional(krull_dimension(gb)))?;
        let index: HashMap<Monomial, usize> = stairs.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Ok((Quotient { gb, index }, stairs.len()))
    }

    fn coords(&self, p: &Polynomial) -> Vec<Scalar> {
        let mut v = vec![p.field().zero(); self.index.len()];
        for (m, c) in p.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Monic minimal polynomial of the class of `f`.
    fn minimal_polynomial(&self, f: &Polynomial) -> Result<Univariate> {
        let field = f.field();
        let f = self.gb.normal_form(f)?;
        let mut power = self.gb.normal_form(&Polynomial::from_int(field, f.nvars(), 1))?;
        // Rows kept in echelon form: (vector, combination of powers, pivot).
        let mut rows: Vec<(Vec<Scalar>, Vec<Scalar>, usize)> = Vec::new();
        for k in 0.. {
            let mut v = self.coords(&power);
            let mut comb = vec![field.zero(); k + 1];
            comb[k] = field.one();
            for (rv, rc, pivot) in &rows {
                if v[*pivot].is_zero() {
                    continue;
                }
                let c = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(rv) {
                    *x = x.sub(&c.mul(y));
                }
                for (x, y) in comb.iter_mut().zip(rc) {
                    *x = x.sub(&c.mul(y));
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return Ok(Univariate::new(field, comb).monic()),
                Some(pivot) => {
                    let inv = v[pivot].inv()?;
                    let v = v.iter().map(|x| x.mul(&inv)).collect();
                    let comb = comb.iter().map(|x| x.mul(&inv)).collect();
                    rows.push((v, comb, pivot));
                }
            }
            power = self.gb.normal_form(&(&power * &f))?;
        }
        unreachable!()
    }
}

/// Invariants of the scheme of a Groebner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeSummary {
    pub krull_dimension: i64,
    pub vector_space_dimension: Option<usize>,
    /// Minimal polynomial of each variable, by name.
    pub minimal_polynomials: Vec<(String, Univariate)>,
}

impl SchemeSummary {
    pub fn to_json_value(&self) -> serde_json::Value {
        let mins: serde_json::Map<String, serde_json::Value> =
            self.minimal_polynomials.iter().map(|(v, p)| (v.clone(), json!(p.format(v)))).collect();
        json!({
            "krull_dimension": self.krull_dimension,
            "vector_space_dimension": self.vector_space_dimension,
            "minimal_polynomials": mins,
        })
    }
}

/// Staircase size and per-variable minimal polynomials of a zero-dimensional scheme.
pub fn zero_dim_summary(gb: &GroebnerBasis) -> Result<SchemeSummary> {
    let dim = krull_dimension(gb);
    if dim != 0 {
        return Err(Error::NotZeroDimensional(dim));
    }
    let (q, size) = Quotient::new(gb)?;
    let mut mins = Vec::new();
    for (i, name) in gb.ring.vars.iter().enumerate() {
        mins.push((name.clone(), q.minimal_polynomial(&gb.ring.var(i))?));
    }
    Ok(SchemeSummary { krull_dimension: 0, vector_space_dimension: Some(size), minimal_polynomials: mins })
}

/// Dimension, plus the zero-dimensional data when it applies.
pub fn summarize(gb: &GroebnerBasis) -> Result<SchemeSummary> {
    match krull_dimension(gb) {
        0 => zero_dim_summary(gb),
        d => Ok(SchemeSummary { krull_dimension: d, vector_space_dimension: None, minimal_polynomials: Vec::new() }),
    }
}

/// Minimal polynomial of an arbitrary element of a zero-dimensional quotient.
pub fn minimal_polynomial(gb: &GroebnerBasis, f: &Polynomial) -> Result<Univariate> {
    let dim = krull_dimension(gb);
    if dim != 0 {
        return Err(Error::NotZeroDimensional(dim));
    }
    Quotient::new(gb)?.0.minimal_polynomial(f)
}

/// Squarefree minimal polynomial of a separating linear form. Its degree is the number of
/// geometric points and its irreducible factors correspond to their residue fields.
///
/// Tries the forms `x1 + t*x2 + t^2*x3 + ...` for `t = 1, 2, ...` and keeps the first whose
/// squarefree degree is not beaten by the next three.
pub fn generic_minimal_polynomial(gb: &GroebnerBasis) -> Result<(Vec<i64>, Univariate)> {
    let dim = krull_dimension(gb);
    if dim != 0 {
        return Err(Error::NotZeroDimensional(dim));
    }
    let (q, _) = Quotient::new(gb)?;
    let n = gb.ring.nvars();
    let mut best: Option<(Vec<i64>, Univariate)> = None;
    let mut since_best = 0;
    for t in 1i64.. {
        let weights: Vec<i64> = (0..n as u32).map(|i| t.pow(i)).collect();
        let form = weights
            .iter()
            .enumerate()
            .fold(gb.ring.zero(), |acc, (i, &w)| &acc + &gb.ring.var(i).scale(&gb.ring.field.from_int(w)));
        let sqf = q.minimal_polynomial(&form)?.squarefree_part();
        let better = best.as_ref().is_none_or(|(_, b)| sqf.degree() > b.degree());
        if better {
            best = Some((weights, sqf));
            since_best = 0;
        } else {
            since_best += 1;
            if since_best == 3 {
                break;
            }
        }
    }
    Ok(best.expect("at least one form"))
}
