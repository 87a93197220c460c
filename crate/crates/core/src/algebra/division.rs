use std::cmp::Ordering;

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub(crate) type Terms = Vec<(Monomial, Scalar)>;

/// `a - c * m * b` for term lists sorted descending under `order`.
pub(crate) fn sub_scaled(
    a: &[(Monomial, Scalar)],
    c: &Scalar,
    m: &Monomial,
    b: &[(Monomial, Scalar)],
    order: MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |k: usize| (b[k].0.mul(m), b[k].1.mul(c));
    let mut next_b = if b.is_empty() { None } else { Some(shifted(0)) };
    while let Some((bm, bc)) = next_b.as_ref() {
        if i < a.len() {
            match order.cmp(&a[i].0, bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                    continue;
                }
                Ordering::Equal => {
                    let v = a[i].1.sub(bc);
                    if !v.is_zero() {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                }
                Ordering::Less => out.push((*bm, bc.neg())),
            }
        } else {
            out.push((*bm, bc.neg()));
        }
        j += 1;
        next_b = if j < b.len() { Some(shifted(j)) } else { None };
    }
    out.extend_from_slice(&a[i..]);
    out
}

/// Reduction of `f` by a list of term lists with monic leading terms. Returns the remainder and
/// adds the number of reduction steps to `steps`. Stops early with `BudgetExceeded` once `steps`
/// passes `budget`.
pub(crate) fn reduce_terms(
    f: Terms,
    basis: &[Terms],
    order: MonomialOrder,
    full: bool,
    steps: &mut u64,
    budget: u64,
) -> Result<Terms> {
    let mut rem: Terms = Vec::new();
    let mut f = f;
    let mut start = 0;
    while start < f.len() {
        let (m, c) = &f[start];
        let divisor = basis.iter().find_map(|g| g[0].0.quotient(m).map(|q| (q, g)));
        match divisor {
            Some((q, g)) => {
                *steps += 1;
                if *steps > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                let c = c.clone();
                f = sub_scaled(&f[start..], &c, &q, g, order);
                start = 0;
            }
            None => {
                if !full {
                    rem.extend(f.drain(start..));
                    break;
                }
                rem.push(f[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

pub(crate) fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            for (_, c) in t.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }
}

/// Remainder of `f` on division by `basis` under `order`: `f - r` lies in the ideal of `basis`
/// and no term of `r` is divisible by a leading monomial of `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Result<Polynomial> {
    for g in basis {
        if g.field() != f.field() || g.nvars() != f.nvars() {
            return Err(Error::RingMismatch("basis from another ring".into()));
        }
    }
    let monic: Vec<Terms> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut t = g.sorted_terms(order);
            make_monic(&mut t);
            t
        })
        .collect();
    let mut steps = 0;
    let r = reduce_terms(f.sorted_terms(order), &monic, order, true, &mut steps, u64::MAX)?;
    Ok(Polynomial::from_ordered(f.field(), f.nvars(), r, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CoeffField, Ring};

    #[test]
    fn substitution_by_a_linear_form() {
        let r = Ring::framed(CoeffField::Rational, 1, 0).unwrap();
        let f = r.parse("y1^2").unwrap();
        let g = r.parse("y1 - 1").unwrap();
        assert_eq!(normal_form(&f, std::slice::from_ref(&g), MonomialOrder::DegRevLex).unwrap(), r.from_int(1));
        assert!(normal_form(&g, std::slice::from_ref(&g), MonomialOrder::Lex).unwrap().is_zero());
    }

    #[test]
    fn remainder_has_no_reducible_terms() {
        let r = Ring::new(CoeffField::Rational, vec!["x".into(), "y".into()]).unwrap();
        let f = r.parse("x^2*y + x*y^2 + y^2").unwrap();
        let basis = [r.parse("x*y - 1").unwrap(), r.parse("y^2 - 1").unwrap()];
        let nf = normal_form(&f, &basis, MonomialOrder::Lex).unwrap();
        assert_eq!(r.format(&nf), "x + y + 1");
    }
}
