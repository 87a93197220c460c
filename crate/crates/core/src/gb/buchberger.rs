use serde_json::json;

use super::ideal::IdealPresentation;
use crate::algebra::{make_monic, reduce_terms, sub_scaled, Monomial, MonomialOrder, Polynomial, Ring, Terms};
use crate::error::{Error, Result};

/// Default cap on reduction steps.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A reduced, monic Groebner basis sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub ring: Ring,
    pub order: MonomialOrder,
    pub elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// `true` for the basis `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| *g.leading_term(self.order).expect("nonzero").0).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        crate::algebra::normal_form(f, &self.elements, self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "ring": self.ring,
            "order": self.order.name(),
            "elements": self.elements.iter().map(|g| self.ring.format(g)).collect::<Vec<_>>(),
        })
    }

    /// Reads the output of [`GroebnerBasis::to_json_value`], rejecting anything that is not a
    /// reduced Groebner basis for the stated order.
    pub fn from_json_str(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Raw {
            ring: Ring,
            order: String,
            elements: Vec<String>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        let ring = Ring::new(raw.ring.field, raw.ring.vars)?;
        let order = MonomialOrder::parse(&raw.order)
            .ok_or_else(|| Error::Parse(format!("unknown monomial order {:?}", raw.order)))?;
        let mut elements = raw.elements.iter().map(|e| ring.parse(e)).collect::<Result<Vec<_>>>()?;
        if elements.iter().any(|g| g.is_zero()) {
            return Err(Error::Parse("zero element in a Groebner basis".into()));
        }
        elements.sort_by(|a, b| order.cmp(a.leading_term(order).unwrap().0, b.leading_term(order).unwrap().0));
        let gb = GroebnerBasis { ring, order, elements };
        if !is_reduced_groebner_basis(&gb) {
            return Err(Error::Parse("not a reduced Groebner basis".into()));
        }
        Ok(gb)
    }

    pub fn as_ideal(&self) -> IdealPresentation {
        IdealPresentation { ring: self.ring.clone(), generators: self.elements.clone() }
    }
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    order: MonomialOrder,
    polys: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    /// Gebauer-Moeller installation of a new element, which applies the product criterion and
    /// the chain criterion.
    fn insert(&mut self, h: Terms) {
        let hi = self.polys.len();
        let hm = h[0].0;
        self.polys.push(h);
        self.active.push(true);

        let candidates: Vec<Pair> =
            (0..hi).filter(|&g| self.active[g]).map(|g| Pair { i: g, j: hi, lcm: hm.lcm(self.lm(g)) }).collect();
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = hm.is_coprime(self.lm(p.i));
            let dominated = candidates[k + 1..].iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(*p);
            }
        }
        // Among pairs sharing an lcm keep one; drop the coprime ones.
        let mut fresh: Vec<Pair> = Vec::new();
        for p in kept {
            if hm.is_coprime(self.lm(p.i)) {
                continue;
            }
            if !fresh.iter().any(|q| q.lcm == p.lcm) {
                fresh.push(p);
            }
        }

        let lm = |s: &State, k: usize| *s.lm(k);
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let l1 = hm.lcm(&lm(self, p.i));
            let l2 = hm.lcm(&lm(self, p.j));
            if !hm.divides(&p.lcm) || l1 == p.lcm || l2 == p.lcm {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(fresh);

        for g in 0..hi {
            if self.active[g] && hm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn reducers(&self) -> Vec<Terms> {
        (0..self.polys.len()).filter(|&i| self.active[i]).map(|i| self.polys[i].clone()).collect()
    }

    fn s_poly(&self, p: &Pair) -> Terms {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let uf = f[0].0.quotient(&p.lcm).expect("divides lcm");
        let ug = g[0].0.quotient(&p.lcm).expect("divides lcm");
        let one = f[0].1.field().one();
        let zero: Terms = Vec::new();
        let a = sub_scaled(&zero, &one.neg(), &uf, f, self.order);
        sub_scaled(&a, &one, &ug, g, self.order)
    }
}

fn sort_terms(p: &Polynomial, order: MonomialOrder) -> Terms {
    p.sorted_terms(order)
}

/// Reduced Groebner basis of `ideal` under `order`, failing with `BudgetExceeded` after
/// `budget` reduction steps.
pub fn buchberger_with_budget(ideal: &IdealPresentation, order: MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
    let field = ideal.ring.field;
    let nvars = ideal.ring.nvars();
    let finish = |elements: Vec<Polynomial>| GroebnerBasis { ring: ideal.ring.clone(), order, elements };
    let unit = || finish(vec![Polynomial::from_int(field, nvars, 1)]);

    let mut state = State { order, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut steps = 0u64;
    let mut inputs: Vec<Terms> = ideal
        .generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut t = sort_terms(g, order);
            make_monic(&mut t);
            t
        })
        .collect();
    if inputs.is_empty() {
        return Ok(finish(Vec::new()));
    }
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for t in inputs {
        let mut r = reduce_terms(t, &state.reducers(), order, false, &mut steps, budget)?;
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(unit());
        }
        make_monic(&mut r);
        state.insert(r);
    }

    while !state.pairs.is_empty() {
        // Normal strategy: smallest lcm first, ties by insertion.
        let best = (0..state.pairs.len())
            .min_by(|&a, &b| order.cmp(&state.pairs[a].lcm, &state.pairs[b].lcm).then(a.cmp(&b)))
            .expect("nonempty");
        let pair = state.pairs.swap_remove(best);
        let s = state.s_poly(&pair);
        let mut r = reduce_terms(s, &state.reducers(), order, false, &mut steps, budget)?;
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(unit());
        }
        make_monic(&mut r);
        state.insert(r);
    }

    // Minimal basis, then tail reduction against the others.
    let mut minimal: Vec<Terms> = state.reducers();
    minimal.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut reduced: Vec<Terms> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Terms> = minimal.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, t)| t.clone()).collect();
        let head = minimal[k][0].clone();
        let tail = minimal[k][1..].to_vec();
        let mut r = vec![head];
        r.extend(reduce_terms(tail, &others, order, true, &mut steps, budget)?);
        reduced.push(r);
    }
    let elements = reduced.into_iter().map(|t| Polynomial::from_terms(field, nvars, t)).collect();
    Ok(finish(elements))
}

pub fn buchberger(ideal: &IdealPresentation, order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(ideal, order, DEFAULT_BUDGET)
}

/// Checks the defining properties directly: every pairwise S-polynomial reduces to zero and the
/// basis is reduced and monic.
pub fn is_reduced_groebner_basis(gb: &GroebnerBasis) -> bool {
    let order = gb.order;
    let ts: Vec<Terms> = gb.elements.iter().map(|g| sort_terms(g, order)).collect();
    if ts.iter().any(|t| t.is_empty() || !t[0].1.is_one()) {
        return false;
    }
    for (i, t) in ts.iter().enumerate() {
        for (j, u) in ts.iter().enumerate() {
            if i != j && t.iter().any(|(m, _)| u[0].0.divides(m)) {
                return false;
            }
        }
    }
    let state = State { order, polys: ts.clone(), active: vec![true; ts.len()], pairs: Vec::new() };
    let mut steps = 0;
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            let pair = Pair { i, j, lcm: ts[i][0].0.lcm(&ts[j][0].0) };
            let r = reduce_terms(state.s_poly(&pair), &ts, order, true, &mut steps, u64::MAX).unwrap();
            if !r.is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CoeffField;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(CoeffField::Rational, names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn single_linear_generator() {
        let r = ring(&["y1"]);
        let ideal = IdealPresentation::parse(r.clone(), &["y1 - 1"]).unwrap();
        let gb = buchberger(&ideal, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.elements, vec![r.parse("y1 - 1").unwrap()]);
    }

    #[test]
    fn textbook_example() {
        let r = ring(&["x", "y"]);
        let ideal = IdealPresentation::parse(r.clone(), &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]).unwrap();
        let gb = buchberger(&ideal, MonomialOrder::DegRevLex).unwrap();
        let text: Vec<String> = gb.elements.iter().map(|g| r.format(g)).collect();
        assert_eq!(text, ["y^2 - 1/2*x", "x*y", "x^2"]);
        assert!(is_reduced_groebner_basis(&gb));
        for g in &ideal.generators {
            assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn inconsistent_system_gives_unit() {
        let r = ring(&["x", "y"]);
        let ideal = IdealPresentation::parse(r, &["x*y - 1", "x", "y^2 + 1"]).unwrap();
        assert!(buchberger(&ideal, MonomialOrder::Lex).unwrap().is_unit());
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring(&["x", "y", "z"]);
        let ideal = IdealPresentation::parse(r, &["x^3 - y*z", "y^3 - x*z", "z^3 - x*y - 1"]).unwrap();
        assert!(matches!(buchberger_with_budget(&ideal, MonomialOrder::Lex, 3), Err(crate::Error::BudgetExceeded(3))));
    }
}
