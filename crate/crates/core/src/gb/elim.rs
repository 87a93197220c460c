use serde::Serialize;

use super::buchberger::{buchberger_with_budget, GroebnerBasis};
use super::ideal::IdealPresentation;
use crate::algebra::{Monomial, MonomialOrder, Polynomial};
use crate::error::Result;

/// One recorded substitution `var := value`, printed in the ring current at that step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub var: String,
    pub value: String,
}

/// Finds a variable occurring in `g` only in a single degree-one term.
fn linear_variable(g: &Polynomial) -> Option<usize> {
    let support = g.support();
    (0..g.nvars()).rev().find(|&v| {
        support & (1 << v) != 0 && g.terms().iter().all(|(m, _)| m.exponent(v) == 0 || *m == Monomial::var(v))
    })
}

/// Repeatedly solves a generator `c*v + g` (with `v` absent from `g`) for `v`, substitutes it
/// everywhere and drops `v` from the ring. The quotient algebra is unchanged up to isomorphism.
pub fn eliminate_linear_variables(ideal: &IdealPresentation) -> (IdealPresentation, Vec<Substitution>) {
    let mut ring = ideal.ring.clone();
    let mut gens: Vec<Polynomial> = ideal.generators.clone();
    let mut log = Vec::new();
    loop {
        if let Some(unit) = gens.iter().find(|g| g.is_constant() && !g.is_zero()) {
            return (IdealPresentation { ring, generators: vec![unit.clone()] }, log);
        }
        let found = gens
            .iter()
            .enumerate()
            .filter_map(|(k, g)| linear_variable(g).map(|v| (k, v)))
            .min_by_key(|&(k, _)| (gens[k].len(), k));
        let Some((k, v)) = found else {
            return (IdealPresentation { ring, generators: gens }, log);
        };
        let g = gens.remove(k);
        let c = g.coefficient(&Monomial::var(v));
        let rest = &g - &Polynomial::from_terms(g.field(), g.nvars(), [(Monomial::var(v), c.clone())]);
        let value = rest.scale(&c.inv().expect("nonzero").neg());
        log.push(Substitution { var: ring.vars[v].clone(), value: ring.format(&value) });
        gens = gens
            .iter()
            .map(|h| h.substitute(v, &value).and_then(|h| h.remove_var(v)).expect("same ring"))
            .filter(|h| !h.is_zero())
            .collect();
        ring = ring.without_var(v);
    }
}

/// Alternates linear elimination with Groebner bases until no generator is linear in a variable.
pub fn simplify(
    ideal: &IdealPresentation,
    order: MonomialOrder,
    budget: u64,
) -> Result<(GroebnerBasis, Vec<Substitution>)> {
    let (mut current, mut log) = eliminate_linear_variables(ideal);
    loop {
        let gb = buchberger_with_budget(&current, order, budget)?;
        if gb.is_unit() || !gb.elements.iter().any(|g| linear_variable(g).is_some()) {
            return Ok((gb, log));
        }
        let (next, more) = eliminate_linear_variables(&gb.as_ideal());
        log.extend(more);
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CoeffField, Ring};

    #[test]
    fn chain_of_substitutions() {
        let ring = Ring::new(CoeffField::Rational, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let ideal = IdealPresentation::parse(ring, &["a - b^2", "2*b - c", "c^2 - 4"]).unwrap();
        let (out, log) = eliminate_linear_variables(&ideal);
        assert_eq!(out.ring.vars, ["b"]);
        assert_eq!(out.generator_strings(), ["4*b^2 - 4"]);
        assert_eq!(log.len(), 2);
    }

    #[test]
    fn nothing_to_eliminate() {
        let ring = Ring::new(CoeffField::Rational, vec!["x".into(), "y".into()]).unwrap();
        let ideal = IdealPresentation::parse(ring, &["x^2 - y^2", "x*y - 1"]).unwrap();
        let (out, log) = eliminate_linear_variables(&ideal);
        assert_eq!(out, ideal);
        assert!(log.is_empty());
    }
}
