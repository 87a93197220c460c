//! Oracles shared by the integration tests. Written without the library's algorithms.

#![allow(dead_code)]

use incidence::algebra::{CoeffField, Monomial, Polynomial, Ring};
use incidence::gb::IdealPresentation;
use rand::Rng;

/// Roots of `sum c_i x^i` (ascending coefficients) in `F_p` by trying every residue.
pub fn roots_mod(coeffs: &[i64], p: i64) -> usize {
    (0..p)
        .filter(|&x| {
            let mut acc = 0i64;
            for &c in coeffs.iter().rev() {
                acc = (acc * x + c).rem_euclid(p);
            }
            acc == 0
        })
        .count()
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Every linear space on labels `0..n`, as sorted line bitmasks (lines of size at least 3).
pub fn labeled_linear_spaces(n: usize) -> Vec<Vec<u64>> {
    let big: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() >= 3).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(big: &[u64], start: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(current.clone());
        for k in start..big.len() {
            if current.iter().all(|&l| (l & big[k]).count_ones() <= 1) {
                current.push(big[k]);
                go(big, k + 1, current, out);
                current.pop();
            }
        }
    }
    go(&big, 0, &mut current, &mut out);
    out
}

/// Whether every line of `a` lies in a line of `b`.
pub fn below(a: &[u64], b: &[u64]) -> bool {
    a.iter().all(|&l| b.iter().any(|&m| l & m == l))
}

/// All invertible 3x3 matrices over `F_q` divided by the scalars.
pub fn pgl3_by_brute_force(q: u64) -> u64 {
    let mut invertible = 0u64;
    let total = q.pow(9);
    for code in 0..total {
        let mut m = [0i64; 9];
        let mut c = code;
        for e in m.iter_mut() {
            *e = (c % q) as i64;
            c /= q;
        }
        let det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
            + m[2] * (m[3] * m[7] - m[4] * m[6]);
        if det.rem_euclid(q as i64) != 0 {
            invertible += 1;
        }
    }
    invertible / (q - 1)
}

pub fn ring(field: CoeffField, nvars: usize) -> Ring {
    Ring::new(field, (1..=nvars).map(|i| format!("x{i}")).collect()).unwrap()
}

/// A random polynomial with up to `terms` terms of total degree at most `max_degree`.
pub fn random_polynomial(
    rng: &mut impl Rng,
    field: CoeffField,
    nvars: usize,
    terms: usize,
    max_degree: u16,
) -> Polynomial {
    let count = rng.gen_range(1..=terms);
    let terms = (0..count).map(|_| {
        let mut exps = vec![0u16; nvars];
        let mut budget = rng.gen_range(0..=max_degree);
        for e in exps.iter_mut() {
            let x = rng.gen_range(0..=budget);
            *e = x;
            budget -= x;
        }
        let mut c = rng.gen_range(-4i64..=4);
        if c == 0 {
            c = 1;
        }
        (Monomial::from_exponents(&exps), field.from_int(c))
    });
    Polynomial::from_terms(field, nvars, terms)
}

/// A small random ideal over one of Q, F_7 or F_101.
pub fn random_ideal(rng: &mut impl Rng) -> IdealPresentation {
    let field = match rng.gen_range(0..3) {
        0 => CoeffField::Rational,
        1 => CoeffField::prime(7).unwrap(),
        _ => CoeffField::prime(101).unwrap(),
    };
    let nvars = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=3);
    let gens = (0..count).map(|_| random_polynomial(rng, field, nvars, 3, 2)).collect();
    IdealPresentation::new(ring(field, nvars), gens).unwrap()
}

/// `lcm/lt(f) * f - lcm/lt(g) * g`, from leading terms alone.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: incidence::algebra::MonomialOrder) -> Polynomial {
    let (mf, cf) = f.leading_term(order).unwrap();
    let (mg, cg) = g.leading_term(order).unwrap();
    let lcm = mf.lcm(mg);
    let a = f.mul_monomial(&mf.quotient(&lcm).unwrap(), &cf.inv().unwrap());
    let b = g.mul_monomial(&mg.quotient(&lcm).unwrap(), &cg.inv().unwrap());
    &a - &b
}
