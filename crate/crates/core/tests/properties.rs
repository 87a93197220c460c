mod common;

use std::cmp::Ordering;

use proptest::prelude::*;

use incidence::algebra::{det3, CoeffField, Monomial, MonomialOrder, Polynomial, Scalar};
use incidence::enumerate::canonical_form;
use incidence::gb::{buchberger, eliminate_linear_variables, IdealPresentation};
use incidence::realize::{count_framed, first_combinatorial_frame};
use incidence::space::{closure, quotient, validate_linear_space, QuotientMap};
use incidence::{CollinearityFamily, LinearSpace, PointSet};

use common::*;

/// Bitmasks of at least three of the points `0..n` (none when `n < 3`).
fn member_strategy(n: usize, max_members: usize) -> BoxedStrategy<Vec<u64>> {
    if n < 3 {
        return Just(Vec::new()).boxed();
    }
    let member = prop::sample::subsequence((0..n).collect::<Vec<_>>(), 3..=n)
        .prop_map(|ix| ix.into_iter().fold(0u64, |m, i| m | 1 << i));
    prop::collection::vec(member, 0..=max_members).boxed()
}

fn family_strategy(min_n: usize, max_n: usize, max_members: usize) -> impl Strategy<Value = CollinearityFamily> {
    (min_n..=max_n).prop_flat_map(move |n| {
        member_strategy(n, max_members)
            .prop_map(move |ms| CollinearityFamily::new(n, ms.into_iter().map(PointSet::from_bits)).unwrap())
    })
}

fn space_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = LinearSpace> {
    family_strategy(min_n, max_n, 4).prop_map(|f| closure(&f))
}

fn with_permutation(s: LinearSpace) -> impl Strategy<Value = (LinearSpace, Vec<usize>)> {
    let n = s.n();
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(move |p| (s.clone(), p))
}

fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::DegRevLex),
        Just(MonomialOrder::Lex),
        (0usize..=4).prop_map(MonomialOrder::Elimination),
    ]
}

fn monomial_strategy() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..4, 4).prop_map(|e| Monomial::from_exponents(&e))
}

fn poly_strategy(field: CoeffField, nvars: usize) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0u16..3, nvars), -5i64..=5);
    prop::collection::vec(term, 0..4).prop_map(move |ts| {
        Polynomial::from_terms(
            field,
            nvars,
            ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), field.from_int(c))),
        )
    })
}

fn scale_column(col: &[Polynomial; 3], c: &Polynomial) -> [Polynomial; 3] {
    [&col[0] * c, &col[1] * c, &col[2] * c]
}

fn add_columns(a: &[Polynomial; 3], b: &[Polynomial; 3]) -> [Polynomial; 3] {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

/// Reduced fraction from a small numerator and non-zero denominator.
fn reduce(n: i64, d: i64) -> (i64, i64) {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(n, d).max(1);
    let s = if d < 0 { -1 } else { 1 };
    (s * n / g, s * d / g)
}

fn column(field: CoeffField, nvars: usize) -> impl Strategy<Value = [Polynomial; 3]> {
    (poly_strategy(field, nvars), poly_strategy(field, nvars), poly_strategy(field, nvars))
        .prop_map(|(a, b, c)| [a, b, c])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closure_is_valid_extensive_and_idempotent(f in family_strategy(1, 9, 6)) {
        let c = closure(&f);
        prop_assert!(validate_linear_space(&c.as_family()).is_ok());
        for m in f.members() {
            prop_assert!(c.is_collinear_set(m));
        }
        prop_assert_eq!(closure(&c.as_family()), c);
    }

    #[test]
    fn closure_is_monotone((f, extra) in family_strategy(3, 9, 4).prop_flat_map(|f| {
        let n = f.n();
        (Just(f), member_strategy(n, 2))
    })) {
        let n = f.n();
        let g = CollinearityFamily::new(n, f.members().chain(extra.into_iter().map(PointSet::from_bits))).unwrap();
        prop_assert!(closure(&f).leq(&closure(&g)).unwrap());
    }

    #[test]
    fn closure_lies_below_every_containing_space((f, s) in family_strategy(3, 8, 3).prop_flat_map(|f| {
        let n = f.n();
        (Just(f), space_strategy(n, n))
    })) {
        let joined = closure(&CollinearityFamily::new(f.n(), f.members().chain(s.lines().iter().copied())).unwrap());
        prop_assert!(closure(&f).leq(&joined).unwrap());
    }

    #[test]
    fn quotients_fix_identity_and_stage_above_direct((s, a, b, perm) in space_strategy(3, 8).prop_flat_map(|s| {
        let n = s.n();
        let shuffled = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(s), prop::collection::vec(0usize..n, n), prop::collection::vec(0usize..n, n), shuffled)
    })) {
        let n = s.n();
        let id = QuotientMap::new(n, (0..n).collect()).unwrap();
        prop_assert_eq!(quotient(&s, &id).unwrap(), s.clone());
        let compact = |v: &[usize]| {
            let mut seen: Vec<usize> = v.to_vec();
            seen.sort_unstable();
            seen.dedup();
            v.iter().map(|x| seen.binary_search(x).unwrap()).collect::<Vec<_>>()
        };
        let q1 = compact(&a);
        let m = q1.iter().max().unwrap() + 1;
        let q2 = compact(&b[..m]);
        let k = q2.iter().max().unwrap() + 1;
        let composed: Vec<usize> = q1.iter().map(|&x| q2[x]).collect();
        let q2 = QuotientMap::new(k, q2).unwrap();
        let staged = quotient(&quotient(&s, &QuotientMap::new(m, q1).unwrap()).unwrap(), &q2).unwrap();
        let direct = quotient(&s, &QuotientMap::new(k, composed).unwrap()).unwrap();
        prop_assert!(direct.leq(&staged).unwrap());
        // A relabeling first loses nothing.
        let q2_by_label: Vec<usize> = (0..n).map(|i| compact(&b)[i]).collect();
        let kb = q2_by_label.iter().max().unwrap() + 1;
        let relabeled = quotient(&s, &QuotientMap::new(n, perm.clone()).unwrap()).unwrap();
        let after: Vec<usize> = (0..n).map(|i| q2_by_label[perm[i]]).collect();
        prop_assert_eq!(
            quotient(&relabeled, &QuotientMap::new(kb, q2_by_label).unwrap()).unwrap(),
            quotient(&s, &QuotientMap::new(kb, after).unwrap()).unwrap()
        );
    }

    #[test]
    fn strong_counts_never_exceed_weak(s in space_strategy(4, 7), q in prop::sample::select(vec![2u64, 3])) {
        if let Some(f) = first_combinatorial_frame(&s) {
            let weak = count_framed(&s, f, q, false).unwrap().count;
            let strong = count_framed(&s, f, q, true).unwrap().count;
            prop_assert!(strong <= weak);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn certificates_ignore_relabeling((s, perm) in space_strategy(1, 8).prop_flat_map(with_permutation)) {
        let t = s.relabel(&perm);
        prop_assert_eq!(canonical_form(&s).certificate, canonical_form(&t).certificate);
    }

    #[test]
    fn monomial_orders_are_multiplicative_total_orders(
        order in order_strategy(),
        a in monomial_strategy(),
        b in monomial_strategy(),
        c in monomial_strategy(),
    ) {
        let ab = order.cmp(&a, &b);
        prop_assert_eq!(ab, order.cmp(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(order.cmp(&a.mul(&c), &b.mul(&c)), ab);
        prop_assert_ne!(order.cmp(&Monomial::one(), &a), Ordering::Greater);
        if ab == Ordering::Less && order.cmp(&b, &c) == Ordering::Less {
            prop_assert_eq!(order.cmp(&a, &c), Ordering::Less);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn rational_arithmetic_matches_fractions(a in -9999i64..=9999, b in 1i64..=9999, c in -9999i64..=9999, d in 1i64..=9999) {
        let x = Scalar::rational(a, b);
        let y = Scalar::rational(c, d);
        let as_pair = |s: &Scalar| {
            let t = s.to_string();
            let (n, d) = t.split_once('/').map_or((t.as_str(), "1"), |p| p);
            (n.parse::<i64>().unwrap(), d.parse::<i64>().unwrap())
        };
        prop_assert_eq!(as_pair(&x), reduce(a, b));
        prop_assert_eq!(as_pair(&x.add(&y)), reduce(a * d + c * b, b * d));
        prop_assert_eq!(as_pair(&x.sub(&y)), reduce(a * d - c * b, b * d));
        prop_assert_eq!(as_pair(&x.mul(&y)), reduce(a * c, b * d));
        if c != 0 {
            prop_assert_eq!(as_pair(&x.div(&y).unwrap()), reduce(a * d, b * c));
        }
        prop_assert_eq!(CoeffField::Rational.parse_scalar(&x.to_string()).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_text_round_trips(p in poly_strategy(CoeffField::Rational, 3)) {
        let r = ring(CoeffField::Rational, 3);
        prop_assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
    }

    #[test]
    fn multiplication_distributes(
        f in poly_strategy(CoeffField::Rational, 3),
        g in poly_strategy(CoeffField::Rational, 3),
        h in poly_strategy(CoeffField::Rational, 3),
    ) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
    }

    #[test]
    fn det3_is_alternating_and_multilinear(
        a in column(CoeffField::Rational, 2),
        b in column(CoeffField::Rational, 2),
        c in column(CoeffField::Rational, 2),
        a2 in column(CoeffField::Rational, 2),
        k in poly_strategy(CoeffField::Rational, 2),
    ) {
        prop_assert!(det3([&a, &a, &c]).is_zero());
        prop_assert!(det3([&a, &b, &b]).is_zero());
        prop_assert_eq!(det3([&b, &a, &c]), -det3([&a, &b, &c]));
        prop_assert_eq!(det3([&add_columns(&a, &a2), &b, &c]), &det3([&a, &b, &c]) + &det3([&a2, &b, &c]));
        prop_assert_eq!(det3([&a, &scale_column(&b, &k), &c]), &det3([&a, &b, &c]) * &k);
    }

    #[test]
    fn normal_form_is_idempotent_and_stays_in_the_coset(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_ideal(&mut rng);
        let gb = buchberger(&ideal, MonomialOrder::DegRevLex).unwrap();
        let f = random_polynomial(&mut rng, ideal.ring.field, ideal.ring.nvars(), 4, 4);
        let r = gb.normal_form(&f).unwrap();
        prop_assert_eq!(gb.normal_form(&r).unwrap(), r.clone());
        prop_assert!(gb.contains(&(&f - &r)).unwrap());
        for (m, _) in r.terms() {
            prop_assert!(gb.leading_monomials().iter().all(|l| !l.divides(m)));
        }
    }

    #[test]
    fn linear_elimination_preserves_point_counts(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let field = CoeffField::prime(p).unwrap();
        let nvars = rng.gen_range(2..=3);
        let mut gens: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_polynomial(&mut rng, field, nvars, 3, 2)).collect();
        // A generator linear in the last variable.
        let v = Polynomial::var(field, nvars, nvars - 1);
        let rest = random_polynomial(&mut rng, field, nvars - 1, 3, 2).extend_vars(nvars);
        gens.push(&v.scale(&field.from_int(rng.gen_range(1..p as i64))) + &rest);
        let ideal = IdealPresentation::new(ring(field, nvars), gens).unwrap();
        let (reduced, _) = eliminate_linear_variables(&ideal);
        prop_assert_eq!(points_over(&ideal, p), points_over(&reduced, p));
    }
}

/// Common zeros of the generators in `F_p^n`, by evaluation at every point.
fn points_over(ideal: &IdealPresentation, p: u64) -> usize {
    let n = ideal.ring.nvars();
    let field = ideal.ring.field;
    let total = p.pow(n as u32);
    (0..total)
        .filter(|&code| {
            let point: Vec<Scalar> = (0..n).map(|i| field.from_int((code / p.pow(i as u32) % p) as i64)).collect();
            ideal.generators.iter().all(|g| g.evaluate(&point).unwrap().is_zero())
        })
        .count()
}
