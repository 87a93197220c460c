mod common;

use incidence::algebra::{CoeffField, MonomialOrder, Scalar};
use incidence::catalog;
use incidence::gb::{
    buchberger, build_ideal, eliminate_linear_variables, generic_minimal_polynomial, krull_dimension, simplify,
    zero_dim_summary, GroebnerBasis, IdealPresentation, DEFAULT_BUDGET,
};
use incidence::realize::{characteristic_scan, count_chart_points, count_framed};
use incidence::LinearSpace;

use common::roots_mod;

fn ideal_of(name: &str, field: CoeffField) -> IdealPresentation {
    build_ideal(&catalog::get(name).unwrap().framed().unwrap(), field).unwrap().0
}

#[test]
fn determinant_bookkeeping() {
    let e = catalog::get("starfish").unwrap();
    let (_, stats) = build_ideal(&e.framed().unwrap(), CoeffField::Rational).unwrap();
    assert_eq!(stats.determinants, 20);
    let (ideal, stats) =
        build_ideal(&catalog::get("mobius-kantor").unwrap().framed().unwrap(), CoeffField::Rational).unwrap();
    assert_eq!((stats.determinants, stats.trivial, ideal.generators.len()), (8, 2, 6));
}

#[test]
fn fano_substitution_leaves_minus_two() {
    let ideal = ideal_of("fano", CoeffField::Rational);
    let r = &ideal.ring;
    let g = r.parse("-y1 + y2 + z1 - z2").unwrap();
    let at: Vec<Scalar> = ["y1", "y2", "z1", "z2"]
        .iter()
        .map(|v| match *v {
            "y1" | "z2" => Scalar::rational(1, 1),
            _ => Scalar::rational(0, 1),
        })
        .collect();
    assert_eq!(g.evaluate(&at).unwrap(), Scalar::rational(-2, 1));
    let (reduced, subs) = eliminate_linear_variables(&ideal);
    assert!(reduced.has_unit_generator());
    assert!(subs.len() >= 3);
    assert_eq!(krull_dimension(&buchberger(&ideal, MonomialOrder::DegRevLex).unwrap()), -1);
}

#[test]
fn fano_has_one_point_over_f2() {
    let f2 = CoeffField::prime(2).unwrap();
    let ideal = ideal_of("fano", f2);
    let gb = buchberger(&ideal, MonomialOrder::Lex).unwrap();
    assert!(!gb.is_unit());
    let n = ideal.ring.nvars();
    let solutions = (0u32..1 << n)
        .filter(|code| {
            let pt: Vec<Scalar> = (0..n).map(|i| f2.from_int((code >> i & 1) as i64)).collect();
            gb.elements.iter().all(|g| g.evaluate(&pt).unwrap().is_zero())
        })
        .count();
    assert_eq!(solutions, 1);
    assert_eq!(zero_dim_summary(&gb).unwrap().vector_space_dimension, Some(1));
}

#[test]
fn mobius_kantor_reduces_to_one_quadratic() {
    let (gb, subs) =
        simplify(&ideal_of("mobius-kantor", CoeffField::Rational), MonomialOrder::DegRevLex, DEFAULT_BUDGET).unwrap();
    assert_eq!(gb.ring.nvars(), 1, "{subs:?}");
    let summary = zero_dim_summary(&gb).unwrap();
    assert_eq!(summary.vector_space_dimension, Some(2));
    let (_, m) = generic_minimal_polynomial(&gb).unwrap();
    assert_eq!(m.degree(), Some(2));
    for p in [3u64, 5, 7, 11, 13, 19, 31] {
        assert_eq!(m.count_roots_mod(p).unwrap(), roots_mod(&[1, -1, 1], p as i64), "p = {p}");
    }
}

#[test]
fn scans_follow_the_root_criteria() {
    let mk = &catalog::get("mobius-kantor").unwrap().space;
    let scan = characteristic_scan(mk, &[2, 3, 5, 7, 13]).unwrap();
    assert_eq!(scan.into_iter().filter(|(_, b)| *b).map(|(p, _)| p).collect::<Vec<_>>(), [3, 7, 13]);
    let star = &catalog::get("starfish").unwrap().space;
    let scan = characteristic_scan(star, &[5, 11, 19, 7, 13]).unwrap();
    assert_eq!(scan.into_iter().filter(|(_, b)| *b).map(|(p, _)| p).collect::<Vec<_>>(), [5, 11, 19]);
}

#[test]
fn chart_counts_of_small_examples() {
    let fs = |n: &str| catalog::get(n).unwrap().framed().unwrap();
    let mk = fs("mobius-kantor");
    assert_eq!([7, 5, 3].map(|q| count_chart_points(&mk, q).unwrap().count), [2, 0, 1]);
    let star = fs("starfish");
    assert_eq!([11, 7].map(|q| count_chart_points(&star, q).unwrap().count), [2, 0]);
    let fano = &catalog::get("fano").unwrap().space;
    assert_eq!(count_framed(fano, [2, 3, 4, 5], 2, true).unwrap().count, 1);
    assert_eq!(count_framed(fano, [2, 3, 4, 5], 3, true).unwrap().count, 0);
    let empty = LinearSpace::trivial(5).unwrap();
    assert_eq!(count_framed(&empty, [1, 2, 3, 4], 2, false).unwrap().count, 7);
}

#[test]
fn ideals_and_bases_survive_json() {
    for name in ["fano", "mobius-kantor", "cubic-field", "pappus"] {
        let ideal = ideal_of(name, CoeffField::Rational);
        let back = IdealPresentation::from_json_str(&ideal.to_json_value().to_string()).unwrap();
        assert_eq!(back, ideal);
        let gb = buchberger(&ideal, MonomialOrder::DegRevLex).unwrap();
        let back = GroebnerBasis::from_json_str(&gb.to_json_value().to_string()).unwrap();
        assert_eq!(back.elements, gb.elements);
        assert_eq!(back.order, gb.order);
    }
}

#[test]
fn whole_catalog_verifies() {
    for report in catalog::verify_all() {
        let bad: Vec<_> = report.failures().map(|c| (&c.fact, &c.expected, &c.computed)).collect();
        assert!(bad.is_empty(), "{}: {bad:?}", report.name);
    }
}
