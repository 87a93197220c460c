mod common;

use std::collections::{BTreeMap, BTreeSet};

use incidence::algebra::CoeffField;
use incidence::catalog;
use incidence::enumerate::{
    canonical_form, enumerate_linear_spaces, enumerate_with_certificates, find_v_frame, frame_ordering, glynn_reduce,
    v_frames, SpaceFilter,
};
use incidence::gb::build_ideal;
use incidence::realize::{Problem, ProjPoint};
use incidence::{LinearSpace, PointSet};

use common::*;

fn from_masks(n: usize, lines: &[u64]) -> LinearSpace {
    LinearSpace::new(n, lines.iter().map(|&b| PointSet::from_bits(b))).unwrap()
}

#[test]
fn leq_is_a_partial_order() {
    for n in 1..=5 {
        let spaces: Vec<LinearSpace> = labeled_linear_spaces(n).iter().map(|l| from_masks(n, l)).collect();
        let leq: Vec<Vec<bool>> = spaces.iter().map(|a| spaces.iter().map(|b| a.leq(b).unwrap()).collect()).collect();
        for i in 0..spaces.len() {
            assert!(leq[i][i]);
            for j in 0..spaces.len() {
                if i != j && leq[i][j] {
                    assert!(!leq[j][i], "{:?} and {:?}", spaces[i], spaces[j]);
                }
                for k in 0..spaces.len() {
                    if leq[i][j] && leq[j][k] {
                        assert!(leq[i][k]);
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_has_no_isomorphic_pairs() {
    for n in 1..=9 {
        let listed = enumerate_with_certificates(n, SpaceFilter::All);
        let certs: BTreeSet<_> = listed.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(certs.len(), listed.len(), "n = {n}");
        for (c, s) in &listed {
            assert_eq!(&canonical_form(s).certificate, c);
        }
    }
}

#[test]
fn labeled_spaces_fall_into_the_enumerated_classes() {
    for n in 1..=5 {
        let classes: BTreeSet<_> =
            enumerate_linear_spaces(n, SpaceFilter::All).iter().map(|s| canonical_form(s).certificate).collect();
        let seen: BTreeSet<_> =
            labeled_linear_spaces(n).iter().map(|l| canonical_form(&from_masks(n, l)).certificate).collect();
        assert_eq!(classes, seen, "n = {n}");
    }
}

#[test]
fn v_frames_exist_for_every_small_superfiguration() {
    for n in 7..=10 {
        for s in enumerate_linear_spaces(n, SpaceFilter::Superfigurations) {
            let vf = find_v_frame(&s).unwrap();
            vf.validate(&s).unwrap();
            let fs = frame_ordering(&s, vf).unwrap();
            assert_eq!(fs.n_prime + fs.n_doubleprime + 5, n);
            if n == 10 {
                let best =
                    v_frames(&s).into_iter().any(|f| frame_ordering(&s, f).map(|fs| fs.n_prime == 5).unwrap_or(false));
                assert!(best, "{:?}", s.line_labels());
            }
        }
    }
}

#[test]
fn determinant_count_matches_line_sizes() {
    let binom3 = |k: usize| k * (k - 1) * (k - 2) / 6;
    for n in 7..=10 {
        for s in enumerate_linear_spaces(n, SpaceFilter::Superfigurations) {
            let fs = frame_ordering(&s, find_v_frame(&s).unwrap()).unwrap();
            let (ideal, stats) = build_ideal(&fs, CoeffField::Rational).unwrap();
            let want: usize = s.lines().iter().map(|l| binom3(l.len())).sum();
            assert_eq!(stats.determinants, want);
            assert!(ideal.generators.len() <= stats.determinants - stats.trivial);
        }
    }
}

#[test]
fn reduction_then_free_point_lies_below() {
    for n in 2..=8 {
        for s in enumerate_linear_spaces(n, SpaceFilter::All) {
            let Some(step) = glynn_reduce(&s).unwrap() else { continue };
            let r = step.removed_point as usize - 1;
            let lift = |b: u64| {
                let low = b & ((1 << r) - 1);
                (b ^ low) << 1 | low
            };
            let back =
                LinearSpace::new(n, step.reduced.lines().iter().map(|l| PointSet::from_bits(lift(l.bits())))).unwrap();
            assert!(back.leq(&s).unwrap());
        }
    }
}

/// Whether the points lie in a projective subspace of dimension `dim`, via 3x3 determinants.
fn spans_at_most(points: &[ProjPoint], q: u64, dim: u8) -> bool {
    let q = q as i64;
    let det = |a: &ProjPoint, b: &ProjPoint, c: &ProjPoint| {
        let v = |p: &ProjPoint| p.map(|x| x as i64);
        let (a, b, c) = (v(a), v(b), v(c));
        (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]))
            .rem_euclid(q)
    };
    match dim {
        2 => true,
        1 => points.iter().all(|c| points.iter().all(|b| points.iter().all(|a| det(a, b, c) == 0))),
        _ => points.windows(2).all(|w| w[0] == w[1]),
    }
}

#[test]
fn glynn_fibers_project_to_realizations() {
    for n in 2..=6 {
        for s in enumerate_linear_spaces(n, SpaceFilter::All) {
            let Some(step) = glynn_reduce(&s).unwrap() else { continue };
            let r = step.removed_point as usize - 1;
            for q in [2u64, 3] {
                let full = Problem::unframed(&s, q, true).unwrap();
                let reduced = Problem::unframed(&step.reduced, q, true).unwrap();
                let mut fibers: BTreeMap<Vec<ProjPoint>, Vec<ProjPoint>> = BTreeMap::new();
                for images in full.realizations() {
                    let mut rest = images.clone();
                    let p = rest.remove(r);
                    assert!(reduced.accepts(&rest), "{:?} q = {q}", s.line_labels());
                    fibers.entry(rest).or_default().push(p);
                }
                let dim = step.fiber_dimension();
                let bound = (0..=dim as u32).map(|i| q.pow(i)).sum::<u64>() as usize;
                for fiber in fibers.values() {
                    assert!(fiber.len() <= bound);
                    assert!(spans_at_most(fiber, q, dim));
                }
            }
        }
    }
}

#[test]
fn catalog_superfigurations_are_enumerated() {
    let certs: BTreeSet<_> =
        enumerate_with_certificates(10, SpaceFilter::Superfigurations).into_iter().map(|(c, _)| c).collect();
    let mut seen = 0;
    for e in catalog::entries() {
        if e.space.n() == 10 && e.space.is_superfiguration() {
            assert!(certs.contains(&canonical_form(&e.space).certificate), "{}", e.name);
            seen += 1;
        }
    }
    assert!(seen >= 6);
}
