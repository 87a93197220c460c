//! Isomorph-free generation of linear spaces by adding one point at a time.
//!
//! Deleting a point from a linear space on `n` points leaves a linear space on `n - 1`
//! points, so every class arises from a parent class by adding a new point together with a
//! set of pairwise disjoint parent lines (full or two-point) that the new point extends.
//! Children are kept only when the new point has the least local invariant among all points,
//! then deduplicated by certificate.

use std::collections::HashMap;

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalCertificate};
use crate::space::{LinearSpace, PointSet};

/// Which classes [`enumerate_linear_spaces`] emits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SpaceFilter {
    #[default]
    All,
    Superfigurations,
}

/// Invariant used to pick the deletable point: number of full lines, then total size.
fn local_invariant(lines: &[PointSet], p: usize) -> (usize, usize) {
    lines.iter().filter(|l| l.contains(p)).fold((0, 0), |(d, s), l| (d + 1, s + l.len()))
}

/// Every line of the parent through at least two points: full lines, then implicit pairs.
fn all_lines(s: &LinearSpace) -> Vec<PointSet> {
    let mut out: Vec<PointSet> = s.lines().to_vec();
    for a in 0..s.n() {
        for b in a + 1..s.n() {
            if s.line_through(a, b).is_none() {
                out.push(PointSet::from_indices([a, b]));
            }
        }
    }
    out
}

/// Calls `visit` for every set of pairwise disjoint lines (as indices into `lines`).
fn disjoint_selections(lines: &[PointSet], mut visit: impl FnMut(&[usize])) {
    fn rec(lines: &[PointSet], start: usize, used: PointSet, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        visit(chosen);
        for i in start..lines.len() {
            if lines[i].intersection(used).is_empty() {
                chosen.push(i);
                rec(lines, i + 1, used.union(lines[i]), chosen, visit);
                chosen.pop();
            }
        }
    }
    rec(lines, 0, PointSet::EMPTY, &mut Vec::new(), &mut visit);
}

/// All one-point extensions of `parent` in which the new point passes the deletion filter,
/// keyed by certificate.
fn extensions(parent: &LinearSpace) -> Vec<(CanonicalCertificate, LinearSpace)> {
    let m = parent.n();
    let candidates = all_lines(parent);
    let full = parent.lines().len();
    let mut out: Vec<(CanonicalCertificate, LinearSpace)> = Vec::new();
    let mut seen: HashMap<CanonicalCertificate, ()> = HashMap::new();
    disjoint_selections(&candidates, |chosen| {
        let mut lines: Vec<PointSet> = parent.lines().to_vec();
        for &i in chosen {
            if i < full {
                lines[i] = lines[i].with(m);
            } else {
                lines.push(candidates[i].with(m));
            }
        }
        let new_inv = local_invariant(&lines, m);
        if (0..m).any(|p| local_invariant(&lines, p) < new_inv) {
            return;
        }
        let child = LinearSpace::from_sorted_unchecked(m + 1, lines);
        let cert = canonical_form(&child).certificate;
        if seen.insert(cert.clone(), ()).is_none() {
            out.push((cert.clone(), cert.space()));
        }
    });
    out
}

/// One representative per isomorphism class of linear spaces on `n` points, sorted by
/// certificate. Each representative is the canonical form of its class.
pub fn enumerate_linear_spaces(n: usize, filter: SpaceFilter) -> Vec<LinearSpace> {
    enumerate_with_certificates(n, filter).into_iter().map(|(_, s)| s).collect()
}

/// Same as [`enumerate_linear_spaces`] with the certificates attached.
pub fn enumerate_with_certificates(n: usize, filter: SpaceFilter) -> Vec<(CanonicalCertificate, LinearSpace)> {
    if n == 0 {
        return Vec::new();
    }
    let single = LinearSpace::trivial(1).expect("one point");
    let mut level: Vec<(CanonicalCertificate, LinearSpace)> = vec![(canonical_form(&single).certificate, single)];
    for _ in 1..n {
        let children: Vec<Vec<(CanonicalCertificate, LinearSpace)>> =
            level.par_iter().map(|(_, parent)| extensions(parent)).collect();
        let mut classes: HashMap<CanonicalCertificate, LinearSpace> = HashMap::new();
        for batch in children {
            for (cert, space) in batch {
                classes.entry(cert).or_insert(space);
            }
        }
        level = classes.into_iter().collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
    }
    match filter {
        SpaceFilter::All => level,
        SpaceFilter::Superfigurations => level.into_iter().filter(|(_, s)| s.is_superfiguration()).collect(),
    }
}

/// Number of classes per point count, `1..=n`.
pub fn class_counts(n: usize) -> Vec<usize> {
    (1..=n).map(|k| enumerate_linear_spaces(k, SpaceFilter::All).len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_linear_spaces(n, SpaceFilter::All).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 10, 24]);
    }

    #[test]
    fn three_points() {
        let spaces = enumerate_linear_spaces(3, SpaceFilter::All);
        let lines: Vec<usize> = spaces.iter().map(|s| s.lines().len()).collect();
        assert_eq!(spaces.len(), 2);
        assert!(lines.contains(&0) && lines.contains(&1));
    }

    #[test]
    fn fano_is_the_only_seven_point_superfiguration() {
        let sf = enumerate_linear_spaces(7, SpaceFilter::Superfigurations);
        assert_eq!(sf.len(), 1);
        assert!(sf[0].is_configuration());
    }
}
