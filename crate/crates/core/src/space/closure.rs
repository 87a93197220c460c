use std::fmt;

use super::{CollinearityFamily, LinearSpace, PointSet};

/// First violated linear-space axiom found by [`validate_linear_space`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Axiom 2: the pair lies on two different lines.
    SharedPair { pair: [u32; 2], first: Vec<u32>, second: Vec<u32> },
    /// An explicit full line with fewer than three points.
    ShortLine { line: Vec<u32> },
}

impl Violation {
    /// Number of the violated axiom in the usual numbering
    /// (1: lines inside the point set, 2: two points on exactly one line, 3: lines have two points).
    pub fn axiom(&self) -> u8 {
        match self {
            Violation::SharedPair { .. } => 2,
            Violation::ShortLine { .. } => 3,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SharedPair { pair, first, second } => {
                write!(f, "points {{{}, {}}} lie on both {:?} and {:?}", pair[0], pair[1], first, second)
            }
            Violation::ShortLine { line } => write!(f, "full line {line:?} has fewer than 3 points"),
        }
    }
}

/// Maximal members of size at least three.
pub(super) fn maximal_long_members(family: &CollinearityFamily) -> Vec<PointSet> {
    let long: Vec<PointSet> = family.members().filter(|m| m.len() >= 3).collect();
    long.iter().copied().filter(|m| !long.iter().any(|o| o != m && m.is_subset(*o))).collect()
}

/// Checks whether the family, closed downward and with every pair added, is a linear space.
///
/// Downward closure and the pair rule hold by construction, so the only way to fail is two
/// maximal members sharing at least two points.
pub fn validate_linear_space(family: &CollinearityFamily) -> Result<(), Violation> {
    let lines = maximal_long_members(family);
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            let common = a.intersection(*b);
            if common.len() >= 2 {
                let mut it = common.iter();
                let pair = [it.next().unwrap() as u32 + 1, it.next().unwrap() as u32 + 1];
                return Err(Violation::SharedPair { pair, first: a.labels(), second: b.labels() });
            }
        }
    }
    Ok(())
}

/// The smallest linear space in which every member of `family` is collinear.
///
/// Only maximal members of size at least three are tracked; any two that share two or more
/// points are merged until no such pair remains.
pub fn closure(family: &CollinearityFamily) -> LinearSpace {
    let mut members = maximal_long_members(family);
    'outer: loop {
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if members[i].intersection(members[j]).len() >= 2 {
                    let merged = members[i].union(members[j]);
                    members.swap_remove(j);
                    members[i] = merged;
                    members.retain(|m| *m == merged || !m.is_subset(merged));
                    continue 'outer;
                }
            }
        }
        break;
    }
    LinearSpace::from_sorted_unchecked(family.n(), members)
}
