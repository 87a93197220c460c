use std::collections::BTreeSet;

use super::{closure, CollinearityFamily, LinearSpace, PointSet};
use crate::error::{Error, Result};

/// A surjection `{1..source_n} -> {1..target_n}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    source_n: usize,
    target_n: usize,
    assignment: Vec<usize>,
}

impl QuotientMap {
    /// `labels[i]` is the 1-based image of point `i + 1`.
    pub fn from_labels(target_n: usize, labels: &[u32]) -> Result<Self> {
        let assignment: Vec<usize> = labels
            .iter()
            .map(|&l| {
                if l == 0 || l as usize > target_n {
                    Err(Error::InvalidQuotient(format!("image {l} outside 1..={target_n}")))
                } else {
                    Ok(l as usize - 1)
                }
            })
            .collect::<Result<_>>()?;
        Self::new(target_n, assignment)
    }

    /// 0-based assignment.
    pub fn new(target_n: usize, assignment: Vec<usize>) -> Result<Self> {
        if assignment.is_empty() || target_n == 0 {
            return Err(Error::InvalidQuotient("empty map".into()));
        }
        let mut hit = vec![false; target_n];
        for &a in &assignment {
            if a >= target_n {
                return Err(Error::InvalidQuotient(format!("image {} outside 1..={target_n}", a + 1)));
            }
            hit[a] = true;
        }
        if let Some(missed) = hit.iter().position(|h| !h) {
            return Err(Error::InvalidQuotient(format!("point {} has no preimage", missed + 1)));
        }
        Ok(QuotientMap { source_n: assignment.len(), target_n, assignment })
    }

    pub fn identity(n: usize) -> Self {
        QuotientMap { source_n: n, target_n: n, assignment: (0..n).collect() }
    }

    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn target_n(&self) -> usize {
        self.target_n
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &QuotientMap) -> Result<QuotientMap> {
        if other.source_n != self.target_n {
            return Err(Error::SizeMismatch(self.target_n, other.source_n));
        }
        let assignment = self.assignment.iter().map(|&a| other.assignment[a]).collect();
        QuotientMap::new(other.target_n, assignment)
    }

    pub fn is_bijective(&self) -> bool {
        self.source_n == self.target_n
    }
}

/// A set of coincidences `p_i = p_j`: a point of the big diagonal as combinatorial data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoincidencePattern {
    pairs: BTreeSet<(usize, usize)>,
}

impl CoincidencePattern {
    /// Pairs of distinct 1-based labels.
    pub fn from_labels(pairs: &[[u32; 2]]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &[a, b] in pairs {
            if a == b || a == 0 || b == 0 {
                return Err(Error::InvalidQuotient(format!("bad coincidence {{{a}, {b}}}")));
            }
            let (a, b) = (a.min(b) as usize - 1, a.max(b) as usize - 1);
            set.insert((a, b));
        }
        Ok(CoincidencePattern { pairs: set })
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    /// Map identifying every coincident class; classes are numbered by their smallest point.
    pub fn quotient_map(&self, n: usize) -> Result<QuotientMap> {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for &(a, b) in &self.pairs {
            if b >= n {
                return Err(Error::PointOutOfRange { point: b as u32 + 1, n });
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
        let mut class_of_root = vec![usize::MAX; n];
        let mut next = 0;
        let mut assignment = Vec::with_capacity(n);
        for p in 0..n {
            let r = find(&mut parent, p);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = next;
                next += 1;
            }
            assignment.push(class_of_root[r]);
        }
        QuotientMap::new(next, assignment)
    }
}

fn push_forward(members: impl Iterator<Item = PointSet>, q: &QuotientMap) -> Vec<PointSet> {
    members.map(|m| m.map(&q.assignment)).collect()
}

/// Quotient of an arbitrary family: push every member through `q` and close.
pub fn quotient_family(family: &CollinearityFamily, q: &QuotientMap) -> Result<LinearSpace> {
    if q.source_n != family.n() {
        return Err(Error::SizeMismatch(family.n(), q.source_n));
    }
    let image = CollinearityFamily::new(q.target_n, push_forward(family.members(), q))?;
    Ok(closure(&image))
}

/// The quotient space of `s` under `q`.
pub fn quotient(s: &LinearSpace, q: &QuotientMap) -> Result<LinearSpace> {
    quotient_family(&s.as_family(), q)
}

/// For every pair `{i, j}`, the linear space governing the diagonal `p_i = p_j`.
pub fn diagonal_quotients(family: &CollinearityFamily) -> Vec<((u32, u32), LinearSpace)> {
    let n = family.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let pattern = CoincidencePattern { pairs: [(i, j)].into_iter().collect() };
            let q = pattern.quotient_map(n).expect("pair inside range");
            let space = quotient_family(family, &q).expect("sizes agree");
            out.push(((i as u32 + 1, j as u32 + 1), space));
        }
    }
    out
}
