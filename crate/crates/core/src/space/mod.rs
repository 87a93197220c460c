//! Linear spaces as data: collinearity families, the closure operator,
//! the degeneration order, quotients and induced subspaces.
//!
//! Points carry 1-based labels at the API boundary (`1..=n`) and are stored
//! as bit indices `0..n` internally.

mod closure;
mod pointset;
mod quotient;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use closure::{closure, validate_linear_space, Violation};
pub use pointset::{PointSet, MAX_POINTS};
pub use quotient::{diagonal_quotients, quotient, quotient_family, CoincidencePattern, QuotientMap};

fn check_point_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::NoPoints)
    } else if n > MAX_POINTS {
        Err(Error::TooManyPoints { n, max: MAX_POINTS })
    } else {
        Ok(())
    }
}

fn labels_to_set(labels: &[u32], n: usize) -> Result<PointSet> {
    labels.iter().try_fold(PointSet::EMPTY, |s, &p| {
        if p == 0 || p as usize > n {
            Err(Error::PointOutOfRange { point: p, n })
        } else {
            Ok(s.with(p as usize - 1))
        }
    })
}

/// An arbitrary set of subsets of `{1..n}`: the input of [`closure`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CollinearityFamily {
    n: usize,
    members: BTreeSet<PointSet>,
}

impl CollinearityFamily {
    pub fn new<I: IntoIterator<Item = PointSet>>(n: usize, members: I) -> Result<Self> {
        check_point_count(n)?;
        let universe = PointSet::full(n);
        let members: BTreeSet<PointSet> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !m.is_subset(universe)) {
            let point = bad.difference(universe).first().unwrap() as u32 + 1;
            return Err(Error::PointOutOfRange { point, n });
        }
        Ok(CollinearityFamily { n, members })
    }

    pub fn from_labels<S: AsRef<[u32]>>(n: usize, members: &[S]) -> Result<Self> {
        check_point_count(n)?;
        let sets = members.iter().map(|m| labels_to_set(m.as_ref(), n)).collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, set: PointSet) -> bool {
        self.members.contains(&set)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A linear space on `{1..n}` given by its full lines (lines with at least three points).
///
/// Two-point lines are implicit. Lines are kept sorted, so equal spaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSpace {
    n: usize,
    lines: Vec<PointSet>,
}

impl LinearSpace {
    /// Builds a linear space, checking that every line has at least three points inside
    /// `{1..n}` and that two lines share at most one point. A line contained in another listed
    /// line is redundant and dropped.
    pub fn new(n: usize, lines: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        let family = CollinearityFamily::new(n, lines)?;
        if let Some(short) = family.members().find(|l| l.len() < 3) {
            return Err(Error::NotALinearSpace(Violation::ShortLine { line: short.labels() }));
        }
        validate_linear_space(&family).map_err(Error::NotALinearSpace)?;
        let mut lines = closure::maximal_long_members(&family);
        lines.sort_unstable();
        Ok(LinearSpace { n, lines })
    }

    /// Same as [`LinearSpace::new`] with 1-based labels.
    pub fn from_labels<S: AsRef<[u32]>>(n: usize, lines: &[S]) -> Result<Self> {
        check_point_count(n)?;
        let sets = lines.iter().map(|l| labels_to_set(l.as_ref(), n)).collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    /// Trusted constructor: `lines` must already be a valid full-line set.
    pub(crate) fn from_sorted_unchecked(n: usize, mut lines: Vec<PointSet>) -> Self {
        lines.sort_unstable();
        debug_assert!(lines.windows(2).all(|w| w[0] != w[1]));
        debug_assert!(lines.iter().all(|l| l.len() >= 3));
        LinearSpace { n, lines }
    }

    /// `n` points and no full lines.
    pub fn trivial(n: usize) -> Result<Self> {
        check_point_count(n)?;
        Ok(LinearSpace { n, lines: Vec::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lines(&self) -> &[PointSet] {
        &self.lines
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// Full lines as sorted 1-based label lists.
    pub fn line_labels(&self) -> Vec<Vec<u32>> {
        self.lines.iter().map(|l| l.labels()).collect()
    }

    /// The collinearity family of full lines.
    pub fn as_family(&self) -> CollinearityFamily {
        CollinearityFamily { n: self.n, members: self.lines.iter().copied().collect() }
    }

    /// Full lines through the point with index `p`.
    pub fn lines_through(&self, p: usize) -> impl Iterator<Item = PointSet> + '_ {
        self.lines.iter().copied().filter(move |l| l.contains(p))
    }

    /// Number of full lines through the point with index `p`.
    pub fn degree(&self, p: usize) -> usize {
        self.lines_through(p).count()
    }

    /// The full line containing both `a` and `b`, if any.
    pub fn line_through(&self, a: usize, b: usize) -> Option<PointSet> {
        self.lines.iter().copied().find(|l| l.contains(a) && l.contains(b))
    }

    /// Collinearity on bit-index sets: at most two points, or contained in a full line.
    pub fn is_collinear_set(&self, set: PointSet) -> bool {
        set.len() <= 2 || self.lines.iter().any(|l| set.is_subset(*l))
    }

    /// Collinearity on 1-based labels.
    pub fn is_collinear(&self, labels: &[u32]) -> Result<bool> {
        Ok(self.is_collinear_set(labels_to_set(labels, self.n)?))
    }

    /// `self <= other`: every collinear subset of `self` is collinear in `other`.
    pub fn leq(&self, other: &LinearSpace) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(self.lines.iter().all(|l| other.lines.iter().any(|m| l.is_subset(*m))))
    }

    /// Applies a permutation given as `perm[old_index] = new_index`.
    pub fn relabel(&self, perm: &[usize]) -> LinearSpace {
        debug_assert_eq!(perm.len(), self.n);
        let lines = self.lines.iter().map(|l| l.map(perm)).collect();
        LinearSpace::from_sorted_unchecked(self.n, lines)
    }

    /// Restricts to the points in `keep` and relabels them `1..=|keep|` in increasing order.
    /// Line traces with fewer than three points become implicit two-point lines.
    pub fn induced_subspace(&self, keep: PointSet) -> Result<LinearSpace> {
        let keep = keep.intersection(self.points());
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut map = vec![usize::MAX; self.n];
        for (new, old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let lines =
            self.lines.iter().map(|l| l.intersection(keep)).filter(|l| l.len() >= 3).map(|l| l.map(&map)).collect();
        Ok(LinearSpace::from_sorted_unchecked(keep.len(), lines))
    }

    /// [`LinearSpace::induced_subspace`] on 1-based labels.
    pub fn induced_on_labels(&self, keep: &[u32]) -> Result<LinearSpace> {
        self.induced_subspace(labels_to_set(keep, self.n)?)
    }

    /// Every point lies on at least three full lines.
    pub fn is_superfiguration(&self) -> bool {
        (0..self.n).all(|p| self.degree(p) >= 3)
    }

    /// Every point on exactly three full lines and every full line of size three.
    pub fn is_configuration(&self) -> bool {
        self.lines.iter().all(|l| l.len() == 3) && (0..self.n).all(|p| self.degree(p) == 3)
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson { n: self.n, lines: self.line_labels() }
    }
}

impl fmt::Debug for LinearSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.n, self.line_labels())
    }
}

impl fmt::Display for LinearSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.to_json()).map_err(|_| fmt::Error)?)
    }
}

/// Interchange format: `{"n": 7, "lines": [[1,2,3], ...]}` with 1-based points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub n: usize,
    pub lines: Vec<Vec<u32>>,
}

impl TryFrom<SpaceJson> for LinearSpace {
    type Error = Error;

    fn try_from(json: SpaceJson) -> Result<Self> {
        LinearSpace::from_labels(json.n, &json.lines)
    }
}

impl From<&LinearSpace> for SpaceJson {
    fn from(s: &LinearSpace) -> Self {
        s.to_json()
    }
}

impl Serialize for LinearSpace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearSpace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = SpaceJson::deserialize(deserializer)?;
        LinearSpace::try_from(json).map_err(serde::de::Error::custom)
    }
}

impl LinearSpace {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: SpaceJson = serde_json::from_str(text)?;
        json.try_into()
    }
}
