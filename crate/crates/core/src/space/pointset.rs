use std::cmp::Ordering;
use std::fmt;

/// Largest point count representable by [`PointSet`].
pub const MAX_POINTS: usize = 64;

/// A set of points stored as a bitmask; bit `i` is the point with label `i + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All points with index `< n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        PointSet(1u64 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(PointSet::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 >> index & 1 == 1
    }

    #[inline]
    pub fn with(self, index: usize) -> Self {
        PointSet(self.0 | 1u64 << index)
    }

    #[inline]
    pub fn without(self, index: usize) -> Self {
        PointSet(self.0 & !(1u64 << index))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    /// Smallest index in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Indices in increasing order.
    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<u32> {
        self.iter().map(|i| i as u32 + 1).collect()
    }

    /// Image of the set under `map` (index -> index).
    pub fn map(self, map: &[usize]) -> PointSet {
        self.iter().fold(PointSet::EMPTY, |s, i| s.with(map[i]))
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Indices {}

/// Lexicographic order on the sorted element lists, so `{1,2,3} < {1,2,4} < {1,3} < {2}`.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let above = !(low | (low - 1));
        let (holder_is_self, other_bits) = if self.0 & low != 0 { (true, other.0) } else { (false, self.0) };
        // The set holding `low` is smaller unless the other one ends before `low`.
        let holder_smaller = other_bits & above != 0;
        match (holder_is_self, holder_smaller) {
            (true, true) | (false, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> PointSet {
        PointSet::from_indices(labels.iter().map(|l| l - 1))
    }

    #[test]
    fn order_matches_sorted_label_lists() {
        let mut sets = [set(&[2]), set(&[1, 3]), set(&[1, 2, 4]), set(&[1, 2, 3]), set(&[1, 2]), set(&[3, 5, 6])];
        sets.sort();
        let labels: Vec<Vec<u32>> = sets.iter().map(|s| s.labels()).collect();
        let mut expected = labels.clone();
        expected.sort();
        assert_eq!(labels, expected);
    }

    #[test]
    fn iteration_and_counts() {
        let s = set(&[1, 4, 64]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 63]);
        assert_eq!(s.first(), Some(0));
        assert!(set(&[1, 4]).is_subset(s));
        assert_eq!(PointSet::full(64).len(), 64);
    }
}
