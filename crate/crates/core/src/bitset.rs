//! Fixed-width 64-bit sets used for vertex neighborhoods and color masks.

use std::fmt;

/// Largest vertex count (and color count) a collection may have.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `0..64` stored in a single machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet(pub u64);

impl BitSet {
    pub const EMPTY: BitSet = BitSet(0);

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n >= 64 {
            BitSet(u64::MAX)
        } else {
            BitSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        BitSet(1u64 << i)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn union(self, other: BitSet) -> BitSet {
        BitSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: BitSet) -> BitSet {
        BitSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: BitSet) -> BitSet {
        BitSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: BitSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`BitSet`].
pub struct Iter(u64);

impl Iterator for Iter {
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
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for BitSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(items: I) -> Self {
        let mut s = BitSet::EMPTY;
        for i in items {
            s.insert(i);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_iteration() {
        assert_eq!(BitSet::full(0), BitSet::EMPTY);
        assert_eq!(BitSet::full(64).len(), 64);
        assert_eq!(BitSet::full(5).to_vec(), vec![0, 1, 2, 3, 4]);
        let s = BitSet::from_iter([63, 2, 7]);
        assert_eq!(s.to_vec(), vec![2, 7, 63]);
        assert_eq!(s.first(), Some(2));
        assert!(s.contains(63) && !s.contains(3) && !s.contains(200));
    }

    #[test]
    fn set_algebra() {
        let a = BitSet::from_iter([1, 2, 3]);
        let b = BitSet::from_iter([3, 4]);
        assert_eq!(a.union(b).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(b).to_vec(), vec![3]);
        assert_eq!(a.difference(b).to_vec(), vec![1, 2]);
        assert!(BitSet::from_iter([2, 3]).is_subset(a));
    }
}
