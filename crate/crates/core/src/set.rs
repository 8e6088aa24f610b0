//! Bitset over element indices.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub};

/// Largest number of elements a structure may carry. Sets and relation rows
/// are single machine words.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `{0, …, n−1}` stored as a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    /// `{0, …, n−1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ElementSet(1u64 << i)
    }

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Least member by index.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Greatest member by index.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing index order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

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

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for ElementSet {
    fn bitand_assign(&mut self, rhs: ElementSet) {
        self.0 &= rhs.0;
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for ElementSet {
    fn bitor_assign(&mut self, rhs: ElementSet) {
        self.0 |= rhs.0;
    }
}

/// Set difference.
impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_is_ascending() {
        let s: ElementSet = [5, 0, 63, 2].into_iter().collect();
        assert_eq!(s.to_vec(), vec![0, 2, 5, 63]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.last(), Some(63));
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn full_and_difference() {
        assert_eq!(ElementSet::full(3).to_vec(), vec![0, 1, 2]);
        assert_eq!(ElementSet::full(64).len(), 64);
        let d = ElementSet::full(4) - ElementSet::singleton(1);
        assert_eq!(d.to_vec(), vec![0, 2, 3]);
        assert!(d.is_subset(ElementSet::full(4)));
        assert!(!ElementSet::full(4).is_subset(d));
        assert_eq!(ElementSet::EMPTY.first(), None);
    }
}
