use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of a ground set `{0, .., n-1}` with `n <= 128`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const CAPACITY: usize = 128;

    pub const fn empty() -> Self {
        ElemSet(0)
    }

    /// `{0, .., n-1}`
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY);
        if n == Self::CAPACITY {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub const fn from_bits(bits: u128) -> Self {
        ElemSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(e: usize) -> Self {
        ElemSet(1u128 << e)
    }

    pub fn contains(self, e: usize) -> bool {
        e < Self::CAPACITY && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1u128 << e;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1u128 << e);
    }

    pub fn with(self, e: usize) -> Self {
        ElemSet(self.0 | 1u128 << e)
    }

    pub fn without(self, e: usize) -> Self {
        ElemSet(self.0 & !(1u128 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Order of the sorted element lists, compared lexicographically
    /// (a proper prefix sorts first).
    pub fn lex_cmp(self, other: Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let d = diff.trailing_zeros();
        let above = if d == 127 { 0 } else { u128::MAX << (d + 1) };
        if self.0 >> d & 1 == 1 {
            // self continues with d; other continues with something larger or stops
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::empty();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Every subset of `{0, .., n-1}`, in increasing bitmask order. `n` must be < 64.
pub fn all_subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    assert!(n < 64);
    (0u64..1u64 << n).map(|b| ElemSet::from_bits(b as u128))
}
