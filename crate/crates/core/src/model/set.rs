use std::fmt;

/// Hard upper bound on the number of things a [`ThingSet`] can address.
pub const MAX_THINGS: usize = 64;

/// A subset of a finite universe, stored as a bit-vector over thing indices.
///
/// Equality and hashing are extensional: two sets are equal iff they contain
/// the same indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ThingSet(u64);

impl ThingSet {
    pub const EMPTY: ThingSet = ThingSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ThingSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_THINGS);
        if n == MAX_THINGS {
            ThingSet(u64::MAX)
        } else {
            ThingSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(t: usize) -> Self {
        debug_assert!(t < MAX_THINGS);
        ThingSet(1u64 << t)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(ThingSet::EMPTY, |s, t| s.with(t))
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, t: usize) -> bool {
        t < MAX_THINGS && self.0 & (1u64 << t) != 0
    }

    #[inline]
    #[must_use]
    pub fn with(self, t: usize) -> Self {
        ThingSet(self.0 | (1u64 << t))
    }

    #[inline]
    #[must_use]
    pub fn without(self, t: usize) -> Self {
        ThingSet(self.0 & !(1u64 << t))
    }

    #[inline]
    #[must_use]
    pub fn union(self, other: Self) -> Self {
        ThingSet(self.0 | other.0)
    }

    #[inline]
    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        ThingSet(self.0 & other.0)
    }

    #[inline]
    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        ThingSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Lowest index in the set.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// All subsets of this set, in increasing bit order (starting with the empty set).
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for ThingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for ThingSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<usize> for ThingSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ThingSet::from_indices(iter)
    }
}

/// Iterator over the members of a [`ThingSet`] in increasing index order.
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let t = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(t)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Subset enumeration of a fixed mask (Gosper-free "next submask" walk).
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ThingSet;

    fn next(&mut self) -> Option<ThingSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(ThingSet(cur))
    }
}

/// A canonical (sorted, duplicate-free) set of [`ThingSet`]s.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Family {
    sets: Vec<ThingSet>,
}

impl Family {
    pub fn new() -> Self {
        Family { sets: Vec::new() }
    }

    pub fn from_sets<I: IntoIterator<Item = ThingSet>>(sets: I) -> Self {
        let mut sets: Vec<ThingSet> = sets.into_iter().collect();
        sets.sort_unstable();
        sets.dedup();
        Family { sets }
    }

    /// Every subset of `{0, .., n-1}`.
    pub fn powerset(n: usize) -> Self {
        Family {
            sets: ThingSet::full(n).subsets().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: ThingSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn insert(&mut self, s: ThingSet) -> bool {
        match self.sets.binary_search(&s) {
            Ok(_) => false,
            Err(pos) => {
                self.sets.insert(pos, s);
                true
            }
        }
    }

    pub fn remove(&mut self, s: ThingSet) -> bool {
        match self.sets.binary_search(&s) {
            Ok(pos) => {
                self.sets.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = ThingSet> + '_ {
        self.sets.iter().copied()
    }

    pub fn as_slice(&self) -> &[ThingSet] {
        &self.sets
    }

    pub fn is_subfamily(&self, other: &Family) -> bool {
        self.sets.iter().all(|&s| other.contains(s))
    }

    #[must_use]
    pub fn intersection(&self, other: &Family) -> Family {
        Family {
            sets: self.sets.iter().copied().filter(|&s| other.contains(s)).collect(),
        }
    }

    #[must_use]
    pub fn union(&self, other: &Family) -> Family {
        Family::from_sets(self.iter().chain(other.iter()))
    }

    #[must_use]
    pub fn filter(&self, mut keep: impl FnMut(ThingSet) -> bool) -> Family {
        Family {
            sets: self.sets.iter().copied().filter(|&s| keep(s)).collect(),
        }
    }

    /// Union of all members.
    pub fn union_all(&self) -> ThingSet {
        self.iter().fold(ThingSet::EMPTY, ThingSet::union)
    }

    /// Inclusion-minimal members.
    pub fn minimal(&self) -> Family {
        self.filter(|s| !self.iter().any(|o| o != s && o.is_subset(s)))
    }

    /// All supersets (within `{0, .., n-1}`) of the members.
    pub fn up_closure(&self, n: usize) -> Family {
        let full = ThingSet::full(n);
        let mut out = Vec::new();
        for sup in full.subsets() {
            if self.iter().any(|s| s.is_subset(sup)) {
                out.push(sup);
            }
        }
        Family { sets: out }
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sets.iter()).finish()
    }
}

impl FromIterator<ThingSet> for Family {
    fn from_iter<I: IntoIterator<Item = ThingSet>>(iter: I) -> Self {
        Family::from_sets(iter)
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = ThingSet;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, ThingSet>>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter().copied()
    }
}

/// Dense membership table over all `2^n` subsets of a universe.
///
/// Used on hot paths where a [`Family`] is queried many times.
#[derive(Clone)]
pub(crate) struct SubsetTable {
    words: Vec<u64>,
}

impl SubsetTable {
    pub(crate) fn new(n: usize, family: &Family) -> Self {
        let size = 1usize << n;
        let mut words = vec![0u64; size.div_ceil(64)];
        for s in family {
            let i = s.bits() as usize;
            words[i / 64] |= 1 << (i % 64);
        }
        SubsetTable { words }
    }

    #[inline]
    pub(crate) fn contains(&self, s: ThingSet) -> bool {
        let i = s.bits() as usize;
        self.words[i / 64] & (1 << (i % 64)) != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_mask_are_exhaustive() {
        let m = ThingSet::from_indices([0, 2, 5]);
        let subs: Vec<_> = m.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(m)));
        assert_eq!(subs[0], ThingSet::EMPTY);
        assert_eq!(*subs.last().unwrap(), m);
    }

    #[test]
    fn family_is_order_independent() {
        let a = ThingSet::from_indices([0, 1]);
        let b = ThingSet::from_indices([2]);
        assert_eq!(Family::from_sets([a, b, a]), Family::from_sets([b, a]));
    }

    #[test]
    fn minimal_and_up_closure() {
        let f = Family::from_sets([
            ThingSet::from_indices([0, 1]),
            ThingSet::from_indices([0]),
            ThingSet::from_indices([1, 2]),
        ]);
        let min = f.minimal();
        assert_eq!(
            min,
            Family::from_sets([ThingSet::from_indices([0]), ThingSet::from_indices([1, 2])])
        );
        let up = min.up_closure(3);
        // supersets of {0}: 4; supersets of {1,2} not containing 0: 1
        assert_eq!(up.len(), 5);
    }

    #[test]
    fn full_set_bounds() {
        assert_eq!(ThingSet::full(0), ThingSet::EMPTY);
        assert_eq!(ThingSet::full(3).len(), 3);
        assert_eq!(ThingSet::full(64).len(), 64);
    }
}
