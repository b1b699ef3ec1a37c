use crate::model::set::{Family, ThingSet};

/// The domain `Q` that coherence axioms are relativized to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QDomain {
    /// Every subset of the universe.
    Full,
    /// Sets with at most this many things.
    CardBound(usize),
    /// An explicit list of sets.
    Explicit(Family),
}

impl QDomain {
    pub fn contains(&self, s: ThingSet) -> bool {
        match self {
            QDomain::Full => true,
            QDomain::CardBound(c) => s.len() <= *c,
            QDomain::Explicit(f) => f.contains(s),
        }
    }

    pub fn is_subset_closed(&self) -> bool {
        match self {
            QDomain::Full | QDomain::CardBound(_) => true,
            QDomain::Explicit(f) => f.iter().all(|b| b.subsets().all(|a| f.contains(a))),
        }
    }

    /// True when this domain contains every subset of an `n`-thing universe.
    pub fn is_full_for(&self, n: usize) -> bool {
        match self {
            QDomain::Full => true,
            QDomain::CardBound(c) => *c >= n,
            QDomain::Explicit(f) => f.len() == 1usize << n,
        }
    }

    /// The members of `Q` over an `n`-thing universe.
    pub fn members(&self, n: usize) -> Family {
        match self {
            QDomain::Explicit(f) => f.clone(),
            _ => Family::powerset(n).filter(|s| self.contains(s)),
        }
    }

    /// The canonical form: `Full` whenever the domain covers the whole powerset.
    pub fn normalized(&self, n: usize) -> QDomain {
        if self.is_full_for(n) {
            QDomain::Full
        } else {
            self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_closedness() {
        assert!(QDomain::Full.is_subset_closed());
        assert!(QDomain::CardBound(2).is_subset_closed());
        let x = ThingSet::singleton(0);
        let xy = ThingSet::from_indices([0, 1]);
        assert!(!QDomain::Explicit(Family::from_sets([xy, x])).is_subset_closed());
        let closed = Family::powerset(2);
        assert!(QDomain::Explicit(closed).is_subset_closed());
    }

    #[test]
    fn card_bound_beyond_size_is_full() {
        assert!(QDomain::CardBound(3).is_full_for(3));
        assert!(!QDomain::CardBound(2).is_full_for(3));
        assert_eq!(QDomain::CardBound(5).normalized(3), QDomain::Full);
        assert_eq!(QDomain::CardBound(2).members(3).len(), 7);
    }
}
