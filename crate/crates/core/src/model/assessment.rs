use crate::model::set::ThingSet;

/// Things ruled out (`a_not`) and things required (`a_des`) on grounds of rationality.
///
/// The two sets may overlap; whether coherence is possible at all is a
/// separate question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Assessment {
    pub a_not: ThingSet,
    pub a_des: ThingSet,
}

impl Assessment {
    pub const EMPTY: Assessment = Assessment {
        a_not: ThingSet::EMPTY,
        a_des: ThingSet::EMPTY,
    };

    pub fn new(a_not: ThingSet, a_des: ThingSet) -> Self {
        Assessment { a_not, a_des }
    }

    /// Every assessment over `n` things, as `(a_not, a_des)` pairs: `4^n` of them.
    pub fn all(n: usize) -> impl Iterator<Item = Assessment> {
        let full = ThingSet::full(n);
        full.subsets()
            .flat_map(move |a_not| full.subsets().map(move |a_des| Assessment { a_not, a_des }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_assessments_count() {
        assert_eq!(Assessment::all(2).count(), 16);
        assert_eq!(Assessment::all(0).count(), 1);
    }
}
