use crate::model::set::{Family, ThingSet};

/// All selections from `family`: the images `{t_A : A in family}` of every
/// choice map with `t_A ∈ A`.
///
/// Built member by member; partial images are deduplicated after each step,
/// which keeps the intermediate families small when members overlap.
pub fn selections(family: &Family) -> Family {
    let mut acc = vec![ThingSet::EMPTY];
    for a in family {
        if a.is_empty() {
            return Family::new();
        }
        let mut next = Vec::with_capacity(acc.len() * a.len());
        for &s in &acc {
            next.extend(a.iter().map(|t| s.with(t)));
        }
        next.sort_unstable();
        next.dedup();
        acc = next;
    }
    Family::from_sets(acc)
}
