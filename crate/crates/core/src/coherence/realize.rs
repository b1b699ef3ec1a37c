//! Whether a set is the exact image of an admissible choice.
//!
//! Each index `i` of a production may choose any thing in `options[i]`. A
//! target `B` is an exact image iff every option set meets `B` and some
//! matching pins a distinct index to every `b ∈ B`.

use crate::model::ThingSet;

/// A realizing assignment (one chosen thing per index), if `target` is realizable.
pub fn realize(options: &[ThingSet], target: ThingSet) -> Option<Vec<usize>> {
    if options.iter().any(|&o| !o.meets(target)) {
        return None;
    }
    if target.len() > options.len() {
        return None;
    }
    let things: Vec<usize> = target.iter().collect();
    // owner[i] = the thing index i is pinned to
    let mut owner: Vec<Option<usize>> = vec![None; options.len()];
    for &b in &things {
        let mut seen = vec![false; options.len()];
        if !augment(b, options, &mut owner, &mut seen) {
            return None;
        }
    }
    Some(
        options
            .iter()
            .zip(&owner)
            .map(|(&o, pinned)| pinned.unwrap_or_else(|| o.intersection(target).first().expect("meets")))
            .collect(),
    )
}

pub fn is_realizable(options: &[ThingSet], target: ThingSet) -> bool {
    realize(options, target).is_some()
}

fn augment(b: usize, options: &[ThingSet], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for i in 0..options.len() {
        if seen[i] || !options[i].contains(b) {
            continue;
        }
        seen[i] = true;
        match owner[i] {
            None => {
                owner[i] = Some(b);
                return true;
            }
            Some(other) => {
                if augment(other, options, owner, seen) {
                    owner[i] = Some(b);
                    return true;
                }
            }
        }
    }
    false
}

/// Every realizable image, in ascending order.
pub fn realizable_images(options: &[ThingSet]) -> Vec<ThingSet> {
    let reach = options.iter().fold(ThingSet::EMPTY, |acc, &o| acc.union(o));
    reach.subsets().filter(|&b| is_realizable(options, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn set(ix: &[usize]) -> ThingSet {
        ThingSet::from_indices(ix.iter().copied())
    }

    // Oracle: try every choice function.
    fn brute_images(options: &[ThingSet]) -> BTreeSet<ThingSet> {
        let lists: Vec<Vec<usize>> = options.iter().map(|o| o.iter().collect()).collect();
        let mut out = BTreeSet::new();
        if lists.iter().any(Vec::is_empty) {
            return out;
        }
        let mut idx = vec![0usize; lists.len()];
        loop {
            out.insert(lists.iter().zip(&idx).map(|(l, &i)| l[i]).collect());
            let mut k = 0;
            loop {
                if k == lists.len() {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn no_indices_realize_only_the_empty_set() {
        assert_eq!(realize(&[], ThingSet::EMPTY), Some(vec![]));
        assert_eq!(realize(&[], set(&[0])), None);
    }

    #[test]
    fn hall_violation() {
        // Two indices cannot cover three things.
        let opts = [set(&[0, 1, 2]), set(&[0, 1, 2])];
        assert!(!is_realizable(&opts, set(&[0, 1, 2])));
        assert!(is_realizable(&opts, set(&[0, 2])));
        // Three indices, but two of the things have one shared supplier.
        let opts = [set(&[0]), set(&[0, 1]), set(&[0, 1, 2])];
        assert!(is_realizable(&opts, set(&[0, 1, 2])));
        let opts = [set(&[0, 1]), set(&[0, 1]), set(&[0, 1, 2])];
        assert!(!is_realizable(&opts, set(&[2])));
    }

    proptest! {
        #[test]
        fn matches_choice_enumeration(raw in prop::collection::vec(1u64..32, 0..5)) {
            let opts: Vec<ThingSet> = raw.into_iter().map(ThingSet::from_bits).collect();
            let brute = if opts.is_empty() {
                BTreeSet::from([ThingSet::EMPTY])
            } else {
                brute_images(&opts)
            };
            let fast: BTreeSet<ThingSet> = realizable_images(&opts).into_iter().collect();
            prop_assert_eq!(&fast, &brute);
            for b in fast {
                let choice = realize(&opts, b).unwrap();
                prop_assert!(choice.iter().zip(&opts).all(|(&c, o)| o.contains(c)));
                prop_assert_eq!(choice.into_iter().collect::<ThingSet>(), b);
            }
        }
    }
}
