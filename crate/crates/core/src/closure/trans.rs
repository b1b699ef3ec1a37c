//! Transitive closure of preference pairs.

use std::collections::BTreeSet;

use crate::model::{ThingSet, Universe};

/// Pairs over `options` option indices reachable by chaining the given pairs.
pub fn transitive_pairs(options: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> BTreeSet<(usize, usize)> {
    // reach[a] is a bit-row over options (options <= 64 is guaranteed by the pair cap).
    let mut reach = vec![0u128; options];
    for (a, b) in pairs {
        reach[a] |= 1u128 << b;
    }
    // Warshall
    for k in 0..options {
        for i in 0..options {
            if reach[i] & (1u128 << k) != 0 {
                reach[i] |= reach[k];
            }
        }
    }
    let mut out = BTreeSet::new();
    for (i, row) in reach.iter().enumerate() {
        for j in 0..options {
            if row & (1u128 << j) != 0 {
                out.insert((i, j));
            }
        }
    }
    out
}

/// `trans(A)` traced onto the universe's pairs.
///
/// # Panics
/// If the universe does not carry preference pairs.
pub fn trans_closure(universe: &Universe, a: ThingSet) -> ThingSet {
    let (options, pairs) = universe.pairs().expect("preference-pair universe");
    let closed = transitive_pairs(options.len(), a.iter().map(|t| pairs[t]));
    pairs
        .iter()
        .enumerate()
        .filter(|(_, p)| closed.contains(p))
        .map(|(t, _)| t)
        .collect()
}

/// The case formula for the transitive closure of two pairs `a` and `b`.
pub fn trans_pair_options(a: (usize, usize), b: (usize, usize)) -> BTreeSet<(usize, usize)> {
    let (a1, a2) = a;
    let (b1, b2) = b;
    let mut out: BTreeSet<_> = [a, b].into();
    match (a2 == b1, a1 == b2) {
        (false, false) => {}
        (true, false) => {
            out.insert((a1, b2));
        }
        (false, true) => {
            out.insert((b1, a2));
        }
        (true, true) => {
            out.insert((a1, b2));
            out.insert((b1, a2));
        }
    }
    out
}

/// [`trans_pair_options`] for two things, traced onto the universe.
pub fn trans_pair(universe: &Universe, a: usize, b: usize) -> ThingSet {
    let (_, pairs) = universe.pairs().expect("preference-pair universe");
    let closed = trans_pair_options(pairs[a], pairs[b]);
    pairs
        .iter()
        .enumerate()
        .filter(|(_, p)| closed.contains(p))
        .map(|(t, _)| t)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("o{i}")).collect()
    }

    // Path-enumeration oracle: (x, y) is in trans(A) iff some simple walk of A-edges leads from x to y,
    // or x == y lies on a cycle.
    fn by_paths(n: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for s in 0..n {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = edges.iter().filter(|e| e.0 == s).map(|e| e.1).collect();
            while let Some(v) = stack.pop() {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                out.insert((s, v));
                stack.extend(edges.iter().filter(|e| e.0 == v).map(|e| e.1));
            }
        }
        out
    }

    #[test]
    fn chain_and_cycle() {
        let u = Universe::all_pairs(opts(3)).unwrap();
        let a = u.set(["(o1,o2)", "(o2,o3)"]).unwrap();
        assert_eq!(
            trans_closure(&u, a),
            u.set(["(o1,o2)", "(o2,o3)", "(o1,o3)"]).unwrap()
        );
        let c = u.set(["(o1,o2)", "(o2,o1)"]).unwrap();
        assert_eq!(
            trans_closure(&u, c),
            u.set(["(o1,o2)", "(o2,o1)", "(o1,o1)", "(o2,o2)"]).unwrap()
        );
        assert_eq!(trans_closure(&u, ThingSet::EMPTY), ThingSet::EMPTY);
    }

    #[test]
    fn agrees_with_path_oracle() {
        let u = Universe::all_pairs(opts(3)).unwrap();
        let (_, pairs) = u.pairs().unwrap();
        for a in u.full().subsets() {
            let edges: Vec<_> = a.iter().map(|t| pairs[t]).collect();
            assert_eq!(transitive_pairs(3, edges.iter().copied()), by_paths(3, &edges));
        }
    }

    #[test]
    fn case_formula() {
        let (o1, o2, o3, o4) = (0, 1, 2, 3);
        assert_eq!(trans_pair_options((o1, o2), (o3, o4)), [(o1, o2), (o3, o4)].into());
        assert_eq!(
            trans_pair_options((o1, o2), (o2, o3)),
            [(o1, o2), (o2, o3), (o1, o3)].into()
        );
        assert_eq!(
            trans_pair_options((o1, o2), (o2, o1)),
            [(o1, o2), (o2, o1), (o1, o1), (o2, o2)].into()
        );
    }

    #[test]
    fn case_formula_matches_closure_on_pairs() {
        let u = Universe::all_pairs(opts(4)).unwrap();
        for a in 0..u.len() {
            for b in 0..u.len() {
                let set = ThingSet::singleton(a).with(b);
                assert_eq!(trans_pair(&u, a, b), trans_closure(&u, set));
            }
        }
    }
}
