//! Natural extension: the least coherent model containing an assessment.

use crate::closure::ClosureOperator;
use crate::coherence::{realize::realizable_images, Production};
use crate::error::Result;
use crate::model::{Assessment, Family, ThingSet};
use crate::verdict::{Budget, Strength};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Productions over every nonempty subfamily.
    FullRules,
    /// Productions over pairs of members only.
    BinaryRules,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::FullRules => "full_rules",
            Mode::BinaryRules => "binary_rules",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        [Mode::FullRules, Mode::BinaryRules].into_iter().find(|m| m.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Things(ThingSet),
    Sets(Family),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A forbidden thing forced into the set of desirable things.
    ForbiddenThing(usize),
    /// The saturated family contains `∅`; `via` is a member inside `A_not`
    /// whose removal step produced it, or `None` when `∅` was in the base.
    EmptySet { saturated: Family, via: Option<ThingSet> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Extended(Model),
    Incoherent(Witness),
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionResult {
    pub outcome: Outcome,
    pub mode: Mode,
}

impl ExtensionResult {
    pub fn things(&self) -> Option<ThingSet> {
        match &self.outcome {
            Outcome::Extended(Model::Things(d)) => Some(*d),
            _ => None,
        }
    }

    pub fn sets(&self) -> Option<&Family> {
        match &self.outcome {
            Outcome::Extended(Model::Sets(k)) => Some(k),
            _ => None,
        }
    }

    pub fn is_incoherent(&self) -> bool {
        matches!(self.outcome, Outcome::Incoherent(_))
    }
}

/// `cl(base ∪ A_des)`, unless it meets `A_not`.
pub fn sdt_natural_extension(base: ThingSet, assessment: &Assessment, cl: &ClosureOperator) -> Result<ExtensionResult> {
    cl.require_laws()?;
    let d = cl.apply(base.union(assessment.a_des));
    let outcome = match d.intersection(assessment.a_not).first() {
        Some(t) => Outcome::Incoherent(Witness::ForbiddenThing(t)),
        None => Outcome::Extended(Model::Things(d)),
    };
    Ok(ExtensionResult {
        outcome,
        mode: Mode::FullRules,
    })
}

/// Least fixpoint of K4 (once) and rounds of K3, the production rule of
/// `mode`, and K2. Productions only draw on minimal members: everything
/// produced from larger members is a superset of something produced from
/// minimal ones, and K2 restores it.
pub fn sds_natural_extension(
    base: &Family,
    assessment: &Assessment,
    cl: &ClosureOperator,
    mode: Mode,
    budget: Budget,
) -> Result<ExtensionResult> {
    cl.require_laws()?;
    let n = cl.size();
    let mut k = base.union(&assessment.a_des.iter().map(ThingSet::singleton).collect());
    let mut spent = 0u64;
    loop {
        let before = k.clone();
        let reduced: Family = k.iter().map(|a| a.difference(assessment.a_not)).collect();
        k = k.union(&reduced);
        if k.contains(ThingSet::EMPTY) {
            break;
        }

        let gens = k.minimal();
        let g = gens.as_slice();
        let mut produced = Vec::new();
        let mut emit = |strength: Strength, sources: Vec<ThingSet>| {
            let p = Production::new(strength, sources, cl);
            produced.extend(realizable_images(&p.options));
        };
        match mode {
            Mode::FullRules => {
                let m = g.len();
                let total = if m >= 63 { u64::MAX } else { (1u64 << m) - 1 };
                if total > budget.limit.saturating_sub(spent) {
                    return Ok(ExtensionResult {
                        outcome: Outcome::Inconclusive(format!(
                            "a round needs 2^{m}-1 subfamilies; {} of {} budget left",
                            budget.limit.saturating_sub(spent),
                            budget.limit
                        )),
                        mode,
                    });
                }
                spent += total;
                for mask in 1..=total {
                    emit(
                        Strength::Full,
                        (0..m).filter(|i| mask >> i & 1 == 1).map(|i| g[i]).collect(),
                    );
                }
            }
            Mode::BinaryRules => {
                for i in 0..g.len() {
                    for j in i..g.len() {
                        emit(Strength::Two, vec![g[i], g[j]]);
                    }
                }
            }
        }
        k = k.union(&Family::from_sets(produced)).minimal().up_closure(n);
        if k == before || k.contains(ThingSet::EMPTY) {
            break;
        }
    }

    let outcome = if k.contains(ThingSet::EMPTY) {
        let via = k.iter().find(|&a| !a.is_empty() && a.is_subset(assessment.a_not));
        Outcome::Incoherent(Witness::EmptySet { saturated: k, via })
    } else {
        Outcome::Extended(Model::Sets(k))
    };
    Ok(ExtensionResult { outcome, mode })
}

/// True iff the witness still shows that no coherent extension exists.
pub fn replay_witness(assessment: &Assessment, cl: &ClosureOperator, base: &Model, w: &Witness) -> bool {
    match (base, w) {
        (Model::Things(b), Witness::ForbiddenThing(t)) => {
            cl.apply(b.union(assessment.a_des)).contains(*t) && assessment.a_not.contains(*t)
        }
        (Model::Sets(b), Witness::EmptySet { saturated, via }) => match via {
            Some(a) => saturated.contains(*a) && a.is_subset(assessment.a_not),
            None => b.contains(ThingSet::EMPTY),
        },
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ClosureSpec;
    use crate::model::Universe;

    #[test]
    fn empty_base_sdt_is_closed_assessment() {
        let u = Universe::all_pairs(vec!["o1".into(), "o2".into(), "o3".into()]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Transitive).unwrap();
        let base = u.set(["(o1,o2)", "(o2,o3)"]).unwrap();
        let r = sdt_natural_extension(base, &Assessment::EMPTY, &cl).unwrap();
        assert_eq!(r.things(), Some(u.set(["(o1,o2)", "(o2,o3)", "(o1,o3)"]).unwrap()));
        let r = sdt_natural_extension(ThingSet::EMPTY, &Assessment::EMPTY, &cl).unwrap();
        assert_eq!(r.things(), Some(ThingSet::EMPTY));
    }

    #[test]
    fn nothing_from_nothing() {
        let u = Universe::opaque(["x", "y"]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Identity).unwrap();
        let r = sds_natural_extension(&Family::new(), &Assessment::EMPTY, &cl, Mode::FullRules, Budget::default()).unwrap();
        assert_eq!(r.sets(), Some(&Family::new()));
    }

    #[test]
    fn forbidden_singleton() {
        let u = Universe::opaque(["x", "y"]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Identity).unwrap();
        let x = u.set(["x"]).unwrap();
        let a = Assessment::new(x, ThingSet::EMPTY);
        let base = Family::from_sets([x]);
        let r = sds_natural_extension(&base, &a, &cl, Mode::FullRules, Budget::default()).unwrap();
        match &r.outcome {
            Outcome::Incoherent(w) => assert!(replay_witness(&a, &cl, &Model::Sets(base.clone()), w)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extension_is_idempotent() {
        let u = Universe::all_pairs(vec!["a".into(), "b".into()]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Transitive).unwrap();
        let base = u.family([["(a,b)", "(b,a)"]]).unwrap();
        for mode in [Mode::FullRules, Mode::BinaryRules] {
            let once = sds_natural_extension(&base, &Assessment::EMPTY, &cl, mode, Budget::default()).unwrap();
            let k = once.sets().unwrap().clone();
            let twice = sds_natural_extension(&k, &Assessment::EMPTY, &cl, mode, Budget::default()).unwrap();
            assert_eq!(twice.sets(), Some(&k));
        }
    }

    mod props {
        use super::*;
        use crate::coherence::{check_sds, check_sdt, Variant};
        use proptest::prelude::*;

        // Images closed under following `edges`, so the lift is a closure.
        fn lift(edges: &[u64]) -> ClosureOperator {
            let u = Universe::opaque(["a", "b", "c"]).unwrap();
            let images = (0..3)
                .map(|t| {
                    let mut seen = ThingSet::from_bits(edges[t]);
                    for _ in 0..3 {
                        seen = seen.iter().fold(seen, |acc, x| acc.union(ThingSet::from_bits(edges[x])));
                    }
                    seen
                })
                .collect();
            ClosureOperator::new(&u, ClosureSpec::UnitaryLift(images)).unwrap()
        }

        fn family(bits: &[u64]) -> Family {
            bits.iter().map(|&b| ThingSet::from_bits(b)).collect()
        }

        proptest! {
            #[test]
            fn sdt_extension_is_coherent_and_least(
                images in prop::collection::vec(0u64..8, 3),
                base in 0u64..8, not in 0u64..8, des in 0u64..8,
            ) {
                let cl = lift(&images);
                let a = Assessment::new(ThingSet::from_bits(not), ThingSet::from_bits(des));
                let base = ThingSet::from_bits(base);
                let r = sdt_natural_extension(base, &a, &cl).unwrap();
                let supersets: Vec<ThingSet> = ThingSet::full(3)
                    .subsets()
                    .filter(|&d| base.is_subset(d) && check_sdt(d, &a, &cl).unwrap().is_verified())
                    .collect();
                match r.things() {
                    Some(d) => {
                        prop_assert!(supersets.contains(&d));
                        prop_assert!(supersets.iter().all(|&e| d.is_subset(e)));
                    }
                    None => prop_assert!(supersets.is_empty()),
                }
            }

            #[test]
            fn coherent_families_are_closed_under_intersection(
                images in prop::collection::vec(0u64..8, 3),
                first in prop::collection::vec(1u64..8, 0..3),
                second in prop::collection::vec(1u64..8, 0..3),
                not in 0u64..8,
            ) {
                let cl = lift(&images);
                let a = Assessment::new(ThingSet::from_bits(not), ThingSet::EMPTY);
                let run = |b: &[u64]| sds_natural_extension(&family(b), &a, &cl, Mode::FullRules, Budget::unlimited()).unwrap();
                let (r1, r2) = (run(&first), run(&second));
                if let (Some(k1), Some(k2)) = (r1.sets(), r2.sets()) {
                    let both = k1.intersection(k2);
                    prop_assert!(check_sds(&both, &a, &cl, &Variant::full(), Budget::unlimited()).unwrap().is_verified());
                }
            }

            #[test]
            fn sds_extension_is_coherent_monotone_and_idempotent(
                images in prop::collection::vec(0u64..8, 3),
                small in prop::collection::vec(1u64..8, 0..3),
                extra in prop::collection::vec(1u64..8, 0..2),
                not in 0u64..8,
            ) {
                let cl = lift(&images);
                let a = Assessment::new(ThingSet::from_bits(not), ThingSet::EMPTY);
                let small = family(&small);
                let large = small.union(&family(&extra));
                let run = |b: &Family| sds_natural_extension(b, &a, &cl, Mode::FullRules, Budget::unlimited()).unwrap();
                let (rs, rl) = (run(&small), run(&large));
                if let Some(k) = rs.sets() {
                    prop_assert!(small.is_subfamily(k));
                    prop_assert!(check_sds(k, &a, &cl, &Variant::full(), Budget::unlimited()).unwrap().is_verified());
                    let again = run(k);
                    prop_assert_eq!(again.sets(), Some(k));
                    if let Some(kl) = rl.sets() {
                        prop_assert!(k.is_subfamily(kl));
                    }
                } else {
                    prop_assert!(rl.is_incoherent());
                }
            }
        }
    }
}
