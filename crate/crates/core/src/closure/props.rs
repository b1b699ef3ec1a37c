use super::ClosureOperator;
use crate::error::Result;
use crate::model::ThingSet;

pub const FINITARY_NOTE: &str = "trivially finite";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyWitness {
    /// `cl(set)` differs from the union of the closures of its singletons.
    NotUnitary { set: ThingSet },
    /// `target ∈ cl(base ∪ {added})` but no `t_A ∈ cl(base)` has
    /// `target ∈ cl({t_A, added})`.
    NotIncremental {
        base: ThingSet,
        added: usize,
        target: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe {
    Yes,
    /// Holds for a reason other than exhaustive search.
    YesBecause(&'static str),
    No(PropertyWitness),
    Unchecked,
}

impl Probe {
    pub fn holds(&self) -> bool {
        matches!(self, Probe::Yes | Probe::YesBecause(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Probe::Yes | Probe::YesBecause(_) => "yes",
            Probe::No(_) => "no",
            Probe::Unchecked => "unchecked",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Properties {
    pub unitary: Probe,
    pub finitary: Probe,
    pub incremental: Probe,
}

impl Properties {
    pub const UNCHECKED: Properties = Properties {
        unitary: Probe::Unchecked,
        finitary: Probe::Unchecked,
        incremental: Probe::Unchecked,
    };
}

/// Decides the three structural properties; errors unless the laws are verified.
pub fn probe_properties(cl: &ClosureOperator) -> Result<Properties> {
    cl.properties().cloned()
}

pub(super) fn probe(cl: &ClosureOperator) -> Properties {
    Properties {
        unitary: unitary(cl),
        finitary: Probe::YesBecause(FINITARY_NOTE),
        incremental: incremental(cl),
    }
}

fn unitary(cl: &ClosureOperator) -> Probe {
    let n = cl.size();
    let singles: Vec<ThingSet> = (0..n).map(|t| cl.apply(ThingSet::singleton(t))).collect();
    for a in ThingSet::full(n).subsets() {
        let joined = a.iter().fold(ThingSet::EMPTY, |acc, t| acc.union(singles[t]));
        if cl.apply(a) != joined {
            return Probe::No(PropertyWitness::NotUnitary { set: a });
        }
    }
    Probe::Yes
}

/// Quantifies over nonempty `A` only: for `A = ∅` there is no `t_A` at all.
/// Adding some `a ∈ A` is skipped since `t_A = t` always works then.
fn incremental(cl: &ClosureOperator) -> Probe {
    let n = cl.size();
    let pair: Vec<Vec<ThingSet>> = (0..n)
        .map(|x| (0..n).map(|y| cl.apply(ThingSet::singleton(x).with(y))).collect())
        .collect();
    for base in ThingSet::full(n).subsets().skip(1) {
        let cb = cl.apply(base);
        for added in ThingSet::full(n).difference(base) {
            // Everything reachable by pairing some t_A with `added`.
            let reach = cb.iter().fold(ThingSet::EMPTY, |acc, ta| acc.union(pair[ta][added]));
            let needed = cl.apply(base.with(added));
            if let Some(target) = needed.difference(reach).first() {
                return Probe::No(PropertyWitness::NotIncremental { base, added, target });
            }
        }
    }
    Probe::Yes
}

/// Re-evaluates a property witness; true iff it still refutes the property.
pub fn replay_property(cl: &ClosureOperator, w: &PropertyWitness) -> bool {
    match *w {
        PropertyWitness::NotUnitary { set } => {
            let joined = set
                .iter()
                .fold(ThingSet::EMPTY, |acc, t| acc.union(cl.apply(ThingSet::singleton(t))));
            cl.apply(set) != joined
        }
        PropertyWitness::NotIncremental { base, added, target } => {
            cl.apply(base.with(added)).contains(target)
                && !cl
                    .apply(base)
                    .iter()
                    .any(|ta| cl.apply(ThingSet::singleton(ta).with(added)).contains(target))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ClosureSpec;
    use crate::error::Error;
    use crate::model::Universe;

    #[test]
    fn identity_has_all_three() {
        let u = Universe::opaque(["x", "y", "z"]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Identity).unwrap();
        let p = probe_properties(&cl).unwrap();
        assert_eq!(p.unitary, Probe::Yes);
        assert!(p.finitary.holds());
        assert_eq!(p.incremental, Probe::Yes);
    }

    #[test]
    fn unverified_operator_refuses_to_probe() {
        let u = Universe::opaque(["x"]).unwrap();
        let bad = vec![ThingSet::singleton(0), ThingSet::singleton(0)];
        let cl = ClosureOperator::new(&u, ClosureSpec::Table(bad)).unwrap();
        assert_eq!(probe_properties(&cl), Err(Error::LawsUnverified));
    }

    #[test]
    fn transitive_closure_over_all_pairs() {
        let u = Universe::all_pairs(vec!["x".into(), "a1".into(), "a2".into()]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Transitive).unwrap();
        let p = probe_properties(&cl).unwrap();
        assert!(matches!(p.unitary, Probe::No(_)));
        // Chaining (x,a1),(a1,a2),(a2,x) yields (x,x), but no single member of
        // trans({(x,a1),(a2,x)}) reaches it together with (a1,a2).
        let base = u.set(["(x,a1)", "(a2,x)"]).unwrap();
        let w = PropertyWitness::NotIncremental {
            base,
            added: u.index_of("(a1,a2)").unwrap(),
            target: u.index_of("(x,x)").unwrap(),
        };
        assert!(replay_property(&cl, &w));
        match p.incremental {
            Probe::No(found) => assert!(replay_property(&cl, &found)),
            other => panic!("expected a witness, got {other:?}"),
        }
    }
}
