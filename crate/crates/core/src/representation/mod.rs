//! Sets of desirable sets as intersections of `K_D` families.

mod orders;

use crate::closure::ClosureOperator;
use crate::coherence::{check_sds, enumerate_coherent_sdts_with_cap, Variant};
use crate::error::{Error, Result};
use crate::model::{selections, Assessment, Family, QDomain, ThingSet, DEFAULT_THING_CAP};
use crate::verdict::{Budget, Verdict};

pub use orders::{reflexive_pairs, represent_total_orders, total_order_pairs, TotalOrders};

/// `K_D`: every subset of the `n`-thing universe that meets `d`.
pub fn k_from_d(d: ThingSet, n: usize) -> Family {
    Family::powerset(n).filter(|a| a.meets(d))
}

/// `K_𝒟 = ⋂_{D∈𝒟} K_D`.
pub fn k_from_ds(ds: &Family, n: usize) -> Result<Family> {
    if ds.is_empty() {
        return Err(Error::EmptyRepresenterSet);
    }
    Ok(Family::powerset(n).filter(|a| ds.iter().all(|d| a.meets(d))))
}

/// `K_𝒟 ∩ Q`.
pub fn k_fin_from_ds(ds: &Family, n: usize, q: &QDomain) -> Result<Family> {
    Ok(k_from_ds(ds, n)?.filter(|a| q.contains(a)))
}

/// `𝒟_𝒜`: closures `cl(S ∪ A_des)` of the selections of `family` that avoid `A_not`.
pub fn d_family_from(family: &Family, assessment: &Assessment, cl: &ClosureOperator) -> Result<Family> {
    cl.require_laws()?;
    Ok(selections(family)
        .iter()
        .map(|s| cl.apply(s.union(assessment.a_des)))
        .filter(|d| !d.meets(assessment.a_not))
        .collect())
}

/// `𝐃(K)`: the coherent sets of desirable things `D` with `K ⊆ K_D`.
pub fn largest_representing(k: &Family, assessment: &Assessment, cl: &ClosureOperator) -> Result<Family> {
    let all = enumerate_coherent_sdts_with_cap(assessment, cl, DEFAULT_THING_CAP)?;
    Ok(all.filter(|d| k.iter().all(|a| a.meets(d))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    /// The constructive representer `𝒟_K`.
    pub d_k: Family,
    /// The largest representer `𝐃(K)`.
    pub largest: Family,
    pub verified: bool,
}

/// Both representers of a coherent `K`, with the identities they must satisfy checked.
pub fn represent(k: &Family, assessment: &Assessment, cl: &ClosureOperator) -> Result<Representation> {
    represent_with_budget(k, assessment, cl, Budget::default())
}

pub fn represent_with_budget(
    k: &Family,
    assessment: &Assessment,
    cl: &ClosureOperator,
    budget: Budget,
) -> Result<Representation> {
    match check_sds(k, assessment, cl, &Variant::full(), budget)? {
        Verdict::Verified => {}
        other => return Err(Error::NotCoherent(other.to_string())),
    }
    let n = cl.size();
    let d_k = d_family_from(k, assessment, cl)?;
    let largest = largest_representing(k, assessment, cl)?;
    let same = |ds: &Family| k_from_ds(ds, n).map(|f| f == *k).unwrap_or(false);
    let verified = same(&d_k) && same(&largest) && d_k.is_subfamily(&largest);
    Ok(Representation { d_k, largest, verified })
}

/// `fin(K)` relative to `q`: supersets of members of `K ∩ q`.
pub fn fin_of(k: &Family, n: usize, q: &QDomain) -> Family {
    k.filter(|b| q.contains(b)).up_closure(n)
}

/// The finitary condition read directly: `A ∈ K` iff some `B ⊆ A` with `B ∈ q` is in `K`.
pub fn is_finitary(k: &Family, n: usize, q: &QDomain) -> bool {
    Family::powerset(n)
        .iter()
        .all(|a| k.contains(a) == a.subsets().any(|b| q.contains(b) && k.contains(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ClosureSpec;
    use crate::model::Universe;

    fn xy() -> (Universe, ClosureOperator) {
        let u = Universe::opaque(["x", "y"]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Identity).unwrap();
        (u, cl)
    }

    #[test]
    fn k_from_d_by_hand() {
        let (u, _) = xy();
        assert!(k_from_d(ThingSet::EMPTY, 2).is_empty());
        let x = u.set(["x"]).unwrap();
        assert_eq!(k_from_d(x, 2), u.family([vec!["x"], vec!["x", "y"]]).unwrap());
    }

    #[test]
    fn intersection_of_two_singletons() {
        let (u, _) = xy();
        let ds = u.family([["x"], ["y"]]).unwrap();
        assert_eq!(k_from_ds(&ds, 2).unwrap(), u.family([["x", "y"]]).unwrap());
        assert_eq!(k_from_ds(&Family::new(), 2), Err(Error::EmptyRepresenterSet));
        let single = u.family([["x"]]).unwrap();
        assert_eq!(k_from_ds(&single, 2).unwrap(), k_from_d(u.set(["x"]).unwrap(), 2));
    }

    #[test]
    fn restricted_representers() {
        let (u, _) = xy();
        let ds = u.family([vec!["x"], vec!["x", "y"]]).unwrap();
        assert_eq!(k_fin_from_ds(&ds, 2, &QDomain::Full).unwrap(), k_from_ds(&ds, 2).unwrap());
        assert_eq!(k_fin_from_ds(&ds, 2, &QDomain::CardBound(1)).unwrap(), u.family([["x"]]).unwrap());
    }

    #[test]
    fn selections_of_a_pair_give_singletons() {
        let (u, cl) = xy();
        let fam = u.family([["x", "y"]]).unwrap();
        let ds = d_family_from(&fam, &Assessment::EMPTY, &cl).unwrap();
        assert_eq!(ds, u.family([["x"], ["y"]]).unwrap());
        // The empty family has the single selection ∅.
        assert_eq!(
            d_family_from(&Family::new(), &Assessment::EMPTY, &cl).unwrap(),
            Family::from_sets([ThingSet::EMPTY])
        );
    }

    #[test]
    fn pairwise_family_up_closure() {
        let u = Universe::opaque(["p1", "p2", "p3"]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Identity).unwrap();
        let k = u
            .family([["p1", "p2"], ["p2", "p3"], ["p1", "p3"]])
            .unwrap()
            .up_closure(3);
        let r = represent(&k, &Assessment::EMPTY, &cl).unwrap();
        assert!(r.verified);
        let expected = u
            .family([vec!["p1", "p2"], vec!["p1", "p3"], vec!["p2", "p3"], vec!["p1", "p2", "p3"]])
            .unwrap();
        assert_eq!(r.d_k, expected);
        assert!(r.d_k.is_subfamily(&r.largest));

        let bad = u.family([["p1", "p2"], ["p2", "p3"], ["p1", "p3"]]).unwrap();
        assert!(matches!(represent(&bad, &Assessment::EMPTY, &cl), Err(Error::NotCoherent(_))));
    }

    #[test]
    fn fin_of_single_generator() {
        let (u, _) = xy();
        let k = u.family([["x", "y"]]).unwrap();
        assert_eq!(fin_of(&k, 2, &QDomain::Full), k);
        assert!(is_finitary(&k, 2, &QDomain::Full));
        // With only singletons allowed as generators, {x,y} is not generated.
        assert!(fin_of(&k, 2, &QDomain::CardBound(1)).is_empty());
        assert!(!is_finitary(&k, 2, &QDomain::CardBound(1)));
    }
}
