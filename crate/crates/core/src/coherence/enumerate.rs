use rayon::prelude::*;

use super::sdt::sdt_violation;
use super::sds::{production_check, static_violation, upward_violation, Ctx, Variant};
use crate::closure::ClosureOperator;
use crate::error::{Error, Result};
use crate::model::set::SubsetTable;
use crate::model::{Assessment, Family, ThingSet};
use crate::verdict::{Budget, Strength};

pub const SDT_ENUMERATION_CAP: usize = 4;
pub const SDS_FULL_ENUMERATION_CAP: usize = 3;
pub const SDS_WEAK_ENUMERATION_CAP: usize = 4;

/// Every coherent set of desirable things.
pub fn enumerate_coherent_sdts(assessment: &Assessment, cl: &ClosureOperator) -> Result<Family> {
    enumerate_coherent_sdts_with_cap(assessment, cl, SDT_ENUMERATION_CAP)
}

pub fn enumerate_coherent_sdts_with_cap(
    assessment: &Assessment,
    cl: &ClosureOperator,
    cap: usize,
) -> Result<Family> {
    cl.require_laws()?;
    let n = cl.size();
    if n > cap {
        return Err(Error::UniverseTooLarge { size: n, cap });
    }
    Ok(ThingSet::full(n)
        .subsets()
        .filter(|&d| sdt_violation(d, assessment, cl).is_none())
        .collect())
}

/// Every coherent set of desirable sets under `variant`, in canonical order.
pub fn enumerate_coherent_sds(
    assessment: &Assessment,
    cl: &ClosureOperator,
    variant: &Variant,
) -> Result<Vec<Family>> {
    let cap = match variant.strength {
        Strength::Full | Strength::Finite => SDS_FULL_ENUMERATION_CAP,
        Strength::Two | Strength::One => SDS_WEAK_ENUMERATION_CAP,
    };
    enumerate_coherent_sds_with_cap(assessment, cl, variant, cap)
}

pub fn enumerate_coherent_sds_with_cap(
    assessment: &Assessment,
    cl: &ClosureOperator,
    variant: &Variant,
    cap: usize,
) -> Result<Vec<Family>> {
    cl.require_laws()?;
    let n = cl.size();
    let cap = cap.min(SDS_WEAK_ENUMERATION_CAP);
    if n > cap {
        return Err(Error::UniverseTooLarge { size: n, cap });
    }
    let mut out: Vec<Family> = candidate_families(n)
        .into_par_iter()
        .filter(|k| {
            let ctx = Ctx {
                n,
                k: SubsetTable::new(n, k),
                members: k,
                q: &variant.q,
            };
            // K2 is cheapest to reject on, so it runs first here.
            upward_violation(&ctx).is_none()
                && static_violation(&ctx, assessment).is_none()
                && production_check(&ctx, cl, variant.strength, Budget::unlimited(), true).is_verified()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Every family of nonempty subsets: K1 holds by construction.
pub fn candidate_families(n: usize) -> Vec<Family> {
    let nonempty: Vec<ThingSet> = ThingSet::full(n).subsets().skip(1).collect();
    let m = nonempty.len();
    (0u64..1 << m)
        .map(|mask| {
            (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| nonempty[i])
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ClosureSpec;
    use crate::model::{QDomain, Universe};

    fn identity(n: usize) -> ClosureOperator {
        let ids: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
        let u = Universe::opaque(ids).unwrap();
        ClosureOperator::new(&u, ClosureSpec::Identity).unwrap()
    }

    #[test]
    fn identity_sdts_are_everything() {
        assert_eq!(enumerate_coherent_sdts(&Assessment::EMPTY, &identity(3)).unwrap().len(), 8);
    }

    #[test]
    fn identity_sds_counts() {
        let one = enumerate_coherent_sds(&Assessment::EMPTY, &identity(1), &Variant::full()).unwrap();
        assert_eq!(one, vec![Family::new(), Family::from_sets([ThingSet::singleton(0)])]);
        let two = enumerate_coherent_sds(&Assessment::EMPTY, &identity(2), &Variant::full()).unwrap();
        assert_eq!(two.len(), 5);
        // Oracle: up-closed families of nonempty subsets, by direct check.
        let up_closed = candidate_families(2)
            .into_iter()
            .filter(|k| k.iter().all(|a| k.up_closure(2).filter(|b| a.is_subset(b)).is_subfamily(k)))
            .count();
        assert_eq!(up_closed, 5);
    }

    #[test]
    fn caps() {
        let cl = identity(4);
        assert_eq!(
            enumerate_coherent_sds(&Assessment::EMPTY, &cl, &Variant::full()),
            Err(Error::UniverseTooLarge { size: 4, cap: 3 })
        );
        assert_eq!(
            enumerate_coherent_sdts(&Assessment::EMPTY, &identity(5)),
            Err(Error::UniverseTooLarge { size: 5, cap: 4 })
        );
    }

    #[test]
    fn inconsistent_assessment_empties_both() {
        let cl = identity(2);
        let a = Assessment::new(ThingSet::singleton(0), ThingSet::singleton(0));
        assert!(enumerate_coherent_sdts(&a, &cl).unwrap().is_empty());
        let v = Variant::new(Strength::Two, QDomain::Full);
        assert!(enumerate_coherent_sds(&a, &cl, &v).unwrap().is_empty());
    }
}
