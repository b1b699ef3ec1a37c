use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::realize::realize;
use crate::closure::ClosureOperator;
use crate::error::{Error, Result};
use crate::model::set::SubsetTable;
use crate::model::{selections, Assessment, Family, QDomain, ThingSet};
use crate::verdict::{Budget, Certificate, Choice, ChoiceIndex, SdsViolation, Strength, Verdict};

/// Which production axiom to use and which domain to relativize to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variant {
    pub strength: Strength,
    pub q: QDomain,
}

impl Variant {
    pub fn new(strength: Strength, q: QDomain) -> Self {
        Variant { strength, q }
    }

    pub fn full() -> Self {
        Variant::new(Strength::Full, QDomain::Full)
    }

    pub fn strength(strength: Strength) -> Self {
        Variant::new(strength, QDomain::Full)
    }
}

impl Default for Variant {
    fn default() -> Self {
        Variant::full()
    }
}

/// One instance of a production axiom: the sources it draws from and, per
/// choice index, the closure that index may choose from.
#[derive(Debug, Clone)]
pub struct Production {
    pub strength: Strength,
    pub sources: Vec<ThingSet>,
    pub indices: Vec<ChoiceIndex>,
    pub options: Vec<ThingSet>,
}

impl Production {
    /// `sources` is the subfamily for `Full`/`Finite`, `[A, B]` for `Two`, `[A]` for `One`.
    pub fn new(strength: Strength, sources: Vec<ThingSet>, cl: &ClosureOperator) -> Self {
        let indices = choice_indices(strength, &sources);
        let options = indices.iter().map(|i| cl.apply(i.base())).collect();
        Production {
            strength,
            sources,
            indices,
            options,
        }
    }

    pub fn certificate(&self, produced: ThingSet, chosen: &[usize]) -> SdsViolation {
        SdsViolation::Production {
            strength: self.strength,
            sources: self.sources.clone(),
            produced,
            choices: self
                .indices
                .iter()
                .zip(chosen)
                .map(|(&index, &chosen)| Choice { index, chosen })
                .collect(),
        }
    }
}

pub fn choice_indices(strength: Strength, sources: &[ThingSet]) -> Vec<ChoiceIndex> {
    match strength {
        Strength::Full | Strength::Finite => {
            let family: Family = sources.iter().copied().collect();
            selections(&family).iter().map(ChoiceIndex::Selection).collect()
        }
        Strength::Two => {
            let (a, b) = (sources[0], sources[1]);
            a.iter()
                .flat_map(|x| b.iter().map(move |y| ChoiceIndex::Pair(x, y)))
                .collect()
        }
        Strength::One => sources[0].iter().map(ChoiceIndex::Single).collect(),
    }
}

pub(crate) struct Ctx<'a> {
    pub n: usize,
    pub k: SubsetTable,
    pub members: &'a Family,
    pub q: &'a QDomain,
}

impl Ctx<'_> {
    fn in_k(&self, s: ThingSet) -> bool {
        self.k.contains(s)
    }

    fn kq(&self) -> Vec<ThingSet> {
        self.members.iter().filter(|&s| self.q.contains(s)).collect()
    }
}

fn validate(n: usize, k: &Family, q: &QDomain) -> Result<()> {
    let full = ThingSet::full(n);
    if k.iter().any(|s| !s.is_subset(full)) {
        return Err(Error::WrongUniverse("family mentions things outside the universe".into()));
    }
    if let QDomain::Explicit(f) = q {
        if f.iter().any(|s| !s.is_subset(full)) {
            return Err(Error::WrongUniverse("Q mentions things outside the universe".into()));
        }
    }
    Ok(())
}

/// Checks K1, K4, K3, K2 and then the production axiom picked by `variant`,
/// all relativized to `variant.q`.
pub fn check_sds(
    k: &Family,
    assessment: &Assessment,
    cl: &ClosureOperator,
    variant: &Variant,
    budget: Budget,
) -> Result<Verdict> {
    cl.require_laws()?;
    let n = cl.size();
    validate(n, k, &variant.q)?;
    let ctx = Ctx {
        n,
        k: SubsetTable::new(n, k),
        members: k,
        q: &variant.q,
    };
    if let Some(v) = static_violation(&ctx, assessment) {
        return Ok(Verdict::Violated(Certificate::Sds(v)));
    }
    Ok(production_check(&ctx, cl, variant.strength, budget, true))
}

/// K1 through K4 (in the order K1, K4, K3, K2).
pub(crate) fn static_violation(ctx: &Ctx, assessment: &Assessment) -> Option<SdsViolation> {
    empty_violation(ctx)
        .or_else(|| desirable_violation(ctx, assessment))
        .or_else(|| removal_violation(ctx, assessment))
        .or_else(|| upward_violation(ctx))
}

fn empty_violation(ctx: &Ctx) -> Option<SdsViolation> {
    ctx.in_k(ThingSet::EMPTY).then_some(SdsViolation::EmptySet)
}

fn desirable_violation(ctx: &Ctx, assessment: &Assessment) -> Option<SdsViolation> {
    assessment.a_des.iter().find_map(|t| {
        let single = ThingSet::singleton(t);
        (ctx.q.contains(single) && !ctx.in_k(single)).then_some(SdsViolation::MissingDesirable { thing: t })
    })
}

fn removal_violation(ctx: &Ctx, assessment: &Assessment) -> Option<SdsViolation> {
    ctx.kq().into_iter().find_map(|member| {
        let reduced = member.difference(assessment.a_not);
        (ctx.q.contains(reduced) && !ctx.in_k(reduced)).then_some(SdsViolation::NotRemoval { member, reduced })
    })
}

/// A single axiom, relativized to Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    K1,
    K2,
    K3,
    K4,
    K5(Strength),
}

/// Checks one axiom in isolation.
pub fn check_axiom(
    k: &Family,
    assessment: &Assessment,
    cl: &ClosureOperator,
    axiom: Axiom,
    q: &QDomain,
    budget: Budget,
) -> Result<Verdict> {
    cl.require_laws()?;
    let n = cl.size();
    validate(n, k, q)?;
    let ctx = Ctx {
        n,
        k: SubsetTable::new(n, k),
        members: k,
        q,
    };
    let found = match axiom {
        Axiom::K1 => empty_violation(&ctx),
        Axiom::K2 => upward_violation(&ctx),
        Axiom::K3 => removal_violation(&ctx, assessment),
        Axiom::K4 => desirable_violation(&ctx, assessment),
        Axiom::K5(strength) => return Ok(production_check(&ctx, cl, strength, budget, true)),
    };
    Ok(match found {
        Some(v) => violated(v),
        None => Verdict::Verified,
    })
}

/// K2 relativized to Q. Every superset is visited since Q need not be
/// closed under the intermediate steps.
pub(crate) fn upward_violation(ctx: &Ctx) -> Option<SdsViolation> {
    let full = ThingSet::full(ctx.n);
    for member in ctx.kq() {
        for extra in full.difference(member).subsets() {
            let superset = member.union(extra);
            if ctx.q.contains(superset) && !ctx.in_k(superset) {
                return Some(SdsViolation::NotUpward { member, superset });
            }
        }
    }
    None
}

/// Checks only the production axiom of `strength` in `q`, without assuming K1-K4.
pub fn check_production(
    k: &Family,
    cl: &ClosureOperator,
    strength: Strength,
    q: &QDomain,
    budget: Budget,
) -> Result<Verdict> {
    production_entry(k, cl, strength, q, budget, true)
}

/// As [`check_production`], but always ranges over all subfamilies of `K ∩ Q`
/// instead of the minimal members only.
pub fn check_production_plain(
    k: &Family,
    cl: &ClosureOperator,
    strength: Strength,
    q: &QDomain,
    budget: Budget,
) -> Result<Verdict> {
    production_entry(k, cl, strength, q, budget, false)
}

fn production_entry(
    k: &Family,
    cl: &ClosureOperator,
    strength: Strength,
    q: &QDomain,
    budget: Budget,
    shortcut: bool,
) -> Result<Verdict> {
    cl.require_laws()?;
    let n = cl.size();
    validate(n, k, q)?;
    let ctx = Ctx {
        n,
        k: SubsetTable::new(n, k),
        members: k,
        q,
    };
    Ok(production_check(&ctx, cl, strength, budget, shortcut))
}

/// When Q is subset-closed and K2 holds in Q, any subfamily can be replaced by
/// minimal members below its sets: the produced set only shrinks and stays in Q.
pub(crate) fn production_check(
    ctx: &Ctx,
    cl: &ClosureOperator,
    strength: Strength,
    budget: Budget,
    shortcut: bool,
) -> Verdict {
    let kq = ctx.kq();
    let gens: Vec<ThingSet> = if shortcut && ctx.q.is_subset_closed() && upward_violation(ctx).is_none() {
        Family::from_sets(kq).minimal().as_slice().to_vec()
    } else {
        kq
    };
    let m = gens.len();
    let test = |sources: Vec<ThingSet>| -> Option<SdsViolation> {
        let p = Production::new(strength, sources, cl);
        first_escape(ctx, &p)
    };

    match strength {
        Strength::One => {
            for &a in &gens {
                if let Some(v) = test(vec![a]) {
                    return violated(v);
                }
            }
            Verdict::Verified
        }
        Strength::Two => {
            let pairs = (m as u64) * (m as u64 + 1) / 2;
            if pairs > budget.limit {
                return Verdict::Inconclusive(format!("{pairs} pairs exceed the budget of {}", budget.limit));
            }
            for i in 0..m {
                for j in i..m {
                    if let Some(v) = test(vec![gens[i], gens[j]]) {
                        return violated(v);
                    }
                }
            }
            Verdict::Verified
        }
        Strength::Full | Strength::Finite => {
            let total = if m >= 64 { u64::MAX } else { (1u64 << m) - 1 };
            if total <= budget.limit {
                for mask in 1..=total {
                    let sources = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| gens[i]).collect();
                    if let Some(v) = test(sources) {
                        return violated(v);
                    }
                }
                return Verdict::Verified;
            }
            // Small subfamilies first, then seeded random ones.
            let mut spent = 0u64;
            for i in 0..m {
                for j in i..m {
                    if spent >= budget.limit {
                        break;
                    }
                    spent += 1;
                    let sources = if i == j { vec![gens[i]] } else { vec![gens[i], gens[j]] };
                    if let Some(v) = test(sources) {
                        return violated(v);
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            while spent < budget.limit {
                spent += 1;
                let sources: Vec<ThingSet> = gens.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                if sources.is_empty() {
                    continue;
                }
                if let Some(v) = test(sources) {
                    return violated(v);
                }
            }
            Verdict::Inconclusive(format!(
                "searched {spent} of 2^{m}-1 subfamilies without finding a violation"
            ))
        }
    }
}

fn violated(v: SdsViolation) -> Verdict {
    Verdict::Violated(Certificate::Sds(v))
}

/// The smallest realizable produced set that lies in Q but not in K.
fn first_escape(ctx: &Ctx, p: &Production) -> Option<SdsViolation> {
    let reach = p.options.iter().fold(ThingSet::EMPTY, |acc, &o| acc.union(o));
    for b in reach.subsets() {
        if ctx.in_k(b) || !ctx.q.contains(b) {
            continue;
        }
        if let Some(chosen) = realize(&p.options, b) {
            return Some(p.certificate(b, &chosen));
        }
    }
    None
}

/// Re-evaluates the cited axiom on the witness; true iff it is still violated.
pub fn replay_sds(
    k: &Family,
    assessment: &Assessment,
    cl: &ClosureOperator,
    q: &QDomain,
    v: &SdsViolation,
) -> bool {
    let in_kq = |s: ThingSet| k.contains(s) && q.contains(s);
    match v {
        SdsViolation::EmptySet => k.contains(ThingSet::EMPTY),
        SdsViolation::MissingDesirable { thing } => {
            let s = ThingSet::singleton(*thing);
            assessment.a_des.contains(*thing) && q.contains(s) && !k.contains(s)
        }
        SdsViolation::NotRemoval { member, reduced } => {
            in_kq(*member)
                && *reduced == member.difference(assessment.a_not)
                && q.contains(*reduced)
                && !k.contains(*reduced)
        }
        SdsViolation::NotUpward { member, superset } => {
            in_kq(*member) && member.is_subset(*superset) && q.contains(*superset) && !k.contains(*superset)
        }
        SdsViolation::Production {
            strength,
            sources,
            produced,
            choices,
        } => {
            let arity_ok = match strength {
                Strength::Two => sources.len() == 2,
                Strength::One => sources.len() == 1,
                Strength::Full | Strength::Finite => !sources.is_empty(),
            };
            if !arity_ok || !sources.iter().all(|&s| in_kq(s)) {
                return false;
            }
            let expected = choice_indices(*strength, sources);
            let cited: Vec<ChoiceIndex> = choices.iter().map(|c| c.index).collect();
            let mut sorted_expected = expected.clone();
            sorted_expected.sort_unstable();
            let mut sorted_cited = cited;
            sorted_cited.sort_unstable();
            if sorted_expected != sorted_cited {
                return false;
            }
            let lawful = choices.iter().all(|c| cl.apply(c.index.base()).contains(c.chosen));
            let image: ThingSet = choices.iter().map(|c| c.chosen).collect();
            lawful && image == *produced && q.contains(*produced) && !k.contains(*produced)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ClosureSpec;
    use crate::model::Universe;

    fn ps() -> (Universe, ClosureOperator) {
        let u = Universe::opaque(["p1", "p2", "p3"]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Identity).unwrap();
        (u, cl)
    }

    #[test]
    fn empty_member_breaks_k1() {
        let (_, cl) = ps();
        let k = Family::from_sets([ThingSet::EMPTY]);
        let v = check_sds(&k, &Assessment::EMPTY, &cl, &Variant::full(), Budget::default()).unwrap();
        assert_eq!(v, Verdict::Violated(Certificate::Sds(SdsViolation::EmptySet)));
    }

    #[test]
    fn pairwise_family_lacks_its_superset() {
        let (u, cl) = ps();
        let k = u.family([["p1", "p2"], ["p2", "p3"], ["p1", "p3"]]).unwrap();
        let v = check_sds(&k, &Assessment::EMPTY, &cl, &Variant::full(), Budget::default()).unwrap();
        let expected = SdsViolation::NotUpward {
            member: u.set(["p1", "p2"]).unwrap(),
            superset: u.full(),
        };
        assert_eq!(v, Verdict::Violated(Certificate::Sds(expected.clone())));
        assert!(replay_sds(&k, &Assessment::EMPTY, &cl, &QDomain::Full, &expected));

        let up = k.up_closure(3);
        assert_eq!(up.len(), 4);
        let v = check_sds(&up, &Assessment::EMPTY, &cl, &Variant::full(), Budget::default()).unwrap();
        assert!(v.is_verified());
    }

    #[test]
    fn transitive_production_certificate_replays() {
        let u = Universe::all_pairs(vec!["a".into(), "b".into()]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Transitive).unwrap();
        // {(a,b)} and {(b,a)} are desirable, so some reflexive pair is.
        let k = u
            .family([vec!["(a,b)"], vec!["(b,a)"]])
            .unwrap()
            .up_closure(u.len());
        for strength in [Strength::Full, Strength::Two] {
            let v = check_sds(&k, &Assessment::EMPTY, &cl, &Variant::strength(strength), Budget::default()).unwrap();
            match v.certificate() {
                Some(Certificate::Sds(w)) => {
                    assert!(matches!(w, SdsViolation::Production { .. }));
                    assert!(replay_sds(&k, &Assessment::EMPTY, &cl, &QDomain::Full, w));
                }
                other => panic!("{strength:?}: {other:?}"),
            }
        }
        // One-coherence cannot combine the two members.
        let v = check_sds(&k, &Assessment::EMPTY, &cl, &Variant::strength(Strength::One), Budget::default()).unwrap();
        assert!(v.is_verified());
    }

    #[test]
    fn shortcut_agrees_with_plain_search() {
        let u = Universe::all_pairs(vec!["a".into(), "b".into()]).unwrap();
        let cl = ClosureOperator::new(&u, ClosureSpec::Transitive).unwrap();
        let n = u.len();
        let mut seen = 0;
        for bits in (1u64..1 << 16).step_by(97) {
            let k: Family = (0..16).filter(|i| bits >> i & 1 == 1).map(ThingSet::from_bits).collect();
            for q in [QDomain::Full, QDomain::CardBound(2)] {
                for s in Strength::ALL {
                    let a = check_production(&k, &cl, s, &q, Budget::default()).unwrap();
                    let b = check_production_plain(&k, &cl, s, &q, Budget::default()).unwrap();
                    assert_eq!(a.is_verified(), b.is_verified(), "{k:?} {q:?} {s:?}");
                    seen += 1;
                }
            }
        }
        assert!(seen > 0 && n == 4);
    }

    #[test]
    fn small_budget_is_inconclusive() {
        let (u, cl) = ps();
        let k = Family::powerset(3).filter(|s| !s.is_empty());
        let v = check_production_plain(&k, &cl, Strength::Full, &QDomain::Full, Budget::new(10)).unwrap();
        assert!(matches!(v, Verdict::Inconclusive(_)), "{v:?}");
        assert_eq!(u.len(), 3);
    }
}
