use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ClosureOperator;
use crate::model::ThingSet;
use crate::verdict::{Budget, Certificate, Law, LawViolation, Verdict};

/// Checks cl1-cl4. Monotonicity is checked on covering pairs `A ⊂ A ∪ {t}`,
/// which implies it for every comparable pair.
pub fn check_laws(cl: &ClosureOperator, budget: Budget) -> Verdict {
    let n = cl.size();
    let full = ThingSet::full(n);
    let cost = (1u64 << n).saturating_mul(n as u64 + 3);

    if !cl.apply(ThingSet::EMPTY).is_empty() {
        return violated(Law::Empty, ThingSet::EMPTY, cl.apply(ThingSet::EMPTY));
    }

    if cost <= budget.limit {
        for a in full.subsets() {
            if let Some(v) = pointwise(cl, a) {
                return Verdict::Violated(Certificate::Law(v));
            }
        }
        for a in full.subsets() {
            let ca = cl.apply(a);
            for t in full.difference(a) {
                let b = a.with(t);
                if !ca.is_subset(cl.apply(b)) {
                    return violated(Law::Monotone, a, b);
                }
            }
        }
        return Verdict::Verified;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let samples = (budget.limit / (n as u64 + 3)).max(1);
    for _ in 0..samples {
        let a = ThingSet::from_bits(rng.gen::<u64>() & full.bits());
        if let Some(v) = pointwise(cl, a) {
            return Verdict::Violated(Certificate::Law(v));
        }
        let rest = full.difference(a);
        if let Some(t) = rest.iter().nth(rng.gen_range(0..rest.len().max(1))) {
            if !cl.apply(a).is_subset(cl.apply(a.with(t))) {
                return violated(Law::Monotone, a, a.with(t));
            }
        }
    }
    Verdict::Inconclusive(format!(
        "{samples} sampled subsets of 2^{n}; exhaustive check needs {cost} steps"
    ))
}

fn pointwise(cl: &ClosureOperator, a: ThingSet) -> Option<LawViolation> {
    let ca = cl.apply(a);
    if !a.is_subset(ca) {
        return Some(LawViolation { law: Law::Extensive, a, b: ca });
    }
    if cl.apply(ca) != ca {
        return Some(LawViolation { law: Law::Idempotent, a, b: ca });
    }
    None
}

fn violated(law: Law, a: ThingSet, b: ThingSet) -> Verdict {
    Verdict::Violated(Certificate::Law(LawViolation { law, a, b }))
}

/// Re-evaluates a law violation against the operator; true iff it still fails.
pub fn replay_law(cl: &ClosureOperator, v: &LawViolation) -> bool {
    let ca = cl.apply(v.a);
    match v.law {
        Law::Empty => v.a.is_empty() && !ca.is_empty(),
        Law::Extensive => !v.a.is_subset(ca),
        Law::Idempotent => cl.apply(ca) != ca,
        Law::Monotone => v.a.is_subset(v.b) && !ca.is_subset(cl.apply(v.b)),
    }
}
