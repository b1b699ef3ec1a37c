use super::largest_representing;
use crate::closure::{ClosureOperator, ClosureSpec};
use crate::coherence::{check_sds, Variant};
use crate::error::{Error, Result};
use crate::model::{Assessment, Family, ThingSet, Universe};
use crate::verdict::{Budget, Certificate, Strength, Verdict};

#[derive(Debug, Clone)]
pub struct TotalOrders {
    pub verdict: Verdict,
    /// Connected members of `𝐃(K)`.
    pub orders: Family,
}

fn pair_index(universe: &Universe) -> Result<(usize, Vec<Vec<usize>>)> {
    let (options, pairs) = universe
        .pairs()
        .ok_or_else(|| Error::WrongUniverse("expected a universe of preference pairs".into()))?;
    let m = options.len();
    if pairs.len() != m * m {
        return Err(Error::WrongUniverse(format!(
            "expected all {} ordered pairs of {m} options, found {}",
            m * m,
            pairs.len()
        )));
    }
    let mut at = vec![vec![usize::MAX; m]; m];
    for (t, &(a, b)) in pairs.iter().enumerate() {
        at[a][b] = t;
    }
    Ok((m, at))
}

/// The forbidden things: every `(o,o)`.
pub fn reflexive_pairs(universe: &Universe) -> Result<ThingSet> {
    let (m, at) = pair_index(universe)?;
    Ok((0..m).map(|o| at[o][o]).collect())
}

/// `𝒜_tot`: the sets `{(o1,o2),(o2,o1)}` for distinct options.
pub fn total_order_pairs(universe: &Universe) -> Result<Family> {
    let (m, at) = pair_index(universe)?;
    Ok((0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .map(|(a, b)| ThingSet::singleton(at[a][b]).with(at[b][a]))
        .collect())
}

/// Checks 2-coherence of `k` (transitive closure, reflexive pairs forbidden)
/// and that it contains `𝒜_tot`, and lists the strict total orders that represent it.
pub fn represent_total_orders(universe: &Universe, k: &Family, budget: Budget) -> Result<TotalOrders> {
    let a_not = reflexive_pairs(universe)?;
    let tot = total_order_pairs(universe)?;
    let cl = ClosureOperator::with_budget(universe, ClosureSpec::Transitive, budget)?;
    let assessment = Assessment::new(a_not, ThingSet::EMPTY);
    let mut verdict = check_sds(k, &assessment, &cl, &Variant::strength(Strength::Two), budget)?;
    if verdict.is_verified() {
        if let Some(missing) = tot.iter().find(|&s| !k.contains(s)) {
            verdict = Verdict::Violated(Certificate::MissingRequiredSet(missing));
        }
    }
    let orders = largest_representing(k, &assessment, &cl)?.filter(|d| tot.iter().all(|s| s.meets(d)));
    Ok(TotalOrders { verdict, orders })
}
