//! Built-in operator seeds and seeded assessments for the claim harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::{ClosureOperator, ClosureSpec};
use crate::error::{Error, Result};
use crate::model::{Assessment, Family, ThingSet, Universe, VectorLayout};
use crate::vector::{HullKind, RationalVector};
use crate::verdict::Budget;

/// Largest universe the harness enumerates families over.
pub const MAX_SEED_SIZE: usize = 4;

#[derive(Debug, Clone)]
pub struct OperatorSeed {
    pub name: &'static str,
    pub universe: Universe,
    pub spec: ClosureSpec,
}

impl OperatorSeed {
    pub fn build(&self) -> Result<ClosureOperator> {
        let cl = ClosureOperator::with_budget(&self.universe, self.spec.clone(), Budget::unlimited())?;
        cl.require_laws()?;
        Ok(cl)
    }
}

/// Names of the seeds available at every size, in catalog order.
pub const SEED_NAMES: [&str; 7] = ["identity", "lift", "corner", "horn", "trans", "posi", "chull"];

/// All built-in operator seeds over `n` things (`1 <= n <= 4`).
pub fn operator_seeds(n: usize) -> Result<Vec<OperatorSeed>> {
    if n == 0 || n > MAX_SEED_SIZE {
        return Err(Error::UniverseTooLarge {
            size: n,
            cap: MAX_SEED_SIZE,
        });
    }
    let opaque = || Universe::opaque((0..n).map(|i| format!("t{i}")));
    let seeds = vec![
        OperatorSeed {
            name: "identity",
            universe: opaque()?,
            spec: ClosureSpec::Identity,
        },
        lift_seed(n)?,
        OperatorSeed {
            name: "corner",
            universe: opaque()?,
            spec: ClosureSpec::Table(corner_table(n)),
        },
        OperatorSeed {
            name: "horn",
            universe: opaque()?,
            spec: ClosureSpec::Table(horn_table(n)),
        },
        OperatorSeed {
            name: "trans",
            universe: trans_universe(n)?,
            spec: ClosureSpec::Transitive,
        },
        hull_seed("posi", HullKind::Posi, posi_catalog(n))?,
        hull_seed("chull", HullKind::Chull, chull_catalog(n))?,
    ];
    Ok(seeds)
}

/// Pizzas with and without thick crust; a pizza's closure adds its thick variant.
fn lift_seed(n: usize) -> Result<OperatorSeed> {
    let names = ["margherita", "margherita-thick", "peperoni", "peperoni-thick"];
    let universe = Universe::opaque(names[..n].iter().copied())?;
    let images = (0..n)
        .map(|t| {
            if t % 2 == 0 && t + 1 < n {
                ThingSet::singleton(t + 1)
            } else {
                ThingSet::EMPTY
            }
        })
        .collect();
    Ok(OperatorSeed {
        name: "lift",
        universe,
        spec: ClosureSpec::UnitaryLift(images),
    })
}

/// Closed sets: the empty set, singletons and the whole universe.
pub fn corner_table(n: usize) -> Vec<ThingSet> {
    let full = ThingSet::full(n);
    full.subsets().map(|a| if a.len() <= 1 { a } else { full }).collect()
}

/// A single Horn rule: `t0, t1 => t_last` (or `t0 => t1` on two things).
pub fn horn_table(n: usize) -> Vec<ThingSet> {
    let (body, head) = match n {
        1 => (ThingSet::singleton(0), 0),
        2 => (ThingSet::singleton(0), 1),
        _ => (ThingSet::from_indices([0, 1]), n - 1),
    };
    ThingSet::full(n)
        .subsets()
        .map(|a| if body.is_subset(a) { a.with(head) } else { a })
        .collect()
}

fn trans_universe(n: usize) -> Result<Universe> {
    let pairs: &[(usize, usize)] = match n {
        1 => &[(0, 1)],
        2 => &[(0, 1), (1, 0)],
        3 => &[(0, 1), (1, 2), (0, 2)],
        _ => &[(0, 1), (1, 2), (0, 2), (2, 0)],
    };
    let options = ["o1", "o2", "o3"].map(String::from).to_vec();
    Universe::preference_pairs(options, pairs.to_vec())
}

fn posi_catalog(n: usize) -> Vec<[i64; 2]> {
    let all = [[1, 0], [0, 1], [1, 1], [-1, 2]];
    if n == 2 {
        vec![[1, 0], [2, 0]]
    } else {
        all[..n].to_vec()
    }
}

fn chull_catalog(n: usize) -> Vec<[i64; 2]> {
    match n {
        1 => vec![[0, 0]],
        2 => vec![[0, 0], [1, 1]],
        3 => vec![[0, 0], [2, 2], [1, 1]],
        _ => vec![[0, 0], [2, 0], [0, 2], [1, 1]],
    }
}

fn hull_seed(name: &'static str, kind: HullKind, catalog: Vec<[i64; 2]>) -> Result<OperatorSeed> {
    let ids = catalog.iter().map(|[a, b]| format!("f({a},{b})")).collect();
    let vectors = catalog.iter().map(|c| RationalVector::from_ints(c)).collect();
    let layout = VectorLayout::Flat(vec!["s1".into(), "s2".into()]);
    Ok(OperatorSeed {
        name,
        universe: Universe::vectors(ids, layout, vectors)?,
        spec: ClosureSpec::Trace(kind),
    })
}

/// Assessments used by the harness: all of them for `n <= 2`, otherwise the empty
/// assessment followed by `count` seeded random ones.
pub fn seeded_assessments(n: usize, count: usize, seed: u64) -> Vec<Assessment> {
    if n <= 2 {
        return Assessment::all(n).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = ThingSet::full(n).bits();
    let mut out = vec![Assessment::EMPTY];
    while out.len() < count + 1 {
        let a = Assessment::new(
            ThingSet::from_bits(rng.gen::<u64>() & full),
            ThingSet::from_bits(rng.gen::<u64>() & full),
        );
        if !out.contains(&a) {
            out.push(a);
        }
        if out.len() == 1 << (2 * n) {
            break;
        }
    }
    out
}

/// Every family of subsets of an `n`-thing universe (`2^(2^n)` of them).
pub fn all_families(n: usize) -> impl Iterator<Item = Family> {
    assert!(n <= MAX_SEED_SIZE);
    let subsets: Vec<ThingSet> = ThingSet::full(n).subsets().collect();
    let count = 1u64 << subsets.len();
    (0..count).map(move |mask| {
        Family::from_sets(
            subsets
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s),
        )
    })
}

/// Every family of nonempty subsets.
pub fn nonempty_families(n: usize) -> impl Iterator<Item = Family> {
    all_families(n).filter(|f| !f.contains(ThingSet::EMPTY))
}
