//! Closure operators on the subsets of a finite universe.

mod laws;
mod props;
pub mod trans;

use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::model::{ThingSet, Universe};
use crate::vector::{member, HullKind, RationalVector, Route};
use crate::verdict::{Budget, Verdict};

pub use laws::{check_laws, replay_law};
pub use props::{probe_properties, replay_property, Probe, Properties, PropertyWitness, FINITARY_NOTE};
pub use trans::{trans_closure, trans_pair, trans_pair_options};

/// Universes up to this size get a lazily filled table of all closures.
const TABLE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureSpec {
    Identity,
    /// `cl(A) = A ∪ ⋃_{t∈A} image[t]`.
    UnitaryLift(Vec<ThingSet>),
    /// Explicit image of every subset, indexed by the subset's bits.
    Table(Vec<ThingSet>),
    /// Transitive closure of preference pairs, traced onto the universe.
    Transitive,
    /// Positive or convex hull of rational vectors, traced onto the universe.
    Trace(HullKind),
}

impl ClosureSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ClosureSpec::Identity => "identity",
            ClosureSpec::UnitaryLift(_) => "unitary",
            ClosureSpec::Table(_) => "table",
            ClosureSpec::Transitive => "transitive",
            ClosureSpec::Trace(HullKind::Posi) => "posi",
            ClosureSpec::Trace(HullKind::Chull) => "chull",
        }
    }
}

#[derive(Debug)]
enum Kernel {
    Identity,
    Lift(Vec<ThingSet>),
    Table(Vec<ThingSet>),
    Pairs { options: usize, pairs: Vec<(usize, usize)> },
    Hull { kind: HullKind, vectors: Vec<RationalVector> },
}

/// A closure operator together with cached law and property verdicts.
#[derive(Debug)]
pub struct ClosureOperator {
    n: usize,
    spec: ClosureSpec,
    kernel: Kernel,
    memo: Option<Vec<OnceLock<ThingSet>>>,
    laws: RwLock<Option<Verdict>>,
    properties: OnceLock<Properties>,
}

impl Clone for ClosureOperator {
    fn clone(&self) -> Self {
        let op = ClosureOperator::build(self.n, self.spec.clone(), clone_kernel(&self.kernel));
        *op.laws.write().expect("law cache poisoned") = self.laws_verdict();
        if let Some(p) = self.properties.get() {
            let _ = op.properties.set(p.clone());
        }
        op
    }
}

fn clone_kernel(k: &Kernel) -> Kernel {
    match k {
        Kernel::Identity => Kernel::Identity,
        Kernel::Lift(v) => Kernel::Lift(v.clone()),
        Kernel::Table(v) => Kernel::Table(v.clone()),
        Kernel::Pairs { options, pairs } => Kernel::Pairs {
            options: *options,
            pairs: pairs.clone(),
        },
        Kernel::Hull { kind, vectors } => Kernel::Hull {
            kind: *kind,
            vectors: vectors.clone(),
        },
    }
}

impl ClosureOperator {
    /// Builds the operator and runs the law check with the default budget.
    pub fn new(universe: &Universe, spec: ClosureSpec) -> Result<Self> {
        Self::with_budget(universe, spec, Budget::default())
    }

    pub fn with_budget(universe: &Universe, spec: ClosureSpec, budget: Budget) -> Result<Self> {
        let op = Self::unchecked(universe, spec)?;
        op.check_laws(budget);
        Ok(op)
    }

    /// Builds the operator without running the law check.
    pub fn unchecked(universe: &Universe, spec: ClosureSpec) -> Result<Self> {
        let n = universe.len();
        let full = universe.full();
        let kernel = match &spec {
            ClosureSpec::Identity => Kernel::Identity,
            ClosureSpec::UnitaryLift(images) => {
                if images.len() != n {
                    return Err(Error::MalformedDocument(format!(
                        "unitary lift lists {} images for {n} things",
                        images.len()
                    )));
                }
                if images.iter().any(|s| !s.is_subset(full)) {
                    return Err(Error::MalformedDocument("unitary image outside the universe".into()));
                }
                Kernel::Lift(images.clone())
            }
            ClosureSpec::Table(table) => {
                if n > TABLE_LIMIT || table.len() != 1usize << n {
                    return Err(Error::MalformedDocument(format!(
                        "closure table needs an image for each of the 2^{n} subsets"
                    )));
                }
                if table.iter().any(|s| !s.is_subset(full)) {
                    return Err(Error::MalformedDocument("table image outside the universe".into()));
                }
                Kernel::Table(table.clone())
            }
            ClosureSpec::Transitive => {
                let (options, pairs) = universe.pairs().ok_or_else(|| {
                    Error::WrongPayload("transitive closure needs preference pairs".into())
                })?;
                Kernel::Pairs {
                    options: options.len(),
                    pairs: pairs.to_vec(),
                }
            }
            ClosureSpec::Trace(kind) => {
                let (_, vectors) = universe.rational_vectors().ok_or_else(|| {
                    Error::WrongPayload("hull closure needs rational vectors".into())
                })?;
                Kernel::Hull {
                    kind: *kind,
                    vectors: vectors.to_vec(),
                }
            }
        };
        Ok(Self::build(n, spec, kernel))
    }

    fn build(n: usize, spec: ClosureSpec, kernel: Kernel) -> Self {
        let memo = (n <= TABLE_LIMIT && !matches!(kernel, Kernel::Identity | Kernel::Table(_)))
            .then(|| (0..1usize << n).map(|_| OnceLock::new()).collect());
        ClosureOperator {
            n,
            spec,
            kernel,
            memo,
            laws: RwLock::new(None),
            properties: OnceLock::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &ClosureSpec {
        &self.spec
    }

    pub fn apply(&self, a: ThingSet) -> ThingSet {
        match &self.kernel {
            Kernel::Identity => a,
            Kernel::Table(t) => t[a.bits() as usize],
            _ => match &self.memo {
                Some(memo) => *memo[a.bits() as usize].get_or_init(|| self.compute(a)),
                None => self.compute(a),
            },
        }
    }

    fn compute(&self, a: ThingSet) -> ThingSet {
        match &self.kernel {
            Kernel::Identity => a,
            Kernel::Table(t) => t[a.bits() as usize],
            Kernel::Lift(images) => a.iter().fold(a, |acc, t| acc.union(images[t])),
            Kernel::Pairs { options, pairs } => {
                let closed = trans::transitive_pairs(*options, a.iter().map(|t| pairs[t]));
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| closed.contains(p))
                    .map(|(t, _)| t)
                    .collect()
            }
            Kernel::Hull { kind, vectors } => {
                if a.is_empty() {
                    return ThingSet::EMPTY;
                }
                let gens: Vec<RationalVector> = a.iter().map(|t| vectors[t].clone()).collect();
                (0..self.n)
                    .filter(|&t| {
                        a.contains(t)
                            || member(*kind, &vectors[t], &gens, Route::Auto)
                                .expect("uniform dimension checked by the universe")
                    })
                    .collect()
            }
        }
    }

    /// Runs the law check and caches the verdict. A cached verdict is reused
    /// unless it was inconclusive, in which case the check reruns under `budget`.
    pub fn check_laws(&self, budget: Budget) -> Verdict {
        if let Some(v) = self.laws.read().expect("law cache poisoned").as_ref() {
            if !matches!(v, Verdict::Inconclusive(_)) {
                return v.clone();
            }
        }
        let verdict = laws::check_laws(self, budget);
        *self.laws.write().expect("law cache poisoned") = Some(verdict.clone());
        verdict
    }

    pub fn laws_verdict(&self) -> Option<Verdict> {
        self.laws.read().expect("law cache poisoned").clone()
    }

    pub fn laws_verified(&self) -> bool {
        matches!(self.laws_verdict(), Some(Verdict::Verified))
    }

    pub fn require_laws(&self) -> Result<()> {
        if self.laws_verified() {
            Ok(())
        } else {
            Err(Error::LawsUnverified)
        }
    }

    /// Cached structural properties; errors unless the laws are verified.
    pub fn properties(&self) -> Result<&Properties> {
        self.require_laws()?;
        Ok(self.properties.get_or_init(|| props::probe(self)))
    }
}
