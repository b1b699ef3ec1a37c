//! Exhaustive checks of the theory's finite statements on small universes.
//!
//! Each claim is a quantified statement over operator seeds, assessments,
//! domains `Q` and families. [`verify_claim`] walks the whole instance space
//! and reports the first counterexample it meets.

pub mod catalog;
mod suite;

use rayon::prelude::*;

use crate::closure::ClosureOperator;
use crate::error::{Error, Result};
use crate::model::{Assessment, QDomain, Universe};
use crate::verdict::{Budget, Certificate, Verdict};

use catalog::{operator_seeds, seeded_assessments, OperatorSeed};

/// Which assessments a claim is checked under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assessments {
    Empty,
    /// Every assessment when there are at most two things, otherwise the
    /// empty assessment plus this many seeded random ones.
    Seeded(usize),
}

#[derive(Debug, Clone)]
pub struct InstanceConfig {
    pub size: usize,
    /// Operator seed names; `None` means the whole catalog.
    pub operators: Option<Vec<String>>,
    /// Seeds used instead of the built-in catalog.
    pub custom: Option<Vec<OperatorSeed>>,
    pub assessments: Assessments,
    pub seed: u64,
    /// `limit` caps the number of elementary instances a claim may visit.
    pub budget: Budget,
    /// Domains for claims relativized to `Q`; `None` means `Full` plus every
    /// proper cardinality bound.
    pub domains: Option<Vec<QDomain>>,
    /// Check every seed even when it lacks the claim's hypothesis. Used to
    /// confirm that a hypothesis is needed.
    pub ignore_hypotheses: bool,
}

impl InstanceConfig {
    pub fn new(size: usize) -> Self {
        InstanceConfig {
            size,
            operators: None,
            custom: None,
            assessments: Assessments::Seeded(20),
            seed: 0,
            budget: Budget::unlimited(),
            domains: None,
            ignore_hypotheses: false,
        }
    }

    #[must_use]
    pub fn operators<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.operators = Some(names.into_iter().map(Into::into).collect());
        self
    }

    /// Replaces the catalog; the seeds must all have `size` things.
    #[must_use]
    pub fn custom_seeds(mut self, seeds: Vec<OperatorSeed>) -> Self {
        self.custom = Some(seeds);
        self
    }

    #[must_use]
    pub fn assessments(mut self, a: Assessments) -> Self {
        self.assessments = a;
        self
    }

    #[must_use]
    pub fn domains(mut self, qs: Vec<QDomain>) -> Self {
        self.domains = Some(qs);
        self
    }

    #[must_use]
    pub fn ignore_hypotheses(mut self) -> Self {
        self.ignore_hypotheses = true;
        self
    }

    #[must_use]
    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    #[must_use]
    pub fn budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub(crate) fn domain_list(&self) -> Vec<QDomain> {
        match &self.domains {
            Some(qs) => qs.clone(),
            None => std::iter::once(QDomain::Full)
                .chain((1..self.size).map(QDomain::CardBound))
                .collect(),
        }
    }

    pub(crate) fn assessment_list(&self) -> Vec<Assessment> {
        match self.assessments {
            Assessments::Empty => vec![Assessment::EMPTY],
            Assessments::Seeded(count) => seeded_assessments(self.size, count, self.seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: &'static str,
    pub verdict: Verdict,
    /// Elementary instances visited.
    pub instances: u64,
    /// Operator seeds left out because they lack the claim's hypothesis.
    pub skipped: Vec<String>,
}

type ClaimFn = fn(&mut Scan, &InstanceConfig) -> Step;

/// Claim ids with a one-line statement, in catalog order.
pub const CLAIMS: &[(&str, &str)] = &[
    ("prop1", "under the identity, every upward-closed family of nonempty sets passes the production axiom"),
    ("prop2", "coherence is possible iff a coherent set of things exists iff a coherent family exists"),
    ("prop3", "D is coherent iff the family of sets meeting D is coherent"),
    ("prop4", "intersections of two or three coherent families (or sets of things) are coherent"),
    ("lemma2", "every set produced from a subfamily of a coherent K, desirable things added, lies in K"),
    ("lemma3", "for a subfamily of a coherent K, its representers are coherent and sandwich it inside K"),
    ("theorem1", "K is coherent iff K = K_D for a nonempty set of coherent D, and every such set lies in the largest one"),
    ("prop5", "with subset-closed Q, upward closure plus the finite production axiom imply the binary one"),
    ("prop6", "for unitary operators and subset-closed Q, the four production strengths agree on upward-closed families"),
    ("cor_finitary", "for finitary operators, finite coherence in Q equals coherence in Q"),
    ("prop_incremental", "for incremental operators, upward closure plus the binary axiom imply the finite one"),
    ("cor_combined", "for finitary incremental operators, coherence, finite coherence and 2-coherence in Q agree"),
    ("fin_finitary", "fin(K) is finitary"),
    ("fin_iff", "K is finitary iff K = fin(K)"),
    ("fin_items", "each axiom of K in Q transfers to fin(K), and fin(K) agrees with K inside Q"),
    ("fin_selections", "every nonempty subfamily of fin(K) has selections covering those of a subfamily of K in Q"),
    ("back_and_forth", "for finitary K, each coherence notion equals its relativization to Q"),
    ("cor_fincoh_coh", "for finitary operators and finitary K, coherence equals finite coherence"),
    ("cor_fincoh_bincoh", "for incremental operators and finitary K, finite coherence equals 2-coherence"),
    ("cor_coh_bincoh", "for finitary incremental operators and finitary K, coherence, finite and 2-coherence agree"),
    ("theorem2", "for unitary operators, K is 1-coherent iff K = K_D for a nonempty set of coherent D"),
    ("theorem3", "for finitary operators and K in Q, finite coherence in Q iff K = K_D restricted to Q"),
    ("theorem4", "for finitary incremental operators and K in Q, 2-coherence in Q iff K = K_D restricted to Q"),
    ("theorem5", "for unitary operators and K in Q, 1-coherence in Q iff K = K_D restricted to Q"),
];

fn dispatch(id: &str) -> Option<(&'static str, ClaimFn)> {
    let f: ClaimFn = match id {
        "prop1" => suite::prop1,
        "prop2" => suite::prop2,
        "prop3" => suite::prop3,
        "prop4" => suite::prop4,
        "lemma2" => suite::lemma2,
        "lemma3" => suite::lemma3,
        "theorem1" => suite::theorem1,
        "prop5" => suite::prop5,
        "prop6" => suite::prop6,
        "cor_finitary" => suite::cor_finitary,
        "prop_incremental" => suite::prop_incremental,
        "cor_combined" => suite::cor_combined,
        "fin_finitary" => suite::fin_finitary,
        "fin_iff" => suite::fin_iff,
        "fin_items" => suite::fin_items,
        "fin_selections" => suite::fin_selections,
        "back_and_forth" => suite::back_and_forth,
        "cor_fincoh_coh" => suite::cor_fincoh_coh,
        "cor_fincoh_bincoh" => suite::cor_fincoh_bincoh,
        "cor_coh_bincoh" => suite::cor_coh_bincoh,
        "theorem2" => suite::theorem2,
        "theorem3" => suite::theorem3,
        "theorem4" => suite::theorem4,
        "theorem5" => suite::theorem5,
        _ => return None,
    };
    let name = CLAIMS.iter().find(|(c, _)| *c == id).map(|(c, _)| *c)?;
    Some((name, f))
}

pub fn verify_claim(claim_id: &str, config: &InstanceConfig) -> Result<ClaimReport> {
    let (claim, f) = dispatch(claim_id).ok_or_else(|| Error::UnknownClaim(claim_id.to_string()))?;
    let mut scan = Scan {
        limit: config.budget.limit,
        instances: 0,
        skipped: Vec::new(),
    };
    let verdict = match f(&mut scan, config) {
        Ok(()) => Verdict::Verified,
        Err(Halt::Violated(detail)) => Verdict::Violated(Certificate::Claim {
            claim: claim.to_string(),
            detail,
        }),
        Err(Halt::Exhausted) => Verdict::Inconclusive(format!(
            "instance budget of {} exhausted",
            config.budget.limit
        )),
        Err(Halt::Failed(e)) => return Err(e),
    };
    Ok(ClaimReport {
        claim,
        verdict,
        instances: scan.instances,
        skipped: scan.skipped,
    })
}

/// Runs several claims in parallel; reports come back in the order asked for.
pub fn verify_claims(ids: &[&str], config: &InstanceConfig) -> Result<Vec<ClaimReport>> {
    ids.par_iter().map(|id| verify_claim(id, config)).collect()
}

pub(crate) enum Halt {
    Violated(String),
    Exhausted,
    Failed(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Failed(e)
    }
}

pub(crate) type Step = std::result::Result<(), Halt>;

pub(crate) struct Scan {
    limit: u64,
    instances: u64,
    skipped: Vec<String>,
}

impl Scan {
    /// Counts one instance; fails it with `detail` unless `ok`.
    pub(crate) fn ensure(&mut self, ok: bool, detail: impl FnOnce() -> String) -> Step {
        self.instances += 1;
        if !ok {
            return Err(Halt::Violated(detail()));
        }
        if self.instances >= self.limit {
            return Err(Halt::Exhausted);
        }
        Ok(())
    }

    pub(crate) fn skip(&mut self, what: String) {
        self.skipped.push(what);
    }
}

/// An operator seed built and probed.
pub(crate) struct Op {
    pub name: &'static str,
    pub universe: Universe,
    pub cl: ClosureOperator,
    pub unitary: bool,
    pub finitary: bool,
    pub incremental: bool,
}

pub(crate) fn build_ops(config: &InstanceConfig) -> Result<Vec<Op>> {
    let seeds = match &config.custom {
        Some(custom) => {
            if let Some(bad) = custom.iter().find(|s| s.universe.len() != config.size) {
                return Err(Error::WrongUniverse(format!(
                    "seed `{}` has {} things, expected {}",
                    bad.name,
                    bad.universe.len(),
                    config.size
                )));
            }
            custom.clone()
        }
        None => operator_seeds(config.size)?,
    };
    if let Some(wanted) = &config.operators {
        if let Some(bad) = wanted.iter().find(|w| !seeds.iter().any(|s| s.name == w.as_str())) {
            return Err(Error::UnknownSeed(bad.clone()));
        }
    }
    seeds
        .into_iter()
        .filter(|s| config.operators.as_ref().is_none_or(|w| w.iter().any(|x| x == s.name)))
        .map(|s| {
            let cl = s.build()?;
            let p = cl.properties()?.clone();
            Ok(Op {
                name: s.name,
                universe: s.universe,
                cl,
                unitary: p.unitary.holds(),
                finitary: p.finitary.holds(),
                incremental: p.incremental.holds(),
            })
        })
        .collect()
}
