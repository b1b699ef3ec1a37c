//! Uniform results for every checker, with replayable certificates.

use std::fmt;

use crate::model::ThingSet;

/// Work limit for checks that may not finish exhaustively, plus the seed
/// used when they fall back to sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
    pub seed: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 1 << 22;

    pub fn new(limit: u64) -> Self {
        Budget { limit, seed: 0 }
    }

    pub fn unlimited() -> Self {
        Budget {
            limit: u64::MAX,
            seed: 0,
        }
    }

    #[must_use]
    pub fn with_seed(self, seed: u64) -> Self {
        Budget { seed, ..self }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Budget::DEFAULT_LIMIT)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Violated(Certificate),
    Inconclusive(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Violated(c) => Some(c),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Verified => "Verified",
            Verdict::Violated(_) => "Violated",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    Extensive,
    Monotone,
    Idempotent,
    Empty,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Extensive => "extensive",
            Law::Monotone => "monotone",
            Law::Idempotent => "idempotent",
            Law::Empty => "empty",
        }
    }
}

/// A closure-law breach. `b` is the larger set for monotonicity and `cl(a)` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub a: ThingSet,
    pub b: ThingSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SdtAxiom {
    D1,
    D2,
    D3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SdsAxiom {
    K1,
    K2,
    K3,
    K4,
    K5,
}

/// Which production axiom a certificate is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strength {
    /// All nonempty subfamilies (identical to `Finite` on finite universes).
    Full,
    Finite,
    /// Pairs of members, indexed by ordered pairs of their things.
    Two,
    /// Single members, indexed by their things.
    One,
}

impl Strength {
    pub const ALL: [Strength; 4] = [Strength::Full, Strength::Finite, Strength::Two, Strength::One];

    pub fn name(self) -> &'static str {
        match self {
            Strength::Full => "full",
            Strength::Finite => "finite",
            Strength::Two => "two",
            Strength::One => "one",
        }
    }

    pub fn parse(s: &str) -> Option<Strength> {
        Strength::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// The index of a single choice in a production.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChoiceIndex {
    Selection(ThingSet),
    Pair(usize, usize),
    Single(usize),
}

impl ChoiceIndex {
    /// The set whose closure bounds the choice.
    pub fn base(self) -> ThingSet {
        match self {
            ChoiceIndex::Selection(s) => s,
            ChoiceIndex::Pair(a, b) => ThingSet::singleton(a).with(b),
            ChoiceIndex::Single(a) => ThingSet::singleton(a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Choice {
    pub index: ChoiceIndex,
    pub chosen: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SdsViolation {
    EmptySet,
    NotUpward {
        member: ThingSet,
        superset: ThingSet,
    },
    NotRemoval {
        member: ThingSet,
        reduced: ThingSet,
    },
    MissingDesirable {
        thing: usize,
    },
    /// A produced set that should be in `K` but is not. For `Two`, `sources`
    /// is `[A, B]` (possibly equal); otherwise it is the subfamily used.
    Production {
        strength: Strength,
        sources: Vec<ThingSet>,
        produced: ThingSet,
        choices: Vec<Choice>,
    },
}

impl SdsViolation {
    pub fn axiom(&self) -> SdsAxiom {
        match self {
            SdsViolation::EmptySet => SdsAxiom::K1,
            SdsViolation::NotUpward { .. } => SdsAxiom::K2,
            SdsViolation::NotRemoval { .. } => SdsAxiom::K3,
            SdsViolation::MissingDesirable { .. } => SdsAxiom::K4,
            SdsViolation::Production { .. } => SdsAxiom::K5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Law(LawViolation),
    Sdt { axiom: SdtAxiom, thing: usize },
    Sds(SdsViolation),
    /// A set required to be in the family but absent from it.
    MissingRequiredSet(ThingSet),
    HorseLottery { thing: usize, reason: String },
    Claim { claim: String, detail: String },
}

impl Certificate {
    pub fn label(&self) -> String {
        match self {
            Certificate::Law(v) => format!("law:{}", v.law.name()),
            Certificate::Sdt { axiom, .. } => format!("{axiom:?}"),
            Certificate::Sds(v) => match v {
                SdsViolation::Production { strength, .. } => match strength {
                    Strength::Full => "K5".into(),
                    Strength::Finite => "K5fin".into(),
                    Strength::Two => "K5bin".into(),
                    Strength::One => "K5un".into(),
                },
                other => format!("{:?}", other.axiom()),
            },
            Certificate::MissingRequiredSet(_) => "missing-required-set".into(),
            Certificate::HorseLottery { .. } => "horse-lottery".into(),
            Certificate::Claim { claim, .. } => format!("claim:{claim}"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => write!(f, "Verified"),
            Verdict::Violated(c) => write!(f, "Violated({})", c.label()),
            Verdict::Inconclusive(note) => write!(f, "Inconclusive({note})"),
        }
    }
}

