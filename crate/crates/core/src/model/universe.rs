use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::set::{Family, ThingSet, MAX_THINGS};
use crate::vector::RationalVector;

/// Default cap on the number of things in a universe.
pub const DEFAULT_THING_CAP: usize = 16;

/// How the coordinates of rational-vector payloads are labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectorLayout {
    /// One coordinate per label (gamble states, or lottery prizes).
    Flat(Vec<String>),
    /// Horse lotteries: a state x prize grid, flattened row-major (one row per state).
    Grid {
        states: Vec<String>,
        prizes: Vec<String>,
    },
}

impl VectorLayout {
    pub fn dimension(&self) -> usize {
        match self {
            VectorLayout::Flat(labels) => labels.len(),
            VectorLayout::Grid { states, prizes } => states.len() * prizes.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PayloadKind {
    Opaque,
    PreferencePair,
    RationalVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Opaque,
    /// Each thing is an ordered pair `(better, worse)` of option indices.
    PreferencePairs {
        options: Vec<String>,
        pairs: Vec<(usize, usize)>,
    },
    RationalVectors {
        layout: VectorLayout,
        vectors: Vec<RationalVector>,
    },
}

impl Payload {
    pub fn kind(&self) -> PayloadKind {
        match self {
            Payload::Opaque => PayloadKind::Opaque,
            Payload::PreferencePairs { .. } => PayloadKind::PreferencePair,
            Payload::RationalVectors { .. } => PayloadKind::RationalVector,
        }
    }
}

/// A finite, ordered catalog of things.
#[derive(Debug, Clone)]
pub struct Universe {
    things: Vec<String>,
    index: HashMap<String, usize>,
    payload: Payload,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.things == other.things && self.payload == other.payload
    }
}

impl Eq for Universe {}

impl Universe {
    pub fn new(things: Vec<String>, payload: Payload) -> Result<Self> {
        Self::with_cap(things, payload, DEFAULT_THING_CAP)
    }

    pub fn with_cap(things: Vec<String>, payload: Payload, cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_THINGS);
        if things.len() > cap {
            return Err(Error::UniverseTooLarge {
                size: things.len(),
                cap,
            });
        }
        let mut index = HashMap::with_capacity(things.len());
        for (i, id) in things.iter().enumerate() {
            if id.is_empty() {
                return Err(Error::MalformedDocument("empty thing id".into()));
            }
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::MalformedDocument(format!("duplicate thing id `{id}`")));
            }
        }
        validate_payload(things.len(), &payload)?;
        Ok(Universe {
            things,
            index,
            payload,
        })
    }

    pub fn opaque<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(ids.into_iter().map(Into::into).collect(), Payload::Opaque)
    }

    /// A universe whose things are the given ordered pairs of options, named `(a,b)`.
    pub fn preference_pairs(options: Vec<String>, pairs: Vec<(usize, usize)>) -> Result<Self> {
        Self::preference_pairs_with_cap(options, pairs, DEFAULT_THING_CAP)
    }

    pub fn preference_pairs_with_cap(
        options: Vec<String>,
        pairs: Vec<(usize, usize)>,
        cap: usize,
    ) -> Result<Self> {
        let ids = pairs
            .iter()
            .map(|&(a, b)| {
                let name = |o: usize| options.get(o).cloned().unwrap_or_else(|| format!("#{o}"));
                format!("({},{})", name(a), name(b))
            })
            .collect();
        Self::with_cap(ids, Payload::PreferencePairs { options, pairs }, cap)
    }

    /// All `|options|^2` ordered pairs, row-major.
    pub fn all_pairs(options: Vec<String>) -> Result<Self> {
        let n = options.len();
        let pairs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        Self::preference_pairs_with_cap(options, pairs, MAX_THINGS)
    }

    pub fn vectors(
        ids: Vec<String>,
        layout: VectorLayout,
        vectors: Vec<RationalVector>,
    ) -> Result<Self> {
        Self::new(ids, Payload::RationalVectors { layout, vectors })
    }

    pub fn len(&self) -> usize {
        self.things.len()
    }

    pub fn is_empty(&self) -> bool {
        self.things.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.things
    }

    pub fn id(&self, t: usize) -> &str {
        &self.things[t]
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownThing(id.to_string()))
    }

    pub fn full(&self) -> ThingSet {
        ThingSet::full(self.len())
    }

    pub fn powerset(&self) -> Family {
        Family::powerset(self.len())
    }

    pub fn set<S: AsRef<str>>(&self, ids: impl IntoIterator<Item = S>) -> Result<ThingSet> {
        ids.into_iter()
            .map(|id| self.index_of(id.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(ThingSet::from_indices)
    }

    pub fn family<S: AsRef<str>, I: IntoIterator<Item = S>>(
        &self,
        sets: impl IntoIterator<Item = I>,
    ) -> Result<Family> {
        sets.into_iter()
            .map(|s| self.set(s))
            .collect::<Result<Vec<_>>>()
            .map(Family::from_sets)
    }

    /// Member ids in index order.
    pub fn names(&self, s: ThingSet) -> Vec<&str> {
        s.iter().map(|t| self.id(t)).collect()
    }

    pub fn render(&self, s: ThingSet) -> String {
        format!("{{{}}}", self.names(s).join(", "))
    }

    pub fn render_family(&self, f: &Family) -> String {
        let parts: Vec<String> = f.iter().map(|s| self.render(s)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Preference payload, if this is a universe of ordered pairs.
    pub fn pairs(&self) -> Option<(&[String], &[(usize, usize)])> {
        match &self.payload {
            Payload::PreferencePairs { options, pairs } => Some((options, pairs)),
            _ => None,
        }
    }

    pub fn rational_vectors(&self) -> Option<(&VectorLayout, &[RationalVector])> {
        match &self.payload {
            Payload::RationalVectors { layout, vectors } => Some((layout, vectors)),
            _ => None,
        }
    }
}

fn validate_payload(n: usize, payload: &Payload) -> Result<()> {
    match payload {
        Payload::Opaque => Ok(()),
        Payload::PreferencePairs { options, pairs } => {
            if pairs.len() != n {
                return Err(Error::PayloadMismatch(format!(
                    "{} pairs for {n} things",
                    pairs.len()
                )));
            }
            let mut seen = std::collections::HashSet::new();
            for &(a, b) in pairs {
                if a >= options.len() || b >= options.len() {
                    return Err(Error::PayloadMismatch(format!(
                        "pair ({a},{b}) outside the {} declared options",
                        options.len()
                    )));
                }
                if !seen.insert((a, b)) {
                    return Err(Error::PayloadMismatch(format!(
                        "pair ({},{}) declared twice",
                        options[a], options[b]
                    )));
                }
            }
            Ok(())
        }
        Payload::RationalVectors { layout, vectors } => {
            if vectors.len() != n {
                return Err(Error::PayloadMismatch(format!(
                    "{} vectors for {n} things",
                    vectors.len()
                )));
            }
            let dim = layout.dimension();
            if dim == 0 {
                return Err(Error::PayloadMismatch("vector layout has no coordinates".into()));
            }
            for v in vectors {
                if v.dim() != dim {
                    return Err(Error::PayloadMismatch(format!(
                        "vector of length {} in a layout of dimension {dim}",
                        v.dim()
                    )));
                }
            }
            Ok(())
        }
    }
}
