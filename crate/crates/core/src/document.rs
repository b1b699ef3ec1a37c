//! The JSON model document: one problem instance per file.
//!
//! Parsing resolves every thing id against the declared universe; writing
//! emits a canonical form (sets in thing-index order, families in bit order)
//! so that `parse(write(parse(x)))` writes byte-identical text.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::closure::{ClosureOperator, ClosureSpec};
use crate::coherence::Variant;
use crate::error::{Error, Result};
use crate::model::{Assessment, Family, Payload, QDomain, ThingSet, Universe, VectorLayout, DEFAULT_THING_CAP};
use crate::vector::{preset_assessment, HullKind, Preset, RationalVector};
use crate::verdict::{Budget, Strength};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssessmentSource {
    Explicit(Assessment),
    Preset(Preset),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DocOptions {
    pub variant: Option<Strength>,
    pub q: Option<QDomain>,
    pub budget: Option<u64>,
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    /// Free text describing the instance.
    pub note: Option<String>,
    pub universe: Universe,
    pub closure: ClosureSpec,
    pub assessment: AssessmentSource,
    pub sdt: Option<ThingSet>,
    pub sds: Option<Family>,
    pub base: Option<Family>,
    pub options: DocOptions,
}

impl ModelDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
        raw.resolve()
    }

    /// Canonical pretty-printed JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&RawDocument::from_model(self)).expect("document serializes");
        out.push('\n');
        out
    }

    /// The assessment, with presets evaluated against the universe.
    pub fn assessment(&self) -> Result<Assessment> {
        match &self.assessment {
            AssessmentSource::Explicit(a) => Ok(*a),
            AssessmentSource::Preset(p) => preset_assessment(&self.universe, p),
        }
    }

    pub fn variant(&self) -> Variant {
        Variant::new(
            self.options.variant.unwrap_or(Strength::Full),
            self.options.q.clone().unwrap_or(QDomain::Full),
        )
    }

    /// The document's budget, unless `limit` overrides it.
    pub fn budget(&self, limit: Option<u64>, seed: u64) -> Budget {
        let limit = limit.or(self.options.budget).unwrap_or(Budget::DEFAULT_LIMIT);
        Budget::new(limit).with_seed(seed)
    }

    /// Builds the closure operator and runs its law check.
    pub fn operator(&self, budget: Budget) -> Result<ClosureOperator> {
        ClosureOperator::with_budget(&self.universe, self.closure.clone(), budget)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    universe: RawUniverse,
    closure: RawClosure,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    assessment: Option<RawAssessment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sdt: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sds: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    options: Option<RawOptions>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawKind {
    Opaque,
    PreferencePair,
    RationalVector,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUniverse {
    things: Vec<String>,
    payload_kind: RawKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    payloads: Option<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPairs {
    options: Vec<String>,
    /// `[better, worse]`, one per thing.
    pairs: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVectors {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    states: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prizes: Option<Vec<String>>,
    /// One row of coordinates per thing; grids are flattened state by state.
    vectors: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTableEntry {
    set: Vec<String>,
    image: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawClosure {
    Identity {},
    /// `images[t]` is added whenever thing `t` is present.
    Unitary { images: Vec<Vec<String>> },
    Table { table: Vec<RawTableEntry> },
    Transitive {},
    Posi {},
    Chull {},
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawAssessment {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    not: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    des: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    positive: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    negative: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawQ {
    Full {},
    CardBound { c: usize },
    Explicit { sets: Vec<Vec<String>> },
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<RawQ>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cap: Option<usize>,
}

fn payload_value<T: serde::de::DeserializeOwned>(v: Option<Value>, what: &str) -> Result<T> {
    let v = v.ok_or_else(|| Error::MalformedDocument(format!("{what} universe needs `payloads`")))?;
    serde_json::from_value(v).map_err(|e| Error::MalformedDocument(format!("payloads: {e}")))
}

fn option_index(options: &[String], name: &str) -> Result<usize> {
    options
        .iter()
        .position(|o| o == name)
        .ok_or_else(|| Error::PayloadMismatch(format!("option `{name}` is not declared")))
}

impl RawUniverse {
    fn resolve(self, cap: usize) -> Result<Universe> {
        let payload = match self.payload_kind {
            RawKind::Opaque => {
                if self.payloads.as_ref().is_some_and(|v| !v.is_null()) {
                    return Err(Error::PayloadMismatch("opaque things carry no payloads".into()));
                }
                Payload::Opaque
            }
            RawKind::PreferencePair => {
                let raw: RawPairs = payload_value(self.payloads, "preference_pair")?;
                let pairs = raw
                    .pairs
                    .iter()
                    .map(|[a, b]| Ok((option_index(&raw.options, a)?, option_index(&raw.options, b)?)))
                    .collect::<Result<Vec<_>>>()?;
                Payload::PreferencePairs {
                    options: raw.options,
                    pairs,
                }
            }
            RawKind::RationalVector => {
                let raw: RawVectors = payload_value(self.payloads, "rational_vector")?;
                let layout = match (raw.labels, raw.states, raw.prizes) {
                    (Some(labels), None, None) => VectorLayout::Flat(labels),
                    (None, Some(states), Some(prizes)) => VectorLayout::Grid { states, prizes },
                    _ => {
                        return Err(Error::MalformedDocument(
                            "vector payloads need either `labels` or both `states` and `prizes`".into(),
                        ))
                    }
                };
                let vectors = raw
                    .vectors
                    .iter()
                    .map(|v| RationalVector::parse(v))
                    .collect::<Result<Vec<_>>>()?;
                Payload::RationalVectors { layout, vectors }
            }
        };
        Universe::with_cap(self.things, payload, cap)
    }

    fn from_universe(u: &Universe) -> Self {
        let (payload_kind, payloads) = match u.payload() {
            Payload::Opaque => (RawKind::Opaque, None),
            Payload::PreferencePairs { options, pairs } => {
                let raw = RawPairs {
                    options: options.clone(),
                    pairs: pairs.iter().map(|&(a, b)| [options[a].clone(), options[b].clone()]).collect(),
                };
                (RawKind::PreferencePair, Some(to_value(raw)))
            }
            Payload::RationalVectors { layout, vectors } => {
                let (labels, states, prizes) = match layout {
                    VectorLayout::Flat(l) => (Some(l.clone()), None, None),
                    VectorLayout::Grid { states, prizes } => (None, Some(states.clone()), Some(prizes.clone())),
                };
                let raw = RawVectors {
                    labels,
                    states,
                    prizes,
                    vectors: vectors.iter().map(RationalVector::to_strings).collect(),
                };
                (RawKind::RationalVector, Some(to_value(raw)))
            }
        };
        RawUniverse {
            things: u.ids().to_vec(),
            payload_kind,
            payloads,
        }
    }
}

fn to_value<T: Serialize>(payload: T) -> Value {
    serde_json::to_value(payload).expect("payload serializes")
}

fn names(u: &Universe, s: ThingSet) -> Vec<String> {
    u.names(s).into_iter().map(str::to_string).collect()
}

fn family_names(u: &Universe, f: &Family) -> Vec<Vec<String>> {
    f.iter().map(|s| names(u, s)).collect()
}

impl RawClosure {
    fn resolve(self, u: &Universe) -> Result<ClosureSpec> {
        Ok(match self {
            RawClosure::Identity {} => ClosureSpec::Identity,
            RawClosure::Unitary { images } => {
                ClosureSpec::UnitaryLift(images.iter().map(|ids| u.set(ids)).collect::<Result<_>>()?)
            }
            RawClosure::Table { table } => {
                let n = u.len();
                if n > 16 {
                    return Err(Error::MalformedDocument("closure tables are limited to 16 things".into()));
                }
                let mut images: Vec<Option<ThingSet>> = vec![None; 1 << n];
                for entry in &table {
                    let set = u.set(&entry.set)?;
                    let slot = &mut images[set.bits() as usize];
                    if slot.is_some() {
                        return Err(Error::MalformedDocument(format!("table lists {} twice", u.render(set))));
                    }
                    *slot = Some(u.set(&entry.image)?);
                }
                let missing = images.iter().position(Option::is_none);
                if let Some(bits) = missing {
                    let set = ThingSet::from_bits(bits as u64);
                    return Err(Error::MalformedDocument(format!("table has no image for {}", u.render(set))));
                }
                ClosureSpec::Table(images.into_iter().flatten().collect())
            }
            RawClosure::Transitive {} => ClosureSpec::Transitive,
            RawClosure::Posi {} => ClosureSpec::Trace(HullKind::Posi),
            RawClosure::Chull {} => ClosureSpec::Trace(HullKind::Chull),
        })
    }

    fn from_spec(spec: &ClosureSpec, u: &Universe) -> Self {
        match spec {
            ClosureSpec::Identity => RawClosure::Identity {},
            ClosureSpec::UnitaryLift(images) => RawClosure::Unitary {
                images: images.iter().map(|&s| names(u, s)).collect(),
            },
            ClosureSpec::Table(table) => RawClosure::Table {
                table: table
                    .iter()
                    .enumerate()
                    .map(|(bits, &image)| RawTableEntry {
                        set: names(u, ThingSet::from_bits(bits as u64)),
                        image: names(u, image),
                    })
                    .collect(),
            },
            ClosureSpec::Transitive => RawClosure::Transitive {},
            ClosureSpec::Trace(HullKind::Posi) => RawClosure::Posi {},
            ClosureSpec::Trace(HullKind::Chull) => RawClosure::Chull {},
        }
    }
}

impl RawAssessment {
    fn resolve(self, u: &Universe) -> Result<AssessmentSource> {
        match self.preset {
            None => {
                if self.positive.is_some() || self.negative.is_some() {
                    return Err(Error::MalformedDocument("`positive`/`negative` belong to the lottery preset".into()));
                }
                let a_not = u.set(self.not.unwrap_or_default())?;
                let a_des = u.set(self.des.unwrap_or_default())?;
                Ok(AssessmentSource::Explicit(Assessment::new(a_not, a_des)))
            }
            Some(name) => {
                if self.not.is_some() || self.des.is_some() {
                    return Err(Error::MalformedDocument("an assessment is either explicit or a preset".into()));
                }
                let lottery_fields = self.positive.is_some() || self.negative.is_some();
                let preset = match name.as_str() {
                    "gambles_default" => Preset::GamblesDefault,
                    "gambles_inf_positive" => Preset::GamblesInfPositive,
                    "none" => Preset::None,
                    "lottery" => Preset::Lottery {
                        positive: self.positive.unwrap_or_default(),
                        negative: self.negative.unwrap_or_default(),
                    },
                    other => return Err(Error::MalformedDocument(format!("unknown assessment preset `{other}`"))),
                };
                if !matches!(preset, Preset::Lottery { .. }) && lottery_fields {
                    return Err(Error::MalformedDocument("`positive`/`negative` belong to the lottery preset".into()));
                }
                Ok(AssessmentSource::Preset(preset))
            }
        }
    }

    fn from_source(src: &AssessmentSource, u: &Universe) -> Self {
        match src {
            AssessmentSource::Explicit(a) => RawAssessment {
                not: Some(names(u, a.a_not)),
                des: Some(names(u, a.a_des)),
                ..Default::default()
            },
            AssessmentSource::Preset(p) => {
                let (positive, negative) = match p {
                    Preset::Lottery { positive, negative } => (Some(positive.clone()), Some(negative.clone())),
                    _ => (None, None),
                };
                RawAssessment {
                    preset: Some(p.name().to_string()),
                    positive,
                    negative,
                    ..Default::default()
                }
            }
        }
    }
}

fn resolve_family(u: &Universe, sets: &[Vec<String>]) -> Result<Family> {
    u.family(sets)
}

impl RawDocument {
    fn resolve(self) -> Result<ModelDocument> {
        let raw_opts = self.options.unwrap_or_default();
        let cap = raw_opts.cap.unwrap_or(DEFAULT_THING_CAP);
        let universe = self.universe.resolve(cap)?;
        let closure = self.closure.resolve(&universe)?;
        let assessment = self.assessment.unwrap_or_default().resolve(&universe)?;
        let sdt = self.sdt.map(|ids| universe.set(ids)).transpose()?;
        let sds = self.sds.map(|f| resolve_family(&universe, &f)).transpose()?;
        let base = self.base.map(|f| resolve_family(&universe, &f)).transpose()?;
        let variant = raw_opts
            .variant
            .map(|v| Strength::parse(&v).ok_or_else(|| Error::MalformedDocument(format!("unknown variant `{v}`"))))
            .transpose()?;
        let q = raw_opts
            .q
            .map(|q| -> Result<QDomain> {
                Ok(match q {
                    RawQ::Full {} => QDomain::Full,
                    RawQ::CardBound { c } => QDomain::CardBound(c),
                    RawQ::Explicit { sets } => QDomain::Explicit(resolve_family(&universe, &sets)?),
                })
            })
            .transpose()?;
        Ok(ModelDocument {
            note: self.note,
            universe,
            closure,
            assessment,
            sdt,
            sds,
            base,
            options: DocOptions {
                variant,
                q,
                budget: raw_opts.budget,
                cap: raw_opts.cap,
            },
        })
    }

    fn from_model(m: &ModelDocument) -> Self {
        let u = &m.universe;
        let o = &m.options;
        let options = RawOptions {
            variant: o.variant.map(|v| v.name().to_string()),
            q: o.q.as_ref().map(|q| match q {
                QDomain::Full => RawQ::Full {},
                QDomain::CardBound(c) => RawQ::CardBound { c: *c },
                QDomain::Explicit(f) => RawQ::Explicit {
                    sets: family_names(u, f),
                },
            }),
            budget: o.budget,
            cap: o.cap,
        };
        let empty = *o == DocOptions::default();
        RawDocument {
            note: m.note.clone(),
            universe: RawUniverse::from_universe(u),
            closure: RawClosure::from_spec(&m.closure, u),
            assessment: Some(RawAssessment::from_source(&m.assessment, u)),
            sdt: m.sdt.map(|s| names(u, s)),
            sds: m.sds.as_ref().map(|f| family_names(u, f)),
            base: m.base.as_ref().map(|f| family_names(u, f)),
            options: (!empty).then_some(options),
        }
    }
}
