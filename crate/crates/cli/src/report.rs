//! Reports shared by every subcommand, rendered as text or as JSON.

use desirable::model::{Family, ThingSet, Universe};
use desirable::verdict::{Certificate, Law, SdsViolation, Verdict};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATED: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_BAD_DOCUMENT: u8 = 65;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

pub struct Report {
    command: &'static str,
    status: String,
    pub exit: u8,
    fields: Vec<(String, String, Value)>,
}

impl Report {
    pub fn new(command: &'static str, status: impl Into<String>, exit: u8) -> Self {
        Report {
            command,
            status: status.into(),
            exit,
            fields: Vec::new(),
        }
    }

    /// Status and exit code taken from a verdict.
    pub fn from_verdict(command: &'static str, u: &Universe, verdict: &Verdict) -> Self {
        let exit = match verdict {
            Verdict::Verified => EXIT_OK,
            Verdict::Violated(_) => EXIT_VIOLATED,
            Verdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
        };
        let mut r = Report::new(command, verdict.status(), exit);
        r.verdict_details(u, verdict);
        r
    }

    pub fn error(command: &'static str, message: &str, exit: u8) -> Self {
        let mut r = Report::new(command, "Error", exit);
        r.text("error", message);
        r
    }

    pub fn verdict_details(&mut self, u: &Universe, verdict: &Verdict) {
        match verdict {
            Verdict::Verified => {}
            Verdict::Violated(c) => {
                let (text, value) = certificate(u, c);
                self.field("certificate", text, value);
            }
            Verdict::Inconclusive(note) => self.text("reason", note),
        }
    }

    pub fn field(&mut self, key: &str, text: String, value: Value) {
        self.fields.push((key.to_string(), text, value));
    }

    pub fn text(&mut self, key: &str, s: &str) {
        self.field(key, s.to_string(), json!(s));
    }

    pub fn flag(&mut self, key: &str, b: bool) {
        self.field(key, b.to_string(), json!(b));
    }

    pub fn count(&mut self, key: &str, n: u64) {
        self.field(key, n.to_string(), json!(n));
    }

    pub fn set(&mut self, key: &str, u: &Universe, s: ThingSet) {
        self.field(key, u.render(s), set_value(u, s));
    }

    pub fn family(&mut self, key: &str, u: &Universe, f: &Family) {
        self.field(key, u.render_family(f), family_value(u, f));
    }

    /// One text line per family; a JSON array of families.
    pub fn families(&mut self, key: &str, u: &Universe, fs: &[Family]) {
        let text = fs
            .iter()
            .map(|f| format!("\n  {}", u.render_family(f)))
            .collect::<String>();
        let value = Value::Array(fs.iter().map(|f| family_value(u, f)).collect());
        self.field(key, text, value);
    }

    /// One text line per set; a JSON array of sets.
    pub fn set_lines(&mut self, key: &str, u: &Universe, f: &Family) {
        let text = f.iter().map(|s| format!("\n  {}", u.render(s))).collect::<String>();
        self.field(key, text, family_value(u, f));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = format!("{}: {}\n", self.command, self.status);
                for (key, text, _) in &self.fields {
                    if text.starts_with('\n') {
                        out.push_str(&format!("{key}:{text}\n"));
                    } else {
                        out.push_str(&format!("{key}: {text}\n"));
                    }
                }
                out
            }
            Format::Structured => {
                let mut fields = Map::new();
                for (key, _, value) in &self.fields {
                    fields.insert(key.clone(), value.clone());
                }
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "status": self.status,
                    "exit_code": self.exit,
                    "report": fields,
                });
                let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
                out.push('\n');
                out
            }
        }
    }
}

pub fn set_value(u: &Universe, s: ThingSet) -> Value {
    json!(u.names(s))
}

pub fn family_value(u: &Universe, f: &Family) -> Value {
    Value::Array(f.iter().map(|s| set_value(u, s)).collect())
}

/// Human text and JSON for a counterexample, with things named.
pub fn certificate(u: &Universe, c: &Certificate) -> (String, Value) {
    let label = c.label();
    let r = |s: ThingSet| u.render(s);
    let (text, detail) = match c {
        Certificate::Law(v) => {
            let text = match v.law {
                Law::Monotone => format!(
                    "{} is inside {} but its closure is not inside the closure of the latter",
                    r(v.a),
                    r(v.b)
                ),
                Law::Extensive => format!("closure of {} is {}, which drops members", r(v.a), r(v.b)),
                Law::Idempotent => format!("closure of {} is {}, which is not closed", r(v.a), r(v.b)),
                Law::Empty => format!("closure of the empty set is {}", r(v.b)),
            };
            (text, json!({"law": v.law.name(), "a": set_value(u, v.a), "b": set_value(u, v.b)}))
        }
        Certificate::Sdt { axiom, thing } => (
            format!("{axiom:?} fails at {}", u.id(*thing)),
            json!({"axiom": format!("{axiom:?}"), "thing": u.id(*thing)}),
        ),
        Certificate::Sds(v) => match v {
            SdsViolation::EmptySet => ("the empty set is a member".into(), json!({})),
            SdsViolation::NotUpward { member, superset } => (
                format!("{} is a member but its superset {} is not", r(*member), r(*superset)),
                json!({"member": set_value(u, *member), "superset": set_value(u, *superset)}),
            ),
            SdsViolation::NotRemoval { member, reduced } => (
                format!("{} is a member but {} is not", r(*member), r(*reduced)),
                json!({"member": set_value(u, *member), "reduced": set_value(u, *reduced)}),
            ),
            SdsViolation::MissingDesirable { thing } => (
                format!("{{{}}} is not a member", u.id(*thing)),
                json!({"thing": u.id(*thing)}),
            ),
            SdsViolation::Production {
                strength,
                sources,
                produced,
                choices,
            } => {
                let sources_f = Family::from_sets(sources.iter().copied());
                let picks: Vec<String> = choices
                    .iter()
                    .map(|ch| format!("{} from cl{}", u.id(ch.chosen), r(ch.index.base())))
                    .collect();
                let text = format!(
                    "from {} the set {} is produced but is not a member (choices: {})",
                    u.render_family(&sources_f),
                    r(*produced),
                    picks.join("; ")
                );
                let choice_values: Vec<Value> = choices
                    .iter()
                    .map(|ch| json!({"base": set_value(u, ch.index.base()), "chosen": u.id(ch.chosen)}))
                    .collect();
                (
                    text,
                    json!({
                        "strength": strength.name(),
                        "sources": sources.iter().map(|&s| set_value(u, s)).collect::<Vec<_>>(),
                        "produced": set_value(u, *produced),
                        "choices": choice_values,
                    }),
                )
            }
        },
        Certificate::MissingRequiredSet(s) => (
            format!("required set {} is not a member", r(*s)),
            json!({"set": set_value(u, *s)}),
        ),
        Certificate::HorseLottery { thing, reason } => (
            format!("{} is not a horse lottery: {reason}", u.id(*thing)),
            json!({"thing": u.id(*thing), "reason": reason}),
        ),
        Certificate::Claim { claim, detail } => (detail.clone(), json!({"claim": claim, "detail": detail})),
    };
    let mut value = json!({"label": label});
    if let (Value::Object(out), Value::Object(more)) = (&mut value, detail) {
        out.extend(more);
    }
    (format!("{label}: {text}"), value)
}
