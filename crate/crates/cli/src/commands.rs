use desirable::claims::{self, Assessments, InstanceConfig, CLAIMS};
use desirable::closure::ClosureOperator;
use desirable::coherence::{check_sdt, check_sds, enumerate_coherent_sds, enumerate_coherent_sdts, Variant};
use desirable::document::ModelDocument;
use desirable::extension::{sdt_natural_extension, sds_natural_extension, Mode, Outcome, Witness};
use desirable::model::{ThingSet, VectorLayout};
use desirable::representation::{represent_total_orders, represent_with_budget};
use desirable::vector::validate_horse_lottery;
use desirable::verdict::{Budget, Strength, Verdict};
use desirable::{Error, Result};

use crate::report::{Report, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_VIOLATED};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Sdt,
    Sds,
}

/// The operator, or a report of why its laws do not hold.
fn lawful(command: &'static str, doc: &ModelDocument, budget: Budget) -> Result<std::result::Result<ClosureOperator, Report>> {
    let cl = doc.operator(budget)?;
    match cl.laws_verdict() {
        Some(Verdict::Verified) => Ok(Ok(cl)),
        Some(v) => {
            let mut r = Report::from_verdict(command, &doc.universe, &v);
            r.text("reason", "the closure operator breaks a closure law");
            Ok(Err(r))
        }
        None => unreachable!("law check runs on construction"),
    }
}

macro_rules! lawful_or_return {
    ($command:expr, $doc:expr, $budget:expr) => {
        match lawful($command, $doc, $budget)? {
            Ok(cl) => cl,
            Err(report) => return Ok(report),
        }
    };
}

fn missing(what: &str) -> Error {
    Error::MalformedDocument(format!("the document has no `{what}` entry"))
}

pub fn laws(doc: &ModelDocument, budget: Budget) -> Result<Report> {
    let u = &doc.universe;
    let cl = doc.operator(budget)?;
    let verdict = cl.laws_verdict().expect("law check runs on construction");
    let mut r = Report::from_verdict("laws", u, &verdict);
    r.text("closure", doc.closure.kind_name());
    r.count("things", u.len() as u64);
    if verdict.is_verified() {
        let p = cl.properties()?;
        r.text("unitary", p.unitary.name());
        r.text("finitary", p.finitary.name());
        r.text("incremental", p.incremental.name());
    }
    if let Some((VectorLayout::Grid { .. }, _)) = u.rational_vectors() {
        let horse = validate_horse_lottery(u)?;
        r.text("horse_lotteries", horse.status());
        if let Verdict::Violated(c) = &horse {
            let (text, value) = crate::report::certificate(u, c);
            r.field("horse_certificate", text, value);
            r.exit = r.exit.max(EXIT_VIOLATED);
        }
    }
    Ok(r)
}

pub fn check(doc: &ModelDocument, target: Target, variant: Option<Strength>, budget: Budget) -> Result<Report> {
    let u = &doc.universe;
    let cl = lawful_or_return!("check", doc, budget);
    let assessment = doc.assessment()?;
    match target {
        Target::Sdt => {
            let d = doc.sdt.ok_or_else(|| missing("sdt"))?;
            let mut r = Report::from_verdict("check", u, &check_sdt(d, &assessment, &cl)?);
            r.set("sdt", u, d);
            Ok(r)
        }
        Target::Sds => {
            let k = doc.sds.as_ref().ok_or_else(|| missing("sds"))?;
            let mut v = doc.variant();
            if let Some(s) = variant {
                v.strength = s;
            }
            let verdict = check_sds(k, &assessment, &cl, &v, budget)?;
            let mut r = Report::from_verdict("check", u, &verdict);
            r.text("variant", v.strength.name());
            r.family("sds", u, k);
            Ok(r)
        }
    }
}

pub fn extend(doc: &ModelDocument, target: Target, mode: Mode, budget: Budget) -> Result<Report> {
    let u = &doc.universe;
    let cl = lawful_or_return!("extend", doc, budget);
    let assessment = doc.assessment()?;
    let result = match target {
        Target::Sdt => sdt_natural_extension(doc.sdt.unwrap_or(ThingSet::EMPTY), &assessment, &cl)?,
        Target::Sds => {
            let base = doc.base.clone().unwrap_or_default();
            sds_natural_extension(&base, &assessment, &cl, mode, budget)?
        }
    };
    let mut r = match &result.outcome {
        Outcome::Extended(_) => Report::new("extend", "Extended", EXIT_OK),
        Outcome::Incoherent(_) => Report::new("extend", "Incoherent", EXIT_VIOLATED),
        Outcome::Inconclusive(_) => Report::new("extend", "Inconclusive", EXIT_INCONCLUSIVE),
    };
    if target == Target::Sds {
        r.text("rules", mode.name());
    }
    match &result.outcome {
        Outcome::Extended(_) => {
            if let Some(d) = result.things() {
                r.set("sdt", u, d);
            }
            if let Some(k) = result.sets() {
                r.count("members", k.len() as u64);
                r.family("sds", u, k);
                r.family("minimal", u, &k.minimal());
            }
        }
        Outcome::Incoherent(Witness::ForbiddenThing(t)) => {
            r.text("reason", &format!("{} is forced in but forbidden", u.id(*t)));
        }
        Outcome::Incoherent(Witness::EmptySet { via, .. }) => {
            let why = match via {
                Some(a) => format!("{} lies inside the forbidden things, so the empty set is forced in", u.render(*a)),
                None => "the base contains the empty set".into(),
            };
            r.text("reason", &why);
        }
        Outcome::Inconclusive(note) => r.text("reason", note),
    }
    Ok(r)
}

pub fn enumerate(doc: &ModelDocument, target: Target) -> Result<Report> {
    let u = &doc.universe;
    let cl = lawful_or_return!("enumerate", doc, Budget::default());
    let assessment = doc.assessment()?;
    let mut r = Report::new("enumerate", "Enumerated", EXIT_OK);
    match target {
        Target::Sdt => {
            let ds = enumerate_coherent_sdts(&assessment, &cl)?;
            r.count("count", ds.len() as u64);
            r.family("sdts", u, &ds);
        }
        Target::Sds => {
            let v = doc.variant();
            let ks = enumerate_coherent_sds(&assessment, &cl, &v)?;
            r.text("variant", v.strength.name());
            r.count("count", ks.len() as u64);
            r.families("sds", u, &ks);
        }
    }
    Ok(r)
}

pub fn represent(doc: &ModelDocument, orders: bool, budget: Budget) -> Result<Report> {
    let u = &doc.universe;
    if orders {
        // Without an explicit `sds`, the base is first closed under the binary rules.
        let (k, source) = match (&doc.sds, &doc.base) {
            (Some(k), _) => (k.clone(), "sds"),
            (None, Some(base)) => {
                let cl = lawful_or_return!("represent", doc, budget);
                let ext = sds_natural_extension(base, &doc.assessment()?, &cl, Mode::BinaryRules, budget)?;
                match ext.sets() {
                    Some(k) => (k.clone(), "base closed under binary rules"),
                    None => return Ok(Report::new("represent", "Incoherent", EXIT_VIOLATED)),
                }
            }
            (None, None) => return Err(missing("sds")),
        };
        let t = represent_total_orders(u, &k, budget)?;
        let mut r = Report::from_verdict("represent", u, &t.verdict);
        r.text("from", source);
        r.count("orders", t.orders.len() as u64);
        r.set_lines("total_orders", u, &t.orders);
        return Ok(r);
    }
    let k = doc.sds.as_ref().ok_or_else(|| missing("sds"))?;
    let cl = lawful_or_return!("represent", doc, budget);
    let assessment = doc.assessment()?;
    let verdict = check_sds(k, &assessment, &cl, &Variant::full(), budget)?;
    if !verdict.is_verified() {
        let mut r = Report::from_verdict("represent", u, &verdict);
        r.text("error", &Error::NotCoherent(verdict.to_string()).to_string());
        return Ok(r);
    }
    let rep = represent_with_budget(k, &assessment, &cl, budget)?;
    let exit = if rep.verified { EXIT_OK } else { EXIT_VIOLATED };
    let mut r = Report::new("represent", if rep.verified { "Verified" } else { "Violated" }, exit);
    r.family("d_k", u, &rep.d_k);
    r.family("largest", u, &rep.largest);
    r.flag("verified", rep.verified);
    Ok(r)
}

pub struct VerifyArgs {
    pub claims: Vec<String>,
    pub size: usize,
    pub operators: Option<Vec<String>>,
    pub assessments: usize,
    pub ignore_hypotheses: bool,
    pub limit: Option<u64>,
    pub seed: u64,
}

pub fn verify(args: &VerifyArgs) -> Result<Report> {
    let mut cfg = InstanceConfig::new(args.size)
        .assessments(Assessments::Seeded(args.assessments))
        .seed(args.seed);
    if let Some(ops) = &args.operators {
        cfg = cfg.operators(ops.iter().cloned());
    }
    if let Some(limit) = args.limit {
        cfg = cfg.budget(Budget::new(limit));
    }
    if args.ignore_hypotheses {
        cfg = cfg.ignore_hypotheses();
    }
    let ids: Vec<&str> = if args.claims.iter().any(|c| c == "all") {
        CLAIMS.iter().map(|(id, _)| *id).collect()
    } else {
        args.claims.iter().map(String::as_str).collect()
    };
    let reports = claims::verify_claims(&ids, &cfg)?;
    let worst = reports
        .iter()
        .map(|rep| match rep.verdict {
            Verdict::Verified => EXIT_OK,
            Verdict::Violated(_) => EXIT_VIOLATED,
            Verdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
        })
        .max_by_key(|&e| match e {
            EXIT_VIOLATED => 2,
            EXIT_INCONCLUSIVE => 1,
            _ => 0,
        })
        .unwrap_or(EXIT_OK);
    let status = match worst {
        EXIT_OK => "Verified",
        EXIT_VIOLATED => "Violated",
        _ => "Inconclusive",
    };
    let mut r = Report::new("verify", status, worst);
    r.count("size", args.size as u64);
    let mut lines = String::new();
    let mut values = Vec::new();
    for rep in &reports {
        let detail = match &rep.verdict {
            Verdict::Verified => String::new(),
            Verdict::Violated(c) => match c {
                desirable::verdict::Certificate::Claim { detail, .. } => detail.clone(),
                other => other.label(),
            },
            Verdict::Inconclusive(note) => note.clone(),
        };
        lines.push_str(&format!(
            "\n  {} {} ({} instances{}){}",
            rep.claim,
            rep.verdict.status(),
            rep.instances,
            if rep.skipped.is_empty() {
                String::new()
            } else {
                format!(", skipped: {}", rep.skipped.join("; "))
            },
            if detail.is_empty() { String::new() } else { format!(": {detail}") },
        ));
        values.push(serde_json::json!({
            "claim": rep.claim,
            "status": rep.verdict.status(),
            "instances": rep.instances,
            "skipped": rep.skipped,
            "detail": detail,
        }));
    }
    r.field("claims", lines, serde_json::Value::Array(values));
    Ok(r)
}

pub fn list_claims() -> Report {
    let mut r = Report::new("verify", "Listed", EXIT_OK);
    let text: String = CLAIMS.iter().map(|(id, what)| format!("\n  {id}: {what}")).collect();
    let value = CLAIMS
        .iter()
        .map(|(id, what)| serde_json::json!({"claim": id, "statement": what}))
        .collect();
    r.field("claims", text, serde_json::Value::Array(value));
    r
}
