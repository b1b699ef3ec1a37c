use crate::closure::ClosureOperator;
use crate::error::Result;
use crate::model::{Assessment, ThingSet};
use crate::verdict::{Certificate, SdtAxiom, Verdict};

/// Checks D1-D3 in order and reports the first failure.
pub fn check_sdt(d: ThingSet, assessment: &Assessment, cl: &ClosureOperator) -> Result<Verdict> {
    cl.require_laws()?;
    Ok(match sdt_violation(d, assessment, cl) {
        Some((axiom, thing)) => Verdict::Violated(Certificate::Sdt { axiom, thing }),
        None => Verdict::Verified,
    })
}

pub(crate) fn sdt_violation(
    d: ThingSet,
    assessment: &Assessment,
    cl: &ClosureOperator,
) -> Option<(SdtAxiom, usize)> {
    if let Some(t) = assessment.a_not.intersection(d).first() {
        return Some((SdtAxiom::D1, t));
    }
    if let Some(t) = assessment.a_des.difference(d).first() {
        return Some((SdtAxiom::D2, t));
    }
    if let Some(t) = cl.apply(d).difference(d).first() {
        return Some((SdtAxiom::D3, t));
    }
    None
}

/// True iff the cited thing still breaks the cited axiom for `d`.
pub fn replay_sdt(
    d: ThingSet,
    assessment: &Assessment,
    cl: &ClosureOperator,
    axiom: SdtAxiom,
    thing: usize,
) -> bool {
    match axiom {
        SdtAxiom::D1 => d.contains(thing) && assessment.a_not.contains(thing),
        SdtAxiom::D2 => assessment.a_des.contains(thing) && !d.contains(thing),
        SdtAxiom::D3 => cl.apply(d).contains(thing) && !d.contains(thing),
    }
}

/// Whether any coherent model exists: `cl(A_des) ∩ A_not = ∅`.
pub fn coherence_possible(assessment: &Assessment, cl: &ClosureOperator) -> Result<bool> {
    cl.require_laws()?;
    Ok(!cl.apply(assessment.a_des).meets(assessment.a_not))
}
