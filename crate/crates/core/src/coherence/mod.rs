//! Coherence of sets of desirable things and of sets of desirable sets.

mod enumerate;
pub mod realize;
mod sds;
mod sdt;

pub use enumerate::{
    candidate_families, enumerate_coherent_sds, enumerate_coherent_sds_with_cap, enumerate_coherent_sdts,
    enumerate_coherent_sdts_with_cap, SDS_FULL_ENUMERATION_CAP, SDS_WEAK_ENUMERATION_CAP, SDT_ENUMERATION_CAP,
};
pub use sds::{
    check_axiom, check_production, check_production_plain, check_sds, choice_indices, replay_sds, Axiom, Production,
    Variant,
};
pub use sdt::{check_sdt, coherence_possible, replay_sdt};
