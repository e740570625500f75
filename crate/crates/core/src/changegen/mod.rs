//! Update and revision functions built from pre-orders over assignments,
//! the canonical models that realize them, and round-trip checks.

mod audit;
mod canonical;
mod order;
mod roundtrip;
mod table;
mod world;

pub use audit::{audit_function, AuditJson, AuditReport, PostulateEntry, Suite};
pub use canonical::{build_canonical_model, canonical_k, random_formula};
pub use order::{random_family, random_partial_centred, random_ranks, PreOrder, PreOrderFamily};
pub use roundtrip::{
    generate_trial, roundtrip_verify, run_roundtrips, ExtensionLeg, Mismatch, ProbeFailure, RecoveryLeg,
    RoundtripConfig, RoundtripKind, RoundtripReport, RoundtripSpec, RoundtripSummary, TrialFailure, DEFAULT_PROBES,
};
pub use table::{gen_revision, gen_update, ChangeFunctionTable, TableEntry, TableFile, DENSE_MAX_ATOMS};
pub use world::{WorldContext, MAX_ATOMS, STANDARD_ATOMS};
