//! Update and revision postulates decided on the change function a model
//! induces at a state, plus the inclusion and world-wise intersection audits.

mod audit;
mod check;
mod registry;

pub use audit::{audit_km8, audit_lemma_inclusion, InclusionReport, Km8Report, Km8Verdict};
pub use check::{axiom_holds, is_complete_at, replay};
pub use registry::{AxiomId, AxiomReport, AxiomVerdict, AxiomWitness, AxiomWitnessReport};
