//! Frame properties, frame classes, and their exhaustive checkers.

mod check;
mod class;
mod gap;
mod registry;

pub use check::{check_property, confirm_witness, pd57_literal, CheckConfig, DEFAULT_MAX_STATES};
pub use class::{check_class, ClassReport, ClassVerdict, FrameClass};
pub use gap::{probe_def12_gap, GapReport, GapStep, GapWitness, DEFAULT_STEP_BUDGET};
pub use registry::{PropertyId, PropertyVerdict, PropertyWitness, VerdictReport, WitnessReport};
