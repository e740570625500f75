//! Finite Kripke-Lewis frames, models over them, and the belief sets they induce.

mod frame;
mod io;
mod model;

pub use frame::{Clause, CompletionRule, Frame, ValidationReport, Violation};
pub use io::{load_json, FrameFile, Loaded, SelectionEntry};
pub use model::{BeliefRepr, Model};
