//! Finite-model workbench for belief update and belief revision under
//! Kripke-Lewis semantics.

pub mod axioms;
pub mod changegen;
pub mod correspondence;
pub mod error;
pub mod event;
pub mod frames;
pub mod logic;
pub mod properties;

pub use error::{Error, Result};
pub use event::Event;
