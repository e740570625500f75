//! The propositional language: formulas, the ASCII parser, and truth-table
//! semantics (evaluation, classification, finite-premise consequence).

mod formula;
mod parser;
mod semantics;

pub use formula::{is_valid_atom, Formula};
pub use parser::parse_formula;
pub use semantics::{
    classify, cn_member, eval, is_satisfiable, is_tautology, Assignment, Classification,
    DEFAULT_MAX_ATOMS,
};
