use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::Formula;
use crate::error::{Error, Result};

/// Default bound on the atom count of truth-table computations.
pub const DEFAULT_MAX_ATOMS: usize = 20;

/// Truth values for a set of atoms.
pub type Assignment = BTreeMap<String, bool>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Tautology,
    Contradiction,
    Contingent,
}

impl Formula {
    /// Evaluates under a lookup for atom values. Negation and disjunction are
    /// primitive; the other connectives go through their usual definitions.
    pub fn eval_with<F>(&self, lookup: &F) -> Result<bool>
    where
        F: Fn(&str) -> Option<bool>,
    {
        Ok(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => lookup(a).ok_or_else(|| Error::MissingAtom(a.clone()))?,
            Formula::Not(x) => !x.eval_with(lookup)?,
            Formula::Or(l, r) => l.eval_with(lookup)? || r.eval_with(lookup)?,
            // φ∧ψ := ¬(¬φ∨¬ψ)
            Formula::And(l, r) => !(!l.eval_with(lookup)? || !r.eval_with(lookup)?),
            // φ→ψ := ¬φ∨ψ
            Formula::Implies(l, r) => !l.eval_with(lookup)? || r.eval_with(lookup)?,
            // φ↔ψ := (φ→ψ)∧(ψ→φ)
            Formula::Iff(l, r) => {
                let (a, b) = (l.eval_with(lookup)?, r.eval_with(lookup)?);
                !(!(!a || b) || !(!b || a))
            }
        })
    }
}

pub fn eval(formula: &Formula, assignment: &Assignment) -> Result<bool> {
    formula.eval_with(&|a: &str| assignment.get(a).copied())
}

fn check_bound(atoms: &BTreeSet<String>, max_atoms: usize) -> Result<()> {
    if atoms.len() > max_atoms {
        return Err(Error::SizeLimit {
            what: "atom count",
            count: atoms.len(),
            limit: max_atoms,
        });
    }
    Ok(())
}

/// Calls `visit` with every assignment over `atoms` (as a bitmask over the
/// sorted atom list) until it returns `false`.
fn for_each_row<F>(atoms: &[String], mut visit: F) -> Result<()>
where
    F: FnMut(&dyn Fn(&str) -> Option<bool>) -> Result<bool>,
{
    let n = atoms.len();
    for mask in 0u64..(1u64 << n) {
        let lookup = |a: &str| {
            atoms
                .binary_search_by(|x| x.as_str().cmp(a))
                .ok()
                .map(|i| mask & (1 << i) != 0)
        };
        if !visit(&lookup)? {
            break;
        }
    }
    Ok(())
}

/// Exhaustive truth-table verdict.
pub fn classify(formula: &Formula, max_atoms: usize) -> Result<Classification> {
    let atoms = formula.atoms();
    check_bound(&atoms, max_atoms)?;
    let atoms: Vec<String> = atoms.into_iter().collect();
    let (mut seen_true, mut seen_false) = (false, false);
    for_each_row(&atoms, |lookup| {
        if formula.eval_with(&lookup)? {
            seen_true = true;
        } else {
            seen_false = true;
        }
        Ok(!(seen_true && seen_false))
    })?;
    Ok(match (seen_true, seen_false) {
        (true, false) => Classification::Tautology,
        (false, true) => Classification::Contradiction,
        _ => Classification::Contingent,
    })
}

pub fn is_tautology(formula: &Formula, max_atoms: usize) -> Result<bool> {
    Ok(classify(formula, max_atoms)? == Classification::Tautology)
}

pub fn is_satisfiable(formula: &Formula, max_atoms: usize) -> Result<bool> {
    Ok(classify(formula, max_atoms)? != Classification::Contradiction)
}

/// `conclusion ∈ Cn(premises)`: every assignment satisfying all premises
/// satisfies the conclusion.
pub fn cn_member(premises: &[Formula], conclusion: &Formula, max_atoms: usize) -> Result<bool> {
    let mut atoms = conclusion.atoms();
    for p in premises {
        atoms.extend(p.atoms());
    }
    check_bound(&atoms, max_atoms)?;
    let atoms: Vec<String> = atoms.into_iter().collect();
    let mut entailed = true;
    for_each_row(&atoms, |lookup| {
        let mut all = true;
        for p in premises {
            if !p.eval_with(&lookup)? {
                all = false;
                break;
            }
        }
        if all && !conclusion.eval_with(&lookup)? {
            entailed = false;
        }
        Ok(entailed)
    })?;
    Ok(entailed)
}
