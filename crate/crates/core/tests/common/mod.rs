//! Formula-level oracle. Belief sets are decided by evaluating formulas
//! state by state and reading selections directly, with no use of supports,
//! cells or the event-level reductions.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Mutex, OnceLock};

use doxatest::axioms::AxiomId;
use doxatest::frames::{Frame, Model};
use doxatest::logic::{eval, Assignment, Formula};
use doxatest::Event;

/// All formulas of depth at most `depth` over `atoms` and the constants.
pub fn formulas_up_to(atoms: &[&str], depth: usize) -> Vec<Formula> {
    let mut layer: Vec<Formula> = atoms.iter().map(|a| Formula::atom(*a)).collect();
    layer.push(Formula::True);
    layer.push(Formula::False);
    let mut all = layer.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for a in &all {
            next.push(Formula::not(a.clone()));
            for b in &all {
                next.push(Formula::and(a.clone(), b.clone()));
                next.push(Formula::or(a.clone(), b.clone()));
                next.push(Formula::implies(a.clone(), b.clone()));
                next.push(Formula::iff(a.clone(), b.clone()));
            }
        }
        all.extend(next);
        let mut seen = BTreeSet::new();
        all.retain(|f| seen.insert(f.to_string()));
    }
    all
}

fn assignment(model: &Model, t: usize) -> Assignment {
    model
        .valuation()
        .iter()
        .map(|(a, e)| (a.clone(), e.contains(t)))
        .collect()
}

/// Truth at a single state by evaluation.
pub fn true_at(model: &Model, t: usize, phi: &Formula) -> bool {
    eval(phi, &assignment(model, t)).expect("atoms are in the valuation")
}

/// One formula per truth table over `atoms`, from depth-2 formulas.
/// Depth 2 already reaches every truth table over two atoms, so deeper
/// formulas add no new meaning: truth sets in a model depend only on the
/// truth table.
pub fn truth_table_pool(atoms: &[&str]) -> Vec<Formula> {
    static CACHE: OnceLock<Mutex<BTreeMap<Vec<String>, Vec<Formula>>>> = OnceLock::new();
    let key: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(pool) = cache.lock().unwrap().get(&key) {
        return pool.clone();
    }
    let pool = build_pool(atoms);
    cache.lock().unwrap().insert(key, pool.clone());
    pool
}

fn build_pool(atoms: &[&str]) -> Vec<Formula> {
    let rows: Vec<Assignment> = (0..1usize << atoms.len())
        .map(|m| {
            atoms
                .iter()
                .enumerate()
                .map(|(i, a)| (a.to_string(), m & (1 << i) != 0))
                .collect()
        })
        .collect();
    let mut by_table: BTreeMap<Vec<bool>, Formula> = BTreeMap::new();
    for f in formulas_up_to(atoms, 2) {
        let table: Vec<bool> = rows.iter().map(|r| eval(&f, r).unwrap()).collect();
        by_table.entry(table).or_insert(f);
    }
    assert_eq!(by_table.len(), 1 << (1 << atoms.len()), "pool misses a truth table");
    by_table.into_values().collect()
}

/// Formula-level view of one model.
pub struct Oracle<'a> {
    pub model: &'a Model,
    /// Pool formulas, one per distinct truth set in the model.
    pub pool: Vec<Formula>,
    rows: Vec<Assignment>,
}

impl<'a> Oracle<'a> {
    pub fn new(model: &'a Model) -> Self {
        let atoms: Vec<String> = model.atoms().map(str::to_string).collect();
        let refs: Vec<&str> = atoms.iter().map(String::as_str).collect();
        let rows: Vec<Assignment> = (0..model.frame().len()).map(|t| assignment(model, t)).collect();
        let mut seen = BTreeSet::new();
        let pool = truth_table_pool(&refs)
            .into_iter()
            .filter(|f| seen.insert(rows.iter().map(|r| eval(f, r).unwrap()).collect::<Vec<_>>()))
            .collect();
        Oracle { model, pool, rows }
    }

    fn frame(&self) -> &Frame {
        self.model.frame()
    }

    pub fn holds(&self, t: usize, phi: &Formula) -> bool {
        eval(phi, &self.rows[t]).expect("atoms are in the valuation")
    }

    pub fn truth_set(&self, phi: &Formula) -> Event {
        Event::from_indices((0..self.frame().len()).filter(|&t| self.holds(t, phi)))
    }

    pub fn satisfied(&self, phi: &Formula) -> bool {
        !self.truth_set(phi).is_empty()
    }

    /// `ψ ∈ K_s`.
    pub fn in_k(&self, s: usize, psi: &Formula) -> bool {
        self.frame().belief(s).iter().all(|t| self.holds(t, psi))
    }

    /// `ψ ∈ K_s∘φ` for `φ` true somewhere: `ψ` holds throughout `f(s', ‖φ‖)`
    /// for every `s' ∈ B(s)`.
    pub fn in_change(&self, s: usize, phi: &Formula, psi: &Formula) -> bool {
        let e = self.truth_set(phi);
        self.frame().belief(s).iter().all(|sp| {
            self.frame()
                .select(sp, e)
                .expect("selection defined")
                .iter()
                .all(|t| self.holds(t, psi))
        })
    }

    /// `ψ ∈ K_s + φ`.
    pub fn in_expansion(&self, s: usize, phi: &Formula, psi: &Formula) -> bool {
        self.in_k(s, &Formula::implies(phi.clone(), psi.clone()))
    }

    fn same_change(&self, s: usize, a: &Formula, b: &Formula) -> bool {
        self.pool
            .iter()
            .all(|chi| self.in_change(s, a, chi) == self.in_change(s, b, chi))
    }

    /// Some formula decides every pool formula one way or the other at `s`.
    pub fn complete_at(&self, s: usize) -> bool {
        self.pool
            .iter()
            .all(|chi| self.in_k(s, chi) || self.in_k(s, &Formula::not(chi.clone())))
    }

    /// Literal statement of `id` at `s`, quantified over the pool. `None`
    /// when the axiom is outside what the oracle decides: D3/R5 concern
    /// formulas true nowhere, and D7/D9 apply only to complete `K`.
    /// Antecedent formulas are restricted to ones true at some state.
    pub fn verdict(&self, s: usize, id: AxiomId) -> Option<bool> {
        let phis: Vec<&Formula> = self.pool.iter().filter(|f| self.satisfied(f)).collect();
        let and = |a: &Formula, b: &Formula| Formula::and(a.clone(), b.clone());
        let or = |a: &Formula, b: &Formula| Formula::or(a.clone(), b.clone());
        let not = |a: &Formula| Formula::not(a.clone());
        Some(match id {
            AxiomId::D3 | AxiomId::R5 => return None,
            AxiomId::D7 | AxiomId::D9 if !self.complete_at(s) => return None,
            // Closure under consequence on the pool: members are closed under
            // conjunction and under weakening.
            AxiomId::D0 | AxiomId::R1 => phis.iter().all(|phi| {
                let members: Vec<&Formula> = self.pool.iter().filter(|c| self.in_change(s, phi, c)).collect();
                members.iter().all(|a| {
                    members.iter().all(|b| self.in_change(s, phi, &and(a, b)))
                        && self.pool.iter().all(|w| self.in_change(s, phi, &or(a, w)))
                })
            }),
            AxiomId::D1 | AxiomId::R2 => phis.iter().all(|phi| self.in_change(s, phi, phi)),
            AxiomId::D2 => phis
                .iter()
                .filter(|phi| self.in_k(s, phi))
                .all(|phi| self.pool.iter().all(|chi| self.in_change(s, phi, chi) == self.in_k(s, chi))),
            AxiomId::D4 | AxiomId::R6 => phis.iter().all(|phi| {
                // A syntactically different formula with the same truth table.
                let twin = and(phi, phi);
                self.same_change(s, phi, &twin)
            }),
            AxiomId::R3 => phis.iter().all(|phi| {
                self.pool
                    .iter()
                    .all(|chi| !self.in_change(s, phi, chi) || self.in_expansion(s, phi, chi))
            }),
            AxiomId::R4 => phis
                .iter()
                .filter(|phi| !self.in_k(s, &not(phi)))
                .all(|phi| self.pool.iter().all(|chi| !self.in_k(s, chi) || self.in_change(s, phi, chi))),
            AxiomId::D5 | AxiomId::R7 => phis.iter().all(|phi| {
                self.pool.iter().all(|psi| {
                    let both = and(phi, psi);
                    !self.satisfied(&both)
                        || self.pool.iter().all(|chi| {
                            !self.in_change(s, &both, chi)
                                || self.in_change(s, phi, &Formula::implies(psi.clone(), chi.clone()))
                        })
                })
            }),
            AxiomId::D6 => phis.iter().all(|phi| {
                phis.iter().all(|psi| {
                    !(self.in_change(s, phi, psi) && self.in_change(s, psi, phi)) || self.same_change(s, phi, psi)
                })
            }),
            AxiomId::D7 => phis.iter().all(|phi| {
                phis.iter().all(|psi| {
                    let either = or(phi, psi);
                    self.pool.iter().all(|chi| {
                        !(self.in_change(s, phi, chi) && self.in_change(s, psi, chi)) || self.in_change(s, &either, chi)
                    })
                })
            }),
            AxiomId::D9 | AxiomId::R8 => phis.iter().all(|phi| {
                self.pool.iter().all(|psi| {
                    let both = and(phi, psi);
                    self.in_change(s, phi, &not(psi))
                        || !self.satisfied(&both)
                        || self.pool.iter().all(|chi| {
                            !self.in_change(s, phi, &Formula::implies(psi.clone(), chi.clone()))
                                || self.in_change(s, &both, chi)
                        })
                })
            }),
        })
    }
}
