use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::event::Event;
use crate::logic::{is_satisfiable, is_tautology, is_valid_atom, Formula, DEFAULT_MAX_ATOMS};

use super::Frame;

/// A frame plus a valuation of atoms as events.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<String, Event>,
    cells: Vec<Event>,
    cell_of: Vec<usize>,
}

impl Model {
    pub fn new(frame: Frame, valuation: BTreeMap<String, Event>) -> Result<Self> {
        let full = frame.full();
        for (atom, e) in &valuation {
            if !is_valid_atom(atom) {
                return Err(Error::InvalidAtom(atom.clone()));
            }
            if !e.is_subset(full) {
                return Err(Error::Input(format!("valuation of `{atom}` mentions states out of range")));
            }
        }
        let (cells, cell_of) = partition(&frame, &valuation);
        Ok(Model {
            frame,
            valuation,
            cells,
            cell_of,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, Event> {
        &self.valuation
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    /// The same model with one more atom (or a replaced one).
    pub fn with_atom(&self, name: &str, e: Event) -> Result<Model> {
        let mut v = self.valuation.clone();
        v.insert(name.to_string(), e);
        Model::new(self.frame.clone(), v)
    }

    /// The same valuation on another frame over the same states.
    pub fn with_frame(&self, frame: Frame) -> Result<Model> {
        if frame.len() != self.frame.len() {
            return Err(Error::Input("frame size differs from the model's".into()));
        }
        Model::new(frame, self.valuation.clone())
    }

    /// `‖φ‖`, built compositionally from the valuation.
    pub fn truth_set(&self, phi: &Formula) -> Result<Event> {
        let n = self.frame.len();
        Ok(match phi {
            Formula::True => Event::full(n),
            Formula::False => Event::EMPTY,
            Formula::Atom(a) => *self
                .valuation
                .get(a)
                .ok_or_else(|| Error::UnknownAtom(a.clone()))?,
            Formula::Not(x) => self.truth_set(x)?.complement(n),
            Formula::Or(l, r) => self.truth_set(l)? | self.truth_set(r)?,
            Formula::And(l, r) => self.truth_set(l)? & self.truth_set(r)?,
            Formula::Implies(l, r) => self.truth_set(l)?.complement(n) | self.truth_set(r)?,
            Formula::Iff(l, r) => {
                let (a, b) = (self.truth_set(l)?, self.truth_set(r)?);
                (a & b) | (a | b).complement(n)
            }
        })
    }

    /// Atom-profile classes, ordered by their lowest state.
    pub fn cells(&self) -> &[Event] {
        &self.cells
    }

    pub fn cell_of(&self, s: usize) -> Event {
        self.cells[self.cell_of[s]]
    }

    /// Smallest definable event containing `x`.
    #[inline]
    pub fn cell_closure(&self, x: Event) -> Event {
        let mut out = Event::EMPTY;
        let mut rest = x;
        while let Some(s) = rest.min_index() {
            let c = self.cells[self.cell_of[s]];
            out = out | c;
            rest = rest - c;
        }
        out
    }

    pub fn is_definable(&self, x: Event) -> bool {
        self.cell_closure(x) == x
    }

    /// Every nonempty definable event, ordered by the bitmask over cells.
    pub fn definable_events(&self) -> Result<Vec<Event>> {
        let k = self.cells.len();
        if k > 24 {
            return Err(Error::SizeLimit {
                what: "cell count",
                count: k,
                limit: 24,
            });
        }
        Ok((1u64..(1u64 << k))
            .map(|m| {
                (0..k)
                    .filter(|i| m & (1 << i) != 0)
                    .fold(Event::EMPTY, |acc, i| acc | self.cells[i])
            })
            .collect())
    }

    /// The initial belief set `K_s`.
    pub fn belief_support(&self, s: usize) -> BeliefRepr {
        BeliefRepr {
            support: self.frame.belief(s),
        }
    }

    /// `K_s ∘ φ` for `‖φ‖ = e`, as the union of selections over `B(s)`.
    pub fn ri_support(&self, s: usize, e: Event) -> Result<BeliefRepr> {
        if e.is_empty() {
            return Err(Error::EmptyEvent(format!(
                "change at `{}` needs a nonempty event",
                self.frame.name(s)
            )));
        }
        Ok(BeliefRepr {
            support: self.frame.sup(self.frame.belief(s), e)?,
        })
    }

    /// Literal Ramsey reading: `f(s', ‖φ‖) ⊆ ‖ψ‖` for every `s' ∈ B(s)`.
    pub fn ri_member(&self, s: usize, phi: &Formula, psi: &Formula) -> Result<bool> {
        let e = self.truth_set(phi)?;
        let g = self.truth_set(psi)?;
        for sp in self.frame.belief(s).iter() {
            if !self.frame.select(sp, e)?.is_subset(g) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ψ ∈ K_s + φ`.
    pub fn expansion_member(&self, s: usize, phi: &Formula, psi: &Formula) -> Result<bool> {
        let e = self.truth_set(phi)?;
        Ok((self.frame.belief(s) & e).is_subset(self.truth_set(psi)?))
    }

    /// `ψ ∈ K_s ⋄ φ` for the full-domain extension of the change operator:
    /// the Ramsey reading when `‖φ‖` is nonempty, `Cn(φ)` when φ is
    /// consistent but true nowhere in the model, everything when φ is a
    /// contradiction.
    pub fn extended_member(&self, s: usize, phi: &Formula, psi: &Formula) -> Result<bool> {
        let e = self.truth_set(phi)?;
        if !e.is_empty() {
            let g = self.truth_set(psi)?;
            return Ok(self.ri_support(s, e)?.contains_event(g));
        }
        if !is_satisfiable(phi, DEFAULT_MAX_ATOMS)? {
            return Ok(true);
        }
        is_tautology(&Formula::implies(phi.clone(), psi.clone()), DEFAULT_MAX_ATOMS)
    }
}

fn partition(frame: &Frame, valuation: &BTreeMap<String, Event>) -> (Vec<Event>, Vec<usize>) {
    let n = frame.len();
    let mut by_profile: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    let mut cells: Vec<Event> = Vec::new();
    let mut cell_of = vec![0; n];
    for s in 0..n {
        let profile: Vec<bool> = valuation.values().map(|e| e.contains(s)).collect();
        let idx = *by_profile.entry(profile).or_insert_with(|| {
            cells.push(Event::EMPTY);
            cells.len() - 1
        });
        cells[idx].insert(s);
        cell_of[s] = idx;
    }
    (cells, cell_of)
}

/// A belief set given by its support: `ψ` is believed iff the support lies in `‖ψ‖`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeliefRepr {
    pub support: Event,
}

impl BeliefRepr {
    pub fn contains_event(&self, g: Event) -> bool {
        self.support.is_subset(g)
    }

    pub fn contains(&self, model: &Model, psi: &Formula) -> Result<bool> {
        Ok(self.contains_event(model.truth_set(psi)?))
    }

    /// First support state where `ψ` is false, if any.
    pub fn separating_state(&self, model: &Model, psi: &Formula) -> Result<Option<usize>> {
        Ok((self.support - model.truth_set(psi)?).min_index())
    }
}
