use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::event::{nonempty_events, Event, MAX_STATES};

/// Frames up to this many states keep their selection table in a flat vector.
const DENSE_MAX_STATES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Dense(Vec<Option<Event>>),
    Sparse(BTreeMap<(usize, Event), Event>),
}

/// A partial selection function `f(s, E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    n: usize,
    repr: Repr,
}

impl Selection {
    fn new(n: usize) -> Self {
        let repr = if n <= DENSE_MAX_STATES {
            Repr::Dense(vec![None; n << n])
        } else {
            Repr::Sparse(BTreeMap::new())
        };
        Selection { n, repr }
    }

    #[inline]
    fn get(&self, s: usize, e: Event) -> Option<Event> {
        match &self.repr {
            Repr::Dense(v) => v[(s << self.n) | e.bits() as usize],
            Repr::Sparse(m) => m.get(&(s, e)).copied(),
        }
    }

    fn set(&mut self, s: usize, e: Event, out: Option<Event>) {
        match &mut self.repr {
            Repr::Dense(v) => v[(s << self.n) | e.bits() as usize] = out,
            Repr::Sparse(m) => match out {
                Some(o) => {
                    m.insert((s, e), o);
                }
                None => {
                    m.remove(&(s, e));
                }
            },
        }
    }

    fn entries(&self) -> Vec<(usize, Event, Event)> {
        match &self.repr {
            Repr::Dense(v) => v
                .iter()
                .enumerate()
                .filter_map(|(i, o)| {
                    o.map(|out| (i >> self.n, Event::from_bits((i & ((1 << self.n) - 1)) as u64), out))
                })
                .collect(),
            Repr::Sparse(m) => m.iter().map(|(&(s, e), &o)| (s, e, o)).collect(),
        }
    }
}

/// A finite Kripke-Lewis frame `⟨S, B, f⟩`.
///
/// Construction does not enforce the frame conditions; [`Frame::validate`]
/// reports violations as data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    names: Vec<String>,
    belief: Vec<Event>,
    selection: Selection,
}

impl Frame {
    pub fn new(names: Vec<String>, belief: Vec<Event>) -> Result<Self> {
        if names.len() > MAX_STATES {
            return Err(Error::SizeLimit {
                what: "state count",
                count: names.len(),
                limit: MAX_STATES,
            });
        }
        if names.len() != belief.len() {
            return Err(Error::Input(format!(
                "{} states but {} belief entries",
                names.len(),
                belief.len()
            )));
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.as_str(), i).is_some() {
                return Err(Error::DuplicateState(n.clone()));
            }
        }
        let full = Event::full(names.len());
        for (i, b) in belief.iter().enumerate() {
            if !b.is_subset(full) {
                return Err(Error::Input(format!(
                    "belief of `{}` mentions states out of range",
                    names[i]
                )));
            }
        }
        let selection = Selection::new(names.len());
        Ok(Frame {
            names,
            belief,
            selection,
        })
    }

    /// A frame whose states are named `s0, s1, …`.
    pub fn indexed(belief: Vec<Event>) -> Self {
        let names = (0..belief.len()).map(|i| format!("s{i}")).collect();
        Frame::new(names, belief).expect("indexed frame is well-formed")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn full(&self) -> Event {
        Event::full(self.len())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    /// Resolves a list of state ids to an event.
    pub fn event_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Event> {
        let mut e = Event::EMPTY;
        for id in ids {
            e.insert(self.index_of(id.as_ref())?);
        }
        Ok(e)
    }

    pub fn event_names(&self, e: Event) -> Vec<String> {
        e.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn event_label(&self, e: Event) -> String {
        self.event_names(e).join(",")
    }

    pub fn belief(&self, s: usize) -> Event {
        self.belief[s]
    }

    pub fn set_belief(&mut self, s: usize, b: Event) {
        assert!(b.is_subset(self.full()));
        self.belief[s] = b;
    }

    /// States whose belief set is a singleton.
    pub fn is_pointed(&self, s: usize) -> bool {
        self.belief[s].len() == 1
    }

    pub fn selection(&self, s: usize, e: Event) -> Option<Event> {
        self.selection.get(s, e)
    }

    /// `f(s, E)`, failing loudly when the entry is missing.
    #[inline]
    pub fn select(&self, s: usize, e: Event) -> Result<Event> {
        self.selection.get(s, e).ok_or_else(|| Error::UndefinedSelection {
            state: self.names[s].clone(),
            event: self.event_label(e),
        })
    }

    pub fn set_selection(&mut self, s: usize, e: Event, out: Event) {
        let full = self.full();
        assert!(s < self.len() && e.is_subset(full) && out.is_subset(full));
        self.selection.set(s, e, Some(out));
    }

    pub fn clear_selection(&mut self, s: usize, e: Event) {
        self.selection.set(s, e, None);
    }

    /// Defined entries `(s, E, f(s,E))`, ordered by state then event mask.
    pub fn selection_entries(&self) -> Vec<(usize, Event, Event)> {
        self.selection.entries()
    }

    /// True when `f(s, E)` is defined for every state and nonempty event.
    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|s| nonempty_events(self.len()).all(|e| self.selection(s, e).is_some()))
    }

    /// `⋃_{s' ∈ X} f(s', E)`.
    #[inline]
    pub fn sup(&self, over: Event, e: Event) -> Result<Event> {
        let mut acc = Event::EMPTY;
        for s in over.iter() {
            acc = acc | self.select(s, e)?;
        }
        Ok(acc)
    }

    /// The frame with state `i` renamed to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Frame {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut names = vec![String::new(); n];
        let mut belief = vec![Event::EMPTY; n];
        for i in 0..n {
            names[perm[i]] = self.names[i].clone();
            belief[perm[i]] = self.belief[i].permute(perm);
        }
        let mut out = Frame::new(names, belief).expect("permutation of a valid frame");
        for (s, e, o) in self.selection_entries() {
            out.set_selection(perm[s], e.permute(perm), o.permute(perm));
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for s in 0..self.len() {
            if self.belief[s].is_empty() {
                violations.push(Violation::at_state(self, Clause::Seriality, s));
            }
        }
        for (s, e, out) in self.selection_entries() {
            let mut push = |clause| violations.push(Violation::at_entry(self, clause, s, e, out));
            if e.is_empty() {
                push(Clause::EmptyEvent);
                continue;
            }
            if out.is_empty() {
                push(Clause::Consistency);
            }
            if !out.is_subset(e) {
                push(Clause::Success);
            }
            if e.contains(s) && !out.contains(s) {
                push(Clause::WeakCentering);
            }
        }
        ValidationReport { violations }
    }

    /// Fills every undefined `(s, E)` entry using `rule`; defined entries are kept.
    pub fn complete(&self, rule: CompletionRule) -> Frame {
        let mut out = self.clone();
        for s in 0..self.len() {
            for e in nonempty_events(self.len()) {
                if out.selection(s, e).is_none() {
                    out.set_selection(s, e, rule.fill(s, e));
                }
            }
        }
        out
    }
}

/// How `complete` fills missing selection entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CompletionRule {
    /// `{s}` if `s ∈ E`, otherwise the lowest-index state of `E`.
    #[default]
    Default,
    /// `E` itself.
    Whole,
}

impl CompletionRule {
    pub fn fill(self, s: usize, e: Event) -> Event {
        match self {
            CompletionRule::Default if e.contains(s) => Event::singleton(s),
            CompletionRule::Default => Event::singleton(e.min_index().expect("nonempty event")),
            CompletionRule::Whole => e,
        }
    }
}

impl FromStr for CompletionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(CompletionRule::Default),
            "whole" => Ok(CompletionRule::Whole),
            other => Err(Error::UnknownRule(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    Seriality,
    EmptyEvent,
    Consistency,
    Success,
    WeakCentering,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Seriality => "seriality",
            Clause::EmptyEvent => "empty-event",
            Clause::Consistency => "consistency",
            Clause::Success => "success",
            Clause::WeakCentering => "weak-centering",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    pub state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub event: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selects: Option<Vec<String>>,
    #[serde(skip)]
    pub state_index: usize,
    #[serde(skip)]
    pub event_mask: Option<Event>,
}

impl Violation {
    fn at_state(frame: &Frame, clause: Clause, s: usize) -> Self {
        Violation {
            clause,
            state: frame.name(s).to_string(),
            event: None,
            selects: None,
            state_index: s,
            event_mask: None,
        }
    }

    fn at_entry(frame: &Frame, clause: Clause, s: usize, e: Event, out: Event) -> Self {
        Violation {
            clause,
            state: frame.name(s).to_string(),
            event: Some(frame.event_names(e)),
            selects: Some(frame.event_names(out)),
            state_index: s,
            event_mask: Some(e),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}
