//! Postulate audit of a change table over the full world algebra.
//!
//! Every event over worlds is definable, so two belief sets agree exactly
//! when their supports do. The reductions below are written directly on
//! table values and do not go through frames or models.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::axioms::{AxiomId, AxiomVerdict, AxiomWitness};
use crate::error::{Error, Result};
use crate::event::{nonempty_events, Event};

use super::table::ChangeFunctionTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Km,
    KmStrong,
    Agm,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Km => "KM",
            Suite::KmStrong => "KM_STRONG",
            Suite::Agm => "AGM",
        }
    }

    pub fn axioms(self) -> &'static [AxiomId] {
        use AxiomId::*;
        match self {
            Suite::Km => &[D0, D1, D2, D3, D4, D5, D6, D7],
            Suite::KmStrong => &[D0, D1, D2, D3, D4, D5, D6, D7, D9],
            Suite::Agm => &[R1, R2, R3, R4, R5, R6, R7, R8],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().replace('-', "_").as_str() {
            "KM" => Ok(Suite::Km),
            "KM_STRONG" => Ok(Suite::KmStrong),
            "AGM" => Ok(Suite::Agm),
            _ => Err(Error::UnknownSelector(s.to_string())),
        }
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub suite: Suite,
    pub results: Vec<(AxiomId, AxiomVerdict)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PostulateEntry {
    pub axiom: AxiomId,
    pub applicable: bool,
    pub holds: Option<bool>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<String>>,
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    #[serde(rename = "G", skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditJson {
    pub suite: Suite,
    pub holds: bool,
    pub postulates: Vec<PostulateEntry>,
}

impl AuditReport {
    pub fn holds(&self) -> bool {
        self.results.iter().all(|(_, v)| !v.is_violation())
    }

    pub fn verdict(&self, axiom: AxiomId) -> Option<AxiomVerdict> {
        self.results.iter().find(|(a, _)| *a == axiom).map(|(_, v)| *v)
    }

    pub fn report(&self, table: &ChangeFunctionTable) -> AuditJson {
        let ctx = table.context();
        AuditJson {
            suite: self.suite,
            holds: self.holds(),
            postulates: self
                .results
                .iter()
                .map(|(a, v)| {
                    let w = v.witness();
                    PostulateEntry {
                        axiom: *a,
                        applicable: *v != AxiomVerdict::NotApplicable,
                        holds: (*v != AxiomVerdict::NotApplicable).then(|| !v.is_violation()),
                        e: w.map(|w| ctx.labels(w.e)),
                        f: w.and_then(|w| w.f).map(|f| ctx.labels(f)),
                        g: w.map(|w| ctx.labels(w.g)),
                    }
                })
                .collect(),
        }
    }
}

/// Audits `table` against every postulate of `suite`. The table must be
/// total on nonempty events.
pub fn audit_function(table: &ChangeFunctionTable, suite: Suite) -> Result<AuditReport> {
    let n = table.context().worlds();
    let events: Vec<Event> = nonempty_events(n).collect();
    let t: Vec<Event> = {
        let mut v = vec![Event::EMPTY; 1 << n];
        for &e in &events {
            v[e.bits() as usize] = table.value(e)?;
        }
        v
    };
    let at = |e: Event| t[e.bits() as usize];
    let k = table.k();
    let complete = k.len() == 1;
    let single = |test: &dyn Fn(Event) -> Option<Event>| -> AxiomVerdict {
        for &e in &events {
            if let Some(g) = test(e) {
                return AxiomVerdict::Fails(AxiomWitness { e, f: None, g });
            }
        }
        AxiomVerdict::Holds
    };
    let pairs = |test: &dyn Fn(Event, Event) -> Option<Event>| -> AxiomVerdict {
        for &e in &events {
            for &f in &events {
                if let Some(g) = test(e, f) {
                    return AxiomVerdict::Fails(AxiomWitness { e, f: Some(f), g });
                }
            }
        }
        AxiomVerdict::Holds
    };
    let mut results = Vec::new();
    for &axiom in suite.axioms() {
        let v = match axiom {
            // Totality was checked above; extensional tables respect equivalence.
            AxiomId::D0 | AxiomId::R1 | AxiomId::D4 | AxiomId::R6 => AxiomVerdict::Holds,
            AxiomId::D1 | AxiomId::R2 => single(&|e| (!at(e).is_subset(e)).then_some(e)),
            AxiomId::D3 | AxiomId::R5 => single(&|e| at(e).is_empty().then_some(Event::EMPTY)),
            AxiomId::D2 => single(&|e| {
                (k.is_subset(e) && at(e) != k).then(|| if at(e).is_subset(k) { at(e) } else { k })
            }),
            AxiomId::R3 => single(&|e| (!(k & e).is_subset(at(e))).then_some(at(e))),
            AxiomId::R4 => single(&|e| (k.intersects(e) && !at(e).is_subset(k)).then_some(k)),
            AxiomId::D5 | AxiomId::R7 => {
                pairs(&|e, f| (e.intersects(f) && !(at(e) & f).is_subset(at(e & f))).then(|| at(e & f)))
            }
            AxiomId::D6 => pairs(&|e, f| {
                let (a, b) = (at(e), at(f));
                (a.is_subset(f) && b.is_subset(e) && a != b).then(|| if a.is_subset(b) { a } else { b })
            }),
            AxiomId::D7 if !complete => AxiomVerdict::NotApplicable,
            AxiomId::D7 => pairs(&|e, f| {
                let g = at(e) | at(f);
                (!at(e | f).is_subset(g)).then_some(g)
            }),
            AxiomId::D9 if !complete => AxiomVerdict::NotApplicable,
            AxiomId::D9 | AxiomId::R8 => pairs(&|e, f| {
                let x = at(e) & f;
                (!x.is_empty() && e.intersects(f) && !at(e & f).is_subset(x)).then_some(x)
            }),
        };
        results.push((axiom, v));
    }
    Ok(AuditReport { suite, results })
}
