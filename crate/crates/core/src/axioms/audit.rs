use serde::Serialize;

use crate::error::{Error, Result};
use crate::event::Event;
use crate::frames::Model;
use crate::properties::CheckConfig;

use super::AxiomWitness;

/// Violations of `K∘φ ⊆ K+φ` at one state, all of them rather than the first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InclusionReport {
    pub state: usize,
    pub checked: usize,
    pub violations: Vec<AxiomWitness>,
}

impl InclusionReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `K_s∘φ ⊆ K_s+φ` for every nonempty definable `‖φ‖`.
pub fn audit_lemma_inclusion(model: &Model, s: usize, cfg: &CheckConfig) -> Result<InclusionReport> {
    cfg.ensure(model.frame())?;
    let b = model.frame().belief(s);
    let mut report = InclusionReport {
        state: s,
        ..Default::default()
    };
    for e in model.definable_events()? {
        report.checked += 1;
        let g = model.cell_closure(model.ri_support(s, e)?.support);
        // B(s)∩E = ∅ leaves K+φ inconsistent, and ∅ ⊆ g covers it.
        if !(b & e).is_subset(g) {
            report.violations.push(AxiomWitness { e, f: None, g });
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Km8Verdict {
    Holds,
    /// `E` where the two sides differ, and a definable `G` believed on one side only.
    Fails { e: Event, g: Event },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Km8Report {
    pub state: String,
    pub holds: bool,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<String>>,
    #[serde(rename = "G", skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
}

impl Km8Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Km8Verdict::Holds)
    }

    pub fn report(&self, model: &Model, w: usize) -> Km8Report {
        let fr = model.frame();
        let (e, g) = match self {
            Km8Verdict::Holds => (None, None),
            Km8Verdict::Fails { e, g } => (Some(fr.event_names(*e)), Some(fr.event_names(*g))),
        };
        Km8Report {
            state: fr.name(w).to_string(),
            holds: self.holds(),
            e,
            g,
        }
    }
}

/// World-wise intersection rule on a model where every state believes the
/// same event: `K∘φ` must equal the intersection, over the worlds `w'` of
/// `⟦K⟧`, of the complete-theory updates `{ψ : f(w',‖φ‖) ⊆ ‖ψ‖}`. Here
/// `⟦K⟧` is the definable closure of the belief support, which is larger
/// than the support when some world shares a profile with a believed one.
pub fn audit_km8(model: &Model, w: usize, cfg: &CheckConfig) -> Result<Km8Verdict> {
    cfg.ensure(model.frame())?;
    let frame = model.frame();
    let b = frame.belief(w);
    if let Some(s) = (0..frame.len()).find(|&s| frame.belief(s) != b) {
        return Err(Error::Precondition(format!(
            "belief at `{}` differs from belief at `{}`",
            frame.name(s),
            frame.name(w)
        )));
    }
    let worlds = model.cell_closure(b);
    for e in model.definable_events()? {
        let lhs = model.cell_closure(model.ri_support(w, e)?.support);
        let rhs = model.cell_closure(frame.sup(worlds, e)?);
        if lhs != rhs {
            let g = if lhs.is_subset(rhs) { lhs } else { rhs };
            return Ok(Km8Verdict::Fails { e, g });
        }
    }
    Ok(Km8Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{CompletionRule, Frame};

    fn ev(ix: &[usize]) -> Event {
        Event::from_indices(ix.iter().copied())
    }

    #[test]
    fn inclusion_vacuous_and_clean() {
        let fr = Frame::indexed(vec![ev(&[1]), ev(&[1]), ev(&[0])]).complete(CompletionRule::Default);
        let m = Model::new(fr, [("p".into(), ev(&[0]))].into()).unwrap();
        for s in 0..3 {
            let r = audit_lemma_inclusion(&m, s, &CheckConfig::default()).unwrap();
            assert!(r.is_clean());
            assert_eq!(r.checked, 3);
        }
    }

    #[test]
    fn inclusion_catches_corruption() {
        let mut fr = Frame::indexed(vec![ev(&[0]), ev(&[1])]);
        fr.set_selection(0, ev(&[0, 1]), ev(&[1]));
        let m = Model::new(fr.complete(CompletionRule::Default), [("p".into(), ev(&[0]))].into()).unwrap();
        let r = audit_lemma_inclusion(&m, 0, &CheckConfig::default()).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].e, ev(&[0, 1]));
    }

    #[test]
    fn km8_needs_constant_belief() {
        let fr = Frame::indexed(vec![ev(&[0]), ev(&[1])]).complete(CompletionRule::Default);
        let m = Model::new(fr, [("p".into(), ev(&[0]))].into()).unwrap();
        assert!(matches!(
            audit_km8(&m, 0, &CheckConfig::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn km8_pointed_belief_holds() {
        let fr = Frame::indexed(vec![ev(&[1]); 3]).complete(CompletionRule::Default);
        let m = Model::new(fr, [("p".into(), ev(&[0])), ("q".into(), ev(&[1]))].into()).unwrap();
        assert!(audit_km8(&m, 0, &CheckConfig::default()).unwrap().holds());
    }

    #[test]
    fn km8_fails_when_an_indistinguishable_world_disagrees() {
        // s0 and s2 share a profile; only s0 is believed, but s2 updates differently.
        let mut fr = Frame::indexed(vec![ev(&[0]); 3]);
        fr.set_selection(0, ev(&[0, 1, 2]), ev(&[0]));
        fr.set_selection(2, ev(&[0, 1, 2]), ev(&[1, 2]));
        let fr = fr.complete(CompletionRule::Default);
        let m = Model::new(fr, [("p".into(), ev(&[1]))].into()).unwrap();
        assert_eq!(m.cells(), &[ev(&[0, 2]), ev(&[1])]);
        match audit_km8(&m, 0, &CheckConfig::default()).unwrap() {
            Km8Verdict::Fails { e, .. } => assert_eq!(e, Event::full(3)),
            Km8Verdict::Holds => panic!("expected a witness"),
        }
    }
}
