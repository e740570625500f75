//! Countermodels: turn a frame-property failure into a postulate failure.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::axioms::{axiom_holds, is_complete_at, AxiomId, AxiomVerdict};
use crate::error::{Error, Result};
use crate::event::Event;
use crate::frames::{Frame, Model};
use crate::logic::Formula;
use crate::properties::{confirm_witness, CheckConfig, PropertyId, PropertyWitness};

use super::CorrespondencePair;

/// The postulate instance the countermodel falsifies: `φ`, optionally `ψ`,
/// and the formula `χ` whose membership differs between the compared sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomInstance {
    pub axiom: AxiomId,
    pub phi: Formula,
    pub psi: Option<Formula>,
    pub chi: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub axiom: AxiomId,
    pub phi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<String>,
    pub chi: String,
}

impl AxiomInstance {
    pub fn report(&self) -> InstanceReport {
        InstanceReport {
            axiom: self.axiom,
            phi: self.phi.to_string(),
            psi: self.psi.as_ref().map(ToString::to_string),
            chi: self.chi.to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessModel {
    pub model: Model,
    pub state: usize,
    pub instance: AxiomInstance,
    /// What `axiom_holds` reports on the countermodel.
    pub verdict: AxiomVerdict,
}

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

/// Builds the countermodel for a confirmed failure of `pair.property`,
/// then checks the postulate fails there both through the event-level
/// reduction and through the formula instance.
pub fn build_witness_model(
    frame: &Frame,
    pair: CorrespondencePair,
    wit: &PropertyWitness,
    cfg: &CheckConfig,
) -> Result<WitnessModel> {
    if !confirm_witness(frame, pair.property, wit)? {
        return Err(Error::InvalidWitness(format!(
            "{} does not fail at the given witness",
            pair.property
        )));
    }
    let s = wit.s;
    let b = frame.belief(s);
    let need = |x: Option<Event>, what: &str| {
        x.ok_or_else(|| Error::InvalidWitness(format!("{} witness lacks {what}", pair.property)))
    };
    let e = need(wit.e, "E")?;
    let sp = || {
        wit.s_prime
            .ok_or_else(|| Error::InvalidWitness(format!("{} witness lacks s'", pair.property)))
    };
    let (p, q, r) = (atom("p"), atom("q"), atom("r"));
    let mut val: BTreeMap<String, Event> = BTreeMap::new();
    val.insert("p".into(), e);
    let instance = match pair.property {
        PropertyId::Pd2 => {
            val.insert("q".into(), b);
            AxiomInstance { axiom: pair.axiom, phi: p, psi: None, chi: q }
        }
        PropertyId::Pr4 => {
            val.insert("q".into(), b & e);
            AxiomInstance {
                axiom: pair.axiom,
                phi: p.clone(),
                psi: None,
                chi: Formula::implies(p, q),
            }
        }
        PropertyId::Pd57 | PropertyId::Pd6 | PropertyId::Pd7 | PropertyId::Pd9 | PropertyId::Pr8 => {
            let f = need(wit.f, "F")?;
            val.insert("q".into(), f);
            let g = match pair.property {
                PropertyId::Pd57 => frame.sup(b, e & f)?,
                PropertyId::Pd6 => {
                    let (se, sf) = (frame.sup(b, e)?, frame.sup(b, f)?);
                    if se.is_subset(sf) {
                        se
                    } else {
                        sf
                    }
                }
                PropertyId::Pd7 => frame.select(sp()?, e)? | frame.select(sp()?, f)?,
                PropertyId::Pd9 => frame.select(sp()?, e)? & f,
                _ => frame.sup(b, e)? & f,
            };
            val.insert("r".into(), g);
            AxiomInstance { axiom: pair.axiom, phi: p, psi: Some(q), chi: r }
        }
        PropertyId::Base | PropertyId::Pd57Strong => {
            return Err(Error::InvalidWitness(format!(
                "{} has no paired postulate",
                pair.property
            )))
        }
    };
    let model = Model::new(frame.clone(), val)?;
    let verdict = axiom_holds(&model, s, instance.axiom, cfg)?;
    if !verdict.is_violation() || !instance_fails(&model, s, &instance)? {
        return Err(Error::InvalidWitness(format!(
            "countermodel for {} does not falsify {}",
            pair.property, instance.axiom
        )));
    }
    Ok(WitnessModel {
        model,
        state: s,
        instance,
        verdict,
    })
}

/// Evaluates the postulate instance at `s` through formula memberships.
/// True when the instance is falsified.
pub fn instance_fails(model: &Model, s: usize, inst: &AxiomInstance) -> Result<bool> {
    let k = |x: &Formula| model.belief_support(s).contains(model, x);
    let ch = |phi: &Formula, x: &Formula| model.ri_member(s, phi, x);
    // χ ∈ (K∘φ)+ψ
    let expanded = |phi: &Formula, psi: &Formula, x: &Formula| -> Result<bool> {
        let sup = model.ri_support(s, model.truth_set(phi)?)?.support;
        Ok((sup & model.truth_set(psi)?).is_subset(model.truth_set(x)?))
    };
    let (phi, chi) = (&inst.phi, &inst.chi);
    let psi = || {
        inst.psi
            .as_ref()
            .ok_or_else(|| Error::InvalidWitness(format!("{} instance lacks ψ", inst.axiom)))
    };
    if model.truth_set(phi)?.is_empty() {
        return Ok(false);
    }
    Ok(match inst.axiom {
        AxiomId::D2 => k(phi)? && k(chi)? != ch(phi, chi)?,
        AxiomId::R4 => !k(&Formula::not(phi.clone()))? && k(chi)? && !ch(phi, chi)?,
        AxiomId::D5 | AxiomId::R7 => {
            let psi = psi()?;
            let both = Formula::and(phi.clone(), psi.clone());
            !model.truth_set(&both)?.is_empty() && ch(&both, chi)? && !expanded(phi, psi, chi)?
        }
        AxiomId::D6 => {
            let psi = psi()?;
            !model.truth_set(psi)?.is_empty()
                && ch(phi, psi)?
                && ch(psi, phi)?
                && ch(phi, chi)? != ch(psi, chi)?
        }
        AxiomId::D7 => {
            let psi = psi()?;
            is_complete_at(model, s)
                && !model.truth_set(psi)?.is_empty()
                && ch(phi, chi)?
                && ch(psi, chi)?
                && !ch(&Formula::or(phi.clone(), psi.clone()), chi)?
        }
        AxiomId::D9 | AxiomId::R8 => {
            let psi = psi()?;
            let both = Formula::and(phi.clone(), psi.clone());
            (inst.axiom == AxiomId::R8 || is_complete_at(model, s))
                && !model.truth_set(&both)?.is_empty()
                && !ch(phi, &Formula::not(psi.clone()))?
                && expanded(phi, psi, chi)?
                && !ch(&both, chi)?
        }
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::CompletionRule;
    use crate::properties::check_property;

    fn ev(ix: &[usize]) -> Event {
        Event::from_indices(ix.iter().copied())
    }

    fn pair(p: PropertyId) -> CorrespondencePair {
        CorrespondencePair::ALL.into_iter().find(|c| c.property == p).unwrap()
    }

    fn failing(frame: &Frame, p: PropertyId) -> PropertyWitness {
        check_property(frame, p, &CheckConfig::default()).unwrap().witness.expect("property fails")
    }

    #[test]
    fn pd2_countermodel() {
        let mut fr = Frame::indexed(vec![ev(&[0]), ev(&[1])]);
        fr.set_selection(0, ev(&[0, 1]), ev(&[0, 1]));
        let fr = fr.complete(CompletionRule::Default);
        let w = failing(&fr, PropertyId::Pd2);
        let wm = build_witness_model(&fr, pair(PropertyId::Pd2), &w, &CheckConfig::default()).unwrap();
        assert_eq!(wm.model.valuation()["p"], ev(&[0, 1]));
        assert_eq!(wm.model.valuation()["q"], ev(&[0]));
        let q = atom("q");
        assert!(wm.model.belief_support(0).contains(&wm.model, &q).unwrap());
        assert!(!wm.model.ri_member(0, &atom("p"), &q).unwrap());
    }

    #[test]
    fn pd7_countermodel_uses_union_of_selections() {
        // B(s0) = {s0}; f(s0, {s0,s1,s2}) = {s0,s1} escapes f(s0,{s0,s1}) ∪ f(s0,{s2}) = {s0,s2}.
        let mut fr = Frame::indexed(vec![ev(&[0]), ev(&[1]), ev(&[2])]);
        fr.set_selection(0, ev(&[0, 1, 2]), ev(&[0, 1]));
        let fr = fr.complete(CompletionRule::Default);
        let w = failing(&fr, PropertyId::Pd7);
        let wm = build_witness_model(&fr, pair(PropertyId::Pd7), &w, &CheckConfig::default()).unwrap();
        let sp = w.s_prime.unwrap();
        let expected = fr.select(sp, w.e.unwrap()).unwrap() | fr.select(sp, w.f.unwrap()).unwrap();
        assert_eq!(wm.model.valuation()["r"], expected);
        assert!(instance_fails(&wm.model, wm.state, &wm.instance).unwrap());
    }

    #[test]
    fn pr4_countermodel() {
        let mut fr = Frame::indexed(vec![ev(&[0, 1]), ev(&[1]), ev(&[2])]);
        fr.set_selection(0, ev(&[0, 2]), ev(&[0, 2]));
        let fr = fr.complete(CompletionRule::Default);
        let w = failing(&fr, PropertyId::Pr4);
        let wm = build_witness_model(&fr, pair(PropertyId::Pr4), &w, &CheckConfig::default()).unwrap();
        let e = w.e.unwrap();
        assert_eq!(wm.model.valuation()["q"], fr.belief(w.s) & e);
        assert_eq!(wm.instance.chi.to_string(), "p -> q");
    }

    #[test]
    fn rejects_unconfirmed_witness() {
        let fr = Frame::indexed(vec![ev(&[0]), ev(&[1])]).complete(CompletionRule::Default);
        let w = PropertyWitness {
            s: 0,
            s_prime: Some(0),
            e: Some(ev(&[0, 1])),
            ..Default::default()
        };
        assert!(matches!(
            build_witness_model(&fr, pair(PropertyId::Pd2), &w, &CheckConfig::default()),
            Err(Error::InvalidWitness(_))
        ));
    }
}
