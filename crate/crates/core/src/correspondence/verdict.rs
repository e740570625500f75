//! Two-sided correspondence runs over single frames and frame corpora.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{axiom_holds, AxiomReport};
use crate::error::{Error, Result};
use crate::event::Event;
use crate::frames::{Frame, FrameFile, Model};
use crate::properties::{check_class, check_property, CheckConfig, FrameClass, GapReport, WitnessReport};

use super::{build_witness_model, CorrespondencePair, InstanceReport, Scope, MAX_EXHAUSTIVE_STATES};

pub const ATOMS: [&str; 3] = ["p", "q", "r"];
/// Valuations are enumerated exhaustively while `|S|·budget` stays at or below this.
pub const EXHAUSTIVE_VALUATION_BITS: usize = 12;
pub const DEFAULT_SAMPLES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorrespondConfig {
    pub atom_budget: usize,
    pub seed: u64,
    /// Valuations drawn per atom count when enumeration is too large.
    pub samples: usize,
    pub check: CheckConfig,
}

impl Default for CorrespondConfig {
    fn default() -> Self {
        CorrespondConfig {
            atom_budget: 2,
            seed: 0,
            samples: DEFAULT_SAMPLES,
            check: CheckConfig {
                max_states: MAX_EXHAUSTIVE_STATES,
            },
        }
    }
}

/// Valuations over the first `k` atoms for `k = 0..=budget`, in a fixed order.
pub fn valuations(n: usize, budget: usize, seed: u64, samples: usize) -> Vec<BTreeMap<String, Event>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = Event::full(n).bits();
    for k in 0..=budget {
        let atoms = &ATOMS[..k];
        if n * budget <= EXHAUSTIVE_VALUATION_BITS {
            let total = 1u64 << (n * k);
            for code in 0..total {
                out.push(
                    atoms
                        .iter()
                        .enumerate()
                        .map(|(i, a)| (a.to_string(), Event::from_bits((code >> (i * n)) & full)))
                        .collect(),
                );
            }
        } else {
            let draws = if k == 0 { 1 } else { samples };
            for _ in 0..draws {
                out.push(
                    atoms
                        .iter()
                        .map(|a| (a.to_string(), Event::from_bits(rng.gen_range(0..=full))))
                        .collect(),
                );
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub valuation: BTreeMap<String, Vec<String>>,
    pub axiom: AxiomReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessModelReport {
    pub valuation: BTreeMap<String, Vec<String>>,
    pub state: String,
    pub instance: InstanceReport,
    pub axiom: AxiomReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairReport {
    pub pair: CorrespondencePair,
    pub scope: Scope,
    pub property_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub property_witness: Option<WitnessReport>,
    /// Models searched on the holds leg.
    pub models_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_model: Option<WitnessModelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
}

impl PairReport {
    pub fn agrees(&self) -> bool {
        self.discrepancy.is_none()
    }
}

fn named_valuation(frame: &Frame, val: &BTreeMap<String, Event>) -> BTreeMap<String, Vec<String>> {
    val.iter().map(|(a, e)| (a.clone(), frame.event_names(*e))).collect()
}

fn in_scope(frame: &Frame, scope: Scope) -> Vec<usize> {
    (0..frame.len())
        .filter(|&s| scope == Scope::AllStates || frame.is_pointed(s))
        .collect()
}

/// Both directions for one pair on one frame. When the property holds, the
/// axiom is searched for violations at in-scope states over every valuation
/// within the atom budget; when it fails, the countermodel built from the
/// property witness must falsify the axiom.
pub fn correspondence_verdict(frame: &Frame, pair: CorrespondencePair, cfg: &CorrespondConfig) -> Result<PairReport> {
    cfg.check.ensure(frame)?;
    if cfg.atom_budget > ATOMS.len() {
        return Err(Error::SizeLimit {
            what: "atom budget",
            count: cfg.atom_budget,
            limit: ATOMS.len(),
        });
    }
    let verdict = check_property(frame, pair.property, &cfg.check)?;
    let mut report = PairReport {
        pair,
        scope: pair.scope,
        property_holds: verdict.holds(),
        property_witness: verdict.witness.map(|w| w.report(frame)),
        models_checked: 0,
        counterexample: None,
        witness_model: None,
        discrepancy: None,
    };
    match verdict.witness {
        None => {
            let states = in_scope(frame, pair.scope);
            'models: for val in valuations(frame.len(), cfg.atom_budget, cfg.seed, cfg.samples) {
                let model = Model::new(frame.clone(), val)?;
                report.models_checked += 1;
                for &s in &states {
                    let v = axiom_holds(&model, s, pair.axiom, &cfg.check)?;
                    if v.is_violation() {
                        report.counterexample = Some(Counterexample {
                            valuation: named_valuation(frame, model.valuation()),
                            axiom: v.report(frame, pair.axiom, s),
                        });
                        report.discrepancy = Some(format!(
                            "{} holds but {} fails at `{}`",
                            pair.property,
                            pair.axiom,
                            frame.name(s)
                        ));
                        break 'models;
                    }
                }
            }
        }
        Some(w) => match build_witness_model(frame, pair, &w, &cfg.check) {
            Ok(wm) => {
                report.witness_model = Some(WitnessModelReport {
                    valuation: named_valuation(frame, wm.model.valuation()),
                    state: frame.name(wm.state).to_string(),
                    instance: wm.instance.report(),
                    axiom: wm.verdict.report(frame, pair.axiom, wm.state),
                });
            }
            Err(Error::InvalidWitness(msg)) => {
                report.discrepancy = Some(format!("{} fails but no countermodel: {msg}", pair.property));
            }
            Err(e) => return Err(e),
        },
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassBits {
    pub update: bool,
    pub strong_update: bool,
    pub revision_def12: bool,
    pub revision_strict: bool,
}

impl ClassBits {
    pub fn of(frame: &Frame, cfg: &CheckConfig) -> Result<Self> {
        let h = |c| check_class(frame, c, cfg).map(|v| v.holds());
        Ok(ClassBits {
            update: h(FrameClass::Update)?,
            strong_update: h(FrameClass::StrongUpdate)?,
            revision_def12: h(FrameClass::RevisionDef12)?,
            revision_strict: h(FrameClass::RevisionStrict)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameEntry {
    pub index: usize,
    /// Present only when some pair disagrees, or for single-frame runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameFile>,
    pub classes: ClassBits,
    pub pairs: Vec<PairReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairSummary {
    pub pair: String,
    pub property_holds: usize,
    pub property_fails: usize,
    pub models_checked: usize,
    pub discrepancies: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusSummary {
    pub frames: usize,
    pub pairs: Vec<PairSummary>,
    pub discrepancies: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub summary: CensusSummary,
    pub frames: Vec<FrameEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapReport>,
}

impl CensusReport {
    pub fn agrees(&self) -> bool {
        self.summary.discrepancies == 0
    }
}

/// Runs every pair on every frame. Frames are processed in parallel and
/// reported in input order.
pub fn census(frames: Vec<Frame>, pairs: &[CorrespondencePair], cfg: &CorrespondConfig, keep_frames: bool) -> Result<CensusReport> {
    let entries = frames
        .par_iter()
        .enumerate()
        .map(|(index, frame)| -> Result<FrameEntry> {
            let reports = pairs
                .iter()
                .map(|&p| correspondence_verdict(frame, p, cfg))
                .collect::<Result<Vec<_>>>()?;
            let show = keep_frames || reports.iter().any(|r| !r.agrees());
            Ok(FrameEntry {
                index,
                frame: show.then(|| FrameFile::from_frame(frame)),
                classes: ClassBits::of(frame, &cfg.check)?,
                pairs: reports,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = CensusSummary {
        frames: entries.len(),
        pairs: pairs
            .iter()
            .map(|p| PairSummary {
                pair: p.label(),
                ..Default::default()
            })
            .collect(),
        discrepancies: 0,
    };
    for entry in &entries {
        for (slot, r) in summary.pairs.iter_mut().zip(&entry.pairs) {
            if r.property_holds {
                slot.property_holds += 1;
            } else {
                slot.property_fails += 1;
            }
            slot.models_checked += r.models_checked;
            if !r.agrees() {
                slot.discrepancies += 1;
                summary.discrepancies += 1;
            }
        }
    }
    Ok(CensusReport {
        summary,
        frames: entries,
        gap: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::CompletionRule;

    fn ev(ix: &[usize]) -> Event {
        Event::from_indices(ix.iter().copied())
    }

    #[test]
    fn valuation_counts() {
        // 1 + 4 + 16 for two states and two atoms.
        assert_eq!(valuations(2, 2, 0, 10).len(), 21);
        assert_eq!(valuations(3, 3, 0, 10).len(), 1 + 8 + 64 + 512);
        // 5 states, 3 atoms: sampled.
        assert_eq!(valuations(5, 3, 0, 10).len(), 31);
        assert_eq!(valuations(5, 3, 4, 10), valuations(5, 3, 4, 10));
    }

    #[test]
    fn one_state_frame_passes_every_pair() {
        let fr = Frame::indexed(vec![ev(&[0])]).complete(CompletionRule::Default);
        for p in CorrespondencePair::ALL {
            let r = correspondence_verdict(&fr, p, &CorrespondConfig::default()).unwrap();
            assert!(r.property_holds && r.agrees(), "{p}");
        }
    }

    #[test]
    fn failing_property_yields_countermodel() {
        let mut fr = Frame::indexed(vec![ev(&[0]), ev(&[1])]);
        fr.set_selection(0, ev(&[0, 1]), ev(&[0, 1]));
        let fr = fr.complete(CompletionRule::Default);
        let r = correspondence_verdict(&fr, CorrespondencePair::ALL[0], &CorrespondConfig::default()).unwrap();
        assert!(!r.property_holds);
        assert!(r.agrees());
        let wm = r.witness_model.unwrap();
        assert_eq!(wm.axiom.holds, Some(false));
    }

    #[test]
    fn census_orders_frames_and_counts() {
        let frames: Vec<Frame> = vec![
            Frame::indexed(vec![ev(&[0])]).complete(CompletionRule::Default),
            Frame::indexed(vec![ev(&[1]), ev(&[0, 1])]).complete(CompletionRule::Whole),
        ];
        let rep = census(frames, &CorrespondencePair::ALL, &CorrespondConfig::default(), false).unwrap();
        assert_eq!(rep.frames.iter().map(|f| f.index).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(rep.summary.frames, 2);
        assert!(rep.agrees());
        for p in &rep.summary.pairs {
            assert_eq!(p.property_holds + p.property_fails, 2);
        }
    }
}
