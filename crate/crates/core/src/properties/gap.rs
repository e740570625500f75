//! Search for a frame satisfying PR4 and PR8 but violating PD57.
//!
//! All three properties are evaluated state by state, and at state `s` they
//! read only `B(s)` and the selections `f(s', ·)` for `s' ∈ B(s)`. A frame
//! failing PD57 at `s` while satisfying PR4 and PR8 everywhere can therefore
//! be replaced by one where every state believes `B(s)`, the selections of
//! `B(s)` are kept, and all other selections are filled by the default rule.
//! Up to relabeling `B(s)` is an initial segment of the states. The search
//! below walks those reduced frames, with the PR4 and BASE constraints on
//! `f(x, ·)` for `x ∈ B(s)` applied before enumeration.

use serde::Serialize;

use crate::error::Result;
use crate::event::{nonempty_events, nonempty_subsets, Event};
use crate::frames::{CompletionRule, Frame, FrameFile};

use super::{check::pd57_at, check_class, check_property, CheckConfig, FrameClass, PropertyId, WitnessReport};

/// Enumeration steps larger than this are recorded as skipped.
pub const DEFAULT_STEP_BUDGET: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapStep {
    pub states: usize,
    #[serde(rename = "beliefSize")]
    pub belief_size: usize,
    pub candidates: u128,
    pub searched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapWitness {
    pub frame: FrameFile,
    pub pd57: WitnessReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub found: bool,
    /// True when every step up to the hit (or the bound) was enumerated.
    pub complete: bool,
    #[serde(rename = "maxStates")]
    pub max_states: usize,
    pub steps: Vec<GapStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GapWitness>,
}

/// Selections allowed for `f(x, E)` under BASE and PR4 when `B = belief`.
fn allowed(x: usize, e: Event, belief: Event) -> Vec<Event> {
    let pool = if belief.intersects(e) { belief & e } else { e };
    nonempty_subsets(pool)
        .filter(|c| !e.contains(x) || c.contains(x))
        .collect()
}

pub fn probe_def12_gap(max_states: usize, budget: u128) -> Result<GapReport> {
    let mut steps = Vec::new();
    let mut complete = true;
    for n in 1..=max_states {
        for k in 1..=n {
            let belief = Event::full(k);
            let mut slots: Vec<(usize, Event, Vec<Event>)> = Vec::new();
            for x in 0..k {
                for e in nonempty_events(n) {
                    slots.push((x, e, allowed(x, e, belief)));
                }
            }
            let candidates = slots
                .iter()
                .try_fold(1u128, |acc, (_, _, c)| acc.checked_mul(c.len() as u128))
                .unwrap_or(u128::MAX);
            let searched = candidates <= budget;
            steps.push(GapStep {
                states: n,
                belief_size: k,
                candidates,
                searched,
            });
            if !searched {
                complete = false;
                continue;
            }
            let base = Frame::indexed(vec![belief; n]).complete(CompletionRule::Default);
            if let Some(frame) = search(base, &slots)? {
                return Ok(found(frame, max_states, steps, complete)?);
            }
        }
    }
    Ok(GapReport {
        found: false,
        complete,
        max_states,
        steps,
        witness: None,
    })
}

fn search(mut frame: Frame, slots: &[(usize, Event, Vec<Event>)]) -> Result<Option<Frame>> {
    let mut idx = vec![0usize; slots.len()];
    for (x, e, c) in slots {
        frame.set_selection(*x, *e, c[0]);
    }
    let cfg = CheckConfig { max_states: 64 };
    loop {
        // Every state shares B, so state 0 speaks for all of them.
        if pd57_at(&frame, 0)?.is_some() && check_property(&frame, PropertyId::Pr8, &cfg)?.holds() {
            return Ok(Some(frame));
        }
        let mut i = 0;
        loop {
            if i == slots.len() {
                return Ok(None);
            }
            let (x, e, c) = &slots[i];
            idx[i] += 1;
            if idx[i] < c.len() {
                frame.set_selection(*x, *e, c[idx[i]]);
                break;
            }
            idx[i] = 0;
            frame.set_selection(*x, *e, c[0]);
            i += 1;
        }
    }
}

fn found(frame: Frame, max_states: usize, steps: Vec<GapStep>, complete: bool) -> Result<GapReport> {
    let cfg = CheckConfig { max_states: 64 };
    // Confirm through the general checkers before reporting.
    let def12 = check_class(&frame, FrameClass::RevisionDef12, &cfg)?;
    let pd57 = check_property(&frame, PropertyId::Pd57, &cfg)?;
    assert!(def12.holds() && !pd57.holds(), "gap search produced an unconfirmed frame");
    Ok(GapReport {
        found: true,
        complete,
        max_states,
        steps,
        witness: Some(GapWitness {
            frame: FrameFile::from_frame(&frame),
            pd57: pd57.witness.expect("failing verdict has a witness").report(&frame),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allowed_respects_constraints() {
        let b = Event::from_indices([0, 1]);
        // E = {1, 2} meets B: choices are subsets of {1}.
        assert_eq!(allowed(0, Event::from_indices([1, 2]), b), vec![Event::singleton(1)]);
        // E = {0, 1}: must keep 0.
        assert_eq!(
            allowed(0, b, b),
            vec![Event::singleton(0), Event::from_indices([0, 1])]
        );
        // E = {2, 3} misses B: any nonempty subset.
        assert_eq!(allowed(0, Event::from_indices([2, 3]), b).len(), 3);
    }

    #[test]
    fn none_within_three_states() {
        let r = probe_def12_gap(3, DEFAULT_STEP_BUDGET).unwrap();
        assert!(!r.found && r.complete);
        assert_eq!(r.steps.len(), 6);
    }

    #[test]
    fn separating_frame_within_four_states() {
        let r = probe_def12_gap(4, DEFAULT_STEP_BUDGET).unwrap();
        let last = r.steps.last().unwrap();
        assert!(r.found && r.complete);
        assert_eq!((last.states, last.belief_size), (4, 1));
        let w = r.witness.unwrap();
        assert_eq!(w.pd57.e.unwrap(), ["s1", "s2", "s3"]);
        assert_eq!(w.pd57.f.unwrap(), ["s1", "s2"]);
    }
}
