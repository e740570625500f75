use crate::error::{Error, Result};
use crate::event::{nonempty_events, Event};
use crate::frames::Frame;

use super::{PropertyId, PropertyVerdict, PropertyWitness};

/// Default bound on `|S|` for exhaustive property checks.
pub const DEFAULT_MAX_STATES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub max_states: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

impl CheckConfig {
    pub fn ensure(&self, frame: &Frame) -> Result<()> {
        self.ensure_count(frame.len())
    }

    pub fn ensure_count(&self, states: usize) -> Result<()> {
        if states > self.max_states {
            return Err(Error::SizeLimit {
                what: "state count",
                count: states,
                limit: self.max_states,
            });
        }
        Ok(())
    }
}

fn w(s: usize, s_prime: Option<usize>, e: Event, f: Option<Event>) -> Option<PropertyWitness> {
    Some(PropertyWitness {
        s,
        s_prime,
        e: Some(e),
        f,
        ..Default::default()
    })
}

/// Decides `id` on `frame` by exhaustive quantification.
pub fn check_property(frame: &Frame, id: PropertyId, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    let witness = if id == PropertyId::Base {
        base(frame)
    } else {
        cfg.ensure(frame)?;
        let mut found = None;
        // Each per-state condition reads `B(s)` and nothing else about `s`.
        let mut clean: Vec<Event> = Vec::new();
        for s in 0..frame.len() {
            if clean.contains(&frame.belief(s)) {
                continue;
            }
            found = match id {
                PropertyId::Base => unreachable!(),
                PropertyId::Pd2 => pd2_at(frame, s)?,
                PropertyId::Pd57 => pd57_at(frame, s)?,
                PropertyId::Pd57Strong => pd57_strong_at(frame, s)?,
                PropertyId::Pd6 => pd6_at(frame, s)?,
                PropertyId::Pd7 => pd7_at(frame, s)?,
                PropertyId::Pd9 => pd9_at(frame, s)?,
                PropertyId::Pr4 => pr4_at(frame, s)?,
                PropertyId::Pr8 => pr8_at(frame, s)?,
            };
            if found.is_some() {
                break;
            }
            clean.push(frame.belief(s));
        }
        found
    };
    Ok(PropertyVerdict {
        property: id,
        witness,
    })
}

fn base(frame: &Frame) -> Option<PropertyWitness> {
    frame.validate().violations.first().map(|v| PropertyWitness {
        s: v.state_index,
        e: v.event_mask,
        clause: Some(v.clause),
        ..Default::default()
    })
}

fn pd2_at(frame: &Frame, s: usize) -> Result<Option<PropertyWitness>> {
    let b = frame.belief(s);
    for e in nonempty_events(frame.len()).filter(|e| b.is_subset(*e)) {
        for sp in b.iter() {
            if !frame.select(sp, e)?.is_subset(b) {
                return Ok(w(s, Some(sp), e, None));
            }
        }
    }
    Ok(None)
}

pub(crate) fn pd57_at(frame: &Frame, s: usize) -> Result<Option<PropertyWitness>> {
    let b = frame.belief(s);
    let n = frame.len();
    for e in nonempty_events(n) {
        for f in nonempty_events(n).filter(|f| f.intersects(e)) {
            // The smallest G satisfying the antecedent is the union itself.
            let least = frame.sup(b, e & f)?;
            for sp in b.iter() {
                if !(frame.select(sp, e)? & f).is_subset(least) {
                    return Ok(w(s, Some(sp), e, Some(f)));
                }
            }
        }
    }
    Ok(None)
}

fn pd57_strong_at(frame: &Frame, s: usize) -> Result<Option<PropertyWitness>> {
    let b = frame.belief(s);
    let n = frame.len();
    for e in nonempty_events(n) {
        for f in nonempty_events(n).filter(|f| f.intersects(e)) {
            for sp in b.iter() {
                if !(frame.select(sp, e)? & f).is_subset(frame.select(sp, e & f)?) {
                    return Ok(w(s, Some(sp), e, Some(f)));
                }
            }
        }
    }
    Ok(None)
}

fn pd6_at(frame: &Frame, s: usize) -> Result<Option<PropertyWitness>> {
    let b = frame.belief(s);
    let n = frame.len();
    for e in nonempty_events(n) {
        for f in nonempty_events(n).filter(|f| f.bits() > e.bits()) {
            let mut premise = true;
            for sp in b.iter() {
                if !frame.select(sp, e)?.is_subset(f) || !frame.select(sp, f)?.is_subset(e) {
                    premise = false;
                    break;
                }
            }
            if premise && frame.sup(b, e)? != frame.sup(b, f)? {
                return Ok(w(s, None, e, Some(f)));
            }
        }
    }
    Ok(None)
}

fn pd7_at(frame: &Frame, s: usize) -> Result<Option<PropertyWitness>> {
    let Some(sp) = frame.belief(s).as_singleton() else {
        return Ok(None);
    };
    let n = frame.len();
    for e in nonempty_events(n) {
        let fe = frame.select(sp, e)?;
        for f in nonempty_events(n) {
            if !frame.select(sp, e | f)?.is_subset(fe | frame.select(sp, f)?) {
                return Ok(w(s, Some(sp), e, Some(f)));
            }
        }
    }
    Ok(None)
}

fn pd9_at(frame: &Frame, s: usize) -> Result<Option<PropertyWitness>> {
    let Some(sp) = frame.belief(s).as_singleton() else {
        return Ok(None);
    };
    let n = frame.len();
    for e in nonempty_events(n) {
        let fe = frame.select(sp, e)?;
        for f in nonempty_events(n).filter(|f| f.intersects(e)) {
            if fe.intersects(f) && !frame.select(sp, e & f)?.is_subset(fe & f) {
                return Ok(w(s, Some(sp), e, Some(f)));
            }
        }
    }
    Ok(None)
}

fn pr4_at(frame: &Frame, s: usize) -> Result<Option<PropertyWitness>> {
    let b = frame.belief(s);
    for e in nonempty_events(frame.len()).filter(|e| e.intersects(b)) {
        for sp in b.iter() {
            if !frame.select(sp, e)?.is_subset(b & e) {
                return Ok(w(s, Some(sp), e, None));
            }
        }
    }
    Ok(None)
}

fn pr8_at(frame: &Frame, s: usize) -> Result<Option<PropertyWitness>> {
    let b = frame.belief(s);
    let n = frame.len();
    for e in nonempty_events(n) {
        let sup_e = frame.sup(b, e)?;
        for f in nonempty_events(n).filter(|f| f.intersects(e)) {
            let u = sup_e & f;
            if u.is_empty() {
                continue;
            }
            for sp in b.iter() {
                if !frame.select(sp, e & f)?.is_subset(u) {
                    return Ok(w(s, Some(sp), e, Some(f)));
                }
            }
        }
    }
    Ok(None)
}

/// The three-event form of PD57 with `G` ranging over every subset of `S`.
/// Exponential in `|S|` on top of the pair loop; meant for small frames.
pub fn pd57_literal(frame: &Frame, cfg: &CheckConfig) -> Result<Option<PropertyWitness>> {
    cfg.ensure(frame)?;
    let n = frame.len();
    for s in 0..n {
        let b = frame.belief(s);
        for e in nonempty_events(n) {
            for f in nonempty_events(n).filter(|f| f.intersects(e)) {
                for g in (0..1u64 << n).map(Event::from_bits) {
                    let mut antecedent = true;
                    for sp in b.iter() {
                        if !frame.select(sp, e & f)?.is_subset(g) {
                            antecedent = false;
                            break;
                        }
                    }
                    if !antecedent {
                        continue;
                    }
                    for sp in b.iter() {
                        if !(frame.select(sp, e)? & f).is_subset(g) {
                            return Ok(Some(PropertyWitness {
                                s,
                                s_prime: Some(sp),
                                e: Some(e),
                                f: Some(f),
                                g: Some(g),
                                clause: None,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Re-evaluates the property's defining condition at the witness alone.
pub fn confirm_witness(frame: &Frame, id: PropertyId, wit: &PropertyWitness) -> Result<bool> {
    let n = frame.len();
    let bad = |m: &str| Error::InvalidWitness(format!("{id} witness {m}"));
    if wit.s >= n {
        return Err(bad("names a state out of range"));
    }
    let b = frame.belief(wit.s);
    let e = || wit.e.filter(|e| !e.is_empty()).ok_or_else(|| bad("lacks E"));
    let f = || wit.f.filter(|f| !f.is_empty()).ok_or_else(|| bad("lacks F"));
    let sp = || {
        wit.s_prime
            .filter(|sp| b.contains(*sp))
            .ok_or_else(|| bad("lacks s' in B(s)"))
    };
    Ok(match id {
        PropertyId::Base => {
            let report = frame.validate();
            report
                .violations
                .iter()
                .any(|v| v.state_index == wit.s && v.event_mask == wit.e && Some(v.clause) == wit.clause)
        }
        PropertyId::Pd2 => {
            let e = e()?;
            b.is_subset(e) && !frame.select(sp()?, e)?.is_subset(b)
        }
        PropertyId::Pd57 => {
            let (e, f) = (e()?, f()?);
            let g = match wit.g {
                Some(g) => g,
                None if e.intersects(f) => frame.sup(b, e & f)?,
                None => return Ok(false),
            };
            e.intersects(f)
                && frame.sup(b, e & f)?.is_subset(g)
                && !(frame.select(sp()?, e)? & f).is_subset(g)
        }
        PropertyId::Pd57Strong => {
            let (e, f) = (e()?, f()?);
            e.intersects(f) && {
                let sp = sp()?;
                !(frame.select(sp, e)? & f).is_subset(frame.select(sp, e & f)?)
            }
        }
        PropertyId::Pd6 => {
            let (e, f) = (e()?, f()?);
            let mut premise = true;
            for x in b.iter() {
                premise &= frame.select(x, e)?.is_subset(f) && frame.select(x, f)?.is_subset(e);
            }
            premise && frame.sup(b, e)? != frame.sup(b, f)?
        }
        PropertyId::Pd7 => {
            let (e, f, sp) = (e()?, f()?, sp()?);
            b.len() == 1
                && !frame
                    .select(sp, e | f)?
                    .is_subset(frame.select(sp, e)? | frame.select(sp, f)?)
        }
        PropertyId::Pd9 => {
            let (e, f, sp) = (e()?, f()?, sp()?);
            let fe = frame.select(sp, e)?;
            b.len() == 1 && fe.intersects(f) && e.intersects(f) && !frame.select(sp, e & f)?.is_subset(fe & f)
        }
        PropertyId::Pr4 => {
            let e = e()?;
            b.intersects(e) && !frame.select(sp()?, e)?.is_subset(b & e)
        }
        PropertyId::Pr8 => {
            let (e, f) = (e()?, f()?);
            let u = frame.sup(b, e)? & f;
            e.intersects(f) && !u.is_empty() && !frame.select(sp()?, e & f)?.is_subset(u)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::CompletionRule;

    fn ev(ix: &[usize]) -> Event {
        Event::from_indices(ix.iter().copied())
    }

    fn check(frame: &Frame, id: PropertyId) -> PropertyVerdict {
        check_property(frame, id, &CheckConfig::default()).unwrap()
    }

    fn singleton_default(n: usize) -> Frame {
        Frame::indexed((0..n).map(Event::singleton).collect()).complete(CompletionRule::Default)
    }

    #[test]
    fn pd2_holds_on_singleton_default_frames() {
        for n in 1..=5 {
            assert!(check(&singleton_default(n), PropertyId::Pd2).holds());
        }
    }

    #[test]
    fn pd2_witness() {
        let mut fr = Frame::indexed(vec![ev(&[0]), ev(&[1])]);
        fr.set_selection(0, ev(&[0, 1]), ev(&[0, 1]));
        let fr = fr.complete(CompletionRule::Default);
        let v = check(&fr, PropertyId::Pd2);
        let wit = v.witness.unwrap();
        assert_eq!((wit.s, wit.s_prime, wit.e), (0, Some(0), Some(ev(&[0, 1]))));
        assert!(confirm_witness(&fr, PropertyId::Pd2, &wit).unwrap());
    }

    #[test]
    fn base_witness_for_seriality() {
        let fr = Frame::indexed(vec![ev(&[0]), Event::EMPTY]).complete(CompletionRule::Default);
        let wit = check(&fr, PropertyId::Base).witness.unwrap();
        assert_eq!(wit.s, 1);
        assert!(confirm_witness(&fr, PropertyId::Base, &wit).unwrap());
    }

    #[test]
    fn size_bound() {
        let fr = singleton_default(9);
        assert!(matches!(
            check_property(&fr, PropertyId::Pd2, &CheckConfig::default()),
            Err(Error::SizeLimit { count: 9, limit: 8, .. })
        ));
        assert!(check_property(&fr, PropertyId::Pd2, &CheckConfig { max_states: 9 }).is_ok());
        // BASE never needs the bound.
        assert!(check(&fr, PropertyId::Base).holds());
    }

    #[test]
    fn undefined_selection_surfaces() {
        let fr = Frame::indexed(vec![ev(&[0]), ev(&[1])]);
        assert!(matches!(
            check_property(&fr, PropertyId::Pr4, &CheckConfig::default()),
            Err(Error::UndefinedSelection { .. })
        ));
    }

    #[test]
    fn pd7_and_pd9_ignore_non_pointed_states() {
        // Every state believes {s0, s1}: nothing is pointed.
        let mut fr = Frame::indexed(vec![ev(&[0, 1]); 3]);
        fr.set_selection(0, ev(&[0, 1, 2]), ev(&[0, 2]));
        let fr = fr.complete(CompletionRule::Whole);
        assert!(check(&fr, PropertyId::Pd7).holds());
        assert!(check(&fr, PropertyId::Pd9).holds());
    }

    #[test]
    fn literal_and_eliminated_pd57_agree_on_a_failure() {
        let mut fr = Frame::indexed(vec![ev(&[0]); 4]);
        fr.set_selection(0, ev(&[1, 2, 3]), ev(&[1, 2]));
        fr.set_selection(0, ev(&[1, 2]), ev(&[1]));
        let fr = fr.complete(CompletionRule::Default);
        let elim = check(&fr, PropertyId::Pd57).witness.unwrap();
        let lit = pd57_literal(&fr, &CheckConfig::default()).unwrap().unwrap();
        assert_eq!((elim.e, elim.f), (Some(ev(&[1, 2, 3])), Some(ev(&[1, 2]))));
        assert!(confirm_witness(&fr, PropertyId::Pd57, &elim).unwrap());
        assert!(confirm_witness(&fr, PropertyId::Pd57, &lit).unwrap());
        assert!(!check(&fr, PropertyId::Pd57Strong).holds());
    }
}
