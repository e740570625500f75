use crate::error::Result;
use crate::event::Event;
use crate::frames::Model;
use crate::properties::CheckConfig;

use super::{AxiomId, AxiomVerdict, AxiomWitness};

/// `K_s` is complete: `B(s)` sits inside one cell.
pub fn is_complete_at(model: &Model, s: usize) -> bool {
    let b = model.frame().belief(s);
    match b.min_index() {
        None => true,
        Some(i) => b.is_subset(model.cell_of(i)),
    }
}

/// Everything the reductions need at one state.
struct View<'a> {
    model: &'a Model,
    b: Event,
    defs: Vec<Event>,
}

impl<'a> View<'a> {
    fn new(model: &'a Model, s: usize, cfg: &CheckConfig) -> Result<Self> {
        cfg.ensure(model.frame())?;
        Ok(View {
            model,
            b: model.frame().belief(s),
            defs: model.definable_events()?,
        })
    }

    fn c(&self, x: Event) -> Event {
        self.model.cell_closure(x)
    }

    fn sup(&self, e: Event) -> Result<Event> {
        self.model.frame().sup(self.b, e)
    }

    fn fail(e: Event, f: Option<Event>, g: Event) -> Result<AxiomVerdict> {
        Ok(AxiomVerdict::Fails(AxiomWitness { e, f, g }))
    }

    fn single<P>(&self, mut test: P) -> Result<AxiomVerdict>
    where
        P: FnMut(Event) -> Result<Option<(Option<Event>, Event)>>,
    {
        for &e in &self.defs {
            if let Some((f, g)) = test(e)? {
                return Self::fail(e, f, g);
            }
        }
        Ok(AxiomVerdict::Holds)
    }

    fn pairs<P>(&self, mut test: P) -> Result<AxiomVerdict>
    where
        P: FnMut(Event, Event) -> Result<Option<Event>>,
    {
        for &e in &self.defs {
            for &f in &self.defs {
                if let Some(g) = test(e, f)? {
                    return Self::fail(e, Some(f), g);
                }
            }
        }
        Ok(AxiomVerdict::Holds)
    }
}

/// Decides axiom `id` for the change function induced at state `s`, over
/// definable events. The witness `G` is a definable event whose formula
/// separates the two belief sets compared by the axiom.
pub fn axiom_holds(model: &Model, s: usize, id: AxiomId, cfg: &CheckConfig) -> Result<AxiomVerdict> {
    let v = View::new(model, s, cfg)?;
    if id.needs_complete() && !is_complete_at(model, s) {
        return Ok(AxiomVerdict::NotApplicable);
    }
    match id {
        AxiomId::D3 | AxiomId::R5 => Ok(AxiomVerdict::NotApplicable),
        // Support sets are closed under consequence by construction and the
        // change depends on φ only through ‖φ‖; what can go wrong is a
        // missing selection, which `sup` reports.
        AxiomId::D0 | AxiomId::R1 | AxiomId::D4 | AxiomId::R6 => v.single(|e| {
            v.sup(e)?;
            Ok(None)
        }),
        AxiomId::D1 | AxiomId::R2 => v.single(|e| Ok((!v.sup(e)?.is_subset(e)).then_some((None, e)))),
        AxiomId::D2 => v.single(|e| {
            if !v.b.is_subset(e) {
                return Ok(None);
            }
            let (cs, cb) = (v.c(v.sup(e)?), v.c(v.b));
            Ok((cs != cb).then_some((None, if cs.is_subset(cb) { cs } else { cb })))
        }),
        AxiomId::R3 => v.single(|e| {
            let cs = v.c(v.sup(e)?);
            Ok((!(v.b & e).is_subset(cs)).then_some((None, cs)))
        }),
        AxiomId::R4 => v.single(|e| {
            let cb = v.c(v.b);
            Ok((v.b.intersects(e) && !v.sup(e)?.is_subset(cb)).then_some((None, cb)))
        }),
        AxiomId::D5 | AxiomId::R7 => v.pairs(|e, f| {
            if !e.intersects(f) {
                return Ok(None);
            }
            let g = v.c(v.sup(e & f)?);
            Ok((!(v.sup(e)? & f).is_subset(g)).then_some(g))
        }),
        AxiomId::D6 => v.pairs(|e, f| {
            let (se, sf) = (v.sup(e)?, v.sup(f)?);
            if !(se.is_subset(f) && sf.is_subset(e)) {
                return Ok(None);
            }
            let (ce, cf) = (v.c(se), v.c(sf));
            Ok((ce != cf).then_some(if ce.is_subset(cf) { ce } else { cf }))
        }),
        AxiomId::D7 => v.pairs(|e, f| {
            let g = v.c(v.sup(e)? | v.sup(f)?);
            Ok((!v.sup(e | f)?.is_subset(g)).then_some(g))
        }),
        AxiomId::D9 | AxiomId::R8 => v.pairs(|e, f| {
            let x = v.sup(e)? & f;
            if x.is_empty() || !e.intersects(f) {
                return Ok(None);
            }
            let g = v.c(x);
            Ok((!v.sup(e & f)?.is_subset(g)).then_some(g))
        }),
    }
}

/// Re-derives the violation from belief-set memberships at the witness
/// events alone. True when the violation is reproduced.
pub fn replay(model: &Model, s: usize, id: AxiomId, w: &AxiomWitness) -> Result<bool> {
    let frame = model.frame();
    let b = frame.belief(s);
    let defined = |x: Event| !x.is_empty() && model.is_definable(x);
    if !defined(w.e) || !model.is_definable(w.g) || w.f.is_some_and(|f| !defined(f)) {
        return Ok(false);
    }
    let (e, g) = (w.e, w.g);
    let ch = |x: Event| -> Result<bool> { Ok(model.ri_support(s, x)?.contains_event(g)) };
    let k = b.is_subset(g);
    Ok(match (id, w.f) {
        (AxiomId::D1 | AxiomId::R2, _) => g == e && !ch(e)?,
        (AxiomId::D2, _) => b.is_subset(e) && k != ch(e)?,
        (AxiomId::R3, _) => ch(e)? && !(b & e).is_subset(g),
        (AxiomId::R4, _) => b.intersects(e) && k && !ch(e)?,
        (AxiomId::D5 | AxiomId::R7, Some(f)) => {
            e.intersects(f) && ch(e & f)? && !(frame.sup(b, e)? & f).is_subset(g)
        }
        (AxiomId::D6, Some(f)) => {
            model.ri_support(s, e)?.contains_event(f)
                && model.ri_support(s, f)?.contains_event(e)
                && ch(e)? != ch(f)?
        }
        (AxiomId::D7, Some(f)) => is_complete_at(model, s) && ch(e)? && ch(f)? && !ch(e | f)?,
        (AxiomId::D9 | AxiomId::R8, Some(f)) => {
            let x = frame.sup(b, e)? & f;
            (id == AxiomId::R8 || is_complete_at(model, s))
                && !x.is_empty()
                && e.intersects(f)
                && x.is_subset(g)
                && !ch(e & f)?
        }
        _ => false,
    })
}
