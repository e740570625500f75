use rand::Rng;

use crate::error::Result;
use crate::event::{nonempty_events, Event};
use crate::frames::{CompletionRule, Frame, Model};
use crate::logic::Formula;

use super::table::ChangeFunctionTable;

/// States are the worlds, every state believes `K`, and states in `K`
/// select by the table. A state outside `K` selects by the default
/// completion rule; the table cannot serve there because `s ∈ E` need
/// not put `s` in `table(E)`.
pub fn build_canonical_model(table: &ChangeFunctionTable) -> Result<Model> {
    let ctx = table.context();
    let n = ctx.worlds();
    let k = table.k();
    let names = (0..n).map(|w| ctx.label(w)).collect();
    let mut frame = Frame::new(names, vec![k; n])?;
    for e in nonempty_events(n) {
        let out = table.value(e)?;
        for s in 0..n {
            let sel = if k.contains(s) { out } else { CompletionRule::Default.fill(s, e) };
            frame.set_selection(s, e, sel);
        }
    }
    Model::new(frame, ctx.valuation())
}

/// A random formula over `atoms` of depth at most `depth`.
pub fn random_formula<R: Rng>(atoms: &[String], depth: usize, rng: &mut R) -> Formula {
    if depth == 0 || atoms.is_empty() || rng.gen_bool(0.3) {
        return match rng.gen_range(0..atoms.len() + 2) {
            0 => Formula::True,
            1 => Formula::False,
            i => Formula::atom(atoms[i - 2].clone()),
        };
    }
    let sub = |rng: &mut R| random_formula(atoms, depth - 1, rng);
    match rng.gen_range(0..5) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::iff(sub(rng), sub(rng)),
    }
}

/// `K` read off a model built by [`build_canonical_model`].
pub fn canonical_k(model: &Model) -> Event {
    model.frame().belief(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::changegen::order::PreOrder;
    use crate::changegen::table::gen_revision;
    use crate::changegen::world::WorldContext;

    #[test]
    fn one_atom_revision_read_through() {
        let ctx = WorldContext::standard(1).unwrap();
        let k = Event::singleton(1);
        let t = gen_revision(&ctx, &PreOrder::from_ranks(&[1, 0]), k).unwrap();
        let m = build_canonical_model(&t).unwrap();
        let fr = m.frame();
        assert_eq!(fr.names(), &["0".to_string(), "1".to_string()]);
        for s in k.iter() {
            assert_eq!(fr.selection(s, Event::full(2)), Some(k));
            assert_eq!(fr.selection(s, Event::singleton(0)), Some(Event::singleton(0)));
            assert_eq!(fr.selection(s, Event::singleton(1)), Some(Event::singleton(1)));
        }
        assert!(fr.validate().is_clean());
        assert!(m.cells().iter().all(|c| c.len() == 1));
        assert_eq!(canonical_k(&m), k);
    }
}
