use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::event::Event;
use crate::logic::{is_valid_atom, Formula};

pub const MAX_ATOMS: usize = 4;
pub const STANDARD_ATOMS: [&str; MAX_ATOMS] = ["p", "q", "r", "s"];

/// Worlds are the `2^k` assignments to `k` atoms. World `w` makes atom `i`
/// true iff bit `i` of `w` is set; its label lists the bits in atom order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorldContext {
    atoms: Vec<String>,
}

impl WorldContext {
    pub fn new(atoms: Vec<String>) -> Result<Self> {
        if atoms.len() > MAX_ATOMS {
            return Err(Error::SizeLimit {
                what: "atom count",
                count: atoms.len(),
                limit: MAX_ATOMS,
            });
        }
        for (i, a) in atoms.iter().enumerate() {
            if !is_valid_atom(a) {
                return Err(Error::InvalidAtom(a.clone()));
            }
            if atoms[..i].contains(a) {
                return Err(Error::Input(format!("atom `{a}` listed twice")));
            }
        }
        Ok(WorldContext { atoms })
    }

    /// `p, q, r, s` truncated to `k`.
    pub fn standard(k: usize) -> Result<Self> {
        if k > MAX_ATOMS {
            return Err(Error::SizeLimit {
                what: "atom count",
                count: k,
                limit: MAX_ATOMS,
            });
        }
        Self::new(STANDARD_ATOMS[..k].iter().map(|a| a.to_string()).collect())
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn worlds(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn all(&self) -> Event {
        Event::full(self.worlds())
    }

    pub fn label(&self, w: usize) -> String {
        (0..self.atoms.len())
            .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn labels(&self, e: Event) -> Vec<String> {
        e.iter().map(|w| self.label(w)).collect()
    }

    pub fn parse_world(&self, text: &str) -> Result<usize> {
        let k = self.atoms.len();
        if text.len() != k {
            return Err(Error::Input(format!("world `{text}` should have {k} bits")));
        }
        text.chars().enumerate().try_fold(0usize, |acc, (i, c)| match c {
            '0' => Ok(acc),
            '1' => Ok(acc | 1 << i),
            _ => Err(Error::Input(format!("world `{text}` is not a bitstring"))),
        })
    }

    pub fn parse_event(&self, labels: &[String]) -> Result<Event> {
        let mut e = Event::EMPTY;
        for l in labels {
            e.insert(self.parse_world(l)?);
        }
        Ok(e)
    }

    /// `V(a)` = worlds making `a` true.
    pub fn valuation(&self) -> BTreeMap<String, Event> {
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), Event::from_indices((0..self.worlds()).filter(|w| w >> i & 1 == 1))))
            .collect()
    }

    /// The state description of world `w`.
    pub fn world_formula(&self, w: usize) -> Formula {
        Formula::conjunction(self.atoms.iter().enumerate().map(|(i, a)| {
            if w >> i & 1 == 1 {
                Formula::atom(a.clone())
            } else {
                Formula::not(Formula::atom(a.clone()))
            }
        }))
    }

    /// A formula whose truth set is exactly `e`.
    pub fn formula_of(&self, e: Event) -> Formula {
        e.iter()
            .map(|w| self.world_formula(w))
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{Frame, Model};

    #[test]
    fn labels_round_trip() {
        let ctx = WorldContext::standard(3).unwrap();
        assert_eq!(ctx.worlds(), 8);
        assert_eq!(ctx.label(0b001), "100");
        for w in 0..8 {
            assert_eq!(ctx.parse_world(&ctx.label(w)).unwrap(), w);
        }
        assert!(ctx.parse_world("10").is_err());
        assert!(ctx.parse_world("1x0").is_err());
    }

    #[test]
    fn valuation_and_state_descriptions() {
        let ctx = WorldContext::standard(2).unwrap();
        let val = ctx.valuation();
        assert_eq!(val["p"], Event::from_indices([1, 3]));
        assert_eq!(val["q"], Event::from_indices([2, 3]));
        let m = Model::new(Frame::indexed(vec![Event::singleton(0); 4]), val).unwrap();
        for bits in 0..16u64 {
            let e = Event::from_bits(bits);
            assert_eq!(m.truth_set(&ctx.formula_of(e)).unwrap(), e);
        }
    }

    #[test]
    fn bounds() {
        assert!(WorldContext::standard(5).is_err());
        assert!(WorldContext::new(vec!["p".into(), "p".into()]).is_err());
    }
}
