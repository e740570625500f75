use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::event::Event;

/// A pre-order on worlds `0..n`, stored as `below[x] = {y : y ≤ x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreOrder {
    below: Vec<Event>,
}

impl PreOrder {
    /// Checks reflexivity and transitivity.
    pub fn from_below(below: Vec<Event>) -> Result<Self> {
        let n = below.len();
        for x in 0..n {
            if !below[x].contains(x) {
                return Err(Error::Input(format!("pre-order is not reflexive at world {x}")));
            }
            if !below[x].is_subset(Event::full(n)) {
                return Err(Error::Input(format!("pre-order at world {x} names worlds out of range")));
            }
            for y in below[x].iter() {
                if !below[y].is_subset(below[x]) {
                    return Err(Error::Input(format!("pre-order is not transitive through {y} ≤ {x}")));
                }
            }
        }
        Ok(PreOrder { below })
    }

    /// The total pre-order `x ≤ y ⟺ rank[x] ≤ rank[y]`.
    pub fn from_ranks(rank: &[u32]) -> Self {
        let n = rank.len();
        PreOrder {
            below: (0..n)
                .map(|x| Event::from_indices((0..n).filter(|&y| rank[y] <= rank[x])))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && !self.le(y, x)
    }

    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.le(x, y) || self.le(y, x)))
    }

    /// Worlds of `e` with nothing in `e` strictly below them.
    pub fn min(&self, e: Event) -> Event {
        Event::from_indices(e.iter().filter(|&x| !(self.below[x] & e).iter().any(|y| self.lt(y, x))))
    }

    /// `w` strictly below every other world.
    pub fn is_centred_on(&self, w: usize) -> bool {
        (0..self.len()).all(|y| y == w || self.lt(w, y))
    }
}

/// One pre-order per world, each centred on its world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreOrderFamily {
    orders: Vec<PreOrder>,
}

impl PreOrderFamily {
    pub fn new(orders: Vec<PreOrder>) -> Result<Self> {
        let n = orders.len();
        for (w, o) in orders.iter().enumerate() {
            if o.len() != n {
                return Err(Error::Input(format!("order for world {w} covers {} worlds, not {n}", o.len())));
            }
            if !o.is_centred_on(w) {
                return Err(Error::Unfaithful(format!("world {w} is not strictly least in its own order")));
            }
        }
        Ok(PreOrderFamily { orders })
    }

    pub fn order(&self, w: usize) -> &PreOrder {
        &self.orders[w]
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.orders.iter().all(PreOrder::is_total)
    }
}

/// Ranks for `n` worlds: those in `least` get 0, the rest 1..=n with ties.
pub fn random_ranks<R: Rng>(n: usize, least: Event, rng: &mut R) -> Vec<u32> {
    (0..n)
        .map(|x| if least.contains(x) { 0 } else { rng.gen_range(1..=n as u32) })
        .collect()
}

/// A strict partial order on the other worlds, a random suborder of a
/// random linear one, with `w` placed below everything.
pub fn random_partial_centred<R: Rng>(n: usize, w: usize, rng: &mut R) -> PreOrder {
    let mut line: Vec<usize> = (0..n).filter(|&x| x != w).collect();
    line.shuffle(rng);
    let mut below: Vec<Event> = (0..n).map(Event::singleton).collect();
    for j in 0..line.len() {
        for i in 0..j {
            if rng.gen_bool(0.5) {
                below[line[j]].insert(line[i]);
            }
        }
    }
    // Close transitively along the line order.
    for &x in &line {
        let mut acc = below[x];
        for y in below[x].iter() {
            acc = acc | below[y];
        }
        below[x] = acc;
    }
    for b in below.iter_mut() {
        b.insert(w);
    }
    PreOrder { below }
}

pub fn random_family<R: Rng>(n: usize, total: bool, rng: &mut R) -> PreOrderFamily {
    let orders = (0..n)
        .map(|w| {
            if total {
                PreOrder::from_ranks(&random_ranks(n, Event::singleton(w), rng))
            } else {
                random_partial_centred(n, w, rng)
            }
        })
        .collect();
    PreOrderFamily { orders }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ranks_minimize() {
        let o = PreOrder::from_ranks(&[2, 0, 1, 0]);
        assert!(o.is_total());
        assert_eq!(o.min(Event::full(4)), Event::from_indices([1, 3]));
        assert_eq!(o.min(Event::from_indices([0, 2])), Event::singleton(2));
    }

    #[test]
    fn rejects_non_transitive() {
        let below = vec![Event::from_indices([0]), Event::from_indices([0, 1]), Event::from_indices([1, 2])];
        assert!(PreOrder::from_below(below).is_err());
    }

    #[test]
    fn random_families_are_centred_and_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for total in [false, true] {
            for n in 1..=8 {
                let fam = random_family(n, total, &mut rng);
                for w in 0..n {
                    let o = fam.order(w);
                    PreOrder::from_below(o.below.clone()).unwrap();
                    assert!(o.is_centred_on(w));
                    for bits in 1..1u64 << n {
                        let e = Event::from_bits(bits);
                        let m = o.min(e);
                        assert!(!m.is_empty() && m.is_subset(e));
                        if e.contains(w) {
                            assert_eq!(m, Event::singleton(w));
                        }
                    }
                }
                if total {
                    assert!(fam.is_total());
                }
            }
        }
    }

    #[test]
    fn unfaithful_family_rejected() {
        let o = PreOrder::from_ranks(&[0, 0]);
        assert!(matches!(
            PreOrderFamily::new(vec![o.clone(), o]),
            Err(Error::Unfaithful(_))
        ));
    }
}
