//! Events are subsets of a frame's state set, stored as a 64-bit mask indexed
//! by state order.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Upper bound on the number of states any frame may have.
pub const MAX_STATES: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event(u64);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub const fn from_bits(bits: u64) -> Self {
        Event(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole state set of an `n`-state frame.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_STATES);
        if n >= 64 {
            Event(u64::MAX)
        } else {
            Event((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_STATES);
        Event(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Event::EMPTY, |acc, i| acc | Event::singleton(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_STATES && self.0 & (1u64 << i) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Event) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement relative to an `n`-state frame.
    pub fn complement(self, n: usize) -> Event {
        Event(!self.0 & Event::full(n).0)
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn min_index(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// The single member of a singleton event.
    pub fn as_singleton(self) -> Option<usize> {
        if self.0.count_ones() == 1 {
            self.min_index()
        } else {
            None
        }
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Relabel states: state `i` becomes `perm[i]`.
    pub fn permute(self, perm: &[usize]) -> Event {
        Event::from_indices(self.iter().map(|i| perm[i]))
    }
}

impl BitAnd for Event {
    type Output = Event;
    fn bitand(self, rhs: Event) -> Event {
        Event(self.0 & rhs.0)
    }
}

impl BitOr for Event {
    type Output = Event;
    fn bitor(self, rhs: Event) -> Event {
        Event(self.0 | rhs.0)
    }
}

impl Sub for Event {
    type Output = Event;
    fn sub(self, rhs: Event) -> Event {
        Event(self.0 & !rhs.0)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the member indices of an event, ascending.
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// All nonempty events of an `n`-state frame in ascending mask order.
pub fn nonempty_events(n: usize) -> impl Iterator<Item = Event> + Clone {
    assert!(n < 64, "event enumeration needs fewer than 64 states");
    (1u64..(1u64 << n)).map(Event)
}

/// All nonempty subsets of `within`, ascending by mask.
pub fn nonempty_subsets(within: Event) -> impl Iterator<Item = Event> {
    let full = within.0;
    // Gosper-free submask walk, collected ascending.
    let mut subs = Vec::with_capacity(1 << within.len().min(20));
    let mut sub = full;
    while sub != 0 {
        subs.push(Event(sub));
        sub = (sub - 1) & full;
    }
    subs.reverse();
    subs.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = Event::from_indices([0, 2]);
        let b = Event::from_indices([2, 3]);
        assert_eq!(a & b, Event::singleton(2));
        assert_eq!(a | b, Event::from_indices([0, 2, 3]));
        assert_eq!(a - b, Event::singleton(0));
        assert_eq!(a.complement(4), Event::from_indices([1, 3]));
        assert!(Event::singleton(2).is_subset(a));
        assert!(!b.is_subset(a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn full_handles_64() {
        assert_eq!(Event::full(64).len(), 64);
        assert_eq!(Event::full(0), Event::EMPTY);
    }

    #[test]
    fn submasks_ascending() {
        let w = Event::from_indices([1, 3]);
        let subs: Vec<_> = nonempty_subsets(w).collect();
        assert_eq!(
            subs,
            vec![Event::singleton(1), Event::singleton(3), w]
        );
        assert_eq!(nonempty_events(3).count(), 7);
    }

    #[test]
    fn permute_relabels() {
        let e = Event::from_indices([0, 1]);
        assert_eq!(e.permute(&[2, 0, 1]), Event::from_indices([0, 2]));
    }
}
