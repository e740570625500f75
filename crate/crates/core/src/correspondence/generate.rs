//! Frame streams: every frame on a few states, or seeded random ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::event::{nonempty_events, nonempty_subsets, Event};
use crate::frames::Frame;

/// Largest state count accepted in exhaustive mode.
pub const MAX_EXHAUSTIVE_STATES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    Exhaustive,
    Random { count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameGenSpec {
    pub states: usize,
    pub seed: u64,
    pub mode: GenMode,
    /// Only produce frames satisfying the frame conditions.
    pub enforce_base: bool,
    /// Drop frames that are not the least relabeling of themselves.
    pub canonicalize: bool,
}

impl FrameGenSpec {
    pub fn exhaustive(states: usize) -> Self {
        FrameGenSpec {
            states,
            seed: 0,
            mode: GenMode::Exhaustive,
            enforce_base: true,
            canonicalize: false,
        }
    }

    pub fn random(states: usize, count: usize, seed: u64) -> Self {
        FrameGenSpec {
            states,
            seed,
            mode: GenMode::Random { count },
            enforce_base: true,
            canonicalize: false,
        }
    }
}

pub type FrameStream = Box<dyn Iterator<Item = Frame> + Send>;

pub fn enumerate_frames(spec: &FrameGenSpec) -> Result<FrameStream> {
    let n = spec.states;
    if n == 0 {
        return Err(Error::Input("a frame needs at least one state".into()));
    }
    let stream: FrameStream = match spec.mode {
        GenMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_STATES {
                return Err(Error::SizeLimit {
                    what: "exhaustive state count",
                    count: n,
                    limit: MAX_EXHAUSTIVE_STATES,
                });
            }
            Box::new(Exhaustive::new(n, spec.enforce_base))
        }
        GenMode::Random { count } => {
            if n > 16 {
                return Err(Error::SizeLimit {
                    what: "random-frame state count",
                    count: n,
                    limit: 16,
                });
            }
            Box::new(RandomFrames {
                n,
                rng: ChaCha8Rng::seed_from_u64(spec.seed),
                remaining: count,
                enforce: spec.enforce_base,
            })
        }
    };
    if spec.canonicalize {
        let perms = permutations(n);
        Ok(Box::new(stream.filter(move |f| is_canonical(f, &perms))))
    } else {
        Ok(stream)
    }
}

/// Selections admissible for `f(s, E)`.
pub fn admissible(s: usize, e: Event, n: usize, enforce: bool) -> Vec<Event> {
    if enforce {
        nonempty_subsets(e).filter(|c| !e.contains(s) || c.contains(s)).collect()
    } else {
        (0..1u64 << n).map(Event::from_bits).collect()
    }
}

/// Odometer over belief choices and selection tables.
struct Exhaustive {
    n: usize,
    beliefs: Vec<Event>,
    slots: Vec<(usize, Event, Vec<Event>)>,
    digits: Vec<usize>,
    done: bool,
}

impl Exhaustive {
    fn new(n: usize, enforce: bool) -> Self {
        let beliefs: Vec<Event> = if enforce {
            nonempty_events(n).collect()
        } else {
            (0..1u64 << n).map(Event::from_bits).collect()
        };
        let mut slots = Vec::new();
        for s in 0..n {
            for e in nonempty_events(n) {
                slots.push((s, e, admissible(s, e, n, enforce)));
            }
        }
        Exhaustive {
            n,
            beliefs,
            digits: vec![0; n + slots.len()],
            slots,
            done: false,
        }
    }

    fn radix(&self, i: usize) -> usize {
        if i < self.n {
            self.beliefs.len()
        } else {
            self.slots[i - self.n].2.len()
        }
    }
}

impl Iterator for Exhaustive {
    type Item = Frame;

    fn next(&mut self) -> Option<Frame> {
        if self.done {
            return None;
        }
        let belief = self.digits[..self.n].iter().map(|&d| self.beliefs[d]).collect();
        let mut frame = Frame::indexed(belief);
        for (k, (s, e, choices)) in self.slots.iter().enumerate() {
            frame.set_selection(*s, *e, choices[self.digits[self.n + k]]);
        }
        // Table digits turn fastest, so frames sharing a belief relation are adjacent.
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.radix(i) {
                break;
            }
            self.digits[i] = 0;
        }
        Some(frame)
    }
}

struct RandomFrames {
    n: usize,
    rng: ChaCha8Rng,
    remaining: usize,
    enforce: bool,
}

impl RandomFrames {
    fn subset(&mut self, within: Event) -> Event {
        let members: Vec<usize> = within.iter().collect();
        loop {
            let pick = Event::from_indices(members.iter().copied().filter(|_| self.rng.gen_bool(0.5)));
            if !pick.is_empty() || within.is_empty() {
                return pick;
            }
        }
    }

    fn belief(&mut self) -> Event {
        if self.rng.gen_bool(0.4) {
            Event::singleton(self.rng.gen_range(0..self.n))
        } else {
            self.subset(Event::full(self.n))
        }
    }

    /// A ranking of states with `s` strictly first (when given) and ties allowed.
    fn ranking(&mut self, first: Option<usize>) -> Vec<u32> {
        let levels = self.n as u32;
        (0..self.n)
            .map(|i| match first {
                Some(s) if i == s => 0,
                Some(_) => self.rng.gen_range(1..=levels),
                None => self.rng.gen_range(0..levels),
            })
            .collect()
    }

    fn uniform(&mut self) -> Frame {
        let n = self.n;
        let belief = (0..n).map(|_| self.belief()).collect();
        let mut frame = Frame::indexed(belief);
        for s in 0..n {
            for e in nonempty_events(n) {
                let choices = admissible(s, e, n, true);
                frame.set_selection(s, e, *choices.choose(&mut self.rng).expect("nonempty choices"));
            }
        }
        frame
    }

    /// Every state selects by its own centred ranking.
    fn ranked(&mut self) -> Frame {
        let n = self.n;
        let belief = (0..n).map(|_| self.belief()).collect();
        let mut frame = Frame::indexed(belief);
        for s in 0..n {
            let r = self.ranking(Some(s));
            fill_by_ranking(&mut frame, s, &r);
        }
        frame
    }

    /// Believed states share one ranking whose minimum is the belief set.
    fn faithful(&mut self) -> Frame {
        let n = self.n;
        let r = self.ranking(None);
        let low = *r.iter().min().expect("n > 0");
        let believed = Event::from_indices((0..n).filter(|&i| r[i] == low));
        let belief = (0..n)
            .map(|_| if self.rng.gen_bool(0.8) { believed } else { self.belief() })
            .collect();
        let mut frame = Frame::indexed(belief);
        for s in 0..n {
            if believed.contains(s) {
                fill_by_ranking(&mut frame, s, &r);
            } else {
                let own = self.ranking(Some(s));
                fill_by_ranking(&mut frame, s, &own);
            }
        }
        frame
    }

    fn unconstrained(&mut self) -> Frame {
        let n = self.n;
        let full = Event::full(n);
        let belief = (0..n)
            .map(|_| Event::from_bits(self.rng.gen_range(0..=full.bits())))
            .collect();
        let mut frame = Frame::indexed(belief);
        for s in 0..n {
            for e in nonempty_events(n) {
                frame.set_selection(s, e, Event::from_bits(self.rng.gen_range(0..=full.bits())));
            }
        }
        frame
    }
}

fn fill_by_ranking(frame: &mut Frame, s: usize, rank: &[u32]) {
    for e in nonempty_events(frame.len()) {
        let best = e.iter().map(|i| rank[i]).min().expect("nonempty event");
        frame.set_selection(s, e, Event::from_indices(e.iter().filter(|&i| rank[i] == best)));
    }
}

impl Iterator for RandomFrames {
    type Item = Frame;

    fn next(&mut self) -> Option<Frame> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if !self.enforce {
            return Some(self.unconstrained());
        }
        Some(match self.rng.gen_range(0..10) {
            0..=3 => self.uniform(),
            4..=6 => self.ranked(),
            _ => self.faithful(),
        })
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn encode(frame: &Frame) -> Vec<u64> {
    let mut code: Vec<u64> = (0..frame.len()).map(|s| frame.belief(s).bits()).collect();
    code.extend(frame.selection_entries().into_iter().map(|(_, _, o)| o.bits()));
    code
}

/// True when no relabeling of `frame` has a smaller encoding.
pub fn is_canonical(frame: &Frame, perms: &[Vec<usize>]) -> bool {
    let own = encode(frame);
    perms.iter().all(|p| encode(&frame.permuted(p)) >= own)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: beliefs times per-entry choice counts.
    fn count_oracle(n: usize) -> u64 {
        let mut total = ((1u64 << n) - 1).pow(n as u32);
        for s in 0..n {
            for bits in 1u64..(1 << n) {
                let size = bits.count_ones();
                total *= if bits & (1 << s) != 0 {
                    1 << (size - 1)
                } else {
                    (1 << size) - 1
                };
            }
        }
        total
    }

    #[test]
    fn exhaustive_counts() {
        assert_eq!(count_oracle(1), 1);
        assert_eq!(count_oracle(2), 36);
        for n in 1..=2 {
            let frames: Vec<Frame> = enumerate_frames(&FrameGenSpec::exhaustive(n)).unwrap().collect();
            assert_eq!(frames.len() as u64, count_oracle(n));
            assert!(frames.iter().all(|f| f.validate().is_clean() && f.is_total()));
        }
    }

    #[test]
    fn single_state_frame_is_forced() {
        let frames: Vec<Frame> = enumerate_frames(&FrameGenSpec::exhaustive(1)).unwrap().collect();
        assert_eq!(frames.len(), 1);
        assert_eq!(frames[0].belief(0), Event::singleton(0));
        assert_eq!(frames[0].selection(0, Event::singleton(0)), Some(Event::singleton(0)));
    }

    #[test]
    fn fixed_belief_count_at_two_states() {
        // For a fixed B, only the 4 tables vary.
        let frames: Vec<Frame> = enumerate_frames(&FrameGenSpec::exhaustive(2)).unwrap().collect();
        let fixed = frames
            .iter()
            .filter(|f| f.belief(0) == Event::singleton(1) && f.belief(1) == Event::full(2))
            .count();
        assert_eq!(fixed, 4);
    }

    #[test]
    fn canonical_frames_cover_every_orbit() {
        let spec = FrameGenSpec {
            canonicalize: true,
            ..FrameGenSpec::exhaustive(2)
        };
        let canon: Vec<Frame> = enumerate_frames(&spec).unwrap().collect();
        let perms = permutations(2);
        let all: Vec<Frame> = enumerate_frames(&FrameGenSpec::exhaustive(2)).unwrap().collect();
        for f in &all {
            let orbit: Vec<Vec<u64>> = perms.iter().map(|p| encode(&f.permuted(p))).collect();
            assert_eq!(canon.iter().filter(|c| orbit.contains(&encode(c))).count(), 1);
        }
        assert!(canon.len() < all.len());
    }

    #[test]
    fn random_is_seed_deterministic() {
        let a: Vec<Frame> = enumerate_frames(&FrameGenSpec::random(3, 20, 7)).unwrap().collect();
        let b: Vec<Frame> = enumerate_frames(&FrameGenSpec::random(3, 20, 7)).unwrap().collect();
        let c: Vec<Frame> = enumerate_frames(&FrameGenSpec::random(3, 20, 8)).unwrap().collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.iter().all(|f| f.validate().is_clean()));
    }

    #[test]
    fn exhaustive_bound() {
        assert!(matches!(
            enumerate_frames(&FrameGenSpec::exhaustive(5)),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3)[0], vec![0, 1, 2]);
    }
}
