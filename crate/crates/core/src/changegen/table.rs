use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::{nonempty_events, Event};

use super::order::{PreOrder, PreOrderFamily};
use super::world::WorldContext;

/// Tables over at most this many atoms are materialized; larger ones are
/// computed from their generating order on demand.
pub const DENSE_MAX_ATOMS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    Update(PreOrderFamily),
    Revision(PreOrder),
}

impl Rule {
    fn apply(&self, k: Event, e: Event) -> Event {
        match self {
            Rule::Update(fam) => k.iter().fold(Event::EMPTY, |acc, w| acc | fam.order(w).min(e)),
            Rule::Revision(o) => o.min(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entries {
    Dense(Vec<Option<Event>>),
    Lazy { rule: Rule, overrides: BTreeMap<u64, Event> },
}

/// A change function for a fixed `K`, given as the support of `K∘φ` for
/// each nonempty `‖φ‖` over the worlds of a [`WorldContext`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeFunctionTable {
    ctx: WorldContext,
    k: Event,
    entries: Entries,
}

impl ChangeFunctionTable {
    /// An empty dense table, to be filled with [`Self::set`].
    pub fn new(ctx: WorldContext, k: Event) -> Result<Self> {
        if !k.is_subset(ctx.all()) {
            return Err(Error::Input("K names worlds outside the context".into()));
        }
        let slots = 1usize << ctx.worlds();
        Ok(ChangeFunctionTable {
            ctx,
            k,
            entries: Entries::Dense(vec![None; slots]),
        })
    }

    fn from_rule(ctx: WorldContext, k: Event, rule: Rule) -> Self {
        if ctx.atoms().len() <= DENSE_MAX_ATOMS {
            let mut dense = vec![None; 1 << ctx.worlds()];
            for e in nonempty_events(ctx.worlds()) {
                dense[e.bits() as usize] = Some(rule.apply(k, e));
            }
            ChangeFunctionTable {
                ctx,
                k,
                entries: Entries::Dense(dense),
            }
        } else {
            ChangeFunctionTable {
                ctx,
                k,
                entries: Entries::Lazy {
                    rule,
                    overrides: BTreeMap::new(),
                },
            }
        }
    }

    pub fn context(&self) -> &WorldContext {
        &self.ctx
    }

    pub fn k(&self) -> Event {
        self.k
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.entries, Entries::Dense(_))
    }

    pub fn get(&self, e: Event) -> Option<Event> {
        if e.is_empty() || !e.is_subset(self.ctx.all()) {
            return None;
        }
        match &self.entries {
            Entries::Dense(v) => v[e.bits() as usize],
            Entries::Lazy { rule, overrides } => {
                Some(overrides.get(&e.bits()).copied().unwrap_or_else(|| rule.apply(self.k, e)))
            }
        }
    }

    /// Like [`Self::get`], failing on a missing entry.
    pub fn value(&self, e: Event) -> Result<Event> {
        self.get(e).ok_or_else(|| {
            Error::Precondition(format!("table has no entry for {{{}}}", self.ctx.labels(e).join(",")))
        })
    }

    pub fn set(&mut self, e: Event, out: Event) -> Result<()> {
        if e.is_empty() || !e.is_subset(self.ctx.all()) || !out.is_subset(self.ctx.all()) {
            return Err(Error::Input("table entry outside the nonempty events of the context".into()));
        }
        match &mut self.entries {
            Entries::Dense(v) => v[e.bits() as usize] = Some(out),
            Entries::Lazy { overrides, .. } => {
                overrides.insert(e.bits(), out);
            }
        }
        Ok(())
    }

    /// Every nonempty event has an entry.
    pub fn is_total(&self) -> bool {
        match &self.entries {
            Entries::Dense(v) => v.iter().skip(1).all(Option::is_some),
            Entries::Lazy { .. } => true,
        }
    }

    pub fn to_file(&self) -> TableFile {
        TableFile {
            atoms: self.ctx.atoms().to_vec(),
            k: self.ctx.labels(self.k),
            entries: nonempty_events(self.ctx.worlds())
                .filter_map(|e| {
                    self.get(e).map(|out| TableEntry {
                        event: self.ctx.labels(e),
                        result: self.ctx.labels(out),
                    })
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        file.to_table()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub event: Vec<String>,
    pub result: Vec<String>,
}

/// Worlds are atom bitstrings in atom-list order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub atoms: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    pub entries: Vec<TableEntry>,
}

impl TableFile {
    pub fn to_table(&self) -> Result<ChangeFunctionTable> {
        let ctx = WorldContext::new(self.atoms.clone())?;
        let k = ctx.parse_event(&self.k)?;
        let mut table = ChangeFunctionTable::new(ctx, k)?;
        for entry in &self.entries {
            let e = table.ctx.parse_event(&entry.event)?;
            if table.get(e).is_some() {
                return Err(Error::Input(format!("duplicate entry for {:?}", entry.event)));
            }
            let out = table.ctx.parse_event(&entry.result)?;
            table.set(e, out)?;
        }
        Ok(table)
    }
}

/// `table(E) = ⋃_{w∈K} min_{≤_w}(E)`.
pub fn gen_update(ctx: &WorldContext, family: &PreOrderFamily, k: Event) -> Result<ChangeFunctionTable> {
    check_k(ctx, k)?;
    if family.len() != ctx.worlds() {
        return Err(Error::Input(format!(
            "family has {} orders for {} worlds",
            family.len(),
            ctx.worlds()
        )));
    }
    for w in 0..family.len() {
        if !family.order(w).is_centred_on(w) {
            return Err(Error::Unfaithful(format!("world {} is not strictly least in its own order", ctx.label(w))));
        }
    }
    Ok(ChangeFunctionTable::from_rule(ctx.clone(), k, Rule::Update(family.clone())))
}

/// `table(E) = min(E)` for a total pre-order whose minimum is `K`.
pub fn gen_revision(ctx: &WorldContext, order: &PreOrder, k: Event) -> Result<ChangeFunctionTable> {
    check_k(ctx, k)?;
    if order.len() != ctx.worlds() {
        return Err(Error::Input(format!("order covers {} worlds, not {}", order.len(), ctx.worlds())));
    }
    if !order.is_total() {
        return Err(Error::Unfaithful("revision needs a total pre-order".into()));
    }
    if order.min(ctx.all()) != k {
        return Err(Error::Unfaithful("least worlds of the order differ from K".into()));
    }
    Ok(ChangeFunctionTable::from_rule(ctx.clone(), k, Rule::Revision(order.clone())))
}

fn check_k(ctx: &WorldContext, k: Event) -> Result<()> {
    if k.is_empty() {
        return Err(Error::EmptyEvent("K must have at least one world".into()));
    }
    if !k.is_subset(ctx.all()) {
        return Err(Error::Input("K names worlds outside the context".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::changegen::order::random_family;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ev(ix: &[usize]) -> Event {
        Event::from_indices(ix.iter().copied())
    }

    #[test]
    fn one_atom_revision() {
        // World 1 makes p true, world 0 makes it false.
        let ctx = WorldContext::standard(1).unwrap();
        let t = gen_revision(&ctx, &PreOrder::from_ranks(&[1, 0]), ev(&[1])).unwrap();
        assert_eq!(t.get(ev(&[0])), Some(ev(&[0])));
        assert_eq!(t.get(ev(&[0, 1])), Some(ev(&[1])));
        assert_eq!(t.get(ev(&[1])), Some(ev(&[1])));
    }

    #[test]
    fn revision_rejects_unfaithful_order() {
        let ctx = WorldContext::standard(1).unwrap();
        assert!(matches!(
            gen_revision(&ctx, &PreOrder::from_ranks(&[0, 0]), ev(&[1])),
            Err(Error::Unfaithful(_))
        ));
    }

    #[test]
    fn update_keeps_k_on_supersets() {
        let ctx = WorldContext::standard(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for total in [false, true] {
            let fam = random_family(4, total, &mut rng);
            let k = ev(&[1, 2]);
            let t = gen_update(&ctx, &fam, k).unwrap();
            for bits in 1..16u64 {
                let e = Event::from_bits(bits);
                let out = t.get(e).unwrap();
                assert!(out.is_subset(e) && !out.is_empty());
                if k.is_subset(e) {
                    assert_eq!(out, k);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let ctx = WorldContext::standard(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let t = gen_update(&ctx, &random_family(4, false, &mut rng), ev(&[0])).unwrap();
        let back = ChangeFunctionTable::from_json(&t.to_json()).unwrap();
        assert!(back.is_total());
        for bits in 1..16u64 {
            assert_eq!(back.get(Event::from_bits(bits)), t.get(Event::from_bits(bits)));
        }
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["K"], serde_json::json!(["00"]));
        assert_eq!(v["entries"][0]["event"], serde_json::json!(["00"]));
    }

    #[test]
    fn four_atoms_are_lazy() {
        let ctx = WorldContext::standard(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut t = gen_update(&ctx, &random_family(16, true, &mut rng), ev(&[3])).unwrap();
        assert!(!t.is_dense() && t.is_total());
        assert_eq!(t.get(Event::full(16)), Some(ev(&[3])));
        t.set(Event::full(16), ev(&[4])).unwrap();
        assert_eq!(t.get(Event::full(16)), Some(ev(&[4])));
    }
}
