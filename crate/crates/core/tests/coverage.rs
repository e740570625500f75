//! How much of the audited update space the pre-order generator reaches.
//! Measured and printed, not asserted: two atoms, every `K` with at most
//! two worlds, every table passing the KM audit against every table some
//! centred family produces.

use std::collections::BTreeSet;

use doxatest::changegen::{audit_function, gen_update, ChangeFunctionTable, PreOrder, PreOrderFamily, Suite, WorldContext};
use doxatest::event::nonempty_events;
use doxatest::Event;

/// Every pre-order on `n` worlds in which `w` is strictly least.
fn centred_orders(n: usize, w: usize) -> Vec<PreOrder> {
    let full = Event::full(n).bits();
    let mut out = Vec::new();
    let mut below = vec![Event::EMPTY; n];
    fn fill(x: usize, n: usize, full: u64, w: usize, below: &mut Vec<Event>, out: &mut Vec<PreOrder>) {
        if x == n {
            if let Ok(o) = PreOrder::from_below(below.clone()) {
                if o.is_centred_on(w) {
                    out.push(o);
                }
            }
            return;
        }
        for bits in 0..=full {
            let b = Event::from_bits(bits);
            if b.contains(x) {
                below[x] = b;
                fill(x + 1, n, full, w, below, out);
            }
        }
    }
    fill(0, n, full, w, &mut below, &mut out);
    out
}

fn signature(t: &ChangeFunctionTable, events: &[Event]) -> Vec<Event> {
    events.iter().map(|&e| t.value(e).unwrap()).collect()
}

/// Tables reached by some centred family, as value vectors.
fn generated(ctx: &WorldContext, k: Event, orders: &[Vec<PreOrder>], events: &[Event]) -> BTreeSet<Vec<Event>> {
    let n = ctx.worlds();
    let fixed: Vec<PreOrder> = (0..n)
        .map(|w| PreOrder::from_ranks(&(0..n).map(|x| u32::from(x != w)).collect::<Vec<_>>()))
        .collect();
    let members: Vec<usize> = k.iter().collect();
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; members.len()];
    loop {
        let mut family = fixed.clone();
        for (i, &w) in members.iter().enumerate() {
            family[w] = orders[w][pick[i]].clone();
        }
        let table = gen_update(ctx, &PreOrderFamily::new(family).unwrap(), k).unwrap();
        out.insert(signature(&table, events));
        let mut i = 0;
        loop {
            if i == pick.len() {
                return out;
            }
            pick[i] += 1;
            if pick[i] < orders[members[i]].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Every table with `f(E) ⊆ E` nonempty and `f(E) = K` for `K ⊆ E`, kept
/// when it passes the KM audit.
fn audited(ctx: &WorldContext, k: Event, events: &[Event]) -> BTreeSet<Vec<Event>> {
    let free: Vec<Event> = events.iter().copied().filter(|e| !k.is_subset(*e)).collect();
    let choices: Vec<Vec<Event>> = free
        .iter()
        .map(|&e| nonempty_events(ctx.worlds()).filter(|c| c.is_subset(e)).collect())
        .collect();
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; free.len()];
    loop {
        let mut table = ChangeFunctionTable::new(ctx.clone(), k).unwrap();
        for &e in events {
            if k.is_subset(e) {
                table.set(e, k).unwrap();
            }
        }
        for (i, &e) in free.iter().enumerate() {
            table.set(e, choices[i][pick[i]]).unwrap();
        }
        if audit_function(&table, Suite::Km).unwrap().holds() {
            out.insert(signature(&table, events));
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return out;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn update_generator_coverage() {
    let ctx = WorldContext::standard(2).unwrap();
    let n = ctx.worlds();
    let events: Vec<Event> = nonempty_events(n).collect();
    let orders: Vec<Vec<PreOrder>> = (0..n).map(|w| centred_orders(n, w)).collect();
    assert!(orders.iter().all(|o| o.len() == 29));
    let (mut reached, mut total) = (0usize, 0usize);
    for k in nonempty_events(n).filter(|k| k.len() <= 2) {
        let gen = generated(&ctx, k, &orders, &events);
        let ok = audited(&ctx, k, &events);
        // Generated tables always pass the audit.
        assert!(gen.is_subset(&ok), "K = {:?}", ctx.labels(k));
        reached += gen.len();
        total += ok.len();
        println!("K = {:?}: {} of {} audited tables generated", ctx.labels(k), gen.len(), ok.len());
    }
    println!("update generator coverage over |K| ≤ 2: {reached}/{total}");
}

