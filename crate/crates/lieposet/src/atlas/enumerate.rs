//! Enumeration of small posets.

use crate::error::{Error, Result};
use crate::poset::Poset;
use std::collections::BTreeMap;

pub const GUARDRAIL: usize = 7;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Keep only posets of exactly this height.
    pub height: Option<usize>,
    /// Keep only posets of at most this height.
    pub max_height: Option<usize>,
    pub connected_only: bool,
    pub dedup: bool,
    /// Lifts the size guardrail.
    pub allow_large: bool,
}

/// Down-closed subsets of a naturally labeled poset, as sorted lists.
pub fn order_ideals(p: &Poset) -> Vec<Vec<usize>> {
    fn rec(p: &Poset, v: usize, inc: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == p.size() {
            out.push(cur.clone());
            return;
        }
        rec(p, v + 1, inc, cur, out);
        // everything below v has a smaller label and is already decided
        if (0..v).all(|u| !p.less(u, v) || inc[u]) {
            inc[v] = true;
            cur.push(v);
            rec(p, v + 1, inc, cur, out);
            cur.pop();
            inc[v] = false;
        }
    }
    let mut out = vec![];
    rec(p, 0, &mut vec![false; p.size()], &mut vec![], &mut out);
    out
}

/// `p` with a new element `n` placed above exactly the ideal `below`.
fn extend(p: &Poset, below: &[usize]) -> Poset {
    let n = p.size();
    let mut rel = p.relations();
    rel.extend(below.iter().map(|&u| (u, n)));
    Poset::from_relation(n + 1, &rel).expect("extension of an order").0
}

fn keep(p: &Poset, o: &EnumerateOptions) -> bool {
    let h = p.height();
    o.height.is_none_or(|want| h == want)
        && o.max_height.is_none_or(|m| h <= m)
        && (!o.connected_only || p.is_connected())
}

fn height_cap(o: &EnumerateOptions) -> Option<usize> {
    match (o.height, o.max_height) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Posets on `n` elements. Without dedup: every naturally labeled order on
/// `0..n`, in DFS order. With dedup: one canonical representative per
/// isomorphism class, sorted by canonical key.
pub fn enumerate_posets(n: usize, o: &EnumerateOptions) -> Result<Vec<Poset>> {
    if n > GUARDRAIL && !o.allow_large {
        return Err(Error::Guardrail(n));
    }
    // heights never drop when adding elements, so subposets above the cap
    // can be pruned
    let cap = height_cap(o);
    let within = |p: &Poset| cap.is_none_or(|c| p.height() <= c);
    let out = if o.dedup {
        let mut level: BTreeMap<(usize, Vec<(usize, usize)>), Poset> = BTreeMap::new();
        let empty = Poset::antichain(0);
        level.insert(empty.canonical_key(), empty);
        for _ in 0..n {
            let mut next = BTreeMap::new();
            for p in level.values() {
                for ideal in order_ideals(p) {
                    let q = extend(p, &ideal);
                    if within(&q) {
                        next.entry(q.canonical_key()).or_insert_with(|| q.canonical_form());
                    }
                }
            }
            level = next;
        }
        level.into_values().filter(|p| keep(p, o)).collect()
    } else {
        fn dfs(p: Poset, n: usize, within: &dyn Fn(&Poset) -> bool, out: &mut Vec<Poset>) {
            if p.size() == n {
                out.push(p);
                return;
            }
            for ideal in order_ideals(&p) {
                let q = extend(&p, &ideal);
                if within(&q) {
                    dfs(q, n, within, out);
                }
            }
        }
        let mut all = vec![];
        dfs(Poset::antichain(0), n, &within, &mut all);
        all.retain(|p| keep(p, o));
        all
    };
    Ok(out)
}
