//! Exhaustive ground truth for small instances.
//!
//! Nothing here shares code with the algorithms it checks: domination is
//! tested with bitmask balls, weak reachability by enumerating simple paths.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::ordering::{LinearOrder, WReachEntry, WReachTable};

pub const MIN_DOMSET_LIMIT: usize = 18;
pub const MIN_CONNECTED_DOMSET_LIMIT: usize = 14;
pub const EXACT_WCOL_LIMIT: usize = 8;
pub const WREACH_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    /// Lexicographically least optimal set, sorted by index.
    pub set: Vec<Vertex>,
    pub size: usize,
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// `balls[v]` as a bitmask of `N_r[v]`, by repeated neighbourhood expansion.
fn ball_masks(g: &Graph, r: usize) -> Vec<u64> {
    let adj: Vec<u64> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &u| m | 1 << u))
        .collect();
    g.vertices()
        .map(|v| {
            let mut m = 1u64 << v;
            for _ in 0..r {
                let mut next = m;
                for (u, a) in adj.iter().enumerate() {
                    if m >> u & 1 == 1 {
                        next |= a;
                    }
                }
                m = next;
            }
            m
        })
        .collect()
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns true; returns that subset.
fn first_subset(n: usize, k: usize, mut f: impl FnMut(&[Vertex]) -> bool) -> Option<Vec<Vertex>> {
    if k > n {
        return None;
    }
    let mut idx: Vec<Vertex> = (0..k).collect();
    loop {
        if f(&idx) {
            return Some(idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn connected_mask(g: &Graph, set: &[Vertex]) -> bool {
    let Some(&first) = set.first() else { return true };
    let inside: u64 = set.iter().fold(0, |m, &v| m | 1 << v);
    let mut seen = 1u64 << first;
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if inside >> u & 1 == 1 && seen >> u & 1 == 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    seen == inside
}

fn search(g: &Graph, r: usize, connected: bool) -> Optimum {
    let n = g.n();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let balls = ball_masks(g, r);
    for k in 0..=n {
        let found = first_subset(n, k, |set| {
            set.iter().fold(0, |m, &v| m | balls[v]) == full && (!connected || connected_mask(g, set))
        });
        if let Some(set) = found {
            return Optimum { size: k, set };
        }
    }
    unreachable!("V(G) dominates itself")
}

/// A minimum distance-r dominating set, by increasing cardinality.
pub fn min_domset(g: &Graph, r: usize) -> Result<Optimum> {
    min_domset_with_limit(g, r, MIN_DOMSET_LIMIT)
}

pub fn min_domset_with_limit(g: &Graph, r: usize, limit: usize) -> Result<Optimum> {
    check_limit(g.n(), limit.min(63))?;
    Ok(search(g, r, false))
}

/// A minimum connected distance-r dominating set of a connected graph.
pub fn min_connected_domset(g: &Graph, r: usize) -> Result<Optimum> {
    min_connected_domset_with_limit(g, r, MIN_CONNECTED_DOMSET_LIMIT)
}

pub fn min_connected_domset_with_limit(g: &Graph, r: usize, limit: usize) -> Result<Optimum> {
    check_limit(g.n(), limit.min(63))?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(search(g, r, true))
}

/// Every simple path of length at most `k` ending at `v`, listed from its
/// far end to `v`.
fn simple_paths_to(g: &Graph, v: Vertex, k: usize) -> Vec<Vec<Vertex>> {
    fn extend(g: &Graph, path: &mut Vec<Vertex>, k: usize, out: &mut Vec<Vec<Vertex>>) {
        let mut rev = path.clone();
        rev.reverse();
        out.push(rev);
        if path.len() > k {
            return;
        }
        let last = *path.last().unwrap();
        for &u in g.neighbors(last) {
            if !path.contains(&u) {
                path.push(u);
                extend(g, path, k, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut vec![v], k, &mut out);
    out
}

/// `WReach_k` straight from the definition: `w` is listed for `v` when some
/// path of length at most `k` joins them with `w` as its minimum. The stored
/// path is the least such path by length, then super-id sequence.
pub fn wreach_bruteforce(g: &Graph, order: &LinearOrder, k: usize) -> Result<WReachTable> {
    wreach_bruteforce_with_limit(g, order, k, WREACH_LIMIT)
}

pub fn wreach_bruteforce_with_limit(g: &Graph, order: &LinearOrder, k: usize, limit: usize) -> Result<WReachTable> {
    check_limit(g.n(), limit)?;
    let key = |p: &Vec<Vertex>| (p.len(), p.iter().map(|&x| order.rank(x)).collect::<Vec<_>>());
    let entries = g
        .vertices()
        .map(|v| {
            let mut best: Vec<Option<Vec<Vertex>>> = vec![None; g.n()];
            for p in simple_paths_to(g, v, k) {
                let w = p[0];
                if p.iter().any(|&x| order.rank(x) < order.rank(w)) {
                    continue;
                }
                if best[w].as_ref().is_none_or(|old| key(&p) < key(old)) {
                    best[w] = Some(p);
                }
            }
            best.into_iter()
                .enumerate()
                .filter_map(|(w, p)| p.map(|path| WReachEntry { target: w, path }))
                .collect()
        })
        .collect();
    Ok(WReachTable::from_entries(k, order, entries))
}

/// `max_v |WReach_k[v]|` for `order`, from the definition.
fn wcol_of(g: &Graph, order: &LinearOrder, k: usize) -> usize {
    g.vertices()
        .map(|v| {
            let mut reach = vec![false; g.n()];
            for p in simple_paths_to(g, v, k) {
                if p.iter().all(|&x| order.rank(x) >= order.rank(p[0])) {
                    reach[p[0]] = true;
                }
            }
            reach.iter().filter(|&&b| b).count()
        })
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactWcol {
    pub value: usize,
    /// The first order, in lexicographic order of sequences, attaining it.
    pub order: LinearOrder,
}

/// `wcol_k(G)` as the minimum over all `n!` orders.
pub fn exact_wcol(g: &Graph, k: usize) -> Result<ExactWcol> {
    exact_wcol_with_limit(g, k, EXACT_WCOL_LIMIT)
}

pub fn exact_wcol_with_limit(g: &Graph, k: usize, limit: usize) -> Result<ExactWcol> {
    check_limit(g.n(), limit)?;
    let n = g.n();
    let mut seq: Vec<Vertex> = (0..n).collect();
    let mut best: Option<ExactWcol> = None;
    loop {
        let order = LinearOrder::from_sequence(seq.clone())?;
        let value = wcol_of(g, &order, k);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(ExactWcol { value, order });
        }
        if !next_permutation(&mut seq) {
            break;
        }
    }
    Ok(best.expect("at least one order"))
}

fn next_permutation(seq: &mut [Vertex]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}
