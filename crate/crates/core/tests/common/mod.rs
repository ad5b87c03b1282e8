//! Test-only ground truth, written against the definitions and sharing no
//! code with the library's algorithms or its `oracle` module.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use bedom::generate::{generate, random_sequence, Family};
use bedom::{Graph, LinearOrder, Vertex};

/// Plain BFS distances.
pub fn distances(g: &Graph, s: Vertex) -> Vec<Option<usize>> {
    let mut d = vec![None; g.n()];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if d[w].is_none() {
                d[w] = Some(d[u].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    d
}

pub fn dominates(g: &Graph, set: &[Vertex], r: usize) -> bool {
    let mut covered = vec![false; g.n()];
    for &s in set {
        for (v, d) in distances(g, s).into_iter().enumerate() {
            if d.is_some_and(|d| d <= r) {
                covered[v] = true;
            }
        }
    }
    covered.into_iter().all(|b| b)
}

/// For every `v`, the map `w -> canonical path w..v` over all simple paths
/// of length ≤ k on which `w` is the minimum. Canonical: fewest edges, then
/// least sequence of positions.
pub fn wreach_by_paths(g: &Graph, order: &LinearOrder, k: usize) -> Vec<BTreeMap<Vertex, Vec<Vertex>>> {
    let pos: Vec<usize> = (0..g.n()).map(|v| order.rank(v)).collect();
    let mut out = vec![BTreeMap::new(); g.n()];
    fn dfs(
        g: &Graph,
        pos: &[usize],
        k: usize,
        path: &mut Vec<Vertex>,
        out: &mut BTreeMap<Vertex, Vec<Vertex>>,
    ) {
        // path runs from v outwards; reversed it runs from its far end to v
        let far = *path.last().unwrap();
        if path.iter().all(|&x| pos[x] >= pos[far]) {
            let cand: Vec<Vertex> = path.iter().rev().copied().collect();
            let key = |p: &Vec<Vertex>| (p.len(), p.iter().map(|&x| pos[x]).collect::<Vec<_>>());
            let better = out.get(&far).is_none_or(|old| key(&cand) < key(old));
            if better {
                out.insert(far, cand);
            }
        }
        if path.len() > k {
            return;
        }
        for &u in g.neighbors(far) {
            if !path.contains(&u) {
                path.push(u);
                dfs(g, pos, k, path, out);
                path.pop();
            }
        }
    }
    for (v, slot) in out.iter_mut().enumerate() {
        dfs(g, &pos, k, &mut vec![v], slot);
    }
    out
}

/// Smallest distance-r dominating set size, by trying all subsets.
pub fn opt_domset(g: &Graph, r: usize) -> usize {
    let n = g.n();
    let balls: Vec<u32> = (0..n)
        .map(|v| {
            distances(g, v)
                .iter()
                .enumerate()
                .filter(|(_, d)| d.is_some_and(|d| d <= r))
                .fold(0u32, |m, (u, _)| m | 1 << u)
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    (0u32..=full)
        .filter(|s| (0..n).filter(|&v| s >> v & 1 == 1).fold(0, |m, v| m | balls[v]) == full)
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// Every graph on `n ≤ 4` labelled vertices, plus seeded random graphs on 5
/// and 6 vertices.
pub fn small_graph_sweep() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(Vertex, Vertex)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            out.push(Graph::from_index_edges(n, &edges).unwrap());
        }
    }
    for seed in 0..40 {
        for n in [5, 6] {
            let p = [0.3, 0.5, 0.7][seed as usize % 3];
            out.push(generate(&Family::Random { n, p }, seed).unwrap());
        }
    }
    out
}

pub fn random_order(n: usize, seed: u64) -> LinearOrder {
    LinearOrder::from_sequence(random_sequence(n, seed)).unwrap()
}
