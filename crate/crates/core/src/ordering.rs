//! Linear orders, weak reachability and the weak colouring value of an
//! order.
//!
//! A vertex `w` is *weakly k-reachable* from `v` under an order `L` if there
//! is a path of length at most `k` between `v` and `w` on which `w` is the
//! `L`-minimum. `WReach_k[v]` always contains `v` itself.
//!
//! [`wreach`] runs one breadth-first search per source `w`, restricted to the
//! vertices above `w` in the order. With adjacency lists sorted by position
//! in the order and a FIFO queue, the first path that reaches a vertex is its
//! shortest path, and among shortest paths the one whose position sequence is
//! lexicographically least. That is the witnessing path stored in the table.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A total order on the vertices. Position 0 is the minimum; the super-id of
/// a vertex is its position plus one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    rank: Vec<u32>,
    seq: Vec<Vertex>,
}

impl LinearOrder {
    /// The order that lists the vertices as they appear in `seq`.
    pub fn from_sequence(seq: Vec<Vertex>) -> Result<LinearOrder> {
        let n = seq.len();
        let mut rank = vec![u32::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrder(format!("vertex {v} out of range")));
            }
            if rank[v] != u32::MAX {
                return Err(Error::InvalidOrder(format!("vertex {v} listed twice")));
            }
            rank[v] = i as u32;
        }
        Ok(LinearOrder { rank, seq })
    }

    /// Vertices ordered by index, which is also identifier order.
    pub fn natural(n: usize) -> LinearOrder {
        LinearOrder::from_sequence((0..n).collect()).unwrap()
    }

    /// An order given as a sequence of external identifiers covering the
    /// whole graph.
    pub fn from_ids(g: &Graph, ids: &[u64]) -> Result<LinearOrder> {
        if ids.len() != g.n() {
            return Err(Error::InvalidOrder(format!(
                "order lists {} ids, graph has {} vertices",
                ids.len(),
                g.n()
            )));
        }
        LinearOrder::from_sequence(g.indices_of(ids)?)
    }

    /// Parses whitespace- or comma-separated identifiers.
    pub fn parse_ids(g: &Graph, text: &str) -> Result<LinearOrder> {
        let mut ids = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap();
            for tok in line.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                ids.push(tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("invalid vertex id {tok:?}"),
                })?);
            }
        }
        LinearOrder::from_ids(g, &ids)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Zero-based position of `v`.
    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v] as usize
    }

    pub fn super_id(&self, v: Vertex) -> usize {
        self.rank(v) + 1
    }

    pub fn vertex_at(&self, rank: usize) -> Vertex {
        self.seq[rank]
    }

    /// Vertices from minimum to maximum.
    pub fn sequence(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn less(&self, u: Vertex, v: Vertex) -> bool {
        self.rank[u] < self.rank[v]
    }

    pub fn min_of<I: IntoIterator<Item = Vertex>>(&self, vertices: I) -> Option<Vertex> {
        vertices.into_iter().min_by_key(|&v| self.rank[v])
    }

    pub fn ids(&self, g: &Graph) -> Vec<u64> {
        self.seq.iter().map(|&v| g.id(v)).collect()
    }
}

/// Adjacency lists sorted increasingly by position in an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedAdjacency {
    lists: Vec<Vec<Vertex>>,
}

impl SortedAdjacency {
    /// Two passes: walk the vertices in order and append each one to the
    /// lists of its neighbours. Linear time.
    pub fn new(g: &Graph, order: &LinearOrder) -> SortedAdjacency {
        let mut lists: Vec<Vec<Vertex>> = g.vertices().map(|v| Vec::with_capacity(g.degree(v))).collect();
        for &v in order.sequence() {
            for &w in g.neighbors(v) {
                lists[w].push(v);
            }
        }
        SortedAdjacency { lists }
    }

    pub fn list(&self, v: Vertex) -> &[Vertex] {
        &self.lists[v]
    }

    /// The suffix of `v`'s list holding the neighbours above `floor`.
    pub fn above(&self, order: &LinearOrder, v: Vertex, floor: Vertex) -> &[Vertex] {
        let list = &self.lists[v];
        let cut = list.partition_point(|&w| order.rank(w) <= order.rank(floor));
        &list[cut..]
    }
}

/// One member `target` of `WReach_k[v]` with its witnessing path, listed from
/// `target` to `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WReachEntry {
    pub target: Vertex,
    pub path: Vec<Vertex>,
}

impl WReachEntry {
    /// Path length in edges.
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.path.len() == 1
    }
}

/// `WReach_k[G, L, v]` for every vertex, with witnessing paths.
///
/// Entries of each vertex are sorted by the position of their target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WReachTable {
    radius: usize,
    entries: Vec<Vec<WReachEntry>>,
}

impl WReachTable {
    /// Assembles a table from per-vertex entries, sorting each list by the
    /// target's position.
    pub fn from_entries(radius: usize, order: &LinearOrder, mut entries: Vec<Vec<WReachEntry>>) -> WReachTable {
        for list in &mut entries {
            list.sort_by_key(|e| order.rank(e.target));
        }
        WReachTable { radius, entries }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self, v: Vertex) -> &[WReachEntry] {
        &self.entries[v]
    }

    pub fn size(&self, v: Vertex) -> usize {
        self.entries[v].len()
    }

    pub fn get(&self, v: Vertex, target: Vertex) -> Option<&WReachEntry> {
        self.entries[v].iter().find(|e| e.target == target)
    }

    pub fn contains(&self, v: Vertex, target: Vertex) -> bool {
        self.get(v, target).is_some()
    }

    /// `min WReach_r[v]` for any `r` up to the table radius. The stored
    /// paths are shortest within the allowed vertices, so restricting to
    /// paths of length at most `r` gives exactly `WReach_r[v]`; entries are
    /// already sorted, so the first qualifying one is the minimum.
    pub fn min_within(&self, v: Vertex, r: usize) -> Vertex {
        debug_assert!(r <= self.radius);
        self.entries[v]
            .iter()
            .find(|e| e.len() <= r)
            .map(|e| e.target)
            .expect("v is weakly reachable from itself")
    }

    /// The table for a smaller radius.
    pub fn restrict(&self, r: usize) -> WReachTable {
        assert!(r <= self.radius, "cannot restrict radius {} to {r}", self.radius);
        WReachTable {
            radius: r,
            entries: self
                .entries
                .iter()
                .map(|list| list.iter().filter(|e| e.len() <= r).cloned().collect())
                .collect(),
        }
    }

    /// Largest `|WReach_k[v]|`.
    pub fn max_size(&self) -> usize {
        self.entries.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Replays every stored path: it must start at its target, end at the
    /// owning vertex, use graph edges, have length at most the radius, and
    /// have its target as unique minimum. Each vertex must list itself with
    /// the length-0 path, and no target twice.
    pub fn verify_certificates(&self, g: &Graph, order: &LinearOrder) -> Result<(), String> {
        if self.entries.len() != g.n() {
            return Err(format!("table has {} rows for {} vertices", self.entries.len(), g.n()));
        }
        for v in g.vertices() {
            let list = &self.entries[v];
            if !list.iter().any(|e| e.target == v && e.path == [v]) {
                return Err(format!("vertex {v} is missing its own length-0 entry"));
            }
            for (i, e) in list.iter().enumerate() {
                if list[..i].iter().any(|f| f.target == e.target) {
                    return Err(format!("vertex {v} lists target {} twice", e.target));
                }
                let (Some(&first), Some(&last)) = (e.path.first(), e.path.last()) else {
                    return Err(format!("empty path at vertex {v}"));
                };
                if first != e.target || last != v {
                    return Err(format!("path {:?} does not join {} and {v}", e.path, e.target));
                }
                if e.len() > self.radius {
                    return Err(format!("path {:?} longer than {}", e.path, self.radius));
                }
                if e.path.windows(2).any(|p| !g.has_edge(p[0], p[1])) {
                    return Err(format!("path {:?} uses a non-edge", e.path));
                }
                if e.path[1..].iter().any(|&x| !order.less(e.target, x)) {
                    return Err(format!("target {} is not the minimum of {:?}", e.target, e.path));
                }
            }
        }
        Ok(())
    }

    /// JSON form `{radius, entries: {v: [{w, path}]}}` over external ids.
    pub fn to_json(&self, g: &Graph) -> WReachJson {
        WReachJson {
            radius: self.radius,
            entries: g
                .vertices()
                .map(|v| {
                    let list = self.entries[v]
                        .iter()
                        .map(|e| WReachEntryJson {
                            w: g.id(e.target),
                            path: e.path.iter().map(|&x| g.id(x)).collect(),
                        })
                        .collect();
                    (g.id(v).to_string(), list)
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WReachJson {
    pub radius: usize,
    pub entries: BTreeMap<String, Vec<WReachEntryJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WReachEntryJson {
    pub w: u64,
    pub path: Vec<u64>,
}

struct Scratch {
    stamp: Vec<u32>,
    parent: Vec<Vertex>,
    depth: Vec<usize>,
    epoch: u32,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch {
            stamp: vec![0; n],
            parent: vec![0; n],
            depth: vec![0; n],
            epoch: 0,
        }
    }
}

/// Search from `source` through vertices above it, at most `k` steps.
/// Returns the reached vertices with their lexicographically least shortest
/// paths, in discovery order.
fn upward_search(
    adj: &SortedAdjacency,
    order: &LinearOrder,
    source: Vertex,
    k: usize,
    s: &mut Scratch,
) -> Vec<(Vertex, Vec<Vertex>)> {
    s.epoch += 1;
    let epoch = s.epoch;
    s.stamp[source] = epoch;
    s.depth[source] = 0;
    let mut queue = vec![source];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        if s.depth[u] >= k {
            continue;
        }
        for &w in adj.above(order, u, source) {
            if s.stamp[w] != epoch {
                s.stamp[w] = epoch;
                s.parent[w] = u;
                s.depth[w] = s.depth[u] + 1;
                queue.push(w);
            }
        }
    }
    queue
        .into_iter()
        .map(|x| {
            let mut path = Vec::with_capacity(s.depth[x] + 1);
            let mut cur = x;
            path.push(cur);
            while cur != source {
                cur = s.parent[cur];
                path.push(cur);
            }
            path.reverse();
            (x, path)
        })
        .collect()
}

/// Computes `WReach_k[G, L, v]` for every `v`, with witnessing paths.
pub fn wreach(g: &Graph, order: &LinearOrder, k: usize) -> WReachTable {
    let adj = SortedAdjacency::new(g, order);
    let n = g.n();
    let per_source: Vec<Vec<(Vertex, Vec<Vertex>)>> = order
        .sequence()
        .par_iter()
        .map_init(
            || Scratch::new(n),
            |scratch, &source| upward_search(&adj, order, source, k, scratch),
        )
        .collect();
    let mut entries: Vec<Vec<WReachEntry>> = vec![Vec::new(); n];
    // sources are visited in increasing order, so each list comes out sorted
    for (rank, reached) in per_source.into_iter().enumerate() {
        let target = order.vertex_at(rank);
        for (v, path) in reached {
            entries[v].push(WReachEntry { target, path });
        }
    }
    WReachTable { radius: k, entries }
}

/// `max_v |WReach_k[v]|` for the order the table was built from.
pub fn wcol_value(table: &WReachTable) -> usize {
    table.max_size()
}

/// An order intended to keep weak reachability sets small.
///
/// This is the degeneracy order: repeatedly remove a vertex of minimum
/// degree and place it last among the unplaced vertices. It does not depend
/// on `k`; the parameter is kept so callers state which radius they will use
/// the order for.
pub fn heuristic_wcol_order(g: &Graph, _k: usize) -> LinearOrder {
    g.degeneracy_order().1
}
