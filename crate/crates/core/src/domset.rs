//! The sequential distance-r dominating set.
//!
//! Vertices are scanned in increasing order. Each one runs a breadth-first
//! search of depth `r` through the vertices above it; it joins `D` when that
//! search reaches a vertex nobody has dominated yet. The result is exactly
//! `{ min WReach_r[w] : w ∈ V(G) }`, and its size is at most
//! `max_w |WReach_2r[w]|` times the optimum.

use serde::Serialize;

use crate::graph::{Graph, Vertex};
use crate::ordering::{wreach, LinearOrder, SortedAdjacency};

/// Adjacency lists sorted increasingly by position in `order`.
pub fn sort_adjacency(g: &Graph, order: &LinearOrder) -> SortedAdjacency {
    SortedAdjacency::new(g, order)
}

/// Reusable marks for [`restricted_bfs`], cleared in O(1) between calls.
pub struct BfsMarks {
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<(Vertex, usize)>,
}

impl BfsMarks {
    pub fn new(n: usize) -> BfsMarks {
        BfsMarks {
            stamp: vec![0; n],
            epoch: 0,
            queue: Vec::new(),
        }
    }
}

/// Result of one restricted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reached {
    /// `v` first, then the marked vertices in discovery order.
    pub vertices: Vec<Vertex>,
    /// Adjacency entries inspected, including the one entry per scanned list
    /// that stops the scan.
    pub inspected: usize,
}

/// Vertices reachable from `v` in at most `r` steps through vertices above
/// `v`. Each adjacency list is scanned from its largest entry down and the
/// scan stops at the first entry not above `v`.
pub fn restricted_bfs(
    adj: &SortedAdjacency,
    order: &LinearOrder,
    v: Vertex,
    r: usize,
    marks: &mut BfsMarks,
) -> Reached {
    marks.epoch += 1;
    let epoch = marks.epoch;
    marks.stamp[v] = epoch;
    marks.queue.clear();
    marks.queue.push((v, 0));
    let floor = order.rank(v);
    let mut inspected = 0;
    let mut head = 0;
    while head < marks.queue.len() {
        let (w, dist) = marks.queue[head];
        head += 1;
        if dist >= r {
            continue;
        }
        for &u in adj.list(w).iter().rev() {
            inspected += 1;
            if order.rank(u) <= floor {
                break;
            }
            if marks.stamp[u] != epoch {
                marks.stamp[u] = epoch;
                marks.queue.push((u, dist + 1));
            }
        }
    }
    Reached {
        vertices: marks.queue.iter().map(|&(u, _)| u).collect(),
        inspected,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomSetResult {
    pub r: usize,
    pub order: LinearOrder,
    /// Members of the dominating set in increasing order position.
    pub dominators: Vec<Vertex>,
    /// `witness[w]` is the first vertex whose search reached `w`, which is
    /// `min WReach_r[w]`.
    pub witness: Vec<Vertex>,
    /// `max_w |WReach_2r[w]|` under `order`; also the ratio bound.
    pub certificate_c: usize,
    /// Total adjacency entries inspected by all searches.
    pub work: usize,
}

impl DomSetResult {
    pub fn ratio_bound(&self) -> usize {
        self.certificate_c
    }

    pub fn size(&self) -> usize {
        self.dominators.len()
    }

    /// Members sorted by index.
    pub fn sorted(&self) -> Vec<Vertex> {
        let mut d = self.dominators.clone();
        d.sort_unstable();
        d
    }

    /// A member may itself be claimed by an earlier vertex, so this is not
    /// `witness[v] == v`.
    pub fn is_member(&self, v: Vertex) -> bool {
        self.dominators.contains(&v)
    }

    pub fn to_json(&self, g: &Graph) -> DomSetJson {
        DomSetJson {
            r: self.r,
            d: g.ids_of(&self.dominators),
            d_size: self.size(),
            certificate_c: self.certificate_c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomSetJson {
    pub r: usize,
    #[serde(rename = "D")]
    pub d: Vec<u64>,
    #[serde(rename = "D_size")]
    pub d_size: usize,
    pub certificate_c: usize,
}

/// Computes the dominating set for `order` and radius `r`, together with
/// the `2r` certificate.
pub fn domset(g: &Graph, order: &LinearOrder, r: usize) -> DomSetResult {
    let certificate_c = wreach(g, order, 2 * r).max_size();
    domset_with_certificate(g, order, r, certificate_c)
}

/// [`domset`] with the certificate supplied by the caller.
pub fn domset_with_certificate(g: &Graph, order: &LinearOrder, r: usize, certificate_c: usize) -> DomSetResult {
    let n = g.n();
    let adj = sort_adjacency(g, order);
    let mut marks = BfsMarks::new(n);
    let mut witness = vec![usize::MAX; n];
    let mut dominators = Vec::new();
    let mut work = 0;
    for &v in order.sequence() {
        let reached = restricted_bfs(&adj, order, v, r, &mut marks);
        work += reached.inspected;
        let mut fresh = false;
        for &w in &reached.vertices {
            if witness[w] == usize::MAX {
                witness[w] = v;
                fresh = true;
            }
        }
        if fresh {
            dominators.push(v);
        }
    }
    DomSetResult {
        r,
        order: order.clone(),
        dominators,
        witness,
        certificate_c,
        work,
    }
}
