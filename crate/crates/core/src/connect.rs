//! Turning a distance-r dominating set into a connected one.
//!
//! Two constructions:
//!
//! * [`connect_via_wreach`] adds, for every dominator `v` and every
//!   `w ∈ WReach_{2r+1}[v]`, the stored witnessing path between them.
//! * [`connect_via_minor`] partitions the graph into balls around the
//!   dominators ([`d_partition`]), contracts them into a depth-r minor
//!   ([`contract_minor`]), and realises every minor edge by the
//!   lexicographically least path of length at most `2r + 1`.
//!
//! Paths are compared *lexicographically*: a shorter path is smaller, and
//! paths of equal length compare by their identifier sequences. Since vertex
//! indices follow identifier order, a breadth-first search that scans
//! neighbours in index order and seeds its queue in index order finds, for
//! every vertex, the lexicographically least shortest path from the set of
//! sources.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::ordering::{LinearOrder, WReachTable};

/// Lexicographically least shortest paths from a set of sources.
#[derive(Clone, Debug)]
pub struct LexSearch {
    /// The source each vertex's least path starts from, if reached.
    pub owner: Vec<Option<Vertex>>,
    pub depth: Vec<usize>,
    parent: Vec<Vertex>,
}

impl LexSearch {
    /// Searches from `sources` (any order) up to `max_depth` steps.
    pub fn run(g: &Graph, sources: &[Vertex], max_depth: usize) -> LexSearch {
        let n = g.n();
        let mut owner = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut seeds: Vec<Vertex> = sources.to_vec();
        seeds.sort_unstable();
        seeds.dedup();
        let mut queue = Vec::with_capacity(n);
        for &s in &seeds {
            owner[s] = Some(s);
            depth[s] = 0;
            parent[s] = s;
            queue.push(s);
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if depth[u] >= max_depth {
                continue;
            }
            for &w in g.neighbors(u) {
                if owner[w].is_none() {
                    owner[w] = owner[u];
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                }
            }
        }
        LexSearch { owner, depth, parent }
    }

    /// The least path from the owning source to `w`.
    pub fn path_to(&self, w: Vertex) -> Option<Vec<Vertex>> {
        self.owner[w]?;
        let mut path = vec![w];
        let mut cur = w;
        while self.parent[cur] != cur {
            cur = self.parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

/// The lexicographically least path from `v` to `w` among paths of length
/// at most `max_len`.
pub fn lex_shortest_path(g: &Graph, v: Vertex, w: Vertex, max_len: usize) -> Option<Vec<Vertex>> {
    LexSearch::run(g, &[v], max_len).path_to(w)
}

/// The partition of `V(G)` into blocks `B(v)`, `v ∈ D`: `w ∈ B(v)` when the
/// least path from `v` to `w` beats the least path from every other
/// dominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPartition {
    pub r: usize,
    /// Sorted by index.
    pub dominators: Vec<Vertex>,
    /// `owner[w]` is the `v` with `w ∈ B(v)`.
    pub owner: Vec<Vertex>,
    /// `paths[w]` is `P(owner[w], w)`.
    pub paths: Vec<Vec<Vertex>>,
    /// Eccentricity of each dominator inside `G[B(v)]`, aligned with
    /// `dominators`.
    pub block_radius: Vec<usize>,
}

impl DPartition {
    pub fn block(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.owner.len()).filter(|&w| self.owner[w] == v).collect()
    }

    pub fn blocks(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut out: BTreeMap<Vertex, Vec<Vertex>> =
            self.dominators.iter().map(|&v| (v, Vec::new())).collect();
        for (w, &v) in self.owner.iter().enumerate() {
            out.get_mut(&v).expect("owner is a dominator").push(w);
        }
        out
    }

    pub fn max_block_radius(&self) -> usize {
        self.block_radius.iter().copied().max().unwrap_or(0)
    }
}

/// Computes the `D`-partition. Fails when `D` does not dominate the graph at
/// distance `r`.
pub fn d_partition(g: &Graph, dominators: &[Vertex], r: usize) -> Result<DPartition> {
    if let Some(w) = g.undominated(dominators, r) {
        return Err(Error::NotDominating { r, witness: g.id(w) });
    }
    let search = LexSearch::run(g, dominators, r);
    let owner: Vec<Vertex> = search.owner.iter().map(|o| o.expect("dominated")).collect();
    let paths: Vec<Vec<Vertex>> = g.vertices().map(|w| search.path_to(w).unwrap()).collect();
    let mut sorted = dominators.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut partition = DPartition {
        r,
        dominators: sorted,
        owner,
        paths,
        block_radius: Vec::new(),
    };
    let blocks = partition.blocks();
    let mut block_radius = Vec::with_capacity(blocks.len());
    for (&v, block) in &blocks {
        match g.induced_eccentricity(v, block) {
            Some(e) if e <= r => block_radius.push(e),
            other => {
                return Err(Error::Internal(format!(
                    "block of {} has eccentricity {other:?} > {r}",
                    g.id(v)
                )))
            }
        }
    }
    partition.block_radius = block_radius;
    Ok(partition)
}

/// The graph obtained by contracting every block of a `D`-partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorGraph {
    /// The dominators, sorted by index.
    pub vertices: Vec<Vertex>,
    /// Pairs of dominators `(u, v)`, `u < v`, whose blocks are joined by an
    /// edge of `G`. Sorted.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl MinorGraph {
    /// `2|E(H)| / |V(H)|`.
    pub fn density(&self) -> f64 {
        if self.vertices.is_empty() {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.vertices.len() as f64
        }
    }

    pub fn component_count(&self) -> usize {
        let index: BTreeMap<Vertex, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertices.len();
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, index[&u]), find(&mut parent, index[&v]));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }
}

pub fn contract_minor(g: &Graph, partition: &DPartition) -> MinorGraph {
    let mut edges = BTreeSet::new();
    for (x, y) in g.edges() {
        let (a, b) = (partition.owner[x], partition.owner[y]);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    MinorGraph {
        vertices: partition.dominators.clone(),
        edges: edges.into_iter().collect(),
    }
}

/// Output of either connecting construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedResult {
    pub r: usize,
    /// The input dominating set, sorted.
    pub dominators: Vec<Vertex>,
    /// `D'`, sorted.
    pub connected: Vec<Vertex>,
    /// Paths whose vertices were added, each with at least one edge.
    pub added_paths: Vec<Vec<Vertex>>,
    /// Components of `G`; connectivity of `D'` holds per component.
    pub component_count: usize,
    /// Upper bound on `|D'|` from measured quantities.
    pub size_bound: usize,
}

impl ConnectedResult {
    pub fn size(&self) -> usize {
        self.connected.len()
    }

    /// `D ⊆ D'`, `D'` dominates at distance `r`, and `G[D']` is connected
    /// inside every component of `G`.
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let set: BTreeSet<Vertex> = self.connected.iter().copied().collect();
        if let Some(v) = self.dominators.iter().find(|v| !set.contains(v)) {
            return Err(format!("dominator {} missing from D'", g.id(*v)));
        }
        if let Some(w) = g.undominated(&self.connected, self.r) {
            return Err(format!("vertex {} undominated by D'", g.id(w)));
        }
        if !g.is_connected_per_component(&self.connected) {
            return Err("D' is not connected inside some component".into());
        }
        if self.size() > self.size_bound {
            return Err(format!("|D'| = {} exceeds bound {}", self.size(), self.size_bound));
        }
        Ok(())
    }
}

fn sorted_unique(set: &[Vertex]) -> Vec<Vertex> {
    let mut out = set.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

/// Adds the witnessing path between every dominator `v` and every
/// `w ∈ WReach_{2r+1}[v]`. `table` must have radius `2r + 1`.
///
/// The size bound is `|D| · (1 + (2r + 1) · max_v |WReach_{2r+1}[v]|)`.
pub fn connect_via_wreach(
    g: &Graph,
    order: &LinearOrder,
    dominators: &[Vertex],
    r: usize,
    table: &WReachTable,
) -> Result<ConnectedResult> {
    if table.radius() != 2 * r + 1 {
        return Err(Error::InvalidParams(format!(
            "table radius {} but 2r+1 = {}",
            table.radius(),
            2 * r + 1
        )));
    }
    if table.n() != g.n() || order.len() != g.n() {
        return Err(Error::InvalidParams("table or order does not match the graph".into()));
    }
    if let Some(w) = g.undominated(dominators, r) {
        return Err(Error::NotDominating { r, witness: g.id(w) });
    }
    let dominators = sorted_unique(dominators);
    let mut inside = vec![false; g.n()];
    let mut added_paths = Vec::new();
    for &v in &dominators {
        inside[v] = true;
        for e in table.entries(v) {
            if e.is_empty() {
                continue;
            }
            for &x in &e.path {
                inside[x] = true;
            }
            added_paths.push(e.path.clone());
        }
    }
    let connected: Vec<Vertex> = g.vertices().filter(|&v| inside[v]).collect();
    let c = table.max_size();
    Ok(ConnectedResult {
        r,
        size_bound: dominators.len() * (1 + (2 * r + 1) * c),
        dominators,
        connected,
        added_paths,
        component_count: g.component_count(),
    })
}

/// The minor-based construction together with its intermediate objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorConnection {
    pub result: ConnectedResult,
    pub partition: DPartition,
    pub minor: MinorGraph,
}

/// Realises every edge of the contracted minor by the least path of length
/// at most `2r + 1`, taken from the endpoint with the smaller identifier.
///
/// The size bound is `|D| + 2r · |E(H)|`: each added path has at most `2r`
/// interior vertices.
pub fn connect_via_minor(g: &Graph, dominators: &[Vertex], r: usize) -> Result<MinorConnection> {
    let partition = d_partition(g, dominators, r)?;
    let minor = contract_minor(g, &partition);
    let mut inside = vec![false; g.n()];
    for &v in &partition.dominators {
        inside[v] = true;
    }
    let mut added_paths = Vec::with_capacity(minor.edges.len());
    for &(u, v) in &minor.edges {
        let path = lex_shortest_path(g, u, v, 2 * r + 1).ok_or_else(|| {
            Error::Internal(format!(
                "minor-adjacent {} and {} are more than {} apart",
                g.id(u),
                g.id(v),
                2 * r + 1
            ))
        })?;
        for &x in &path {
            inside[x] = true;
        }
        added_paths.push(path);
    }
    let connected: Vec<Vertex> = g.vertices().filter(|&v| inside[v]).collect();
    let result = ConnectedResult {
        r,
        dominators: partition.dominators.clone(),
        connected,
        added_paths,
        component_count: g.component_count(),
        size_bound: partition.dominators.len() + 2 * r * minor.edges.len(),
    };
    Ok(MinorConnection {
        result,
        partition,
        minor,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectedJson {
    pub method: &'static str,
    #[serde(rename = "D")]
    pub d: Vec<u64>,
    #[serde(rename = "D_prime")]
    pub d_prime: Vec<u64>,
    #[serde(rename = "D_prime_size")]
    pub d_prime_size: usize,
    pub added_paths: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minor: Option<MinorJson>,
    pub bounds: BoundsJson,
    pub components: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorJson {
    pub vertices: Vec<u64>,
    pub edges: Vec<[u64; 2]>,
    pub density: f64,
    pub blocks: BTreeMap<String, Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsJson {
    pub size_bound: usize,
    pub measured: usize,
}

impl ConnectedResult {
    pub fn to_json(&self, g: &Graph, method: &'static str, minor: Option<(&DPartition, &MinorGraph)>) -> ConnectedJson {
        ConnectedJson {
            method,
            d: g.ids_of(&self.dominators),
            d_prime: g.ids_of(&self.connected),
            d_prime_size: self.size(),
            added_paths: self
                .added_paths
                .iter()
                .map(|p| p.iter().map(|&x| g.id(x)).collect())
                .collect(),
            minor: minor.map(|(partition, h)| MinorJson {
                vertices: g.ids_of(&h.vertices),
                edges: h.edges.iter().map(|&(u, v)| [g.id(u), g.id(v)]).collect(),
                density: h.density(),
                blocks: partition
                    .blocks()
                    .into_iter()
                    .map(|(v, b)| (g.id(v).to_string(), g.ids_of(&b)))
                    .collect(),
            }),
            bounds: BoundsJson {
                size_bound: self.size_bound,
                measured: self.size(),
            },
            components: self.component_count,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};
    use crate::ordering::wreach;

    fn p5() -> Graph {
        generate(&Family::Path { n: 5 }, 0).unwrap()
    }

    #[test]
    fn lex_paths() {
        let tri = generate(&Family::Complete { n: 3 }, 0).unwrap();
        assert_eq!(lex_shortest_path(&tri, 0, 0, 3), Some(vec![0]));
        assert_eq!(lex_shortest_path(&tri, 0, 2, 3), Some(vec![0, 2]));
        let c4 = generate(&Family::Cycle { n: 4 }, 0).unwrap();
        assert_eq!(lex_shortest_path(&c4, 0, 2, 2), Some(vec![0, 1, 2]));
        assert_eq!(lex_shortest_path(&c4, 0, 2, 1), None);
    }

    #[test]
    fn partition_of_p5() {
        let g = p5();
        let part = d_partition(&g, &[1, 3], 1).unwrap();
        let blocks = part.blocks();
        assert_eq!(blocks[&1], vec![0, 1, 2]);
        assert_eq!(blocks[&3], vec![3, 4]);
        let h = contract_minor(&g, &part);
        assert_eq!(h.edges, vec![(1, 3)]);
        assert_eq!(h.component_count(), 1);
    }

    #[test]
    fn degenerate_partitions() {
        let g = generate(&Family::Grid { rows: 3, cols: 3 }, 0).unwrap();
        let all: Vec<_> = g.vertices().collect();
        let part = d_partition(&g, &all, 1).unwrap();
        assert!(g.vertices().all(|v| part.owner[v] == v));

        let star = generate(&Family::Star { n: 6 }, 0).unwrap();
        let part = d_partition(&star, &[0], 1).unwrap();
        assert_eq!(part.blocks()[&0].len(), 6);
        let h = contract_minor(&star, &part);
        assert!(h.edges.is_empty());
    }

    #[test]
    fn partition_rejects_non_dominating() {
        let g = p5();
        let err = d_partition(&g, &[0], 1).unwrap_err();
        assert!(matches!(err, Error::NotDominating { witness: 3, .. }));
    }

    #[test]
    fn minor_connection_p5() {
        let g = p5();
        let mc = connect_via_minor(&g, &[1, 3], 1).unwrap();
        assert_eq!(mc.result.connected, vec![1, 2, 3]);
        assert_eq!(mc.result.added_paths, vec![vec![1, 2, 3]]);
        mc.result.check(&g).unwrap();

        let single = connect_via_minor(&g, &[2], 2).unwrap();
        assert_eq!(single.result.connected, vec![2]);
    }

    #[test]
    fn wreach_connection_p3() {
        let g = generate(&Family::Path { n: 3 }, 0).unwrap();
        let order = LinearOrder::natural(3);
        let table = wreach(&g, &order, 3);
        let res = connect_via_wreach(&g, &order, &[0, 1], 1, &table).unwrap();
        assert_eq!(res.connected, vec![0, 1]);
        res.check(&g).unwrap();
        assert!(connect_via_wreach(&g, &order, &[0, 1], 1, &wreach(&g, &order, 2)).is_err());
    }

    #[test]
    fn wreach_connection_single_seed() {
        let g = generate(&Family::Cycle { n: 6 }, 0).unwrap();
        let order = LinearOrder::natural(6);
        let table = wreach(&g, &order, 7);
        let res = connect_via_wreach(&g, &order, &[3], 3, &table).unwrap();
        assert!(res.connected.contains(&3));
        res.check(&g).unwrap();
    }
}
