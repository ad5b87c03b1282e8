//! Immutable simple undirected graphs.
//!
//! Vertices are dense indices `0..n`. Every vertex also carries an external
//! identifier (`u64`); indices are assigned in increasing identifier order, so
//! comparing two indices is the same as comparing their identifiers. Adjacency
//! lists are kept sorted by index.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::LinearOrder;

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<u64>,
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

/// The closed `radius`-neighbourhood of `center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub center: Vertex,
    pub radius: usize,
    /// Sorted by index.
    pub members: Vec<Vertex>,
}

impl Ball {
    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

impl Graph {
    /// Builds a graph from identifier pairs. Duplicate edges collapse.
    pub fn from_edges(edges: &[(u64, u64)]) -> Result<Graph> {
        Graph::with_vertices(&[], edges)
    }

    /// Builds a graph from an explicit vertex list (which may contain
    /// isolated vertices) plus identifier pairs. Endpoints not in `vertices`
    /// are added implicitly.
    pub fn with_vertices(vertices: &[u64], edges: &[(u64, u64)]) -> Result<Graph> {
        let mut idset: BTreeSet<u64> = vertices.iter().copied().collect();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            idset.insert(u);
            idset.insert(v);
        }
        let ids: Vec<u64> = idset.into_iter().collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in edges {
            let a = ids.binary_search(&u).expect("endpoint collected above");
            let b = ids.binary_search(&v).expect("endpoint collected above");
            adj[a].push(b);
            adj[b].push(a);
        }
        Ok(Graph::from_adjacency(ids, adj))
    }

    /// Builds a graph on vertices `0..n` with identifiers `1..=n`.
    pub fn from_index_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParams(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::SelfLoop(u as u64 + 1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph::from_adjacency((1..=n as u64).collect(), adj))
    }

    fn from_adjacency(ids: Vec<u64>, mut adj: Vec<Vec<Vertex>>) -> Graph {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph {
            ids,
            adj,
            edge_count: twice / 2,
        }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn id(&self, v: Vertex) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn index_of(&self, id: u64) -> Option<Vertex> {
        self.ids.binary_search(&id).ok()
    }

    pub fn index_of_checked(&self, id: u64) -> Result<Vertex> {
        self.index_of(id).ok_or(Error::UnknownId(id))
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Distances from `source`, cut off after `max_depth` steps when given.
    pub fn bfs_distances(&self, source: Vertex, max_depth: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            if max_depth.is_some_and(|m| d >= m) {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// `N_r[v]`: every vertex at distance at most `radius` from `v`.
    pub fn closed_ball(&self, v: Vertex, radius: usize) -> Ball {
        let dist = self.bfs_distances(v, Some(radius));
        let members = dist
            .iter()
            .enumerate()
            .filter_map(|(u, d)| d.map(|_| u))
            .collect();
        Ball {
            center: v,
            radius,
            members,
        }
    }

    /// Shortest-path length, `None` when `u` and `v` lie in different
    /// components.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        self.bfs_distances(u, None)[v]
    }

    /// Component label per vertex, labels numbered in order of their smallest
    /// vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in self.vertices() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |&c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Whether `set` dominates every vertex within `r` steps. On failure
    /// returns the first undominated vertex.
    pub fn undominated(&self, set: &[Vertex], r: usize) -> Option<Vertex> {
        let mut covered = vec![false; self.n()];
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        for &s in set {
            if dist[s] != 0 {
                dist[s] = 0;
                covered[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            if dist[u] >= r {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    covered[w] = true;
                    queue.push_back(w);
                }
            }
        }
        covered.iter().position(|c| !c)
    }

    pub fn is_dominating(&self, set: &[Vertex], r: usize) -> bool {
        self.undominated(set, r).is_none()
    }

    /// Number of connected components of `G[set]`.
    pub fn induced_component_count(&self, set: &[Vertex]) -> usize {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        for &s in set {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Whether `set` induces a subgraph whose components correspond one to
    /// one with the components of `G` that `set` meets.
    pub fn is_connected_per_component(&self, set: &[Vertex]) -> bool {
        let comp = self.components();
        let touched: BTreeSet<usize> = set.iter().map(|&v| comp[v]).collect();
        self.induced_component_count(set) == touched.len()
    }

    /// Eccentricity of `center` inside `G[set]`, `None` if some member of
    /// `set` is unreachable from `center` within the induced subgraph.
    pub fn induced_eccentricity(&self, center: Vertex, set: &[Vertex]) -> Option<usize> {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        if !inside[center] {
            return None;
        }
        let mut dist = vec![usize::MAX; self.n()];
        dist[center] = 0;
        let mut queue = VecDeque::from([center]);
        let mut ecc = 0;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            ecc = ecc.max(dist[u]);
            for &w in &self.adj[u] {
                if inside[w] && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        let distinct = set.iter().collect::<BTreeSet<_>>().len();
        (reached == distinct).then_some(ecc)
    }

    /// The degeneracy of the graph together with an order in which every
    /// vertex has at most that many smaller neighbours.
    ///
    /// Repeatedly removes a vertex of minimum remaining degree and places it
    /// last among the vertices not yet placed. Among tied vertices the one
    /// with the largest identifier goes first, so ties end up ordered by
    /// increasing identifier.
    pub fn degeneracy_order(&self) -> (usize, LinearOrder) {
        let n = self.n();
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let max_degree = degree.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); max_degree + 1];
        for v in self.vertices() {
            buckets[degree[v]].insert(v);
        }
        let mut removed = vec![false; n];
        let mut sequence = vec![0; n];
        let mut degeneracy = 0;
        let mut low = 0;
        for slot in (0..n).rev() {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop_last().unwrap();
            degeneracy = degeneracy.max(low);
            removed[v] = true;
            sequence[slot] = v;
            for &w in &self.adj[v] {
                if !removed[w] {
                    buckets[degree[w]].remove(&w);
                    degree[w] -= 1;
                    buckets[degree[w]].insert(w);
                }
            }
            low = low.saturating_sub(1);
        }
        let order = LinearOrder::from_sequence(sequence).expect("peeling yields a permutation");
        (degeneracy, order)
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#`
    /// comments, and an optional `vertices: <ids>` header for isolated
    /// vertices.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                for tok in rest.split(|c: char| c == ',' || c.is_whitespace()) {
                    if tok.is_empty() {
                        continue;
                    }
                    vertices.push(parse_id(tok, line_no)?);
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `u v`, found {line:?}"),
                });
            }
            let u = parse_id(toks[0], line_no)?;
            let v = parse_id(toks[1], line_no)?;
            if u == v {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("self-loop ({u}, {v})"),
                });
            }
            edges.push((u, v));
        }
        Graph::with_vertices(&vertices, &edges)
    }

    /// Canonical edge-list text. Always lists the vertex header so that
    /// isolated vertices survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# n={} m={}", self.n(), self.m());
        out.push_str("vertices:");
        for id in &self.ids {
            let _ = write!(out, " {id}");
        }
        out.push('\n');
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", self.ids[u], self.ids[v]);
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [self.ids[u], self.ids[v]]).collect(),
            ids: self.ids.clone(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph> {
        let edges: Vec<(u64, u64)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut seen = BTreeSet::new();
        for &id in &json.ids {
            if !seen.insert(id) {
                return Err(Error::DuplicateId(id));
            }
        }
        let g = Graph::with_vertices(&json.ids, &edges)?;
        if g.n() != json.n {
            return Err(Error::InvalidParams(format!(
                "declared n = {} but found {} vertices",
                json.n,
                g.n()
            )));
        }
        Ok(g)
    }

    /// Reads either JSON (when the text starts with `{`) or the edge-list
    /// format.
    pub fn parse_any(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            let json: GraphJson = serde_json::from_str(text)?;
            Graph::from_json(&json)
        } else {
            Graph::parse_edge_list(text)
        }
    }

    /// Maps indices to identifiers and sorts the result.
    pub fn ids_of(&self, set: &[Vertex]) -> Vec<u64> {
        let mut out: Vec<u64> = set.iter().map(|&v| self.ids[v]).collect();
        out.sort_unstable();
        out
    }

    pub fn indices_of(&self, ids: &[u64]) -> Result<Vec<Vertex>> {
        ids.iter().map(|&id| self.index_of_checked(id)).collect()
    }

    /// Disjoint union; identifiers of `other` are shifted past the largest
    /// identifier of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.ids.last().map_or(0, |&m| m + 1);
        let mut ids = self.ids.clone();
        ids.extend(other.ids.iter().map(|&id| id + shift));
        let offset = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| list.iter().map(|&w| w + offset).collect()),
        );
        Graph::from_adjacency(ids, adj)
    }
}

fn parse_id(tok: &str, line: usize) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("invalid vertex id {tok:?}"),
    })
}

/// Canonical JSON form `{n, edges, ids}`; edges sorted by `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[u64; 2]>,
    pub ids: Vec<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(&[(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn build_path() {
        let g = path3();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(&[(1, 2), (2, 1)]).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            Graph::from_edges(&[(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        let err = Graph::parse_edge_list("1 2\n# c\n3 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = Graph::parse_edge_list("1 2\n2 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Graph::parse_edge_list("1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn isolated_vertices_need_header() {
        let g = Graph::parse_edge_list("vertices: 1, 2 9\n1 2 # trailing\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.degree(g.index_of(9).unwrap()), 0);
    }

    #[test]
    fn balls_on_small_graphs() {
        let g = path3();
        assert_eq!(g.closed_ball(0, 0).members, vec![0]);
        assert_eq!(g.closed_ball(1, 1).members, vec![0, 1, 2]);
        let c6 = Graph::from_index_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
            .unwrap();
        // distances from 0 on C6 are 0,1,2,3,2,1
        assert_eq!(c6.closed_ball(0, 2).members.len(), 5);
    }

    #[test]
    fn distances() {
        let g = path3();
        assert_eq!(g.distance(1, 1), Some(0));
        assert_eq!(g.distance(0, 2), Some(2));
        let two = Graph::from_edges(&[(1, 2), (3, 4)]).unwrap();
        assert_eq!(two.distance(0, 3), None);
        assert_eq!(two.component_count(), 2);
    }

    #[test]
    fn degeneracy_of_k4_is_id_sorted() {
        let k4 = Graph::from_index_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let (d, order) = k4.degeneracy_order();
        assert_eq!(d, 3);
        assert_eq!(order.sequence(), &[0, 1, 2, 3]);
    }

    #[test]
    fn degeneracy_of_p5_is_natural() {
        let p5 = Graph::from_index_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let (d, order) = p5.degeneracy_order();
        assert_eq!(d, 1);
        assert_eq!(order.sequence(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn edge_list_round_trip_keeps_isolated() {
        let g = Graph::with_vertices(&[5, 7], &[(1, 2), (2, 3)]).unwrap();
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g, back);
        let json = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(Graph::parse_any(&json).unwrap(), g);
    }

    #[test]
    fn eccentricity_inside_subset() {
        let p5 = Graph::from_index_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(p5.induced_eccentricity(1, &[0, 1, 2]), Some(1));
        assert_eq!(p5.induced_eccentricity(0, &[0, 2]), None);
    }
}
