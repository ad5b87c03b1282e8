//! Sparse r-neighbourhood covers built from an order.
//!
//! The cluster of `v` is `X_v = { w : v ∈ WReach_2r[w] }`. Every closed
//! ball `N_r[w]` lies inside `X_{min WReach_r[w]}`, each cluster has radius at
//! most `2r` around its center, and a vertex lies in exactly
//! `|WReach_2r[w]|` clusters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::ordering::{wreach, LinearOrder, WReachTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub r: usize,
    pub order: LinearOrder,
    /// `clusters[v]` is `X_v`, sorted by index. Never empty: `v ∈ X_v`.
    pub clusters: Vec<Vec<Vertex>>,
    /// Largest number of clusters containing a single vertex.
    pub degree: usize,
    /// Largest measured eccentricity of a center inside its cluster.
    pub max_measured_radius: usize,
}

impl Cover {
    pub fn cluster(&self, v: Vertex) -> &[Vertex] {
        &self.clusters[v]
    }

    /// JSON dump over external ids.
    pub fn to_json(&self, g: &Graph) -> CoverJson {
        CoverJson {
            r: self.r,
            order: self.order.ids(g),
            clusters: g
                .vertices()
                .map(|v| (g.id(v).to_string(), g.ids_of(&self.clusters[v])))
                .collect(),
            degree: self.degree,
            max_measured_radius: self.max_measured_radius,
        }
    }

    /// Reads a dumped cover back. The degree and radius fields are taken
    /// as given; [`verify_cover`] recomputes them.
    pub fn from_json(g: &Graph, json: &CoverJson) -> Result<Cover> {
        let order = LinearOrder::from_ids(g, &json.order)?;
        let mut clusters = vec![Vec::new(); g.n()];
        for (key, members) in &json.clusters {
            let id: u64 = key
                .parse()
                .map_err(|_| Error::InvalidParams(format!("cluster key {key:?} is not an id")))?;
            let mut list = g.indices_of(members)?;
            list.sort_unstable();
            list.dedup();
            clusters[g.index_of_checked(id)?] = list;
        }
        Ok(Cover {
            r: json.r,
            order,
            clusters,
            degree: json.degree,
            max_measured_radius: json.max_measured_radius,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub r: usize,
    pub order: Vec<u64>,
    pub clusters: BTreeMap<String, Vec<u64>>,
    pub degree: usize,
    pub max_measured_radius: usize,
}

/// Builds the cover by inverting the `2r` weak reachability table.
pub fn build_cover(g: &Graph, order: &LinearOrder, r: usize) -> Cover {
    build_cover_from_table(g, order, r, &wreach(g, order, 2 * r))
}

/// As [`build_cover`], reusing an existing table of radius `2r`.
pub fn build_cover_from_table(g: &Graph, order: &LinearOrder, r: usize, table: &WReachTable) -> Cover {
    assert_eq!(table.radius(), 2 * r, "cover needs the radius-2r table");
    let mut clusters = vec![Vec::new(); g.n()];
    for w in g.vertices() {
        for e in table.entries(w) {
            clusters[e.target].push(w);
        }
    }
    let mut max_measured_radius = 0;
    for (v, cluster) in clusters.iter().enumerate() {
        // w is pushed in increasing index order above
        let ecc = g
            .induced_eccentricity(v, cluster)
            .expect("witnessing paths stay inside the cluster");
        max_measured_radius = max_measured_radius.max(ecc);
    }
    Cover {
        r,
        order: order.clone(),
        clusters,
        degree: table.max_size(),
        max_measured_radius,
    }
}

/// `R_v = { w ∈ X_v : v = min WReach_r[w] }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSets {
    /// `sets[v]` is `R_v`, sorted by index.
    pub sets: Vec<Vec<Vertex>>,
}

impl RSets {
    /// The vertex `v` with `w ∈ R_v`.
    pub fn owner_of(&self, w: Vertex) -> Option<Vertex> {
        self.sets.iter().position(|s| s.binary_search(&w).is_ok())
    }

    /// Centers with nonempty `R_v`.
    pub fn nonempty(&self) -> Vec<Vertex> {
        (0..self.sets.len()).filter(|&v| !self.sets[v].is_empty()).collect()
    }
}

pub fn build_rsets(g: &Graph, order: &LinearOrder, r: usize, cover: &Cover) -> RSets {
    assert_eq!(cover.r, r);
    let table = wreach(g, order, r);
    let mut sets = vec![Vec::new(); g.n()];
    for w in g.vertices() {
        let v = table.min_within(w, r);
        debug_assert!(cover.clusters[v].binary_search(&w).is_ok());
        sets[v].push(w);
    }
    RSets { sets }
}

/// The first failed check of [`verify_cover`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverViolation {
    /// `N_r[v]` is not contained in any cluster.
    Uncovered { vertex: u64 },
    /// The cluster of `center` is disconnected from it or too wide.
    Radius {
        center: u64,
        eccentricity: Option<usize>,
        bound: usize,
    },
    /// `w ∈ R_v` but `x ∈ N_r[w]` is missing from `X_v`.
    RSet { center: u64, member: u64, missing: u64 },
    /// The recorded degree differs from the recount.
    Degree { recorded: usize, measured: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub covering: bool,
    pub radius: bool,
    pub rsets: bool,
    pub degree: bool,
    pub measured_degree: usize,
    pub measured_max_radius: Option<usize>,
    pub violations: Vec<CoverViolation>,
}

impl CoverReport {
    pub fn pass(&self) -> bool {
        self.covering && self.radius && self.rsets && self.degree
    }
}

/// Checks that every `N_r[v]` lies in some cluster, that every cluster has
/// radius at most `2r` from its center inside the induced subgraph, that
/// `N_r[w] ⊆ X_v` for every `w ∈ R_v`, and that the recorded degree matches
/// a recount. `R_v` is recomputed from the cover's order.
pub fn verify_cover(g: &Graph, r: usize, cover: &Cover) -> CoverReport {
    let n = g.n();
    let mut violations = Vec::new();
    let mut containing: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for (v, cluster) in cover.clusters.iter().enumerate() {
        for &w in cluster {
            containing[w].push(v);
        }
    }
    let in_cluster = |c: Vertex, x: Vertex| cover.clusters[c].binary_search(&x).is_ok();
    let balls: Vec<Vec<Vertex>> = g.vertices().map(|v| g.closed_ball(v, r).members).collect();

    let mut covering = true;
    for v in g.vertices() {
        let ok = containing[v]
            .iter()
            .any(|&c| balls[v].iter().all(|&x| in_cluster(c, x)));
        if !ok {
            covering = false;
            violations.push(CoverViolation::Uncovered { vertex: g.id(v) });
            break;
        }
    }

    let mut radius = true;
    let mut measured_max_radius = Some(0);
    for v in g.vertices() {
        let cluster = &cover.clusters[v];
        if cluster.is_empty() {
            continue;
        }
        let ecc = g.induced_eccentricity(v, cluster);
        measured_max_radius = match (measured_max_radius, ecc) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        if ecc.is_none_or(|e| e > 2 * r) && radius {
            radius = false;
            violations.push(CoverViolation::Radius {
                center: g.id(v),
                eccentricity: ecc,
                bound: 2 * r,
            });
        }
    }

    let mut rsets = true;
    let table = wreach(g, &cover.order, r);
    'outer: for w in g.vertices() {
        let v = table.min_within(w, r);
        for &x in &balls[w] {
            if !in_cluster(v, x) {
                rsets = false;
                violations.push(CoverViolation::RSet {
                    center: g.id(v),
                    member: g.id(w),
                    missing: g.id(x),
                });
                break 'outer;
            }
        }
    }

    let measured_degree = containing.iter().map(Vec::len).max().unwrap_or(0);
    let degree = measured_degree == cover.degree;
    if !degree {
        violations.push(CoverViolation::Degree {
            recorded: cover.degree,
            measured: measured_degree,
        });
    }

    CoverReport {
        covering,
        radius,
        rsets,
        degree,
        measured_degree,
        measured_max_radius,
        violations,
    }
}
