//! Deterministic graph generators and the named instance corpus used by the
//! test and acceptance suites.
//!
//! All generated graphs use identifiers `1..=n`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    /// `n` vertices in total: the center (id 1) and `n - 1` leaves.
    Star { n: usize },
    Complete { n: usize },
    Grid { rows: usize, cols: usize },
    RandomTree { n: usize },
    /// A random `k`-tree on `n` vertices in which every edge survives with
    /// probability `p`.
    PartialKTree { n: usize, k: usize, p: f64 },
    /// `G(n, p)`.
    Random { n: usize, p: f64 },
}

impl Family {
    pub const NAMES: [&'static str; 8] = [
        "path",
        "cycle",
        "star",
        "complete",
        "grid",
        "random_tree",
        "partial_ktree",
        "random",
    ];

    /// Parses a family name plus positional parameters, e.g.
    /// `("grid", ["3", "3"])`.
    pub fn parse(name: &str, params: &[String]) -> Result<Family> {
        let int = |i: usize| -> Result<usize> {
            params
                .get(i)
                .ok_or_else(|| Error::InvalidParams(format!("{name}: missing parameter {}", i + 1)))?
                .parse()
                .map_err(|_| Error::InvalidParams(format!("{name}: parameter {} must be an integer", i + 1)))
        };
        let real = |i: usize| -> Result<f64> {
            params
                .get(i)
                .ok_or_else(|| Error::InvalidParams(format!("{name}: missing parameter {}", i + 1)))?
                .parse()
                .map_err(|_| Error::InvalidParams(format!("{name}: parameter {} must be a number", i + 1)))
        };
        let (family, arity) = match name {
            "path" => (Family::Path { n: int(0)? }, 1),
            "cycle" => (Family::Cycle { n: int(0)? }, 1),
            "star" => (Family::Star { n: int(0)? }, 1),
            "complete" => (Family::Complete { n: int(0)? }, 1),
            "grid" => (
                Family::Grid {
                    rows: int(0)?,
                    cols: int(1)?,
                },
                2,
            ),
            "random_tree" => (Family::RandomTree { n: int(0)? }, 1),
            "partial_ktree" => (
                Family::PartialKTree {
                    n: int(0)?,
                    k: int(1)?,
                    p: real(2)?,
                },
                3,
            ),
            "random" => (
                Family::Random {
                    n: int(0)?,
                    p: real(1)?,
                },
                2,
            ),
            other => {
                return Err(Error::InvalidParams(format!(
                    "unknown family {other:?}; expected one of {}",
                    Family::NAMES.join(", ")
                )))
            }
        };
        if params.len() != arity {
            return Err(Error::InvalidParams(format!(
                "{name} takes {arity} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(family)
    }
}

/// Generates a member of `family`. Deterministic for a fixed seed.
pub fn generate(family: &Family, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positive = |what: &str, x: usize| {
        if x == 0 {
            Err(Error::InvalidParams(format!("{what} must be positive")))
        } else {
            Ok(())
        }
    };
    let probability = |p: f64| {
        if (0.0..=1.0).contains(&p) {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("probability {p} not in [0, 1]")))
        }
    };
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let n = match *family {
        Family::Path { n } => {
            positive("n", n)?;
            edges.extend((1..n).map(|i| (i - 1, i)));
            n
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::InvalidParams("a cycle needs n >= 3".into()));
            }
            edges.extend((1..n).map(|i| (i - 1, i)));
            edges.push((n - 1, 0));
            n
        }
        Family::Star { n } => {
            positive("n", n)?;
            edges.extend((1..n).map(|i| (0, i)));
            n
        }
        Family::Complete { n } => {
            positive("n", n)?;
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
            n
        }
        Family::Grid { rows, cols } => {
            positive("rows", rows)?;
            positive("cols", cols)?;
            let at = |r: usize, c: usize| r * cols + c;
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((at(r, c), at(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((at(r, c), at(r + 1, c)));
                    }
                }
            }
            rows * cols
        }
        Family::RandomTree { n } => {
            positive("n", n)?;
            edges.extend((1..n).map(|i| (rng.gen_range(0..i), i)));
            n
        }
        Family::PartialKTree { n, k, p } => {
            positive("n", n)?;
            positive("k", k)?;
            probability(p)?;
            let mut all = Vec::new();
            let base = n.min(k + 1);
            for u in 0..base {
                all.extend((u + 1..base).map(|v| (u, v)));
            }
            if n > k + 1 {
                // every k-subset of the initial (k+1)-clique
                let mut cliques: Vec<Vec<Vertex>> = (0..=k)
                    .map(|skip| (0..=k).filter(|&x| x != skip).collect())
                    .collect();
                for v in k + 1..n {
                    let host = cliques[rng.gen_range(0..cliques.len())].clone();
                    all.extend(host.iter().map(|&u| (u, v)));
                    for skip in 0..k {
                        let mut fresh: Vec<Vertex> =
                            host.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &u)| u).collect();
                        fresh.push(v);
                        cliques.push(fresh);
                    }
                }
            }
            edges.extend(all.into_iter().filter(|_| rng.gen_bool(p)));
            n
        }
        Family::Random { n, p } => {
            positive("n", n)?;
            probability(p)?;
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            n
        }
    };
    Graph::from_index_edges(n, &edges)
}

/// A uniformly random permutation of the vertices, as a vertex sequence.
pub fn random_sequence(n: usize, seed: u64) -> Vec<Vertex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq: Vec<Vertex> = (0..n).collect();
    seq.shuffle(&mut rng);
    seq
}

/// A named graph from the corpus.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

fn inst(name: impl Into<String>, family: Family, seed: u64) -> Instance {
    Instance {
        name: name.into(),
        graph: generate(&family, seed).expect("corpus parameters are valid"),
    }
}

/// The standard corpus: small structured graphs, random trees and partial
/// k-trees, an edgeless graph and a disconnected graph. Most instances have
/// at most 18 vertices so exhaustive oracles apply; a few larger ones
/// exercise the non-oracle checks.
pub fn corpus() -> Vec<Instance> {
    use Family::*;
    let mut out = vec![
        Instance {
            name: "single".into(),
            graph: Graph::with_vertices(&[1], &[]).unwrap(),
        },
        Instance {
            name: "edgeless4".into(),
            graph: Graph::with_vertices(&[1, 2, 3, 4], &[]).unwrap(),
        },
        inst("p2", Path { n: 2 }, 0),
        inst("p3", Path { n: 3 }, 0),
        inst("p5", Path { n: 5 }, 0),
        inst("p8", Path { n: 8 }, 0),
        inst("c4", Cycle { n: 4 }, 0),
        inst("c5", Cycle { n: 5 }, 0),
        inst("c6", Cycle { n: 6 }, 0),
        inst("c9", Cycle { n: 9 }, 0),
        inst("star5", Star { n: 5 }, 0),
        inst("star8", Star { n: 8 }, 0),
        inst("k4", Complete { n: 4 }, 0),
        inst("k5", Complete { n: 5 }, 0),
        inst("grid2x3", Grid { rows: 2, cols: 3 }, 0),
        inst("grid3x3", Grid { rows: 3, cols: 3 }, 0),
        inst("grid4x4", Grid { rows: 4, cols: 4 }, 0),
        inst("grid3x5", Grid { rows: 3, cols: 5 }, 0),
        inst("tree10", RandomTree { n: 10 }, 1),
        inst("tree14", RandomTree { n: 14 }, 2),
        inst("tree18", RandomTree { n: 18 }, 3),
        inst("k2tree12", PartialKTree { n: 12, k: 2, p: 1.0 }, 7),
        inst("pk2tree16", PartialKTree { n: 16, k: 2, p: 0.8 }, 3),
        inst("pk3tree18", PartialKTree { n: 18, k: 3, p: 0.7 }, 11),
        inst("pk2tree14", PartialKTree { n: 14, k: 2, p: 0.6 }, 5),
        inst("gnp12", Random { n: 12, p: 0.3 }, 9),
        inst("grid6x6", Grid { rows: 6, cols: 6 }, 0),
        inst("tree30", RandomTree { n: 30 }, 4),
        inst("pk2tree40", PartialKTree { n: 40, k: 2, p: 0.9 }, 1),
        inst("pk3tree60", PartialKTree { n: 60, k: 3, p: 0.8 }, 2),
    ];
    let p4 = generate(&Path { n: 4 }, 0).unwrap();
    let c5 = generate(&Cycle { n: 5 }, 0).unwrap();
    out.push(Instance {
        name: "p4+c5".into(),
        graph: p4.disjoint_union(&c5),
    });
    out
}
