//! Distributing a degeneracy-like order by peeling local minima.
//!
//! Every alive vertex broadcasts its number of alive neighbours. A vertex
//! whose (announced degree, id) is below that of every neighbour that spoke
//! in the same round removes itself and announces its removal once. Two
//! neighbours never leave in the same round. Vertices removed later come
//! first in the order.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::ordering::LinearOrder;
use crate::sim::{run, Context, Envelope, Process, RoundTrace, RunOptions, SimModel, Step};

use super::{finished, Bundle};

#[derive(Clone, Debug)]
pub struct PeelingRun {
    pub order: LinearOrder,
    /// `removed_at[v]` is the round in which `v` left.
    pub removed_at: Vec<usize>,
    pub trace: RoundTrace,
}

struct Peel {
    alive: BTreeSet<Vertex>,
    announced: usize,
    removed: bool,
}

impl Peel {
    fn degree_msg(&mut self) -> Vec<Envelope<Bundle>> {
        self.announced = self.alive.len();
        vec![Envelope::broadcast(Bundle(vec![vec![self.announced as u32]]))]
    }
}

impl Process for Peel {
    type Msg = Bundle;
    type Output = usize;

    fn init(&mut self, ctx: &Context<'_>) -> std::result::Result<Step<Bundle, usize>, String> {
        self.alive = ctx.neighbors.iter().copied().collect();
        Ok(Step::send(self.degree_msg()))
    }

    fn step(&mut self, ctx: &Context<'_>, inbox: &[(Vertex, Bundle)]) -> std::result::Result<Step<Bundle, usize>, String> {
        if self.removed {
            return Ok(Step::idle());
        }
        let mut lowest = true;
        for (from, msg) in inbox {
            match msg.0.first() {
                // removal notice
                None => {
                    self.alive.remove(from);
                }
                Some(seq) => {
                    let d = *seq.first().ok_or("empty degree announcement")? as usize;
                    if (d, *from) < (self.announced, ctx.vertex) {
                        lowest = false;
                    }
                }
            }
        }
        if lowest {
            self.removed = true;
            let outbox = if ctx.neighbors.is_empty() {
                Vec::new()
            } else {
                vec![Envelope::broadcast(Bundle(Vec::new()))]
            };
            return Ok(Step::send(outbox).with_output(ctx.round));
        }
        Ok(Step::send(self.degree_msg()))
    }
}

/// Runs the peeling phase and derives the order.
pub fn peeling_order(g: &Graph, model: SimModel, opts: &RunOptions) -> Result<PeelingRun> {
    let procs = g
        .vertices()
        .map(|_| Peel {
            alive: BTreeSet::new(),
            announced: 0,
            removed: false,
        })
        .collect();
    let opts = RunOptions {
        max_rounds: g.n() + 2,
        ..opts.clone()
    };
    let (removed_at, trace) = finished(run(g, model, procs, &opts)?)?;
    let mut seq: Vec<Vertex> = g.vertices().collect();
    seq.sort_by_key(|&v| (Reverse(removed_at[v]), v));
    Ok(PeelingRun {
        order: LinearOrder::from_sequence(seq)?,
        removed_at,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn smaller_neighbours(g: &Graph, order: &LinearOrder) -> usize {
        g.vertices()
            .map(|v| g.neighbors(v).iter().filter(|&&u| order.less(u, v)).count())
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn star_center_comes_first() {
        let g = generate(&Family::Star { n: 7 }, 0).unwrap();
        let run = peeling_order(&g, SimModel::congest_bc(64), &RunOptions::default()).unwrap();
        assert_eq!(run.removed_at, vec![2, 1, 1, 1, 1, 1, 1]);
        assert_eq!(run.order.vertex_at(0), 0);
        assert_eq!(smaller_neighbours(&g, &run.order), 1);
    }

    #[test]
    fn later_removal_means_smaller() {
        let g = generate(&Family::PartialKTree { n: 40, k: 2, p: 0.8 }, 4).unwrap();
        let run = peeling_order(&g, SimModel::congest_bc(64), &RunOptions::default()).unwrap();
        for (u, v) in g.edges() {
            assert_eq!(run.order.less(u, v), run.removed_at[u] > run.removed_at[v]);
        }
    }

    #[test]
    fn neighbours_leave_in_different_rounds() {
        let g = generate(&Family::Grid { rows: 5, cols: 5 }, 0).unwrap();
        let run = peeling_order(&g, SimModel::congest_bc(64), &RunOptions::default()).unwrap();
        for (u, v) in g.edges() {
            assert_ne!(run.removed_at[u], run.removed_at[v]);
        }
        assert!(smaller_neighbours(&g, &run.order) <= 2);
    }

    #[test]
    fn edgeless_and_single() {
        let g = Graph::with_vertices(&[1, 2, 3], &[]).unwrap();
        let run = peeling_order(&g, SimModel::congest_bc(64), &RunOptions::default()).unwrap();
        assert_eq!(run.removed_at, vec![1, 1, 1]);
        assert_eq!(run.order.sequence(), &[0, 1, 2]);
        assert_eq!(run.trace.total_messages(), 3);
    }
}
