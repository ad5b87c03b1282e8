//! The minor-based connected dominating set in the LOCAL model.
//!
//! Rounds `1..=2r+1`: vertices flood adjacency records (id, neighbours, and
//! whether the vertex is in `D`), so that every vertex knows all records
//! within distance `2r + 1`. That is enough to recompute, on the known part
//! of the graph, the blocks of all vertices within distance `r + 1`, hence
//! the minor neighbours of a dominator and the least path of length at most
//! `2r + 1` to each of them. Rounds `2r+2..=3r+1`: both endpoints of every
//! minor edge mark the interior vertices of the path on their own half.

use std::collections::{BTreeMap, BTreeSet};

use crate::connect::{lex_shortest_path, LexSearch};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::sim::{run, Context, Envelope, Process, RoundTrace, RunOptions, SimModel, Step};

use super::{finished, Bundle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalOutput {
    Member(bool),
    /// No dominator within distance `r`.
    Abort,
}

#[derive(Clone, Debug)]
pub struct LocalRun {
    /// `D'`, sorted by index.
    pub connected: Vec<Vertex>,
    pub outputs: Vec<LocalOutput>,
    pub trace: RoundTrace,
}

struct MinorBuilder {
    r: usize,
    in_d: bool,
    records: BTreeMap<Vertex, Vec<Vertex>>,
    dominators: BTreeSet<Vertex>,
    fresh: Vec<Vertex>,
    marked: bool,
    aborted: bool,
    outgoing: BTreeMap<Vertex, BTreeSet<Vec<u32>>>,
}

impl MinorBuilder {
    fn gather_rounds(&self) -> usize {
        2 * self.r + 1
    }

    fn total(&self) -> usize {
        3 * self.r + 1
    }

    /// New records: a sequence of dominators among them, then one sequence
    /// `[id, neighbours...]` per record.
    fn records_msg(&mut self) -> Vec<Envelope<Bundle>> {
        let fresh = std::mem::take(&mut self.fresh);
        if fresh.is_empty() {
            return Vec::new();
        }
        let mut seqs = vec![fresh
            .iter()
            .filter(|v| self.dominators.contains(v))
            .map(|&v| v as u32)
            .collect::<Vec<u32>>()];
        for v in fresh {
            let mut rec = vec![v as u32];
            rec.extend(self.records[&v].iter().map(|&u| u as u32));
            seqs.push(rec);
        }
        vec![Envelope::broadcast(Bundle(seqs))]
    }

    fn absorb_records(&mut self, msg: &Bundle) -> std::result::Result<(), String> {
        let (flags, recs) = msg.0.split_first().ok_or("empty record bundle")?;
        for rec in recs {
            let (&v, nbrs) = rec.split_first().ok_or("empty record")?;
            let v = v as Vertex;
            if let std::collections::btree_map::Entry::Vacant(e) = self.records.entry(v) {
                e.insert(nbrs.iter().map(|&u| u as Vertex).collect());
                self.fresh.push(v);
            }
        }
        self.dominators.extend(flags.iter().map(|&v| v as Vertex));
        Ok(())
    }

    /// Runs the local computation once all records are in.
    fn plan(&mut self, ctx: &Context<'_>) -> std::result::Result<(), String> {
        let mut edges = BTreeSet::new();
        for (&v, nbrs) in &self.records {
            for &u in nbrs {
                if u >= ctx.n {
                    return Err(format!("record of {v} names unknown vertex {u}"));
                }
                edges.insert((v.min(u), v.max(u)));
            }
        }
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        let known = Graph::from_index_edges(ctx.n, &edges).map_err(|e| e.to_string())?;
        let sources: Vec<Vertex> = self.dominators.iter().copied().collect();
        let search = LexSearch::run(&known, &sources, self.r);
        let me = ctx.vertex;
        if search.owner[me].is_none() {
            self.aborted = true;
            return Ok(());
        }
        if !self.in_d {
            return Ok(());
        }
        let mut minor_nbrs = BTreeSet::new();
        for x in known.vertices().filter(|&x| search.owner[x] == Some(me)) {
            for &y in known.neighbors(x) {
                if let Some(v) = search.owner[y] {
                    if v != me {
                        minor_nbrs.insert(v);
                    }
                }
            }
        }
        let r = self.r;
        for v in minor_nbrs {
            let (lo, hi) = (me.min(v), me.max(v));
            let path = lex_shortest_path(&known, lo, hi, 2 * r + 1)
                .ok_or_else(|| format!("minor neighbour {v} is farther than {}", 2 * r + 1))?;
            let len = path.len() - 1;
            // the smaller endpoint marks positions 1..=r, the other the rest
            let route: Vec<u32> = if me == lo {
                path[1..len.min(r + 1)].iter().map(|&x| x as u32).collect()
            } else {
                path[(r + 1).min(len)..len].iter().rev().map(|&x| x as u32).collect()
            };
            if let Some(&next) = route.first() {
                self.outgoing.entry(next as Vertex).or_default().insert(route);
            }
        }
        Ok(())
    }

    fn notifications(&mut self) -> Vec<Envelope<Bundle>> {
        std::mem::take(&mut self.outgoing)
            .into_iter()
            .map(|(to, routes)| Envelope::to(to, Bundle(routes.into_iter().collect())))
            .collect()
    }

    fn output(&self) -> LocalOutput {
        if self.aborted {
            LocalOutput::Abort
        } else {
            LocalOutput::Member(self.in_d || self.marked)
        }
    }

    fn after(&mut self, ctx: &Context<'_>, round: usize) -> std::result::Result<Step<Bundle, LocalOutput>, String> {
        if round == self.gather_rounds() {
            self.plan(ctx)?;
        }
        if round == self.total() {
            return Ok(Step::idle().with_output(self.output()));
        }
        if round < self.gather_rounds() {
            Ok(Step::send(self.records_msg()))
        } else {
            Ok(Step::send(self.notifications()))
        }
    }
}

impl Process for MinorBuilder {
    type Msg = Bundle;
    type Output = LocalOutput;

    fn init(&mut self, ctx: &Context<'_>) -> std::result::Result<Step<Bundle, LocalOutput>, String> {
        self.records.insert(ctx.vertex, ctx.neighbors.to_vec());
        if self.in_d {
            self.dominators.insert(ctx.vertex);
        }
        self.fresh.push(ctx.vertex);
        let mut step = self.after(ctx, 0)?;
        if ctx.neighbors.is_empty() {
            step.outbox.clear();
        }
        Ok(step)
    }

    fn step(&mut self, ctx: &Context<'_>, inbox: &[(Vertex, Bundle)]) -> std::result::Result<Step<Bundle, LocalOutput>, String> {
        if ctx.round <= self.gather_rounds() {
            for (_, msg) in inbox {
                self.absorb_records(msg)?;
            }
        } else {
            for (_, msg) in inbox {
                for route in &msg.0 {
                    if route.first().map(|&x| x as Vertex) != Some(ctx.vertex) {
                        return Err(format!("misrouted notification {route:?}"));
                    }
                    self.marked = true;
                    if let Some(&next) = route.get(1) {
                        self.outgoing.entry(next as Vertex).or_default().insert(route[1..].to_vec());
                    }
                }
            }
        }
        let mut step = self.after(ctx, ctx.round)?;
        if ctx.neighbors.is_empty() {
            step.outbox.clear();
        }
        Ok(step)
    }
}

/// Runs the construction for the dominating set given by `d_flags`. Takes
/// exactly `3r + 1` rounds. Fails with [`Error::NotDominating`] when some
/// vertex finds no dominator within distance `r`.
pub fn protocol_connected_domset_local(
    g: &Graph,
    r: usize,
    d_flags: &[bool],
    model: SimModel,
    opts: &RunOptions,
) -> Result<LocalRun> {
    if d_flags.len() != g.n() {
        return Err(Error::InvalidParams(format!(
            "{} flags for {} vertices",
            d_flags.len(),
            g.n()
        )));
    }
    let procs = g
        .vertices()
        .map(|v| MinorBuilder {
            r,
            in_d: d_flags[v],
            records: BTreeMap::new(),
            dominators: BTreeSet::new(),
            fresh: Vec::new(),
            marked: false,
            aborted: false,
            outgoing: BTreeMap::new(),
        })
        .collect();
    let opts = RunOptions {
        max_rounds: 3 * r + 1,
        ..opts.clone()
    };
    let (outputs, trace) = finished(run(g, model, procs, &opts)?)?;
    if let Some(w) = outputs.iter().position(|o| *o == LocalOutput::Abort) {
        return Err(Error::NotDominating { r, witness: g.id(w) });
    }
    let connected = g
        .vertices()
        .filter(|&v| outputs[v] == LocalOutput::Member(true))
        .collect();
    Ok(LocalRun {
        connected,
        outputs,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connect::connect_via_minor;
    use crate::domset::domset;
    use crate::generate::{generate, Family};

    fn flags(n: usize, set: &[Vertex]) -> Vec<bool> {
        (0..n).map(|v| set.contains(&v)).collect()
    }

    #[test]
    fn star_center_takes_four_rounds() {
        let g = generate(&Family::Star { n: 6 }, 0).unwrap();
        let run = protocol_connected_domset_local(&g, 1, &flags(6, &[0]), SimModel::local(), &RunOptions::default())
            .unwrap();
        assert_eq!(run.connected, vec![0]);
        assert_eq!(run.trace.total_rounds(), 4);
    }

    #[test]
    fn p5_joins_through_the_middle() {
        let g = generate(&Family::Path { n: 5 }, 0).unwrap();
        let run = protocol_connected_domset_local(&g, 1, &flags(5, &[1, 3]), SimModel::local(), &RunOptions::default())
            .unwrap();
        assert_eq!(g.ids_of(&run.connected), vec![2, 3, 4]);
    }

    #[test]
    fn matches_sequential_minor_construction() {
        for (fam, r) in [
            (Family::Grid { rows: 4, cols: 4 }, 1),
            (Family::Cycle { n: 11 }, 1),
            (Family::RandomTree { n: 30 }, 2),
            (Family::PartialKTree { n: 40, k: 2, p: 0.7 }, 2),
            (Family::Grid { rows: 6, cols: 6 }, 3),
        ] {
            let g = generate(&fam, 11).unwrap();
            let d = domset(&g, &g.degeneracy_order().1, r).sorted();
            let seq = connect_via_minor(&g, &d, r).unwrap().result;
            let run =
                protocol_connected_domset_local(&g, r, &flags(g.n(), &d), SimModel::local(), &RunOptions::default())
                    .unwrap();
            assert_eq!(run.connected, seq.connected, "{fam:?}");
            assert_eq!(run.trace.total_rounds(), 3 * r + 1);
        }
    }

    #[test]
    fn undominated_input_aborts() {
        let g = generate(&Family::Path { n: 6 }, 0).unwrap();
        let err = protocol_connected_domset_local(&g, 1, &flags(6, &[0]), SimModel::local(), &RunOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::NotDominating { r: 1, .. }));
    }
}
