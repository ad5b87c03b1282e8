//! Path flooding, election and path marking under broadcast-only rounds.
//!
//! Flooding: in round 1 every vertex broadcasts its own length-0 path. A
//! vertex receiving a path that starts below it appends itself and keeps,
//! per start vertex, the best candidate: shorter first, then smaller
//! super-id sequence. Paths stored in a round are broadcast in the next one
//! while shorter than the flooding radius `k`. After `k` rounds every vertex
//! holds exactly its `WReach_k` entries with the witnessing paths.
//!
//! Routing: an item is a route `[next, ..., target]` of super-ids. It is
//! broadcast; only `next` acts on it. A relay checks that its own stored
//! path to `target` is the reversed route, then forwards the rest once per
//! target. Two routes through one relay toward the same target share their
//! remainder, so forwarding once is enough.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::ordering::{LinearOrder, WReachEntry, WReachTable};
use crate::sim::{run, Context, Envelope, Process, RunOptions, SimModel, Step};

use super::{finished, resolve_order, Bundle, OrderSource, ProtocolRun};

/// Final state of one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoutingOutput {
    /// Stored paths as super-id sequences, start vertex first.
    pub paths: Vec<Vec<u32>>,
    /// Super-id of `min WReach_r` (own super-id when no election ran).
    pub dominator: u32,
    pub in_d: bool,
    /// Marked by some dominator's notification, or in `D`.
    pub in_d_prime: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    Flood,
    Elect,
    Notify,
}

#[derive(Clone, Copy, Debug)]
struct Schedule {
    /// Flooding radius.
    k: usize,
    /// Election radius, when electing.
    elect: Option<usize>,
    notify: bool,
}

impl Schedule {
    fn elect_rounds(&self) -> usize {
        self.elect.unwrap_or(0)
    }

    fn total(&self) -> usize {
        self.k + self.elect_rounds() + if self.notify { self.k } else { 0 }
    }

    fn phase(&self, round: usize) -> Phase {
        if round <= self.k {
            Phase::Flood
        } else if round <= self.k + self.elect_rounds() {
            Phase::Elect
        } else {
            Phase::Notify
        }
    }
}

struct Router {
    rank: u32,
    schedule: Schedule,
    /// Start super-id to best path, start first.
    best: BTreeMap<u32, Vec<u32>>,
    fresh: Vec<u32>,
    dominator: u32,
    in_d: bool,
    in_d_prime: bool,
    queued: Vec<Vec<u32>>,
    forwarded: BTreeSet<u32>,
}

impl Router {
    fn new(rank: u32, schedule: Schedule) -> Router {
        Router {
            rank,
            schedule,
            best: BTreeMap::from([(rank, vec![rank])]),
            fresh: vec![rank],
            dominator: rank,
            in_d: false,
            in_d_prime: false,
            queued: Vec::new(),
            forwarded: BTreeSet::new(),
        }
    }

    fn receive_path(&mut self, path: &[u32]) {
        let Some(&start) = path.first() else { return };
        if start >= self.rank || path.contains(&self.rank) {
            return;
        }
        let mut cand = Vec::with_capacity(path.len() + 1);
        cand.extend_from_slice(path);
        cand.push(self.rank);
        let better = match self.best.get(&start) {
            None => true,
            Some(old) => (cand.len(), &cand) < (old.len(), old),
        };
        if better {
            self.best.insert(start, cand);
            if !self.fresh.contains(&start) {
                self.fresh.push(start);
            }
        }
    }

    /// Queues `route` (without this vertex) toward its last vertex, once per
    /// target.
    fn queue(&mut self, route: Vec<u32>) {
        let target = *route.last().expect("routes are nonempty");
        if self.forwarded.insert(target) {
            self.queued.push(route);
        }
    }

    /// The route from this vertex to `target` along the stored path, without
    /// this vertex.
    fn route_to(&self, target: u32) -> Vec<u32> {
        let mut route = self.best[&target].clone();
        route.reverse();
        route.remove(0);
        route
    }

    fn relay(&mut self, route: &[u32], phase: Phase) -> std::result::Result<(), String> {
        if route.first() != Some(&self.rank) {
            return Ok(());
        }
        match phase {
            Phase::Elect if route.len() == 1 => self.in_d = true,
            Phase::Notify => self.in_d_prime = true,
            _ => {}
        }
        if route.len() == 1 {
            return Ok(());
        }
        let target = *route.last().unwrap();
        let reversed: Vec<u32> = route.iter().rev().copied().collect();
        let limit = match phase {
            Phase::Elect => self.schedule.elect_rounds(),
            _ => self.schedule.k,
        };
        match self.best.get(&target) {
            Some(p) if *p == reversed && p.len() - 1 <= limit => {}
            Some(p) => {
                return Err(format!(
                    "relay toward {target}: stored path {p:?} differs from route {reversed:?} or exceeds {limit}"
                ))
            }
            None => return Err(format!("relay toward {target}, which is not weakly reachable")),
        }
        self.queue(route[1..].to_vec());
        Ok(())
    }

    /// Builds the broadcast for round `next`.
    fn outbox(&mut self, ctx: &Context<'_>, next: usize) -> Vec<Envelope<Bundle>> {
        let seqs: Vec<Vec<u32>> = match self.schedule.phase(next) {
            Phase::Flood => {
                let fresh = std::mem::take(&mut self.fresh);
                fresh
                    .into_iter()
                    .map(|s| self.best[&s].clone())
                    .filter(|p| p.len() - 1 < self.schedule.k)
                    .collect()
            }
            _ => std::mem::take(&mut self.queued),
        };
        if seqs.is_empty() || ctx.neighbors.is_empty() {
            return Vec::new();
        }
        vec![Envelope::broadcast(Bundle(seqs))]
    }

    /// Work at the start of a routing phase.
    fn begin(&mut self, phase: Phase) {
        self.forwarded.clear();
        self.queued.clear();
        match phase {
            Phase::Flood => {}
            Phase::Elect => {
                let r = self.schedule.elect_rounds();
                let m = self
                    .best
                    .iter()
                    .find(|(_, p)| p.len() - 1 <= r)
                    .map(|(&s, _)| s)
                    .expect("own path is stored");
                self.dominator = m;
                if m == self.rank {
                    self.in_d = true;
                } else {
                    let route = self.route_to(m);
                    self.queue(route);
                }
            }
            Phase::Notify => {
                if self.in_d {
                    let targets: Vec<u32> = self.best.keys().copied().filter(|&s| s != self.rank).collect();
                    for w in targets {
                        let route = self.route_to(w);
                        self.queue(route);
                    }
                }
            }
        }
    }

    fn output(&self) -> RoutingOutput {
        RoutingOutput {
            paths: self.best.values().cloned().collect(),
            dominator: self.dominator,
            in_d: self.in_d,
            in_d_prime: self.in_d || self.in_d_prime,
        }
    }

    /// Phase changes after `round`, then the output or the next outbox.
    fn finish(&mut self, ctx: &Context<'_>, round: usize) -> Step<Bundle, RoutingOutput> {
        let s = self.schedule;
        if s.elect.is_some() && round == s.k {
            self.begin(Phase::Elect);
        }
        if s.notify && round == s.k + s.elect_rounds() {
            self.begin(Phase::Notify);
        }
        if round == s.total() {
            return Step::idle().with_output(self.output());
        }
        Step::send(self.outbox(ctx, round + 1))
    }
}

impl Process for Router {
    type Msg = Bundle;
    type Output = RoutingOutput;

    fn init(&mut self, ctx: &Context<'_>) -> std::result::Result<Step<Bundle, RoutingOutput>, String> {
        Ok(self.finish(ctx, 0))
    }

    fn step(
        &mut self,
        ctx: &Context<'_>,
        inbox: &[(Vertex, Bundle)],
    ) -> std::result::Result<Step<Bundle, RoutingOutput>, String> {
        let phase = self.schedule.phase(ctx.round);
        for (_, msg) in inbox {
            for seq in &msg.0 {
                match phase {
                    Phase::Flood => self.receive_path(seq),
                    _ => self.relay(seq, phase)?,
                }
            }
        }
        Ok(self.finish(ctx, ctx.round))
    }
}

fn run_router(
    g: &Graph,
    source: &OrderSource,
    model: SimModel,
    opts: &RunOptions,
    schedule: Schedule,
) -> Result<ProtocolRun<Vec<RoutingOutput>>> {
    let resolved = resolve_order(g, source, model, opts)?;
    let order = resolved.order;
    let procs = g
        .vertices()
        .map(|v| Router::new(order.rank(v) as u32, schedule))
        .collect();
    let opts = RunOptions {
        max_rounds: schedule.total(),
        ..opts.clone()
    };
    let (outputs, trace) = finished(run(g, model, procs, &opts)?)?;
    Ok(ProtocolRun {
        output: outputs,
        order,
        order_rounds: resolved.rounds,
        order_trace: resolved.trace,
        trace,
    })
}

fn table_from(order: &LinearOrder, k: usize, outputs: &[RoutingOutput]) -> WReachTable {
    let entries = outputs
        .iter()
        .map(|out| {
            out.paths
                .iter()
                .map(|p| WReachEntry {
                    target: order.vertex_at(p[0] as usize),
                    path: p.iter().map(|&s| order.vertex_at(s as usize)).collect(),
                })
                .collect()
        })
        .collect();
    WReachTable::from_entries(k, order, entries)
}

/// Every vertex learns `WReach_2r[v]` with witnessing paths in exactly `2r`
/// rounds after the order phase.
pub fn protocol_wreach_dist(
    g: &Graph,
    r: usize,
    source: &OrderSource,
    model: SimModel,
    opts: &RunOptions,
) -> Result<ProtocolRun<WReachTable>> {
    let schedule = Schedule {
        k: 2 * r,
        elect: None,
        notify: false,
    };
    let run = run_router(g, source, model, opts, schedule)?;
    let table = table_from(&run.order, 2 * r, &run.output);
    Ok(ProtocolRun {
        output: table,
        order: run.order,
        order_rounds: run.order_rounds,
        order_trace: run.order_trace,
        trace: run.trace,
    })
}

/// Distributed dominating set and each vertex's elected dominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistDomSet {
    /// Members in increasing order position.
    pub dominators: Vec<Vertex>,
    /// `witness[w]` is the vertex `w` elected.
    pub witness: Vec<Vertex>,
    pub table: WReachTable,
}

/// Flooding to `2r`, then `r` election rounds: `3r` rounds in total.
pub fn protocol_domset(
    g: &Graph,
    r: usize,
    source: &OrderSource,
    model: SimModel,
    opts: &RunOptions,
) -> Result<ProtocolRun<DistDomSet>> {
    let schedule = Schedule {
        k: 2 * r,
        elect: Some(r),
        notify: false,
    };
    let run = run_router(g, source, model, opts, schedule)?;
    let output = dom_from(&run.order, 2 * r, &run.output);
    Ok(ProtocolRun {
        output,
        order: run.order,
        order_rounds: run.order_rounds,
        order_trace: run.order_trace,
        trace: run.trace,
    })
}

fn dom_from(order: &LinearOrder, k: usize, outputs: &[RoutingOutput]) -> DistDomSet {
    let mut dominators: Vec<Vertex> = (0..outputs.len()).filter(|&v| outputs[v].in_d).collect();
    dominators.sort_by_key(|&v| order.rank(v));
    DistDomSet {
        dominators,
        witness: outputs.iter().map(|o| order.vertex_at(o.dominator as usize)).collect(),
        table: table_from(order, k, outputs),
    }
}

/// The connected dominating set of the broadcast protocol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistConnected {
    pub domset: DistDomSet,
    /// `D'`, sorted by index.
    pub connected: Vec<Vertex>,
}

/// Flooding to `2r + 1`, `r` election rounds, then `2r + 1` rounds marking
/// the witnessing paths of every dominator: `5r + 2` rounds in total.
pub fn protocol_connected_domset_congest(
    g: &Graph,
    r: usize,
    source: &OrderSource,
    model: SimModel,
    opts: &RunOptions,
) -> Result<ProtocolRun<DistConnected>> {
    let schedule = Schedule {
        k: 2 * r + 1,
        elect: Some(r),
        notify: true,
    };
    let run = run_router(g, source, model, opts, schedule)?;
    let domset = dom_from(&run.order, 2 * r + 1, &run.output);
    let connected = (0..run.output.len()).filter(|&v| run.output[v].in_d_prime).collect();
    Ok(ProtocolRun {
        output: DistConnected { domset, connected },
        order: run.order,
        order_rounds: run.order_rounds,
        order_trace: run.order_trace,
        trace: run.trace,
    })
}
