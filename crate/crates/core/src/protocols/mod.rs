//! Distributed protocols run on the [`crate::sim`] kernel.
//!
//! Vertices refer to each other by compact identifiers `0..n-1` (the dense
//! indices, which follow external id order) and by super-ids, i.e. their
//! position in the linear order. Both fit an id field of the encoding.
//!
//! * [`protocol_wreach_dist`]: every vertex learns `WReach_2r` with the
//!   witnessing paths, in `2r` broadcast rounds.
//! * [`protocol_domset`]: the above, then `r` rounds in which every vertex
//!   elects `min WReach_r` along its stored path.
//! * [`protocol_connected_domset_congest`]: flooding to radius `2r + 1`, the
//!   election, then `2r + 1` rounds in which dominators mark the witnessing
//!   paths to their weakly reachable vertices.
//! * [`protocol_connected_domset_local`]: the minor-based construction in
//!   `3r + 1` LOCAL rounds.
//!
//! The order is either injected, or distributed by a peeling phase that
//! removes local degree minima; see [`OrderSource`].

mod local;
mod peeling;
mod routing;

pub use local::{protocol_connected_domset_local, LocalOutput, LocalRun};
pub use peeling::{peeling_order, PeelingRun};
pub use routing::{
    protocol_connected_domset_congest, protocol_domset, protocol_wreach_dist, DistConnected, DistDomSet,
    RoutingOutput,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::LinearOrder;
use crate::sim::{id_width, Message, Payload, RoundTrace, RunOptions, SimModel};

/// The constant in the congestion bound `α · c² · r · ceil(log2 n)`.
pub const ALPHA: usize = 8;

/// Largest message size allowed by the congestion bound, for
/// `c = max |WReach|` at the flooding radius. `r = 0` counts as 1.
pub fn congestion_bound(c: usize, r: usize, n: usize) -> usize {
    ALPHA * c * c * r.max(1) * id_width(n)
}

/// A list of field sequences, sent as is.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bundle(pub Vec<Vec<u32>>);

impl Message for Bundle {
    fn payload(&self) -> Payload {
        Payload(self.0.clone())
    }
}

/// Where the linear order comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSource {
    /// Computed centrally and handed to every vertex as initial knowledge.
    /// `modeled_rounds` is charged as the cost of computing it.
    Injected {
        order: LinearOrder,
        modeled_rounds: usize,
    },
    /// Distributed by the peeling phase, simulated before the protocol.
    /// Needs `O(n)` rounds in the worst case.
    Peeling,
}

impl OrderSource {
    pub fn injected(order: LinearOrder) -> OrderSource {
        OrderSource::Injected {
            order,
            modeled_rounds: 0,
        }
    }
}

/// A protocol result together with how it was obtained.
#[derive(Clone, Debug)]
pub struct ProtocolRun<T> {
    pub output: T,
    pub order: LinearOrder,
    /// Rounds spent on the order: simulated, or the modeled constant.
    pub order_rounds: usize,
    /// Trace of the peeling phase, if it ran.
    pub order_trace: Option<RoundTrace>,
    /// Trace of the protocol proper.
    pub trace: RoundTrace,
}

impl<T> ProtocolRun<T> {
    pub fn total_rounds(&self) -> usize {
        self.order_rounds + self.trace.total_rounds()
    }

    /// Largest message over the order phase and the protocol.
    pub fn max_message_bits(&self) -> usize {
        let order = self.order_trace.as_ref().map_or(0, RoundTrace::max_message_bits);
        order.max(self.trace.max_message_bits())
    }
}

pub(crate) struct ResolvedOrder {
    order: LinearOrder,
    rounds: usize,
    trace: Option<RoundTrace>,
}

pub(crate) fn resolve_order(g: &Graph, source: &OrderSource, model: SimModel, opts: &RunOptions) -> Result<ResolvedOrder> {
    match source {
        OrderSource::Injected { order, modeled_rounds } => {
            if order.len() != g.n() {
                return Err(Error::InvalidOrder(format!(
                    "order has {} vertices, graph has {}",
                    order.len(),
                    g.n()
                )));
            }
            Ok(ResolvedOrder {
                order: order.clone(),
                rounds: *modeled_rounds,
                trace: None,
            })
        }
        OrderSource::Peeling => {
            let run = peeling_order(g, model, opts)?;
            Ok(ResolvedOrder {
                rounds: run.trace.total_rounds(),
                order: run.order,
                trace: Some(run.trace),
            })
        }
    }
}

/// Outcome of a run that must have finished: every vertex has output.
pub(crate) fn finished<O: Clone>(outcome: crate::sim::SimOutcome<O>) -> Result<(Vec<O>, RoundTrace)> {
    if !outcome.trace.terminated {
        return Err(Error::Internal(format!(
            "protocol did not terminate within {} rounds",
            outcome.trace.total_rounds()
        )));
    }
    let outputs = outcome.complete_outputs()?;
    Ok((outputs, outcome.trace))
}
