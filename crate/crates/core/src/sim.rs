//! A deterministic synchronous-round simulator.
//!
//! Every vertex runs a [`Process`]. Messages returned by [`Process::init`]
//! are delivered in round 1; in round `t` the messages sent at the end of
//! round `t - 1` are validated against the [`SimModel`], delivered, and every
//! vertex steps on its inbox, producing the messages for round `t + 1` and
//! possibly its final output. The run ends after the first round at which
//! every vertex has produced output and nothing is left to send.
//!
//! Message sizes are measured with [`encode_message`]: a 16-bit frame header
//! holding the number of sequences, then each sequence as a length prefix of
//! `ceil(log2(n + 1))` bits followed by its values in `ceil(log2 n)`-bit
//! fields. Values are vertex references or small counters, always below `n`.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const FRAME_HEADER_BITS: usize = 16;

/// Default bandwidth in words of `ceil(log2 n)` bits.
pub const DEFAULT_KAPPA: usize = 64;

/// Width of one id field: `ceil(log2 n)`, at least 1.
pub fn id_width(n: usize) -> usize {
    ceil_log2(n).max(1)
}

/// Width of a sequence length prefix: `ceil(log2 (n + 1))`, at least 1.
pub fn length_width(n: usize) -> usize {
    ceil_log2(n + 1).max(1)
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Local,
    Congest,
    CongestBc,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Local => "LOCAL",
            ModelKind::Congest => "CONGEST",
            ModelKind::CongestBc => "CONGEST_BC",
        }
    }

    pub fn parse(s: &str) -> Option<ModelKind> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "local" => Some(ModelKind::Local),
            "congest" => Some(ModelKind::Congest),
            "congest_bc" | "congestbc" | "bc" => Some(ModelKind::CongestBc),
            _ => None,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimModel {
    pub kind: ModelKind,
    /// Words of `ceil(log2 n)` bits allowed per message in the CONGEST
    /// variants.
    pub kappa: usize,
}

impl SimModel {
    pub fn local() -> SimModel {
        SimModel {
            kind: ModelKind::Local,
            kappa: DEFAULT_KAPPA,
        }
    }

    pub fn congest(kappa: usize) -> SimModel {
        SimModel {
            kind: ModelKind::Congest,
            kappa,
        }
    }

    pub fn congest_bc(kappa: usize) -> SimModel {
        SimModel {
            kind: ModelKind::CongestBc,
            kappa,
        }
    }

    /// Per-message cap in bits, `None` for LOCAL.
    pub fn cap_bits(&self, n: usize) -> Option<usize> {
        match self.kind {
            ModelKind::Local => None,
            _ => Some(self.kappa * id_width(n)),
        }
    }
}

/// The wire form of a message: sequences of field values below `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Payload(pub Vec<Vec<u32>>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoded {
    /// Frame header plus the length prefixes.
    pub header_bits: usize,
    /// Value fields only.
    pub payload_bits: usize,
    /// The bit stream, most significant bit first, zero padded.
    pub bytes: Vec<u8>,
}

impl Encoded {
    pub fn bits(&self) -> usize {
        self.header_bits + self.payload_bits
    }
}

struct BitWriter {
    bytes: Vec<u8>,
    len: usize,
}

impl BitWriter {
    fn push(&mut self, value: u64, width: usize) {
        for i in (0..width).rev() {
            if self.len.is_multiple_of(8) {
                self.bytes.push(0);
            }
            if (value >> i) & 1 == 1 {
                let last = self.bytes.last_mut().unwrap();
                *last |= 0x80 >> (self.len % 8);
            }
            self.len += 1;
        }
    }
}

/// Canonical encoding of `payload` for an `n`-vertex network.
pub fn encode_message(payload: &Payload, n: usize) -> Result<Encoded> {
    let seqs = &payload.0;
    if seqs.len() >= 1 << FRAME_HEADER_BITS {
        return Err(Error::InvalidParams(format!("{} sequences do not fit the frame header", seqs.len())));
    }
    let (iw, lw) = (id_width(n), length_width(n));
    let mut w = BitWriter {
        bytes: Vec::new(),
        len: 0,
    };
    w.push(seqs.len() as u64, FRAME_HEADER_BITS);
    let mut header_bits = FRAME_HEADER_BITS;
    let mut payload_bits = 0;
    for seq in seqs {
        if seq.len() > n {
            return Err(Error::InvalidParams(format!("sequence of {} values exceeds n = {n}", seq.len())));
        }
        w.push(seq.len() as u64, lw);
        header_bits += lw;
        for &value in seq {
            if value as usize >= n {
                return Err(Error::IdOutOfRange { value, n });
            }
            w.push(value as u64, iw);
            payload_bits += iw;
        }
    }
    Ok(Encoded {
        header_bits,
        payload_bits,
        bytes: w.bytes,
    })
}

/// A protocol message.
pub trait Message: Clone + Send + Sync {
    fn payload(&self) -> Payload;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dest {
    /// Every neighbour.
    All,
    /// One neighbour.
    To(Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope<M> {
    pub dest: Dest,
    pub msg: M,
}

impl<M> Envelope<M> {
    pub fn broadcast(msg: M) -> Envelope<M> {
        Envelope { dest: Dest::All, msg }
    }

    pub fn to(v: Vertex, msg: M) -> Envelope<M> {
        Envelope { dest: Dest::To(v), msg }
    }
}

/// What a vertex knows about itself at every step.
#[derive(Clone, Copy, Debug)]
pub struct Context<'a> {
    pub vertex: Vertex,
    pub neighbors: &'a [Vertex],
    pub n: usize,
    pub round: usize,
}

/// The result of one local step.
#[derive(Clone, Debug)]
pub struct Step<M, O> {
    pub outbox: Vec<Envelope<M>>,
    pub output: Option<O>,
}

impl<M, O> Step<M, O> {
    pub fn idle() -> Step<M, O> {
        Step {
            outbox: Vec::new(),
            output: None,
        }
    }

    pub fn send(outbox: Vec<Envelope<M>>) -> Step<M, O> {
        Step { outbox, output: None }
    }

    pub fn with_output(mut self, output: O) -> Step<M, O> {
        self.output = Some(output);
        self
    }
}

/// The per-vertex program. Steps must be deterministic functions of the
/// process state and the inbox. A returned `Err` aborts the run as a
/// protocol failure at that vertex.
pub trait Process: Send {
    type Msg: Message;
    type Output: Clone + PartialEq + Send + fmt::Debug;

    fn init(&mut self, ctx: &Context<'_>) -> std::result::Result<Step<Self::Msg, Self::Output>, String>;

    /// `inbox` is sorted by sender.
    fn step(
        &mut self,
        ctx: &Context<'_>,
        inbox: &[(Vertex, Self::Msg)],
    ) -> std::result::Result<Step<Self::Msg, Self::Output>, String>;
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub max_rounds: usize,
    /// Step vertices on the rayon pool instead of one after another.
    pub parallel: bool,
    /// Sequential stepping order; a seed shuffles the default order.
    pub shuffle_seed: Option<u64>,
}

impl RunOptions {
    pub fn new(max_rounds: usize) -> RunOptions {
        RunOptions {
            max_rounds,
            ..RunOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    /// Envelopes sent; a broadcast counts once.
    pub messages: usize,
    /// Messages received, summed over vertices.
    pub deliveries: usize,
    pub max_bits: usize,
    pub total_bits: usize,
    /// Largest message seen in this or any earlier round.
    pub max_bits_so_far: usize,
    /// Vertices holding final output after the round.
    pub finished: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub model: ModelKind,
    pub n: usize,
    pub cap_bits: Option<usize>,
    pub rounds: Vec<RoundRecord>,
    pub terminated: bool,
}

impl RoundTrace {
    pub fn total_rounds(&self) -> usize {
        self.rounds.len()
    }

    pub fn max_message_bits(&self) -> usize {
        self.rounds.iter().map(|r| r.max_bits).max().unwrap_or(0)
    }

    pub fn total_bits(&self) -> usize {
        self.rounds.iter().map(|r| r.total_bits).sum()
    }

    pub fn total_messages(&self) -> usize {
        self.rounds.iter().map(|r| r.messages).sum()
    }

    /// Rounds in which at least one message was sent.
    pub fn active_rounds(&self) -> usize {
        self.rounds.iter().filter(|r| r.messages > 0).count()
    }

    /// One JSON object per round, newline separated.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.rounds {
            out.push_str(&serde_json::to_string(r).expect("round records serialize"));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SimOutcome<O> {
    pub outputs: Vec<Option<O>>,
    pub trace: RoundTrace,
}

impl<O: Clone> SimOutcome<O> {
    /// All outputs, or an error naming the first silent vertex.
    pub fn complete_outputs(&self) -> Result<Vec<O>> {
        self.outputs
            .iter()
            .enumerate()
            .map(|(v, o)| {
                o.clone()
                    .ok_or_else(|| Error::Internal(format!("vertex {v} produced no output within the round limit")))
            })
            .collect()
    }
}

fn validate<M: Message>(
    g: &Graph,
    model: &SimModel,
    round: usize,
    v: Vertex,
    outbox: &[Envelope<M>],
) -> Result<Vec<usize>> {
    let violation = |reason: String| Error::ModelViolation {
        round,
        vertex: v,
        model: model.kind.name(),
        reason,
    };
    if model.kind == ModelKind::CongestBc {
        if outbox.len() > 1 {
            return Err(violation(format!("{} messages in one round, broadcast allows one", outbox.len())));
        }
        if outbox.iter().any(|e| e.dest != Dest::All) {
            return Err(violation("addressed message under broadcast-only model".into()));
        }
    }
    let mut addressed = BTreeSet::new();
    let mut has_broadcast = false;
    for e in outbox {
        match e.dest {
            Dest::All => {
                if has_broadcast && model.kind != ModelKind::Local {
                    return Err(violation("two broadcasts in one round".into()));
                }
                has_broadcast = true;
            }
            Dest::To(w) => {
                if !g.has_edge(v, w) {
                    return Err(violation(format!("message to non-neighbour {w}")));
                }
                if !addressed.insert(w) && model.kind != ModelKind::Local {
                    return Err(violation(format!("two messages to neighbour {w}")));
                }
            }
        }
    }
    if has_broadcast && !addressed.is_empty() && model.kind == ModelKind::Congest {
        return Err(violation("broadcast and addressed messages in the same round".into()));
    }
    let cap = model.cap_bits(g.n());
    let mut sizes = Vec::with_capacity(outbox.len());
    for e in outbox {
        let bits = encode_message(&e.msg.payload(), g.n())?.bits();
        if let Some(cap) = cap {
            if bits > cap {
                return Err(Error::Bandwidth {
                    round,
                    vertex: v,
                    bits,
                    cap,
                });
            }
        }
        sizes.push(bits);
    }
    Ok(sizes)
}

/// Runs one process per vertex until every vertex has output and nothing is
/// in flight, or until `opts.max_rounds` rounds have passed (then
/// `trace.terminated` is false).
pub fn run<P: Process>(g: &Graph, model: SimModel, mut procs: Vec<P>, opts: &RunOptions) -> Result<SimOutcome<P::Output>> {
    let n = g.n();
    assert_eq!(procs.len(), n, "one process per vertex");
    let mut outputs: Vec<Option<P::Output>> = vec![None; n];
    let mut pending: Vec<Vec<Envelope<P::Msg>>> = Vec::with_capacity(n);
    for (v, p) in procs.iter_mut().enumerate() {
        let ctx = Context {
            vertex: v,
            neighbors: g.neighbors(v),
            n,
            round: 0,
        };
        let step = p.init(&ctx).map_err(|reason| Error::Protocol {
            round: 0,
            vertex: v,
            reason,
        })?;
        outputs[v] = step.output;
        pending.push(step.outbox);
    }
    let order: Vec<Vertex> = match opts.shuffle_seed {
        Some(seed) => {
            let mut o: Vec<Vertex> = (0..n).collect();
            o.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            o
        }
        None => (0..n).collect(),
    };
    let mut trace = RoundTrace {
        model: model.kind,
        n,
        cap_bits: model.cap_bits(n),
        rounds: Vec::new(),
        terminated: false,
    };
    let mut max_so_far = 0;
    loop {
        let quiet = pending.iter().all(Vec::is_empty);
        if quiet && outputs.iter().all(Option::is_some) {
            trace.terminated = true;
            break;
        }
        let round = trace.rounds.len() + 1;
        if round > opts.max_rounds {
            break;
        }

        let mut record = RoundRecord {
            round,
            messages: 0,
            deliveries: 0,
            max_bits: 0,
            total_bits: 0,
            max_bits_so_far: 0,
            finished: 0,
        };
        let mut inboxes: Vec<Vec<(Vertex, P::Msg)>> = vec![Vec::new(); n];
        for (v, outbox) in pending.iter_mut().enumerate() {
            let sizes = validate(g, &model, round, v, outbox)?;
            for (e, bits) in outbox.drain(..).zip(sizes) {
                record.messages += 1;
                record.max_bits = record.max_bits.max(bits);
                record.total_bits += bits;
                match e.dest {
                    Dest::All => {
                        for &w in g.neighbors(v) {
                            inboxes[w].push((v, e.msg.clone()));
                            record.deliveries += 1;
                        }
                    }
                    Dest::To(w) => {
                        inboxes[w].push((v, e.msg));
                        record.deliveries += 1;
                    }
                }
            }
        }

        let step_one = |v: Vertex, p: &mut P, inbox: &[(Vertex, P::Msg)]| {
            let ctx = Context {
                vertex: v,
                neighbors: g.neighbors(v),
                n,
                round,
            };
            p.step(&ctx, inbox).map_err(|reason| Error::Protocol { round, vertex: v, reason })
        };
        let steps: Vec<Result<Step<P::Msg, P::Output>>> = if opts.parallel {
            procs
                .par_iter_mut()
                .zip(inboxes.par_iter())
                .enumerate()
                .map(|(v, (p, inbox))| step_one(v, p, inbox))
                .collect()
        } else {
            let mut slots: Vec<Option<_>> = (0..n).map(|_| None).collect();
            for &v in &order {
                slots[v] = Some(step_one(v, &mut procs[v], &inboxes[v]));
            }
            slots.into_iter().map(|s| s.expect("every vertex stepped")).collect()
        };
        for (v, step) in steps.into_iter().enumerate() {
            let step = step?;
            if let Some(out) = step.output {
                match &outputs[v] {
                    None => outputs[v] = Some(out),
                    Some(prev) if *prev == out => {}
                    Some(prev) => {
                        return Err(Error::Protocol {
                            round,
                            vertex: v,
                            reason: format!("output changed from {prev:?} to {out:?}"),
                        })
                    }
                }
            }
            pending[v] = step.outbox;
        }
        max_so_far = max_so_far.max(record.max_bits);
        record.max_bits_so_far = max_so_far;
        record.finished = outputs.iter().filter(|o| o.is_some()).count();
        trace.rounds.push(record);
    }
    Ok(SimOutcome { outputs, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    #[derive(Clone, Debug, PartialEq)]
    struct Ids(Vec<u32>);

    impl Message for Ids {
        fn payload(&self) -> Payload {
            Payload(vec![self.0.clone()])
        }
    }

    struct Echo;

    impl Process for Echo {
        type Msg = Ids;
        type Output = usize;

        fn init(&mut self, _: &Context<'_>) -> std::result::Result<Step<Ids, usize>, String> {
            Ok(Step::idle())
        }

        fn step(&mut self, ctx: &Context<'_>, _: &[(Vertex, Ids)]) -> std::result::Result<Step<Ids, usize>, String> {
            Ok(Step::idle().with_output(ctx.vertex))
        }
    }

    /// Floods the largest index for `n - 1` rounds.
    struct FloodMax {
        best: u32,
    }

    impl Process for FloodMax {
        type Msg = Ids;
        type Output = u32;

        fn init(&mut self, ctx: &Context<'_>) -> std::result::Result<Step<Ids, u32>, String> {
            self.best = ctx.vertex as u32;
            if ctx.n == 1 {
                return Ok(Step::idle().with_output(self.best));
            }
            Ok(Step::send(vec![Envelope::broadcast(Ids(vec![self.best]))]))
        }

        fn step(&mut self, ctx: &Context<'_>, inbox: &[(Vertex, Ids)]) -> std::result::Result<Step<Ids, u32>, String> {
            for (_, m) in inbox {
                self.best = self.best.max(m.0[0]);
            }
            if ctx.round + 1 >= ctx.n {
                Ok(Step::idle().with_output(self.best))
            } else {
                Ok(Step::send(vec![Envelope::broadcast(Ids(vec![self.best]))]))
            }
        }
    }

    /// Sends `len` ids in one broadcast during round 1.
    struct Chatty {
        len: usize,
    }

    impl Process for Chatty {
        type Msg = Ids;
        type Output = ();

        fn init(&mut self, _: &Context<'_>) -> std::result::Result<Step<Ids, ()>, String> {
            Ok(Step::send(vec![Envelope::broadcast(Ids(vec![0; self.len]))]))
        }

        fn step(&mut self, _: &Context<'_>, _: &[(Vertex, Ids)]) -> std::result::Result<Step<Ids, ()>, String> {
            Ok(Step::idle().with_output(()))
        }
    }

    #[test]
    fn encoding_sizes() {
        let empty = encode_message(&Payload::default(), 16).unwrap();
        assert_eq!((empty.header_bits, empty.payload_bits), (FRAME_HEADER_BITS, 0));

        let one = encode_message(&Payload(vec![vec![5]]), 16).unwrap();
        assert_eq!(one.payload_bits, 4);

        // a path of length 3 has 4 vertices
        let path = encode_message(&Payload(vec![vec![1, 2, 3, 4]]), 16).unwrap();
        assert_eq!(path.payload_bits, 16);
        assert_eq!(path.header_bits, FRAME_HEADER_BITS + length_width(16));
        assert_eq!(path.bytes.len(), path.bits().div_ceil(8));

        assert!(matches!(
            encode_message(&Payload(vec![vec![16]]), 16),
            Err(Error::IdOutOfRange { value: 16, n: 16 })
        ));
    }

    #[test]
    fn bit_layout() {
        let e = encode_message(&Payload(vec![vec![3]]), 4).unwrap();
        // header 0x0001, length 1 in 3 bits, value 3 in 2 bits: 001 11
        assert_eq!(e.bytes, vec![0x00, 0x01, 0b0011_1000]);
    }

    #[test]
    fn widths() {
        assert_eq!(id_width(1), 1);
        assert_eq!(id_width(2), 1);
        assert_eq!(id_width(16), 4);
        assert_eq!(id_width(17), 5);
        assert_eq!(length_width(16), 5);
    }

    #[test]
    fn echo_terminates_in_one_round() {
        let g = generate(&Family::Cycle { n: 5 }, 0).unwrap();
        let out = run(&g, SimModel::local(), (0..5).map(|_| Echo).collect(), &RunOptions::new(10)).unwrap();
        assert_eq!(out.trace.total_rounds(), 1);
        assert_eq!(out.complete_outputs().unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn flood_max_on_p3() {
        let g = generate(&Family::Path { n: 3 }, 0).unwrap();
        let procs = (0..3).map(|_| FloodMax { best: 0 }).collect();
        let out = run(&g, SimModel::congest_bc(16), procs, &RunOptions::new(10)).unwrap();
        assert_eq!(out.trace.total_rounds(), 2);
        assert!(out.complete_outputs().unwrap().iter().all(|&b| g.id(b as usize) == 3));
    }

    #[test]
    fn bandwidth_violation() {
        let g = generate(&Family::Path { n: 16 }, 0).unwrap();
        let model = SimModel::congest_bc(8);
        let cap = model.cap_bits(16).unwrap();
        let procs = (0..16).map(|_| Chatty { len: 2 * cap / 4 }).collect();
        let err = run(&g, model, procs, &RunOptions::new(5)).unwrap_err();
        assert!(matches!(err, Error::Bandwidth { round: 1, vertex: 0, .. }), "{err}");
    }

    #[test]
    fn round_limit_reported() {
        let g = generate(&Family::Path { n: 6 }, 0).unwrap();
        let procs = (0..6).map(|_| FloodMax { best: 0 }).collect();
        let out = run(&g, SimModel::local(), procs, &RunOptions::new(2)).unwrap();
        assert!(!out.trace.terminated);
        assert_eq!(out.trace.total_rounds(), 2);
        assert!(out.complete_outputs().is_err());
    }

    /// Sends one addressed message per neighbour (or a bad pattern).
    struct Addressed {
        bad: bool,
    }

    impl Process for Addressed {
        type Msg = Ids;
        type Output = usize;

        fn init(&mut self, ctx: &Context<'_>) -> std::result::Result<Step<Ids, usize>, String> {
            let mut out: Vec<Envelope<Ids>> = ctx
                .neighbors
                .iter()
                .map(|&w| Envelope::to(w, Ids(vec![ctx.vertex as u32])))
                .collect();
            if self.bad {
                out.push(Envelope::to(ctx.neighbors[0], Ids(vec![0])));
            }
            Ok(Step::send(out))
        }

        fn step(&mut self, _: &Context<'_>, inbox: &[(Vertex, Ids)]) -> std::result::Result<Step<Ids, usize>, String> {
            for (from, m) in inbox {
                if m.0[0] as usize != *from {
                    return Err("misdelivered".into());
                }
            }
            Ok(Step::idle().with_output(inbox.len()))
        }
    }

    #[test]
    fn congest_addressed_delivery() {
        let g = generate(&Family::Star { n: 4 }, 0).unwrap();
        let procs = (0..4).map(|_| Addressed { bad: false }).collect();
        let out = run(&g, SimModel::congest(16), procs, &RunOptions::new(3)).unwrap();
        assert_eq!(out.complete_outputs().unwrap(), vec![3, 1, 1, 1]);

        let procs = (0..4).map(|_| Addressed { bad: false }).collect();
        let err = run(&g, SimModel::congest_bc(16), procs, &RunOptions::new(3)).unwrap_err();
        assert!(matches!(err, Error::ModelViolation { .. }));

        let procs = (0..4).map(|_| Addressed { bad: true }).collect();
        let err = run(&g, SimModel::congest(16), procs, &RunOptions::new(3)).unwrap_err();
        assert!(matches!(err, Error::ModelViolation { .. }));
    }

    #[test]
    fn shuffled_and_parallel_stepping_agree() {
        let g = generate(&Family::Grid { rows: 4, cols: 5 }, 0).unwrap();
        let mk = || (0..20).map(|_| FloodMax { best: 0 }).collect::<Vec<_>>();
        let base = run(&g, SimModel::congest_bc(16), mk(), &RunOptions::new(40)).unwrap();
        for seed in 0..3 {
            let opts = RunOptions {
                max_rounds: 40,
                parallel: false,
                shuffle_seed: Some(seed),
            };
            let other = run(&g, SimModel::congest_bc(16), mk(), &opts).unwrap();
            assert_eq!(other.outputs, base.outputs);
            assert_eq!(other.trace, base.trace);
        }
        let par = RunOptions {
            max_rounds: 40,
            parallel: true,
            shuffle_seed: None,
        };
        let other = run(&g, SimModel::congest_bc(16), mk(), &par).unwrap();
        assert_eq!(other.trace.to_jsonl(), base.trace.to_jsonl());
    }
}
