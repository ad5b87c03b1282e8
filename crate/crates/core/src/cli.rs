//! The `bedom` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 model violation in a simulation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::battery::{verify, VerifyOptions};
use crate::connect::{connect_via_minor, connect_via_wreach};
use crate::cover::{build_cover_from_table, Cover, CoverJson};
use crate::domset::domset_with_certificate;
use crate::error::{Error, Result};
use crate::export::{cover_cluster_dot, partition_dot};
use crate::generate::{generate, Family};
use crate::graph::Graph;
use crate::oracle;
use crate::ordering::{heuristic_wcol_order, wreach, LinearOrder};
use crate::protocols::{
    congestion_bound, protocol_connected_domset_congest, protocol_connected_domset_local, protocol_domset,
    protocol_wreach_dist, OrderSource, ProtocolRun,
};
use crate::sim::{ModelKind, RoundTrace, RunOptions, SimModel, DEFAULT_KAPPA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_MODEL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bedom", version, about = "Distance-r dominating sets on sparse graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph as an edge list.
    Gen {
        /// path, cycle, star, complete, grid, random_tree, partial_ktree, random
        family: String,
        /// Family parameters, e.g. `3 3` for a grid or `10 2 0.8` for a
        /// partial k-tree.
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write here instead of standard output.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compute a dominating set and report its certificates.
    Domset {
        graph: PathBuf,
        r: usize,
        /// Also build a connected dominating set.
        #[arg(long, value_enum)]
        connected: Option<Connect>,
        /// `degeneracy` or a file listing vertex ids in order.
        #[arg(long, default_value = "degeneracy")]
        order: String,
        /// Compare with the exhaustive optimum when the graph is small.
        #[arg(long)]
        verify: bool,
        /// Write a DOT drawing of the blocks (with `--connected minor`).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build the cover and print it as JSON.
    Cover {
        graph: PathBuf,
        r: usize,
        #[arg(long, default_value = "degeneracy")]
        order: String,
        /// Write a DOT drawing of the cluster of this vertex id.
        #[arg(long, requires = "dot")]
        cluster: Option<u64>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a distributed protocol on the round simulator.
    Simulate {
        graph: PathBuf,
        r: usize,
        #[arg(value_enum)]
        protocol: ProtocolName,
        /// local, congest or congest_bc; defaults to the protocol's model.
        model: Option<String>,
        /// Words of ceil(log2 n) bits per message.
        #[arg(long, env = "BEDOM_KAPPA", default_value_t = DEFAULT_KAPPA)]
        kappa: usize,
        /// Write one JSON record per round here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value = "degeneracy")]
        order: String,
        /// `injected` or `peeling`.
        #[arg(long, value_enum, default_value = "injected")]
        order_source: OrderMode,
        /// Rounds charged for an injected order.
        #[arg(long, default_value_t = 0)]
        order_rounds: usize,
        /// Step vertices in a shuffled order (results must not change).
        #[arg(long)]
        shuffle: Option<u64>,
    },
    /// Run the invariant battery and report pass or fail per check.
    Verify {
        graph: PathBuf,
        r: usize,
        #[arg(long, default_value = "degeneracy")]
        order: String,
        /// Check this cover (JSON from `bedom cover`) instead of building one.
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long)]
        no_protocols: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Connect {
    Wreach,
    Minor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProtocolName {
    Wreach,
    Domset,
    CdsCongest,
    CdsLocal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderMode {
    Injected,
    Peeling,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Bandwidth { .. } | Error::ModelViolation { .. } => EXIT_MODEL,
        Error::NotDominating { .. } | Error::Protocol { .. } | Error::Internal(_) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse_any(&fs::read_to_string(path)?)
}

fn read_order(g: &Graph, spec: &str, r: usize) -> Result<(LinearOrder, String)> {
    if spec == "degeneracy" {
        Ok((heuristic_wcol_order(g, 2 * r), "degeneracy".into()))
    } else {
        let text = fs::read_to_string(spec)?;
        Ok((LinearOrder::parse_ids(g, &text)?, spec.to_string()))
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gen {
            family,
            params,
            seed,
            out: path,
        } => {
            let g = generate(&Family::parse(&family, &params)?, seed)?;
            let text = g.to_edge_list();
            match path {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Domset {
            graph,
            r,
            connected,
            order,
            verify: check,
            dot,
        } => domset_cmd(&read_graph(&graph)?, r, connected, &order, check, dot.as_deref(), out),
        Command::Cover {
            graph,
            r,
            order,
            cluster,
            dot,
        } => {
            let g = read_graph(&graph)?;
            let (order, _) = read_order(&g, &order, r)?;
            let cover = build_cover_from_table(&g, &order, r, &wreach(&g, &order, 2 * r));
            if let (Some(id), Some(path)) = (cluster, dot) {
                let v = g.index_of_checked(id)?;
                fs::write(path, cover_cluster_dot(&g, v, cover.cluster(v)))?;
            }
            emit(out, &serde_json::to_value(cover.to_json(&g))?)?;
            Ok(EXIT_OK)
        }
        Command::Simulate {
            graph,
            r,
            protocol,
            model,
            kappa,
            trace,
            order,
            order_source,
            order_rounds,
            shuffle,
        } => {
            let g = read_graph(&graph)?;
            let kind = match model {
                Some(m) => ModelKind::parse(&m)
                    .ok_or_else(|| Error::InvalidParams(format!("unknown model {m:?}")))?,
                None if protocol == ProtocolName::CdsLocal => ModelKind::Local,
                None => ModelKind::CongestBc,
            };
            let sim = SimCmd {
                r,
                protocol,
                model: SimModel { kind, kappa },
                order,
                order_source,
                order_rounds,
                opts: RunOptions {
                    max_rounds: 0,
                    parallel: false,
                    shuffle_seed: shuffle,
                },
            };
            simulate_cmd(&g, &sim, trace.as_deref(), out)
        }
        Command::Verify {
            graph,
            r,
            order,
            cover,
            no_protocols,
        } => {
            let g = read_graph(&graph)?;
            let (order, _) = read_order(&g, &order, r)?;
            let cover = match cover {
                Some(p) => {
                    let json: CoverJson = serde_json::from_str(&fs::read_to_string(p)?)?;
                    Some(Cover::from_json(&g, &json)?)
                }
                None => None,
            };
            // a supplied cover is judged against its own order
            let order = cover.as_ref().map_or(order, |c| c.order.clone());
            let report = verify(
                &g,
                r,
                &VerifyOptions {
                    order: Some(order),
                    cover,
                    skip_protocols: no_protocols,
                },
            )?;
            emit(out, &serde_json::to_value(&report)?)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

fn domset_cmd(
    g: &Graph,
    r: usize,
    connected: Option<Connect>,
    order_spec: &str,
    check: bool,
    dot: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let (order, order_name) = read_order(g, order_spec, r)?;
    let t2r = wreach(g, &order, 2 * r);
    let c = t2r.max_size();
    let ds = domset_with_certificate(g, &order, r, c);
    let cover = build_cover_from_table(g, &order, r, &t2r);
    let mut report = serde_json::to_value(ds.to_json(g))?;
    report["n"] = json!(g.n());
    report["order"] = json!(order_name);
    report["cover"] = json!({ "degree": cover.degree, "max_radius": cover.max_measured_radius });
    let mut code = EXIT_OK;
    if let Some(w) = g.undominated(&ds.dominators, r) {
        report["undominated"] = json!(g.id(w));
        code = EXIT_VERIFY;
    }
    if check {
        if g.n() <= oracle::MIN_DOMSET_LIMIT {
            let opt = oracle::min_domset(g, r)?;
            report["opt"] = json!(opt.size);
            report["ratio"] = json!(ds.size() as f64 / opt.size.max(1) as f64);
            let within = ds.size() <= c * opt.size;
            report["within_bound"] = json!(within);
            if !within {
                code = EXIT_VERIFY;
            }
        } else {
            report["opt"] = Value::Null;
        }
    }
    match connected {
        Some(Connect::Wreach) => {
            let res = connect_via_wreach(g, &order, &ds.dominators, r, &wreach(g, &order, 2 * r + 1))?;
            if res.check(g).is_err() {
                code = EXIT_VERIFY;
            }
            report["connected"] = serde_json::to_value(res.to_json(g, "wreach", None))?;
        }
        Some(Connect::Minor) => {
            let mc = connect_via_minor(g, &ds.dominators, r)?;
            if mc.result.check(g).is_err() {
                code = EXIT_VERIFY;
            }
            if let Some(path) = dot {
                fs::write(path, partition_dot(g, &mc.partition, &mc.result.connected))?;
            }
            report["connected"] = serde_json::to_value(mc.result.to_json(g, "minor", Some((&mc.partition, &mc.minor))))?;
        }
        None => {}
    }
    emit(out, &report)?;
    Ok(code)
}

struct SimCmd {
    r: usize,
    protocol: ProtocolName,
    model: SimModel,
    order: String,
    order_source: OrderMode,
    order_rounds: usize,
    opts: RunOptions,
}

fn by_id<T: serde::Serialize>(g: &Graph, f: impl Fn(usize) -> T) -> Value {
    let map: BTreeMap<String, Value> = g
        .vertices()
        .map(|v| (g.id(v).to_string(), serde_json::to_value(f(v)).expect("serializable")))
        .collect();
    json!(map)
}

fn run_summary<T>(run: &ProtocolRun<T>) -> Value {
    json!({
        "order_rounds": run.order_rounds,
        "protocol_rounds": run.trace.total_rounds(),
        "rounds": run.total_rounds(),
        "max_bits": run.max_message_bits(),
        "total_bits": run.trace.total_bits(),
        "messages": run.trace.total_messages(),
    })
}

fn simulate_cmd(g: &Graph, cmd: &SimCmd, trace_path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let r = cmd.r;
    let (order, order_name) = read_order(g, &cmd.order, r)?;
    let source = match cmd.order_source {
        OrderMode::Injected => OrderSource::Injected {
            order: order.clone(),
            modeled_rounds: cmd.order_rounds,
        },
        OrderMode::Peeling => OrderSource::Peeling,
    };
    let mut report = json!({
        "protocol": format!("{:?}", cmd.protocol).to_lowercase(),
        "model": cmd.model.kind.name(),
        "r": r,
        "n": g.n(),
        "cap_bits": cmd.model.cap_bits(g.n()),
        "order": match cmd.order_source { OrderMode::Injected => order_name, OrderMode::Peeling => "peeling".into() },
    });
    let trace: RoundTrace;
    let matches: bool;
    match cmd.protocol {
        ProtocolName::Wreach => {
            let run = protocol_wreach_dist(g, r, &source, cmd.model, &cmd.opts)?;
            matches = run.output == wreach(g, &run.order, 2 * r);
            report["summary"] = run_summary(&run);
            report["outputs"] = serde_json::to_value(run.output.to_json(g))?["entries"].take();
            trace = run.trace;
        }
        ProtocolName::Domset => {
            let run = protocol_domset(g, r, &source, cmd.model, &cmd.opts)?;
            let seq = domset_with_certificate(g, &run.order, r, 0);
            matches = run.output.dominators == seq.dominators && run.output.witness == seq.witness;
            report["summary"] = run_summary(&run);
            report["D"] = json!(g.ids_of(&run.output.dominators));
            let out = &run.output;
            report["outputs"] = by_id(g, |v| {
                json!({ "in_D": out.witness[v] == v, "dominator": g.id(out.witness[v]) })
            });
            trace = run.trace;
        }
        ProtocolName::CdsCongest => {
            let run = protocol_connected_domset_congest(g, r, &source, cmd.model, &cmd.opts)?;
            let d = domset_with_certificate(g, &run.order, r, 0).dominators;
            let seq = connect_via_wreach(g, &run.order, &d, r, &wreach(g, &run.order, 2 * r + 1))?;
            matches = run.output.connected == seq.connected;
            let c1 = wreach(g, &run.order, 2 * r + 1).max_size();
            report["congestion_bound"] = json!(congestion_bound(c1, r, g.n()));
            report["summary"] = run_summary(&run);
            report["D"] = json!(g.ids_of(&run.output.domset.dominators));
            report["D_prime"] = json!(g.ids_of(&run.output.connected));
            let set = &run.output.connected;
            report["outputs"] = by_id(g, |v| set.binary_search(&v).is_ok());
            trace = run.trace;
        }
        ProtocolName::CdsLocal => {
            let d = domset_with_certificate(g, &order, r, 0).sorted();
            let mut flags = vec![false; g.n()];
            for &v in &d {
                flags[v] = true;
            }
            let run = protocol_connected_domset_local(g, r, &flags, cmd.model, &cmd.opts)?;
            let seq = connect_via_minor(g, &d, r)?;
            matches = run.connected == seq.result.connected;
            report["summary"] = json!({
                "rounds": run.trace.total_rounds(),
                "max_bits": run.trace.max_message_bits(),
                "total_bits": run.trace.total_bits(),
                "messages": run.trace.total_messages(),
            });
            report["D"] = json!(g.ids_of(&d));
            report["D_prime"] = json!(g.ids_of(&run.connected));
            let set = &run.connected;
            report["outputs"] = by_id(g, |v| set.binary_search(&v).is_ok());
            trace = run.trace;
        }
    }
    report["matches_sequential"] = json!(matches);
    if let Some(path) = trace_path {
        fs::write(path, trace.to_jsonl())?;
    }
    emit(out, &report)?;
    Ok(if matches { EXIT_OK } else { EXIT_VERIFY })
}
