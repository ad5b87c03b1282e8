//! The full invariant battery behind `bedom verify`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::connect::{connect_via_minor, connect_via_wreach};
use crate::cover::{build_cover_from_table, verify_cover, Cover};
use crate::domset::domset_with_certificate;
use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::oracle;
use crate::ordering::{heuristic_wcol_order, wreach, LinearOrder};
use crate::protocols::{
    congestion_bound, protocol_connected_domset_congest, protocol_connected_domset_local, protocol_domset,
    protocol_wreach_dist, OrderSource,
};
use crate::sim::{RunOptions, SimModel};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub r: usize,
    pub n: usize,
    pub m: usize,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Defaults to the degeneracy order.
    pub order: Option<LinearOrder>,
    /// Check this cover instead of building one.
    pub cover: Option<Cover>,
    /// Skip the simulated protocols.
    pub skip_protocols: bool,
}

struct Battery {
    checks: Vec<Check>,
}

impl Battery {
    fn push(&mut self, name: &'static str, pass: bool, detail: Value) {
        self.checks.push(Check { name, pass, detail });
    }

    fn skip(&mut self, name: &'static str, reason: String) {
        self.push(name, true, json!({ "skipped": reason }));
    }
}

fn outcome(res: std::result::Result<(), String>) -> (bool, Value) {
    match res {
        Ok(()) => (true, Value::Null),
        Err(e) => (false, json!({ "error": e })),
    }
}

pub fn verify(g: &Graph, r: usize, opts: &VerifyOptions) -> Result<Report> {
    let mut b = Battery { checks: Vec::new() };
    let order = opts.order.clone().unwrap_or_else(|| heuristic_wcol_order(g, 2 * r));
    let t2r = wreach(g, &order, 2 * r);
    let t2r1 = wreach(g, &order, 2 * r + 1);
    let c = t2r.max_size();

    let (pass, detail) = outcome(t2r.verify_certificates(g, &order));
    b.push("wreach_certificates", pass, detail);

    if g.n() <= oracle::WREACH_LIMIT {
        let brute = oracle::wreach_bruteforce(g, &order, 2 * r)?;
        let witness = g.vertices().find(|&v| brute.entries(v) != t2r.entries(v));
        b.push(
            "wreach_bruteforce",
            witness.is_none(),
            json!({ "mismatch_at": witness.map(|v| g.id(v)) }),
        );
    } else {
        b.skip("wreach_bruteforce", format!("n > {}", oracle::WREACH_LIMIT));
    }

    let cover = match &opts.cover {
        Some(cover) => cover.clone(),
        None => build_cover_from_table(g, &order, r, &t2r),
    };
    let report = verify_cover(g, r, &cover);
    let detail = serde_json::to_value(&report)?;
    b.push("cover_covering", report.covering, detail.clone());
    b.push("cover_radius", report.radius, json!({ "measured_max_radius": report.measured_max_radius }));
    b.push("cover_rsets", report.rsets, json!({ "violations": detail["violations"] }));
    b.push(
        "cover_degree",
        report.degree && report.measured_degree == c,
        json!({ "recorded": cover.degree, "measured": report.measured_degree, "wcol": c }),
    );

    let ds = domset_with_certificate(g, &order, r, c);
    let undominated = g.undominated(&ds.dominators, r);
    b.push(
        "domset_dominating",
        undominated.is_none(),
        json!({ "D_size": ds.size(), "undominated": undominated.map(|v| g.id(v)) }),
    );
    let work_bound = (c + 1) * cover.clusters.iter().map(Vec::len).sum::<usize>();
    b.push(
        "domset_work",
        ds.work <= work_bound,
        json!({ "work": ds.work, "bound": work_bound }),
    );

    if g.n() <= oracle::MIN_DOMSET_LIMIT {
        let opt = oracle::min_domset(g, r)?;
        b.push(
            "approximation_ratio",
            ds.size() <= c * opt.size,
            json!({
                "D_size": ds.size(),
                "opt": opt.size,
                "certificate_c": c,
                "ratio": ds.size() as f64 / opt.size.max(1) as f64,
            }),
        );
    } else {
        b.skip("approximation_ratio", format!("n > {}", oracle::MIN_DOMSET_LIMIT));
    }

    let via_wreach = connect_via_wreach(g, &order, &ds.dominators, r, &t2r1)?;
    let (pass, detail) = outcome(via_wreach.check(g));
    b.push("connected_via_wreach", pass, detail);
    let via_minor = connect_via_minor(g, &ds.dominators, r)?;
    let (pass, detail) = outcome(via_minor.result.check(g));
    b.push("connected_via_minor", pass, detail);

    let part = &via_minor.partition;
    let blocks = part.blocks();
    let sizes: usize = blocks.values().map(Vec::len).sum();
    let partition_ok = sizes == g.n() && part.max_block_radius() <= r && blocks.iter().all(|(&v, blk)| blk.contains(&v));
    b.push(
        "d_partition",
        partition_ok,
        json!({ "blocks": blocks.len(), "max_radius": part.max_block_radius() }),
    );
    let far = via_minor
        .minor
        .edges
        .iter()
        .find(|&&(u, v)| g.distance(u, v).is_none_or(|d| d > 2 * r + 1));
    b.push(
        "minor_edges_close",
        far.is_none(),
        json!({ "minor_edges": via_minor.minor.edges.len(), "density": via_minor.minor.density() }),
    );

    if g.n() <= oracle::MIN_CONNECTED_DOMSET_LIMIT && g.is_connected() {
        let opt = oracle::min_connected_domset(g, r)?;
        let d = ds.size().max(1);
        let mut detail = json!({ "opt": opt.size });
        let mut pass = true;
        for (name, res) in [("wreach", &via_wreach), ("minor", &via_minor.result)] {
            // |D'| ≤ bound = (bound / |D|)·|D| ≤ (bound / |D|)·c·OPT
            let ok = res.size() * d <= res.size_bound * c * opt.size;
            pass &= ok;
            detail[name] = json!({
                "size": res.size(),
                "ratio": res.size() as f64 / opt.size.max(1) as f64,
                "constant": res.size_bound as f64 * c as f64 / d as f64,
            });
        }
        b.push("connected_ratio", pass, detail);
    } else {
        b.skip("connected_ratio", "graph too large or disconnected".into());
    }

    if opts.skip_protocols {
        b.skip("protocols", "disabled".into());
    } else {
        protocol_checks(&mut b, g, r, &order, &ds.dominators, &ds.witness)?;
    }

    let pass = b.checks.iter().all(|c| c.pass);
    Ok(Report {
        r,
        n: g.n(),
        m: g.m(),
        pass,
        checks: b.checks,
    })
}

fn protocol_checks(
    b: &mut Battery,
    g: &Graph,
    r: usize,
    order: &LinearOrder,
    dominators: &[Vertex],
    witness: &[Vertex],
) -> Result<()> {
    let source = OrderSource::injected(order.clone());
    let opts = RunOptions::default();
    let t2r1 = wreach(g, order, 2 * r + 1);
    let c1 = t2r1.max_size();
    let bound = congestion_bound(c1, r, g.n());
    let model = SimModel::congest_bc(bound / crate::sim::id_width(g.n()));

    let run = protocol_wreach_dist(g, r, &source, model, &opts)?;
    b.push(
        "protocol_wreach",
        run.output == wreach(g, order, 2 * r) && run.trace.total_rounds() == 2 * r,
        json!({ "rounds": run.trace.total_rounds(), "max_bits": run.trace.max_message_bits() }),
    );

    let run = protocol_domset(g, r, &source, model, &opts)?;
    b.push(
        "protocol_domset",
        run.output.dominators == dominators && run.output.witness == witness,
        json!({ "rounds": run.trace.total_rounds(), "max_bits": run.trace.max_message_bits() }),
    );

    let run = protocol_connected_domset_congest(g, r, &source, model, &opts)?;
    let seq = connect_via_wreach(g, order, dominators, r, &t2r1)?;
    b.push(
        "protocol_cds_congest",
        run.output.connected == seq.connected,
        json!({
            "rounds": run.trace.total_rounds(),
            "max_bits": run.trace.max_message_bits(),
            "congestion_bound": bound,
        }),
    );

    let flags: Vec<bool> = {
        let mut f = vec![false; g.n()];
        for &v in dominators {
            f[v] = true;
        }
        f
    };
    let run = protocol_connected_domset_local(g, r, &flags, SimModel::local(), &opts)?;
    let seq = connect_via_minor(g, dominators, r)?;
    b.push(
        "protocol_cds_local",
        run.connected == seq.result.connected && run.trace.total_rounds() == 3 * r + 1,
        json!({ "rounds": run.trace.total_rounds() }),
    );
    Ok(())
}
