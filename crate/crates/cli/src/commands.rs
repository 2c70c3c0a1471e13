use std::fmt;
use std::fs;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::json;
use zeroerr_core::confusion::{
    build_confusion_graph, build_m_instance_graph, classify_nonedges, construct_or_instance, construct_strong_instance,
    predict_product_collapse,
};
use zeroerr_core::graph::{directed_line_graph, or_product, power, strong_product, DirectedGraph, Graph, ProductKind};
use zeroerr_core::invariants::clique::max_clique_with_budget;
use zeroerr_core::invariants::{
    chromatic_bracket, edge_chromatic_directed, fractional_chromatic_with_budget, invariant_report, lovasz_theta,
    verify_g13_structure, xi_bounds_with_budget,
};
use zeroerr_core::protocol::{run_protocol, sample_measurements};
use zeroerr_core::rates::{advantage_report, casebook, table1, CaseName, RateCase, RateOptions};
use zeroerr_core::representation::{coloring_to_representation, tensor_representation, verify_representation};
use zeroerr_core::{Budget, Error};

use crate::args::*;
use crate::resolve;

/// A check ran to completion and failed (exit code 4).
#[derive(Debug)]
pub struct Failed(pub String);

impl fmt::Display for Failed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

struct Out {
    path: Option<std::path::PathBuf>,
}

impl Out {
    fn text(&self, s: &str) -> Result<()> {
        let mut s = s.to_string();
        if !s.ends_with('\n') {
            s.push('\n');
        }
        match &self.path {
            Some(p) => fs::write(p, s)?,
            None => print!("{s}"),
        }
        Ok(())
    }

    fn json<T: Serialize>(&self, v: &T) -> Result<()> {
        self.text(&serde_json::to_string_pretty(v)?)
    }

    fn graph(&self, g: &Graph, format: Format, name: &str) -> Result<()> {
        match format {
            Format::Json => self.json(&g.to_json()),
            Format::Dot => self.text(&g.to_dot(name)),
        }
    }
}

fn kind(k: Kind) -> ProductKind {
    match k {
        Kind::Strong => ProductKind::Strong,
        Kind::Or => ProductKind::Or,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let out = Out { path: cli.output };
    match cli.command {
        Command::Graph(c) => graph_cmd(&out, c),
        Command::Instance(c) => instance_cmd(&out, c),
        Command::Confusion(c) => confusion_cmd(&out, c),
        Command::Invariant(c) => invariant_cmd(&out, c),
        Command::Rep(c) => rep_cmd(&out, c),
        Command::Protocol(c) => protocol_cmd(&out, c),
        Command::Rates(c) => rates_cmd(&out, c),
        Command::Verify(VerifyCmd::G13Structure) => {
            let rows = verify_g13_structure()?;
            let mut s = String::from("u v w | ū v̄ w̄ | N(u,v,w) | N(ū,v̄,w̄)\n");
            for r in &rows {
                let set = |v: &[String]| {
                    if v.is_empty() {
                        "∅".to_string()
                    } else {
                        format!("{{{}}}", v.join(","))
                    }
                };
                s.push_str(&format!(
                    "{} | {} | {} | {}\n",
                    r.triple.join(" "),
                    r.opposite.join(" "),
                    set(&r.common),
                    set(&r.opposite_common)
                ));
            }
            s.push_str("all 4 rows match");
            out.text(&s)
        }
    }
}

fn graph_cmd(out: &Out, c: GraphCmd) -> Result<()> {
    match c {
        GraphCmd::Build { graph, out: o } => out.graph(&resolve::graph(&graph)?, o.format, "G"),
        GraphCmd::Product {
            left,
            right,
            kind: k,
            out: o,
        } => {
            let (a, b) = (resolve::graph(&left)?, resolve::graph(&right)?);
            let g = match k {
                Kind::Strong => strong_product(&a, &b)?,
                Kind::Or => or_product(&a, &b)?,
            };
            out.graph(&g, o.format, "product")
        }
        GraphCmd::Power {
            graph,
            m,
            kind: k,
            out: o,
        } => out.graph(&power(&resolve::graph(&graph)?, m, kind(k))?, o.format, "power"),
        GraphCmd::Complement { graph, out: o } => {
            out.graph(&resolve::graph(&graph)?.complement(), o.format, "complement")
        }
        GraphCmd::Linegraph { graph, out: o } => {
            let d = DirectedGraph::bidirected(&resolve::graph(&graph)?);
            out.graph(&directed_line_graph(&d)?, o.format, "line_graph")
        }
    }
}

fn instance_cmd(out: &Out, c: InstanceCmd) -> Result<()> {
    let f = match c {
        InstanceCmd::Build { input } => resolve::instance(&input.to_string_lossy())?,
        InstanceCmd::Builtin { name } => resolve::instance(&name)?,
        InstanceCmd::FromGraph { graph, kind: k } => {
            let g = resolve::graph(&graph)?;
            match k {
                Kind::Strong => construct_strong_instance(&g)?,
                Kind::Or => construct_or_instance(&g)?,
            }
        }
    };
    out.json(&f.to_json())
}

fn confusion_cmd(out: &Out, c: ConfusionCmd) -> Result<()> {
    match c {
        ConfusionCmd::Single { instance, out: o } => out.graph(
            &build_confusion_graph(&resolve::instance(&instance)?)?,
            o.format,
            "confusion",
        ),
        ConfusionCmd::Power { instance, m, out: o } => out.graph(
            &build_m_instance_graph(&resolve::instance(&instance)?, m)?,
            o.format,
            "confusion",
        ),
        ConfusionCmd::Classify { instance } => {
            let f = resolve::instance(&instance)?;
            let cls = classify_nonedges(&f);
            let rows: Vec<_> = cls
                .entries
                .iter()
                .map(|&(a, b, cause)| json!({"x": f.x_labels()[a], "x_prime": f.x_labels()[b], "cause": cause}))
                .collect();
            out.json(&rows)
        }
        ConfusionCmd::Predict { instance } => {
            out.text(&predict_product_collapse(&resolve::instance(&instance)?)?.to_string())
        }
    }
}

fn interval<T: fmt::Display>(lo: T, hi: T) -> String {
    format!("[{lo}, {hi}]")
}

fn invariant_cmd(out: &Out, c: InvariantCmd) -> Result<()> {
    match c {
        InvariantCmd::Alpha(a) => clique_like(out, &a, true),
        InvariantCmd::Omega(a) => clique_like(out, &a, false),
        InvariantCmd::Chi(a) => {
            let g = resolve::graph(&a.graph)?;
            let b = chromatic_bracket(&g, &Budget::seconds(a.budget_seconds));
            if a.json {
                out.json(&json!({"lower": b.lower, "upper": b.upper, "exact": b.exact, "coloring": b.coloring}))?;
            } else if b.exact {
                out.text(&b.upper.to_string())?;
            } else {
                out.text(&interval(b.lower, b.upper))?;
            }
            if !b.exact {
                bail!(Error::Timeout {
                    lower: b.lower as f64,
                    upper: b.upper as f64
                });
            }
            Ok(())
        }
        InvariantCmd::Chif(a) => {
            let g = resolve::graph(&a.graph)?;
            match fractional_chromatic_with_budget(&g, &Budget::seconds(a.budget_seconds)) {
                Ok(fc) if a.json => out.json(&json!({
                    "value": fc.value,
                    "sets": fc.sets.iter().map(|(s, w)| json!({"set": s, "weight": w})).collect::<Vec<_>>(),
                    "dual": fc.dual,
                })),
                Ok(fc) => out.text(&fc.value.to_string()),
                Err(Error::Timeout { lower, upper }) => {
                    out.text(&interval(format!("{lower:.9}"), format!("{upper:.9}")))?;
                    bail!(Error::Timeout { lower, upper })
                }
                Err(e) => Err(e.into()),
            }
        }
        InvariantCmd::Theta(a) => {
            let t = lovasz_theta(&resolve::graph(&a.graph)?)?;
            if a.json {
                out.json(&json!({"lower": t.lower, "upper": t.upper, "gap": t.gap(), "iterations": t.iterations}))
            } else {
                out.text(&interval(format!("{:.9}", t.lower), format!("{:.9}", t.upper)))
            }
        }
        InvariantCmd::Xi { args: a, rep } => {
            let g = resolve::graph(&a.graph)?;
            let cert = rep.map(|r| resolve::rep(&r, Some(&g))).transpose()?;
            let b = xi_bounds_with_budget(&g, cert.as_ref(), &Budget::seconds(a.budget_seconds))?;
            if a.json {
                out.json(&b)
            } else {
                out.text(&interval(b.lower, b.upper))
            }
        }
        InvariantCmd::Edgechrom(a) => {
            let g = resolve::graph(&a.graph)?;
            let v = edge_chromatic_directed(&DirectedGraph::bidirected(&g))?;
            out.text(&v.to_string())
        }
        InvariantCmd::Report {
            args: a,
            rep,
            certificates,
        } => {
            let g = resolve::graph(&a.graph)?;
            let cert = rep.map(|r| resolve::rep(&r, Some(&g))).transpose()?;
            let r = invariant_report(&g, cert.as_ref(), &Budget::seconds(a.budget_seconds), certificates)?;
            out.json(&r)
        }
    }
}

fn clique_like(out: &Out, a: &InvariantArgs, independent: bool) -> Result<()> {
    let g = resolve::graph(&a.graph)?;
    let h = if independent { g.complement() } else { g };
    let r = max_clique_with_budget(&h, &Budget::seconds(a.budget_seconds));
    if a.json {
        out.json(&json!({"value": r.size(), "exact": r.optimal, "vertices": r.vertices}))?;
    } else if r.optimal {
        out.text(&r.size().to_string())?;
    } else {
        out.text(&interval(r.size().to_string(), "?".to_string()))?;
    }
    if !r.optimal {
        bail!(Error::Timeout {
            lower: r.size() as f64,
            upper: h.n() as f64
        });
    }
    Ok(())
}

fn rep_cmd(out: &Out, c: RepCmd) -> Result<()> {
    match c {
        RepCmd::Builtin { name } => out.json(&resolve::rep(&name, None)?.to_json()),
        RepCmd::Verify { rep, graph } => {
            let g = graph.map(|g| resolve::graph(&g)).transpose()?;
            let r = match resolve::rep(&rep, None) {
                Ok(r) => r,
                Err(_) if g.is_some() => {
                    // files are loaded onto the given graph without the validity gate
                    let json: zeroerr_core::representation::RepJson =
                        serde_json::from_str(&fs::read_to_string(&rep)?).map_err(Error::from)?;
                    return verify_file(out, &json, g.as_ref().unwrap());
                }
                Err(e) => return Err(e),
            };
            let r = match &g {
                Some(g) => match r.transport(g) {
                    Ok(r) => r,
                    Err(e) => {
                        out.text("invalid")?;
                        bail!(Failed(e.to_string()));
                    }
                },
                None => r,
            };
            report_validity(out, verify_representation(&r), r.dim())
        }
        RepCmd::Tensor { left, right } => {
            let t = tensor_representation(&resolve::rep(&left, None)?, &resolve::rep(&right, None)?)?;
            out.json(&t.to_json())
        }
        RepCmd::FromColoring { graph, coloring } => {
            let g = resolve::graph(&graph)?;
            let colors = coloring
                .split(',')
                .map(|c| c.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidInput("coloring must be comma-separated integers".into()))?;
            out.json(&coloring_to_representation(&g, &colors)?.to_json())
        }
    }
}

fn verify_file(out: &Out, json: &zeroerr_core::representation::RepJson, g: &Graph) -> Result<()> {
    match zeroerr_core::representation::OrthRep::from_json_on(json, g) {
        Ok(r) => report_validity(out, true, r.dim()),
        Err(Error::InvalidCertificate(msg)) => {
            out.text("invalid")?;
            bail!(Failed(msg))
        }
        Err(e) => Err(e.into()),
    }
}

fn report_validity(out: &Out, valid: bool, dim: usize) -> Result<()> {
    if valid {
        out.text(&format!("valid (dim {dim})"))
    } else {
        out.text("invalid")?;
        bail!(Failed("representation violates orthogonality".into()))
    }
}

fn protocol_cmd(out: &Out, c: ProtocolCmd) -> Result<()> {
    let ProtocolCmd::Verify {
        builtin,
        instance,
        m,
        rep,
        transcript,
        sample_x,
        sample_y,
        shots,
        seed,
    } = c;
    let spec = match (builtin, instance) {
        (Some(s), None) | (None, Some(s)) => s,
        _ => bail!(Error::InvalidInput(
            "give exactly one of --builtin or --instance".into()
        )),
    };
    let f = resolve::instance(&spec)?;
    let target = build_m_instance_graph(&f, m)?.complement();
    let r = match resolve::rep(&rep, None) {
        Ok(r) => r,
        Err(_) => resolve::rep(&rep, Some(&target))?,
    };
    let t = run_protocol(&f, m, &r)?;
    if let (Some(x), Some(y)) = (sample_x, sample_y) {
        let ys = y
            .split(',')
            .map(|l| {
                f.y_index(l.trim())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown side information `{l}`")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let counts = sample_measurements(&f, m, &r, &x, &ys, shots, seed)?;
        out.json(&json!({"x": x, "y": y, "shots": shots, "seed": seed, "counts": counts}))?;
    } else if transcript {
        out.json(&t)?;
    } else {
        let mut s = format!(
            "m = {m}, dim = {}, rate = {:.9} bits/instance\nrounds checked: {}\nverified: {}",
            t.dim,
            t.rate_bits_per_instance,
            t.rounds.len(),
            t.verified
        );
        for v in t.violations.iter().take(5) {
            s.push_str(&format!("\nviolation: y = {}, x = {}, x' = {}", v.y, v.x, v.x_prime));
        }
        out.text(&s)?;
    }
    if let Some(v) = t.violations.first() {
        bail!(Error::VerificationFailure {
            y: v.y.clone(),
            x: v.x.clone(),
            x_prime: v.x_prime.clone()
        });
    }
    Ok(())
}

fn rates_cmd(out: &Out, c: RatesCmd) -> Result<()> {
    let opts = |r: &RateArgs| RateOptions {
        m_max: r.m_max,
        budget_seconds: r.budget_seconds,
    };
    match c {
        RatesCmd::Report { instance, rep, rate } => {
            let f = resolve::instance(&instance)?;
            let cert = match rep {
                Some(r) => {
                    let comp = build_confusion_graph(&f)?.complement();
                    Some(resolve::rep(&r, Some(&comp))?)
                }
                None => None,
            };
            let case = RateCase::from_instance(instance, f, cert)?;
            out.json(&advantage_report(&case, &opts(&rate))?)
        }
        RatesCmd::Casebook { case, rate } => {
            let name: CaseName = case.parse()?;
            out.json(&casebook(name, &opts(&rate))?)
        }
        RatesCmd::Table1 { rate } => out.text(&table1(&opts(&rate))?),
    }
}
