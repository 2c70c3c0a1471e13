//! Turns command-line specs (names, expressions, file paths) into core objects.

use std::path::Path;

use anyhow::{bail, Context, Result};
use zeroerr_core::confusion::{builtin_instance, BuiltinInstance, FunctionInstance, InstanceJson};
use zeroerr_core::graph::{directed_line_graph, named_graph, DirectedGraph, Graph, GraphJson, NamedGraph};
use zeroerr_core::representation::{builtin_representation, tensor_power, BuiltinRep, OrthRep, RepJson};

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text).map_err(zeroerr_core::Error::from)?)
}

fn is_file(spec: &str) -> bool {
    spec.ends_with(".json") || Path::new(spec).is_file()
}

pub fn graph(spec: &str) -> Result<Graph> {
    let s = spec.trim();
    if is_file(s) {
        let json: GraphJson = read_json(Path::new(s))?;
        return Ok(Graph::from_json(&json)?);
    }
    let lower = s.to_ascii_lowercase();
    if let Some(inner) = lower.strip_prefix("complement(").and_then(|r| r.strip_suffix(')')) {
        return Ok(graph(inner)?.complement());
    }
    if lower == "ldg13" {
        let g13 = named_graph(NamedGraph::G13)?;
        return Ok(directed_line_graph(&DirectedGraph::bidirected(&g13))?);
    }
    Ok(named_graph(lower.parse::<NamedGraph>()?)?)
}

pub fn instance(spec: &str) -> Result<FunctionInstance> {
    let s = spec.trim();
    if is_file(s) {
        let json: InstanceJson = read_json(Path::new(s))?;
        return Ok(FunctionInstance::from_json(&json)?);
    }
    Ok(builtin_instance(s.parse::<BuiltinInstance>()?)?)
}

/// Builtin name, `name^k` (k-th tensor power), or a representation JSON file.
/// With `target`, the result is moved onto that graph and must be valid there.
pub fn rep(spec: &str, target: Option<&Graph>) -> Result<OrthRep> {
    let s = spec.trim();
    if is_file(s) {
        let json: RepJson = read_json(Path::new(s))?;
        let Some(t) = target else {
            bail!(zeroerr_core::Error::InvalidInput(
                "a representation file needs --graph to name its target".into()
            ));
        };
        return Ok(OrthRep::from_json_on(&json, t)?);
    }
    let (name, k) = match s.split_once('^') {
        Some((name, k)) => (
            name,
            k.parse::<usize>()
                .map_err(|_| zeroerr_core::Error::InvalidInput(format!("bad tensor power in `{s}`")))?,
        ),
        None => (s, 1),
    };
    let base = builtin_representation(name.parse::<BuiltinRep>()?)?;
    let r = tensor_power(&base, k)?;
    Ok(match target {
        Some(t) => r.transport(t)?,
        None => r,
    })
}
