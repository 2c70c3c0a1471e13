//! Directed edge coloring and the G13 common-neighbour table.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{directed_line_graph, named_graph, DirectedGraph, NamedGraph};
use crate::invariants::coloring::chromatic_number;

pub const MAX_ARCS: usize = 256;

/// Fewest colors for the arcs so that no directed 2-walk is monochromatic.
pub fn edge_chromatic_directed(d: &DirectedGraph) -> Result<usize> {
    if d.arc_count() > MAX_ARCS {
        return Err(Error::SizeExceeded {
            what: "directed edge coloring arcs".into(),
            size: d.arc_count() as u128,
            limit: MAX_ARCS,
        });
    }
    chromatic_number(&directed_line_graph(d)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureRow {
    pub triple: [String; 3],
    pub opposite: [String; 3],
    pub common: Vec<String>,
    pub opposite_common: Vec<String>,
}

/// (u, v, w) rows with u ∈ {M,L}, v ∈ {N,P}, w ∈ {Q,R} and the expected
/// common neighbours in {X,Y,Z,W} of the triple and of its opposite.
const EXPECTED: [([&str; 3], &[&str], &[&str]); 4] = [
    (["M", "N", "Q"], &["Z"], &[]),
    (["M", "N", "R"], &[], &["X"]),
    (["M", "P", "Q"], &[], &["Y"]),
    (["M", "P", "R"], &["W"], &[]),
];

fn opposite(v: &str) -> &'static str {
    match v {
        "M" => "L",
        "L" => "M",
        "N" => "P",
        "P" => "N",
        "Q" => "R",
        _ => "Q",
    }
}

/// For every triple, exactly one of the triple and its opposite has a common
/// neighbour among {X,Y,Z,W}; each row must also match the expected sets.
pub fn verify_g13_structure() -> Result<Vec<StructureRow>> {
    let g = named_graph(NamedGraph::G13)?;
    let idx = |l: &str| g.index_of_str(l).expect("G13 vertex");
    let common = |t: &[&str; 3]| -> Vec<String> {
        ["X", "Y", "Z", "W"]
            .into_iter()
            .filter(|c| t.iter().all(|u| g.adjacent(idx(u), idx(c))))
            .map(String::from)
            .collect()
    };
    let mut rows = Vec::new();
    for (t, want, want_opp) in EXPECTED {
        let o = t.map(opposite);
        let row = StructureRow {
            triple: t.map(String::from),
            opposite: o.map(String::from),
            common: common(&t),
            opposite_common: common(&o),
        };
        if row.common.is_empty() == row.opposite_common.is_empty() {
            return Err(Error::StructureViolation(format!(
                "{t:?}: not exactly one side has a common neighbour"
            )));
        }
        if row.common != want || row.opposite_common != want_opp {
            return Err(Error::StructureViolation(format!(
                "{t:?}: found {:?} / {:?}, expected {want:?} / {want_opp:?}",
                row.common, row.opposite_common
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}
