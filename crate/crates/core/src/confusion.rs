//! Function-with-side-information instances and their confusion graphs.
//!
//! Only the support mask of `p_XY` enters any graph; probabilities are kept for
//! instance I/O and normalization checks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{tuples, Graph, Label, MAX_VERTICES};

/// Fresh function value used by the OR-product instance constructor.
pub const BOX_PLUS: &str = "BOX_PLUS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionInstance {
    xs: Vec<String>,
    ys: Vec<String>,
    zs: Vec<String>,
    /// `value[x][y]`: index into `zs`, present iff `p_XY(x, y) > 0`.
    value: Vec<Vec<Option<usize>>>,
    prob: Option<Vec<Vec<Option<BigRational>>>>,
}

fn check_unique(kind: &str, items: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for s in items {
        if !seen.insert(s) {
            return Err(Error::invalid(format!("duplicate {kind} label `{s}`")));
        }
    }
    Ok(())
}

impl FunctionInstance {
    /// Validates shape, Assumption 1, and (if given) positivity and normalization
    /// of the probabilities. Tables are indexed `[x][y]`.
    pub fn new(
        xs: Vec<String>,
        ys: Vec<String>,
        zs: Vec<String>,
        value: Vec<Vec<Option<usize>>>,
        prob: Option<Vec<Vec<Option<BigRational>>>>,
    ) -> Result<Self> {
        check_unique("X", &xs)?;
        check_unique("Y", &ys)?;
        check_unique("Z", &zs)?;
        if value.len() != xs.len() || value.iter().any(|col| col.len() != ys.len()) {
            return Err(Error::invalid("value table shape does not match |X| x |Y|"));
        }
        for (x, col) in value.iter().enumerate() {
            if col.iter().flatten().any(|&z| z >= zs.len()) {
                return Err(Error::invalid(format!("value index out of range for x = `{}`", xs[x])));
            }
            if col.iter().all(Option::is_none) {
                return Err(Error::UnsupportedSymbol(xs[x].clone()));
            }
        }
        if let Some(p) = &prob {
            if p.len() != xs.len() || p.iter().any(|col| col.len() != ys.len()) {
                return Err(Error::invalid("probability table shape does not match |X| x |Y|"));
            }
            let mut total = BigRational::zero();
            for x in 0..xs.len() {
                for y in 0..ys.len() {
                    match (&p[x][y], value[x][y]) {
                        (Some(q), Some(_)) => {
                            if !q.is_positive() {
                                return Err(Error::invalid(format!(
                                    "probability at ({}, {}) must be positive",
                                    xs[x], ys[y]
                                )));
                            }
                            total += q;
                        }
                        (None, None) => {}
                        _ => {
                            return Err(Error::invalid(format!(
                                "probability and value disagree on support at ({}, {})",
                                xs[x], ys[y]
                            )))
                        }
                    }
                }
            }
            if !total.is_one() {
                return Err(Error::invalid(format!("probabilities sum to {total}, not 1")));
            }
        }
        Ok(FunctionInstance {
            xs,
            ys,
            zs,
            value,
            prob,
        })
    }

    /// Builds an instance from a closure giving `Some(z)` on the support.
    pub fn from_fn(
        xs: Vec<String>,
        ys: Vec<String>,
        zs: Vec<String>,
        f: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let value = (0..xs.len())
            .map(|x| (0..ys.len()).map(|y| f(x, y)).collect())
            .collect();
        FunctionInstance::new(xs, ys, zs, value, None)
    }

    /// Attaches the uniform distribution over the support.
    pub fn with_uniform_probabilities(mut self) -> Self {
        let cells = self.value.iter().flatten().filter(|v| v.is_some()).count();
        let q = BigRational::new(BigInt::one(), BigInt::from(cells));
        self.prob = Some(
            self.value
                .iter()
                .map(|col| col.iter().map(|v| v.map(|_| q.clone())).collect())
                .collect(),
        );
        self
    }

    /// Replaces the probabilities (support must match).
    pub fn with_probabilities(self, prob: Vec<Vec<Option<BigRational>>>) -> Result<Self> {
        FunctionInstance::new(self.xs, self.ys, self.zs, self.value, Some(prob))
    }

    pub fn x_labels(&self) -> &[String] {
        &self.xs
    }

    pub fn y_labels(&self) -> &[String] {
        &self.ys
    }

    pub fn z_labels(&self) -> &[String] {
        &self.zs
    }

    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn ny(&self) -> usize {
        self.ys.len()
    }

    pub fn support(&self, x: usize, y: usize) -> bool {
        self.value[x][y].is_some()
    }

    pub fn value(&self, x: usize, y: usize) -> Option<usize> {
        self.value[x][y]
    }

    pub fn probability(&self, x: usize, y: usize) -> Option<&BigRational> {
        self.prob.as_ref().and_then(|p| p[x][y].as_ref())
    }

    pub fn has_probabilities(&self) -> bool {
        self.prob.is_some()
    }

    pub fn x_index(&self, label: &str) -> Option<usize> {
        self.xs.iter().position(|s| s == label)
    }

    pub fn y_index(&self, label: &str) -> Option<usize> {
        self.ys.iter().position(|s| s == label)
    }

    /// Componentwise `f^(m)`; `None` unless every coordinate is supported.
    pub fn evaluate(&self, xs: &[usize], ys: &[usize]) -> Option<Vec<usize>> {
        xs.iter().zip(ys).map(|(&x, &y)| self.value[x][y]).collect()
    }

    /// Per pair `(x, x')`: whether some `y` supports both (`compatible`) and
    /// whether some such `y` separates their values (`distinguishing`).
    pub fn pair_relations(&self) -> PairRelations {
        let n = self.nx();
        let mut compatible = vec![BitSet::new(n); n];
        let mut distinguishing = vec![BitSet::new(n); n];
        for a in 0..n {
            for b in 0..n {
                for y in 0..self.ny() {
                    if let (Some(va), Some(vb)) = (self.value[a][y], self.value[b][y]) {
                        compatible[a].insert(b);
                        if va != vb {
                            distinguishing[a].insert(b);
                            break;
                        }
                    }
                }
            }
        }
        PairRelations {
            compatible,
            distinguishing,
        }
    }

    pub fn to_json(&self) -> InstanceJson {
        let table = (0..self.ny())
            .map(|y| {
                (0..self.nx())
                    .map(|x| match self.value[x][y] {
                        None => Entry::Star(Star),
                        Some(z) => Entry::Cell {
                            v: self.zs[z].clone(),
                            p: self.probability(x, y).map(format_rational),
                        },
                    })
                    .collect()
            })
            .collect();
        InstanceJson {
            x: self.xs.clone(),
            y: self.ys.clone(),
            z: self.zs.clone(),
            table,
        }
    }

    pub fn from_json(json: &InstanceJson) -> Result<Self> {
        if json.table.len() != json.y.len() {
            return Err(Error::invalid(format!(
                "table has {} rows but |Y| = {}",
                json.table.len(),
                json.y.len()
            )));
        }
        let (nx, ny) = (json.x.len(), json.y.len());
        let mut value = vec![vec![None; ny]; nx];
        let mut prob = vec![vec![None; ny]; nx];
        let (mut with_p, mut without_p) = (0usize, 0usize);
        for (y, row) in json.table.iter().enumerate() {
            if row.len() != nx {
                return Err(Error::invalid(format!(
                    "row for y = `{}` has {} entries, expected {nx}",
                    json.y[y],
                    row.len()
                )));
            }
            for (x, entry) in row.iter().enumerate() {
                if let Entry::Cell { v, p } = entry {
                    let z = json
                        .z
                        .iter()
                        .position(|s| s == v)
                        .ok_or_else(|| Error::invalid(format!("value `{v}` is not in Z")))?;
                    value[x][y] = Some(z);
                    match p {
                        Some(p) => {
                            prob[x][y] = Some(parse_rational(p)?);
                            with_p += 1;
                        }
                        None => without_p += 1,
                    }
                }
            }
        }
        if with_p > 0 && without_p > 0 {
            return Err(Error::invalid("either every supported entry carries `p` or none does"));
        }
        let prob = (with_p > 0).then_some(prob);
        FunctionInstance::new(json.x.clone(), json.y.clone(), json.z.clone(), value, prob)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::invalid(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Clone, Debug)]
pub struct PairRelations {
    pub compatible: Vec<BitSet>,
    pub distinguishing: Vec<BitSet>,
}

/// JSON instance format: rows indexed by `y`, columns by `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceJson {
    #[serde(rename = "X")]
    pub x: Vec<String>,
    #[serde(rename = "Y")]
    pub y: Vec<String>,
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    pub table: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Star(Star),
    Cell {
        v: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<String>,
    },
}

/// The literal `"*"` marking a zero-probability cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Star;

impl Serialize for Star {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str("*")
    }
}

impl<'de> Deserialize<'de> for Star {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "*" {
            Ok(Star)
        } else {
            Err(serde::de::Error::custom(format!("expected \"*\", got {s:?}")))
        }
    }
}

fn x_graph(f: &FunctionInstance) -> Result<Graph> {
    Graph::new(f.xs.iter().map(|s| Label::atom(s.as_str())).collect())
}

/// Single-instance confusion graph on `X`.
pub fn build_confusion_graph(f: &FunctionInstance) -> Result<Graph> {
    let rel = f.pair_relations();
    let mut g = x_graph(f)?;
    for a in 0..f.nx() {
        for b in rel.distinguishing[a].iter().filter(|&b| b > a) {
            g.add_edge(a, b)?;
        }
    }
    Ok(g)
}

fn m_instance_vertices(f: &FunctionInstance, m: usize) -> Result<(Vec<Vec<usize>>, Vec<Label>)> {
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let size = (f.nx() as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if size > MAX_VERTICES as u128 {
        return Err(Error::SizeExceeded {
            what: format!("{m}-instance confusion graph"),
            size,
            limit: MAX_VERTICES,
        });
    }
    let ts = tuples(f.nx(), m);
    let labels = ts
        .iter()
        .map(|t| {
            if m == 1 {
                Label::atom(f.xs[t[0]].as_str())
            } else {
                Label::Tuple(t.iter().map(|&x| Label::atom(f.xs[x].as_str())).collect())
            }
        })
        .collect();
    Ok((ts, labels))
}

fn assemble(labels: Vec<Label>, rows: Vec<Vec<usize>>) -> Result<Graph> {
    let n = labels.len();
    let mut adj = vec![BitSet::new(n); n];
    for (a, row) in rows.into_iter().enumerate() {
        for b in row {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    Graph::from_rows(labels, adj)
}

/// m-instance confusion graph `G^(m)` on `X^m` (lexicographic order).
///
/// A side-information tuple can be chosen coordinate by coordinate, so
/// `(x̄, x̄')` is an edge iff every coordinate pair shares a supported `y` and
/// at least one coordinate pair has a supported `y` separating the values.
pub fn build_m_instance_graph(f: &FunctionInstance, m: usize) -> Result<Graph> {
    let (ts, labels) = m_instance_vertices(f, m)?;
    let rel = f.pair_relations();
    let rows: Vec<Vec<usize>> = (0..ts.len())
        .into_par_iter()
        .map(|a| {
            ((a + 1)..ts.len())
                .filter(|&b| {
                    let (ta, tb) = (&ts[a], &ts[b]);
                    ta.iter().zip(tb).all(|(&x, &x2)| rel.compatible[x].contains(x2))
                        && ta.iter().zip(tb).any(|(&x, &x2)| rel.distinguishing[x].contains(x2))
                })
                .collect()
        })
        .collect();
    assemble(labels, rows)
}

/// Same graph as [`build_m_instance_graph`], by literal enumeration of every
/// `ȳ ∈ Y^m` for every vertex pair (with early exit on the first witness).
pub fn build_m_instance_graph_by_enumeration(f: &FunctionInstance, m: usize) -> Result<Graph> {
    let (ts, labels) = m_instance_vertices(f, m)?;
    let ys = tuples(f.ny(), m);
    let rows: Vec<Vec<usize>> = (0..ts.len())
        .into_par_iter()
        .map(|a| {
            ((a + 1)..ts.len())
                .filter(|&b| {
                    ys.iter().any(|y| match (f.evaluate(&ts[a], y), f.evaluate(&ts[b], y)) {
                        (Some(za), Some(zb)) => za != zb,
                        _ => false,
                    })
                })
                .collect()
        })
        .collect();
    assemble(labels, rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NonEdgeCause {
    /// No `y` supports both symbols.
    C1,
    /// Some `y` supports both, and every such `y` gives equal values.
    C2,
}

impl fmt::Display for NonEdgeCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonEdgeCause::C1 => "C1",
            NonEdgeCause::C2 => "C2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonEdgeClassification {
    /// `(x, x', cause)` with `x < x'` in index order.
    pub entries: Vec<(usize, usize, NonEdgeCause)>,
}

impl NonEdgeClassification {
    pub fn cause(&self, x: usize, x2: usize) -> Option<NonEdgeCause> {
        let (a, b) = (x.min(x2), x.max(x2));
        self.entries
            .iter()
            .find(|&&(p, q, _)| p == a && q == b)
            .map(|&(_, _, c)| c)
    }

    pub fn count(&self, cause: NonEdgeCause) -> usize {
        self.entries.iter().filter(|e| e.2 == cause).count()
    }
}

pub fn classify_nonedges(f: &FunctionInstance) -> NonEdgeClassification {
    let rel = f.pair_relations();
    let mut entries = Vec::new();
    for a in 0..f.nx() {
        for b in (a + 1)..f.nx() {
            if rel.distinguishing[a].contains(b) {
                continue;
            }
            let cause = if rel.compatible[a].contains(b) {
                NonEdgeCause::C2
            } else {
                NonEdgeCause::C1
            };
            entries.push((a, b, cause));
        }
    }
    NonEdgeClassification { entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CollapseVerdict {
    /// `G^(m) = G^⊠m` for all m.
    AllStrong,
    /// `G^(m) = G^∨m` for all m.
    AllOr,
    /// Both C1 and C2 non-edges occur; neither equality holds for all m.
    Between,
    /// Edgeless or complete base graph: all three coincide.
    Trivial,
}

impl fmt::Display for CollapseVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CollapseVerdict::AllStrong => "AllStrong",
            CollapseVerdict::AllOr => "AllOr",
            CollapseVerdict::Between => "Between",
            CollapseVerdict::Trivial => "Trivial",
        })
    }
}

pub fn predict_product_collapse(f: &FunctionInstance) -> Result<CollapseVerdict> {
    let g = build_confusion_graph(f)?;
    if g.is_edgeless() || g.is_complete() {
        return Ok(CollapseVerdict::Trivial);
    }
    let cls = classify_nonedges(f);
    Ok(match (cls.count(NonEdgeCause::C1), cls.count(NonEdgeCause::C2)) {
        (_, 0) => CollapseVerdict::AllStrong,
        (0, _) => CollapseVerdict::AllOr,
        _ => CollapseVerdict::Between,
    })
}

fn vertex_names(g: &Graph) -> Vec<String> {
    g.labels().iter().map(Label::to_string).collect()
}

/// Instance with `Y = E(G)`, support = incidence, `f(x, e) = x`; its
/// m-instance confusion graphs are the strong powers of `G`.
pub fn construct_strong_instance(g: &Graph) -> Result<FunctionInstance> {
    if g.n() == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(g.label(v).to_string()));
    }
    let xs = vertex_names(g);
    let edges = g.edges();
    let ys = edges.iter().map(|&(i, j)| format!("{{{},{}}}", xs[i], xs[j])).collect();
    let zs = xs.clone();
    let f = FunctionInstance::from_fn(xs, ys, zs, |x, e| {
        let (i, j) = edges[e];
        (x == i || x == j).then_some(x)
    })?;
    Ok(f.with_uniform_probabilities())
}

/// Instance with `Y` = all vertex pairs, support = membership, and
/// `g(x, y) = x` on edges, `BOX_PLUS` on non-edges; its m-instance confusion
/// graphs are the OR powers of `G`.
pub fn construct_or_instance(g: &Graph) -> Result<FunctionInstance> {
    if g.n() < 2 {
        return Err(Error::invalid("OR instance needs at least two vertices"));
    }
    let xs = vertex_names(g);
    if xs.iter().any(|s| s == BOX_PLUS) {
        return Err(Error::invalid(format!("vertex label collides with `{BOX_PLUS}`")));
    }
    let pairs: Vec<(usize, usize)> = (0..g.n()).flat_map(|i| ((i + 1)..g.n()).map(move |j| (i, j))).collect();
    let ys = pairs.iter().map(|&(i, j)| format!("{{{},{}}}", xs[i], xs[j])).collect();
    let mut zs = xs.clone();
    zs.push(BOX_PLUS.to_string());
    let boxed = g.n();
    let f = FunctionInstance::from_fn(xs, ys, zs, |x, y| {
        let (i, j) = pairs[y];
        if x != i && x != j {
            None
        } else if g.adjacent(i, j) {
            Some(x)
        } else {
            Some(boxed)
        }
    })?;
    Ok(f.with_uniform_probabilities())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinInstance {
    FTilde,
    GTilde,
    HTilde,
    PentagonEquality,
}

impl FromStr for BuiltinInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f_tilde" => Ok(BuiltinInstance::FTilde),
            "g_tilde" => Ok(BuiltinInstance::GTilde),
            "h_tilde" => Ok(BuiltinInstance::HTilde),
            "pentagon_equality" => Ok(BuiltinInstance::PentagonEquality),
            other => Err(Error::invalid(format!("unknown builtin instance `{other}`"))),
        }
    }
}

/// Rows are `y = 1..5`, columns `x = 1..5`; `*` is zero probability.
const F_TILDE: [&str; 5] = ["10***", "*10**", "**10*", "***10", "0***1"];
const G_TILDE: [&str; 5] = ["101**", "*101*", "**101", "1**10", "01**1"];
const H_TILDE: [&str; 5] = ["101**", "*10**", "**10*", "***10", "0***1"];

fn from_rows(rows: &[&str; 5]) -> Result<FunctionInstance> {
    let names = |n: usize| (1..=n).map(|i| i.to_string()).collect::<Vec<_>>();
    let zs = vec!["0".to_string(), "1".to_string()];
    let f = FunctionInstance::from_fn(names(5), names(5), zs, |x, y| match rows[y].as_bytes()[x] {
        b'0' => Some(0),
        b'1' => Some(1),
        _ => None,
    })?;
    Ok(f.with_uniform_probabilities())
}

pub fn builtin_instance(name: BuiltinInstance) -> Result<FunctionInstance> {
    match name {
        BuiltinInstance::FTilde => from_rows(&F_TILDE),
        BuiltinInstance::GTilde => from_rows(&G_TILDE),
        BuiltinInstance::HTilde => from_rows(&H_TILDE),
        BuiltinInstance::PentagonEquality => {
            // X = Y = {0..4}; p = 1/10 on y = x and y = x+1 mod 5; f = [x == y].
            let names: Vec<String> = (0..5).map(|i| i.to_string()).collect();
            let zs = vec!["0".to_string(), "1".to_string()];
            let f = FunctionInstance::from_fn(names.clone(), names, zs, |x, y| {
                (y == x || y == (x + 1) % 5).then_some(usize::from(x == y))
            })?;
            Ok(f.with_uniform_probabilities())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, power, NamedGraph, ProductKind};

    fn builtin(b: BuiltinInstance) -> FunctionInstance {
        builtin_instance(b).unwrap()
    }

    #[test]
    fn table_transcriptions() {
        let f = builtin(BuiltinInstance::FTilde);
        assert!(f.support(0, 0));
        assert_eq!(f.value(0, 0), Some(1));
        assert!(!f.support(2, 0));
        let g = builtin(BuiltinInstance::GTilde);
        assert_eq!(g.value(2, 0), Some(1));
        assert_eq!(g.value(1, 0), Some(0));
        let h = builtin(BuiltinInstance::HTilde);
        assert_eq!(h.value(2, 0), Some(1));
        for x in 0..5 {
            for y in 0..5 {
                if (x, y) != (2, 0) {
                    assert_eq!(h.value(x, y), f.value(x, y));
                }
            }
        }
        assert_eq!(f.probability(0, 0).map(format_rational).as_deref(), Some("1/10"));
    }

    #[test]
    fn single_instance_graphs_are_pentagons() {
        let c5 = named_graph(NamedGraph::Pentagon).unwrap();
        for b in [
            BuiltinInstance::FTilde,
            BuiltinInstance::GTilde,
            BuiltinInstance::HTilde,
        ] {
            let g = build_confusion_graph(&builtin(b)).unwrap();
            assert!(g.same_labeled_edges(&c5), "{b:?}");
        }
        let eq = build_confusion_graph(&builtin(BuiltinInstance::PentagonEquality)).unwrap();
        let expected: Vec<(usize, usize)> = vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)];
        assert_eq!(eq.edges(), expected);
    }

    #[test]
    fn constant_function_gives_empty_graph() {
        let names: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        let f = FunctionInstance::from_fn(names.clone(), names, vec!["z".into()], |_, _| Some(0)).unwrap();
        assert!(build_confusion_graph(&f).unwrap().is_edgeless());
        assert_eq!(predict_product_collapse(&f).unwrap(), CollapseVerdict::Trivial);
    }

    #[test]
    fn classification_of_builtins() {
        let cf = classify_nonedges(&builtin(BuiltinInstance::FTilde));
        assert_eq!(cf.entries.len(), 5);
        assert_eq!(cf.count(NonEdgeCause::C1), 5);
        let cg = classify_nonedges(&builtin(BuiltinInstance::GTilde));
        assert_eq!(cg.count(NonEdgeCause::C2), 5);
        let ch = classify_nonedges(&builtin(BuiltinInstance::HTilde));
        assert_eq!(ch.cause(0, 2), Some(NonEdgeCause::C2));
        assert_eq!(ch.count(NonEdgeCause::C2), 1);
        assert_eq!(ch.count(NonEdgeCause::C1), 4);
    }

    #[test]
    fn collapse_predictions() {
        assert_eq!(
            predict_product_collapse(&builtin(BuiltinInstance::FTilde)).unwrap(),
            CollapseVerdict::AllStrong
        );
        assert_eq!(
            predict_product_collapse(&builtin(BuiltinInstance::GTilde)).unwrap(),
            CollapseVerdict::AllOr
        );
        assert_eq!(
            predict_product_collapse(&builtin(BuiltinInstance::HTilde)).unwrap(),
            CollapseVerdict::Between
        );
    }

    #[test]
    fn two_instance_graphs() {
        let c5 = named_graph(NamedGraph::Pentagon).unwrap();
        let s2 = power(&c5, 2, ProductKind::Strong).unwrap();
        let o2 = power(&c5, 2, ProductKind::Or).unwrap();
        let f2 = build_m_instance_graph(&builtin(BuiltinInstance::FTilde), 2).unwrap();
        assert!(f2.same_labeled_edges(&s2));
        let g2 = build_m_instance_graph(&builtin(BuiltinInstance::GTilde), 2).unwrap();
        assert!(g2.same_labeled_edges(&o2));
        let h2 = build_m_instance_graph(&builtin(BuiltinInstance::HTilde), 2).unwrap();
        assert!(s2.is_spanning_subgraph_of(&h2) && h2.is_spanning_subgraph_of(&o2));
        // brute-force count from exhaustive enumeration over Y^2
        assert_eq!(h2.edge_count(), 120);
        let brute = build_m_instance_graph_by_enumeration(&builtin(BuiltinInstance::HTilde), 2).unwrap();
        assert_eq!(brute, h2);
    }

    #[test]
    fn constructors() {
        let c5 = named_graph(NamedGraph::Pentagon).unwrap();
        let fs = construct_strong_instance(&c5).unwrap();
        assert!(build_confusion_graph(&fs).unwrap().same_labeled_edges(&c5));
        let go = construct_or_instance(&c5).unwrap();
        assert!(build_confusion_graph(&go).unwrap().same_labeled_edges(&c5));
        assert_eq!(predict_product_collapse(&go).unwrap(), CollapseVerdict::AllOr);

        let k3 = named_graph(NamedGraph::Complete(3)).unwrap();
        let g2 = build_m_instance_graph(&construct_strong_instance(&k3).unwrap(), 2).unwrap();
        assert!(g2.is_complete() && g2.n() == 9);

        let e3 = named_graph(NamedGraph::Empty(3)).unwrap();
        assert!(matches!(construct_strong_instance(&e3), Err(Error::IsolatedVertex(_))));
        let oe = construct_or_instance(&e3).unwrap();
        assert!(build_confusion_graph(&oe).unwrap().is_edgeless());
        assert_eq!(predict_product_collapse(&oe).unwrap(), CollapseVerdict::Trivial);

        let boxed = Graph::from_atoms(&["a", BOX_PLUS]).unwrap();
        assert!(construct_or_instance(&boxed).is_err());
    }

    #[test]
    fn rejects_invalid_instances() {
        let names: Vec<String> = (0..2).map(|i| i.to_string()).collect();
        let r = FunctionInstance::from_fn(names.clone(), names.clone(), vec!["z".into()], |x, _| {
            (x == 0).then_some(0)
        });
        assert!(matches!(r, Err(Error::UnsupportedSymbol(_))));

        let f = FunctionInstance::from_fn(names.clone(), names, vec!["z".into()], |_, _| Some(0)).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let bad = vec![vec![Some(half.clone()); 2]; 2];
        assert!(f.clone().with_probabilities(bad).is_err());
        let quarter = BigRational::new(1.into(), 4.into());
        let good = vec![vec![Some(quarter); 2]; 2];
        assert!(f.with_probabilities(good).is_ok());
    }

    #[test]
    fn json_format() {
        let f = builtin(BuiltinInstance::FTilde);
        let j = serde_json::to_value(f.to_json()).unwrap();
        assert_eq!(j["table"][0][0], serde_json::json!({"v": "1", "p": "1/10"}));
        assert_eq!(j["table"][0][2], serde_json::json!("*"));
        let back: InstanceJson = serde_json::from_value(j).unwrap();
        assert_eq!(FunctionInstance::from_json(&back).unwrap(), f);

        let text = r#"{"X":["a","b"],"Y":["u"],"Z":["0","1"],"table":[[{"v":"0"},{"v":"1"}]]}"#;
        let j: InstanceJson = serde_json::from_str(text).unwrap();
        let g = FunctionInstance::from_json(&j).unwrap();
        assert!(!g.has_probabilities());
        assert_eq!(build_confusion_graph(&g).unwrap().edge_count(), 1);

        let mixed = r#"{"X":["a","b"],"Y":["u"],"Z":["0"],"table":[[{"v":"0","p":"1/2"},{"v":"0"}]]}"#;
        let j: InstanceJson = serde_json::from_str(mixed).unwrap();
        assert!(FunctionInstance::from_json(&j).is_err());
    }
}
