//! Labeled simple graphs, directed graphs and the product constructions used
//! by the confusion-graph machinery.
//!
//! Product vertices are laid out row-major on the factor indices (left factor
//! outer) and carry the tuple label `(label_G, label_H)`. Because every
//! construction in this crate builds vertices in the same order with the same
//! labels, graph equality throughout is labeled edge-set equality, never
//! isomorphism.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Largest vertex count any construction may produce.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom(String),
    Tuple(Vec<Label>),
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Self {
        Label::Atom(s.into())
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Label::Tuple(vec![a, b])
    }

    /// Components of a tuple label, or the label itself for an atom.
    pub fn components(&self) -> Vec<Label> {
        match self {
            Label::Atom(_) => vec![self.clone()],
            Label::Tuple(items) => items.clone(),
        }
    }

    /// Splices nested tuples one level deep: `(a,(b,c))` becomes `(a,b,c)`.
    pub fn flatten(&self) -> Label {
        match self {
            Label::Atom(_) => self.clone(),
            Label::Tuple(items) => Label::Tuple(items.iter().flat_map(|l| l.components()).collect()),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Tuple(items) => {
                f.write_str("(")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Atom(s.to_string())
    }
}

/// Undirected simple graph with bitset adjacency rows.
#[derive(Clone)]
pub struct Graph {
    labels: Vec<Label>,
    adj: Vec<BitSet>,
    index: HashMap<Label, usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on the given labels.
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::SizeExceeded {
                what: "graph".into(),
                size: labels.len() as u128,
                limit: MAX_VERTICES,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            adj: vec![BitSet::new(n); n],
            index,
        })
    }

    pub fn from_atoms<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Graph::new(names.iter().map(|s| Label::atom(s.as_ref())).collect())
    }

    pub fn from_edges(labels: Vec<Label>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(labels)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Vertices labeled `"1"..="n"`.
    pub fn numbered(n: usize) -> Result<Self> {
        Graph::new((1..=n).map(|i| Label::Atom(i.to_string())).collect())
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(Error::invalid(format!("edge ({i},{j}) out of range for {n} vertices")));
        }
        if i == j {
            return Err(Error::invalid(format!("self-loop at `{}`", self.labels[i])));
        }
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn index_of_str(&self, label: &str) -> Option<usize> {
        self.index_of(&Label::atom(label))
            .or_else(|| self.labels.iter().position(|l| l.to_string() == label))
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n() {
            out.extend(self.adj[i].iter().filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        n < 2 || self.edge_count() == n * (n - 1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(BitSet::is_empty)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|i| {
                let mut row = self.adj[i].complement();
                row.remove(i);
                row
            })
            .collect();
        Graph {
            labels: self.labels.clone(),
            adj,
            index: self.index.clone(),
        }
    }

    pub(crate) fn from_rows(labels: Vec<Label>, adj: Vec<BitSet>) -> Result<Self> {
        let mut g = Graph::new(labels)?;
        debug_assert_eq!(adj.len(), g.n());
        g.adj = adj;
        Ok(g)
    }

    pub fn relabel(&self, f: impl Fn(&Label) -> Label) -> Result<Graph> {
        Graph::from_rows(self.labels.iter().map(f).collect(), self.adj.clone())
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let mut g = Graph::new(labels)?;
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }

    /// Edge set as unordered pairs of rendered labels (smaller string first).
    pub fn labeled_edge_set(&self) -> BTreeSet<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (self.labels[i].to_string(), self.labels[j].to_string());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    fn label_set(&self) -> BTreeSet<&Label> {
        self.labels.iter().collect()
    }

    /// Same vertex labels and same labeled edge set, regardless of vertex order.
    pub fn same_labeled_edges(&self, other: &Graph) -> bool {
        self.n() == other.n()
            && self.label_set() == other.label_set()
            && self.is_spanning_subgraph_of(other)
            && other.is_spanning_subgraph_of(self)
    }

    /// `self ⊆ other` on a shared labeled vertex set.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let map: Option<Vec<usize>> = self.labels.iter().map(|l| other.index_of(l)).collect();
        let Some(map) = map else { return false };
        self.edges().into_iter().all(|(i, j)| other.adjacent(map[i], map[j]))
    }

    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n() && self.edges().iter().all(|&(i, j)| colors[i] != colors[j])
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            labels: self.labels.iter().map(Label::to_string).collect(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        if json.labels.len() != json.n {
            return Err(Error::invalid(format!(
                "graph JSON declares n = {} but lists {} labels",
                json.n,
                json.labels.len()
            )));
        }
        let labels = json.labels.iter().map(|s| Label::atom(s.as_str())).collect();
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(labels, &edges)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {} {{\n", dot_id(name));
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  {i} [label={}];\n", dot_id(&l.to_string())));
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// `{n, labels, edges}` with `edges` as sorted `[i, j]`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub labels: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

/// Directed simple graph; antiparallel arcs allowed, loops not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    labels: Vec<Label>,
    arcs: BTreeSet<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(labels: Vec<Label>, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let unique: BTreeSet<&Label> = labels.iter().collect();
        if unique.len() != labels.len() {
            return Err(Error::invalid("duplicate labels in directed graph"));
        }
        let n = labels.len();
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("arc ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at `{}`", labels[u])));
            }
            set.insert((u, v));
        }
        Ok(DirectedGraph { labels, arcs: set })
    }

    /// Each undirected edge becomes two opposite arcs.
    pub fn bidirected(g: &Graph) -> Self {
        let arcs = g.edges().into_iter().flat_map(|(i, j)| [(i, j), (j, i)]).collect();
        DirectedGraph {
            labels: g.labels().to_vec(),
            arcs,
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Arcs in lexicographic order of `(tail, head)` indices.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {} {{\n", dot_id(name));
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  {i} [label={}];\n", dot_id(&l.to_string())));
        }
        for &(u, v) in &self.arcs {
            out.push_str(&format!("  {u} -> {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Strong,
    Or,
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "strong" | "and" => Ok(ProductKind::Strong),
            "or" => Ok(ProductKind::Or),
            other => Err(Error::invalid(format!("unknown product kind `{other}`"))),
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Strong => "strong",
            ProductKind::Or => "or",
        })
    }
}

fn guard(what: &str, size: u128) -> Result<usize> {
    if size > MAX_VERTICES as u128 {
        Err(Error::SizeExceeded {
            what: what.to_string(),
            size,
            limit: MAX_VERTICES,
        })
    } else {
        Ok(size as usize)
    }
}

fn product(g: &Graph, h: &Graph, kind: ProductKind) -> Result<Graph> {
    let (ng, nh) = (g.n(), h.n());
    let n = guard("product", ng as u128 * nh as u128)?;
    let mut labels = Vec::with_capacity(n);
    for a in g.labels() {
        for b in h.labels() {
            labels.push(Label::pair(a.clone(), b.clone()));
        }
    }
    let mut adj = vec![BitSet::new(n); n];
    for u in 0..ng {
        for v in 0..nh {
            let row = &mut adj[u * nh + v];
            match kind {
                ProductKind::Strong => {
                    let mut gs = g.neighbors(u).clone();
                    gs.insert(u);
                    let mut hs = h.neighbors(v).clone();
                    hs.insert(v);
                    for u2 in gs.iter() {
                        for v2 in hs.iter() {
                            row.insert(u2 * nh + v2);
                        }
                    }
                    row.remove(u * nh + v);
                }
                ProductKind::Or => {
                    for u2 in g.neighbors(u).iter() {
                        for v2 in 0..nh {
                            row.insert(u2 * nh + v2);
                        }
                    }
                    for u2 in 0..ng {
                        for v2 in h.neighbors(v).iter() {
                            row.insert(u2 * nh + v2);
                        }
                    }
                }
            }
        }
    }
    Graph::from_rows(labels, adj)
}

/// `G ⊠ H`: distinct pairs whose coordinates are each equal-or-adjacent.
pub fn strong_product(g: &Graph, h: &Graph) -> Result<Graph> {
    product(g, h, ProductKind::Strong)
}

/// `G ∨ H`: pairs adjacent in at least one coordinate.
pub fn or_product(g: &Graph, h: &Graph) -> Result<Graph> {
    product(g, h, ProductKind::Or)
}

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

/// m-fold product with flat m-tuple labels in lexicographic order.
///
/// `m = 1` returns the graph itself.
pub fn power(g: &Graph, m: usize, kind: ProductKind) -> Result<Graph> {
    if m == 0 {
        return Err(Error::invalid("power requires m >= 1"));
    }
    let n = g.n();
    let size = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    let total = guard(&format!("{kind} power m={m}"), size)?;
    if m == 1 {
        return Ok(g.clone());
    }
    let tuples = tuples(n, m);
    let labels = tuples
        .iter()
        .map(|t| Label::Tuple(t.iter().map(|&i| g.label(i).clone()).collect()))
        .collect();
    let mut adj = vec![BitSet::new(total); total];
    for a in 0..total {
        for b in (a + 1)..total {
            let (ta, tb) = (&tuples[a], &tuples[b]);
            let adjacent = match kind {
                ProductKind::Strong => ta.iter().zip(tb).all(|(&x, &y)| x == y || g.adjacent(x, y)),
                ProductKind::Or => ta.iter().zip(tb).any(|(&x, &y)| g.adjacent(x, y)),
            };
            if adjacent {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    Graph::from_rows(labels, adj)
}

/// All m-tuples over `0..n` in lexicographic order.
pub(crate) fn tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(m)];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t2 = t.clone();
                    t2.push(i);
                    t2
                })
            })
            .collect();
    }
    out
}

/// One vertex per arc; arcs `(u1,v1)`, `(u2,v2)` are adjacent iff they form a
/// directed walk of length two in either order.
pub fn directed_line_graph(d: &DirectedGraph) -> Result<Graph> {
    let arcs: Vec<(usize, usize)> = d.arcs().collect();
    guard("directed line graph", arcs.len() as u128)?;
    let labels = arcs
        .iter()
        .map(|&(u, v)| Label::pair(d.labels()[u].clone(), d.labels()[v].clone()))
        .collect();
    let mut g = Graph::new(labels)?;
    for a in 0..arcs.len() {
        for b in (a + 1)..arcs.len() {
            let ((u1, v1), (u2, v2)) = (arcs[a], arcs[b]);
            if v1 == u2 || v2 == u1 {
                g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}

/// Integer coordinates of the 13 vertices of G13, in definition order.
pub const G13_VECTORS: [(&str, [i64; 3]); 13] = [
    ("A", [1, 0, 0]),
    ("B", [0, 1, 0]),
    ("C", [0, 0, 1]),
    ("L", [0, 1, 1]),
    ("M", [0, 1, -1]),
    ("N", [1, 0, 1]),
    ("P", [1, 0, -1]),
    ("Q", [1, 1, 0]),
    ("R", [1, -1, 0]),
    ("Y", [1, 1, -1]),
    ("X", [1, -1, 1]),
    ("Z", [-1, 1, 1]),
    ("W", [1, 1, 1]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Pentagon,
    Complete(usize),
    Empty(usize),
    G13,
    H(usize),
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let arg = |prefix: &str| -> Option<Result<usize>> {
            let rest = s.strip_prefix(prefix)?;
            let rest = rest.trim_start_matches(['(', ':']).trim_end_matches(')');
            Some(
                rest.parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad graph size in `{s}`"))),
            )
        };
        match s.as_str() {
            "pentagon" | "c5" => return Ok(NamedGraph::Pentagon),
            "g13" => return Ok(NamedGraph::G13),
            _ => {}
        }
        if let Some(n) = arg("complete") {
            return n.map(NamedGraph::Complete);
        }
        if let Some(n) = arg("empty") {
            return n.map(NamedGraph::Empty);
        }
        if let Some(n) = arg("h") {
            return n.map(NamedGraph::H);
        }
        if let Some(n) = arg("k") {
            return n.map(NamedGraph::Complete);
        }
        Err(Error::invalid(format!("unknown named graph `{s}`")))
    }
}

pub fn named_graph(name: NamedGraph) -> Result<Graph> {
    match name {
        NamedGraph::Pentagon => {
            let edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            let mut g = Graph::numbered(5)?;
            for (i, j) in edges {
                g.add_edge(i, j)?;
            }
            Ok(g)
        }
        NamedGraph::Complete(n) => {
            guard("complete graph", n as u128)?;
            Ok(Graph::numbered(n)?.complement())
        }
        NamedGraph::Empty(n) => {
            guard("empty graph", n as u128)?;
            Graph::numbered(n)
        }
        NamedGraph::G13 => {
            let mut g = Graph::from_atoms(&G13_VECTORS.map(|(l, _)| l))?;
            for (i, (_, u)) in G13_VECTORS.iter().enumerate() {
                for (j, (_, v)) in G13_VECTORS.iter().enumerate().skip(i + 1) {
                    if dot(u, v) == 0 {
                        g.add_edge(i, j)?;
                    }
                }
            }
            Ok(g)
        }
        NamedGraph::H(n) => h_graph(n),
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Sign vectors of `H_n` (even number of `-1` entries) in enumeration order.
pub fn h_vectors(n: usize) -> Result<Vec<Vec<i64>>> {
    if n.is_multiple_of(2) {
        return Err(Error::invalid(format!("h(n) requires odd n, got {n}")));
    }
    guard("h(n)", 1u128.checked_shl(n as u32 - 1).unwrap_or(u128::MAX))?;
    Ok((0u64..(1 << n))
        .filter(|b| b.count_ones() % 2 == 0)
        .map(|b| (0..n).map(|k| if b >> (n - 1 - k) & 1 == 1 { -1 } else { 1 }).collect())
        .collect())
}

fn h_graph(n: usize) -> Result<Graph> {
    let vecs = h_vectors(n)?;
    let labels = vecs
        .iter()
        .map(|v| Label::Atom(v.iter().map(|&c| if c < 0 { '-' } else { '+' }).collect()))
        .collect();
    let mut g = Graph::new(labels)?;
    for i in 0..vecs.len() {
        for j in (i + 1)..vecs.len() {
            if dot(&vecs[i], &vecs[j]) == -1 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}
