//! Orthogonal representations: nonzero vectors per vertex with distinct
//! non-adjacent vertices mapped to orthogonal vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{
    complement, directed_line_graph, h_vectors, named_graph, power, strong_product, tuples, DirectedGraph, Graph,
    NamedGraph, ProductKind, G13_VECTORS,
};

pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// Exact vectors are unnormalized integers (every check is scale-invariant);
/// float vectors are complex and unit-norm.
#[derive(Clone, Debug, PartialEq)]
pub enum Vectors {
    Exact(Vec<Vec<i64>>),
    Float(Vec<Vec<Complex64>>),
}

#[derive(Clone, Debug)]
pub struct OrthRep {
    target: Graph,
    dim: usize,
    vectors: Vectors,
}

fn exact_dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn float_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl OrthRep {
    pub fn exact(target: Graph, vectors: Vec<Vec<i64>>) -> Result<Self> {
        let dim = check_shape(&target, vectors.iter().map(Vec::len))?;
        if let Some(i) = vectors.iter().position(|v| v.iter().all(|&c| c == 0)) {
            return Err(Error::InvalidRepresentation(format!(
                "zero vector at `{}`",
                target.label(i)
            )));
        }
        Ok(OrthRep {
            target,
            dim,
            vectors: Vectors::Exact(vectors),
        })
    }

    pub fn float(target: Graph, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = check_shape(&target, vectors.iter().map(Vec::len))?;
        for (i, v) in vectors.iter().enumerate() {
            let norm = float_dot(v, v).re.sqrt();
            if (norm - 1.0).abs() > FLOAT_TOLERANCE {
                return Err(Error::InvalidRepresentation(format!(
                    "vector at `{}` has norm {norm}, expected 1",
                    target.label(i)
                )));
            }
        }
        Ok(OrthRep {
            target,
            dim,
            vectors: Vectors::Float(vectors),
        })
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        match self.vectors {
            Vectors::Exact(_) => Mode::Exact,
            Vectors::Float(_) => Mode::Float,
        }
    }

    pub fn vectors(&self) -> &Vectors {
        &self.vectors
    }

    /// Whether the vectors of vertices `i` and `j` are orthogonal.
    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        match &self.vectors {
            Vectors::Exact(v) => exact_dot(&v[i], &v[j]) == 0,
            Vectors::Float(v) => float_dot(&v[i], &v[j]).norm() <= FLOAT_TOLERANCE,
        }
    }

    /// First distinct non-adjacent pair of the target with non-orthogonal vectors.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        let n = self.target.n();
        (0..n).into_par_iter().find_map_first(|i| {
            ((i + 1)..n)
                .find(|&j| !self.target.adjacent(i, j) && !self.orthogonal(i, j))
                .map(|j| (i, j))
        })
    }

    pub fn is_valid(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Same vectors on another graph with the same vertex labels (matched by
    /// their rendered form). Valid on any supergraph of a graph it represents.
    pub fn transport(&self, target: &Graph) -> Result<OrthRep> {
        if target.n() != self.target.n() {
            return Err(Error::InvalidCertificate(format!(
                "representation has {} vertices, graph has {}",
                self.target.n(),
                target.n()
            )));
        }
        let mut perm = Vec::with_capacity(target.n());
        for l in target.labels() {
            let key = l.to_string();
            let i = self
                .target
                .index_of_str(&key)
                .ok_or_else(|| Error::InvalidCertificate(format!("no vector for vertex `{key}`")))?;
            perm.push(i);
        }
        let vectors = match &self.vectors {
            Vectors::Exact(v) => Vectors::Exact(perm.iter().map(|&i| v[i].clone()).collect()),
            Vectors::Float(v) => Vectors::Float(perm.iter().map(|&i| v[i].clone()).collect()),
        };
        let rep = OrthRep {
            target: target.clone(),
            dim: self.dim,
            vectors,
        };
        if let Some((i, j)) = rep.first_violation() {
            return Err(Error::InvalidCertificate(format!(
                "`{}` and `{}` are non-adjacent but not orthogonal",
                target.label(i),
                target.label(j)
            )));
        }
        Ok(rep)
    }

    pub fn to_json(&self) -> RepJson {
        let mut vectors = BTreeMap::new();
        for i in 0..self.target.n() {
            let coords = match &self.vectors {
                Vectors::Exact(v) => serde_json::json!(v[i]),
                Vectors::Float(v) => serde_json::json!(v[i].iter().map(|c| [c.re, c.im]).collect::<Vec<_>>()),
            };
            vectors.insert(self.target.label(i).to_string(), coords);
        }
        RepJson {
            target_hash: graph_hash(&self.target),
            dim: self.dim,
            mode: self.mode(),
            vectors,
        }
    }

    /// Loads vectors for `target`, checking the hash, shape and validity.
    pub fn from_json(json: &RepJson, target: &Graph) -> Result<Self> {
        if json.target_hash != graph_hash(target) {
            return Err(Error::InvalidCertificate("target hash does not match the graph".into()));
        }
        OrthRep::from_json_on(json, target)
    }

    /// Loads vectors onto any graph with the same vertex labels, ignoring the
    /// recorded hash; the vectors must form a valid representation of `target`.
    pub fn from_json_on(json: &RepJson, target: &Graph) -> Result<Self> {
        let coords = |l: &crate::graph::Label| {
            json.vectors
                .get(&l.to_string())
                .ok_or_else(|| Error::InvalidCertificate(format!("no vector for vertex `{l}`")))
        };
        let rep = match json.mode {
            Mode::Exact => {
                let v = target
                    .labels()
                    .iter()
                    .map(|l| Ok(serde_json::from_value::<Vec<i64>>(coords(l)?.clone())?))
                    .collect::<Result<Vec<_>>>()?;
                OrthRep::exact(target.clone(), v)?
            }
            Mode::Float => {
                let v = target
                    .labels()
                    .iter()
                    .map(|l| {
                        let pairs = serde_json::from_value::<Vec<[f64; 2]>>(coords(l)?.clone())?;
                        Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
                    })
                    .collect::<Result<Vec<_>>>()?;
                OrthRep::float(target.clone(), v)?
            }
        };
        if rep.dim != json.dim {
            return Err(Error::InvalidCertificate(format!(
                "declared dim {} but vectors have {}",
                json.dim, rep.dim
            )));
        }
        if !rep.is_valid() {
            return Err(Error::InvalidCertificate("vectors violate orthogonality".into()));
        }
        Ok(rep)
    }
}

fn check_shape(target: &Graph, lens: impl Iterator<Item = usize>) -> Result<usize> {
    let lens: Vec<usize> = lens.collect();
    if lens.len() != target.n() {
        return Err(Error::InvalidRepresentation(format!(
            "{} vectors for {} vertices",
            lens.len(),
            target.n()
        )));
    }
    let dim = lens.first().copied().unwrap_or(1);
    if dim == 0 || lens.iter().any(|&l| l != dim) {
        return Err(Error::InvalidRepresentation(
            "vectors must share a positive dimension".into(),
        ));
    }
    Ok(dim)
}

/// Hex SHA-256 of the canonical graph JSON (labels and sorted edge list).
pub fn graph_hash(g: &Graph) -> String {
    let json = serde_json::to_string(&g.to_json()).expect("graph JSON serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub target_hash: String,
    pub dim: usize,
    pub mode: Mode,
    pub vectors: BTreeMap<String, serde_json::Value>,
}

pub fn verify_representation(rep: &OrthRep) -> bool {
    rep.is_valid()
}

/// Basis-vector representation of `g` from a proper coloring of its complement;
/// the dimension is the number of distinct colors.
pub fn coloring_to_representation(g: &Graph, coloring: &[usize]) -> Result<OrthRep> {
    if coloring.len() != g.n() {
        return Err(Error::invalid(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            g.n()
        )));
    }
    for i in 0..g.n() {
        for j in (i + 1)..g.n() {
            if !g.adjacent(i, j) && coloring[i] == coloring[j] {
                return Err(Error::ImproperColoring(g.label(i).to_string(), g.label(j).to_string()));
            }
        }
    }
    let mut used: Vec<usize> = coloring.to_vec();
    used.sort_unstable();
    used.dedup();
    let k = used.len().max(1);
    let vectors = coloring
        .iter()
        .map(|c| {
            let mut v = vec![0; k];
            v[used.binary_search(c).unwrap()] = 1;
            v
        })
        .collect();
    OrthRep::exact(g.clone(), vectors)
}

fn kron_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn kron_float(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// `(g,h) ↦ φ(g) ⊗ ψ(h)`, a representation of `G ⊠ H`.
pub fn tensor_representation(a: &OrthRep, b: &OrthRep) -> Result<OrthRep> {
    let target = strong_product(&a.target, &b.target)?;
    let rep = match (&a.vectors, &b.vectors) {
        (Vectors::Exact(u), Vectors::Exact(v)) => OrthRep::exact(
            target,
            u.iter().flat_map(|x| v.iter().map(move |y| kron_exact(x, y))).collect(),
        )?,
        (Vectors::Float(u), Vectors::Float(v)) => OrthRep::float(
            target,
            u.iter().flat_map(|x| v.iter().map(move |y| kron_float(x, y))).collect(),
        )?,
        _ => return Err(Error::ModeMismatch),
    };
    if !rep.is_valid() {
        return Err(Error::InvalidRepresentation(
            "tensor product of invalid representations".into(),
        ));
    }
    Ok(rep)
}

/// m-fold tensor power, a representation of the m-th strong power with flat
/// tuple labels (matching [`power`]).
pub fn tensor_power(rep: &OrthRep, m: usize) -> Result<OrthRep> {
    let target = power(&rep.target, m, ProductKind::Strong)?;
    if m == 1 {
        return Ok(rep.clone());
    }
    let idx = tuples(rep.target.n(), m);
    let out = match &rep.vectors {
        Vectors::Exact(v) => OrthRep::exact(
            target,
            idx.iter()
                .map(|t| t[1..].iter().fold(v[t[0]].clone(), |acc, &i| kron_exact(&acc, &v[i])))
                .collect(),
        )?,
        Vectors::Float(v) => OrthRep::float(
            target,
            idx.iter()
                .map(|t| t[1..].iter().fold(v[t[0]].clone(), |acc, &i| kron_float(&acc, &v[i])))
                .collect(),
        )?,
    };
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinRep {
    C5Bar,
    G13Bar,
    HBar(usize),
    LdG13Bar,
}

impl FromStr for BuiltinRep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "c5bar" => Ok(BuiltinRep::C5Bar),
            "g13bar" => Ok(BuiltinRep::G13Bar),
            "ldg13bar" => Ok(BuiltinRep::LdG13Bar),
            _ => {
                let n = s
                    .strip_prefix("hbar(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| s.strip_prefix("hbar"))
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::invalid(format!("unknown representation `{s}`")))?;
                Ok(BuiltinRep::HBar(n))
            }
        }
    }
}

impl fmt::Display for BuiltinRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinRep::C5Bar => write!(f, "c5bar"),
            BuiltinRep::G13Bar => write!(f, "g13bar"),
            BuiltinRep::HBar(n) => write!(f, "hbar({n})"),
            BuiltinRep::LdG13Bar => write!(f, "ldg13bar"),
        }
    }
}

/// Depth-first search for a 3-dimensional {-1,0,1} representation of the
/// pentagon's complement, taking candidates in a fixed order.
fn search_c5bar(target: &Graph) -> Option<Vec<Vec<i64>>> {
    let mut cands: Vec<Vec<i64>> = Vec::new();
    for a in [1, 0, -1] {
        for b in [1, 0, -1] {
            for c in [1, 0, -1] {
                let v = vec![a, b, c];
                // one representative per ±v
                if v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
                    cands.push(v);
                }
            }
        }
    }
    fn go(t: &Graph, cands: &[Vec<i64>], chosen: &mut Vec<Vec<i64>>) -> bool {
        let i = chosen.len();
        if i == t.n() {
            return true;
        }
        for c in cands {
            if (0..i).all(|j| t.adjacent(i, j) || exact_dot(&chosen[j], c) == 0) {
                chosen.push(c.clone());
                if go(t, cands, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(target, &cands, &mut chosen).then_some(chosen)
}

pub fn builtin_representation(name: BuiltinRep) -> Result<OrthRep> {
    let rep = match name {
        BuiltinRep::C5Bar => {
            let target = complement(&named_graph(NamedGraph::Pentagon)?);
            let v = search_c5bar(&target).ok_or_else(|| Error::InvalidRepresentation("no 3-dim c5bar found".into()))?;
            OrthRep::exact(target, v)?
        }
        BuiltinRep::G13Bar => {
            let target = complement(&named_graph(NamedGraph::G13)?);
            OrthRep::exact(target, G13_VECTORS.iter().map(|(_, v)| v.to_vec()).collect())?
        }
        BuiltinRep::HBar(n) => {
            let target = complement(&named_graph(NamedGraph::H(n))?);
            let v = h_vectors(n)?
                .into_iter()
                .map(|mut x| {
                    x.push(1);
                    x
                })
                .collect();
            OrthRep::exact(target, v)?
        }
        BuiltinRep::LdG13Bar => {
            let g13 = named_graph(NamedGraph::G13)?;
            let d = DirectedGraph::bidirected(&g13);
            let target = complement(&directed_line_graph(&d)?);
            let v = target
                .labels()
                .iter()
                .map(|l| {
                    let tail = l.components()[0].to_string();
                    let i = g13.index_of_str(&tail).expect("arc tail is a G13 vertex");
                    G13_VECTORS[i].1.to_vec()
                })
                .collect();
            OrthRep::exact(target, v)?
        }
    };
    if let Some((i, j)) = rep.first_violation() {
        return Err(Error::InvalidRepresentation(format!(
            "builtin {name} fails at `{}`, `{}`",
            rep.target.label(i),
            rep.target.label(j)
        )));
    }
    Ok(rep)
}
