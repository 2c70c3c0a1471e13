//! Exact vertex coloring: DSATUR branch and bound seeded with a maximum
//! clique (lower bound, pre-colored) and a greedy DSATUR coloring (upper bound).

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::clique::{max_clique_with_budget, CliqueResult};

/// Largest graph `chromatic_number` accepts.
pub const MAX_CHROMATIC_VERTICES: usize = 256;

const UNCOLORED: usize = usize::MAX;

/// Certified bracket `lower ≤ χ ≤ upper`; `coloring` is a proper coloring with
/// `upper` colors and `clique` witnesses the clique part of the lower bound.
#[derive(Clone, Debug)]
pub struct ChromaticBracket {
    pub lower: usize,
    pub upper: usize,
    pub coloring: Vec<usize>,
    pub clique: Vec<usize>,
    pub exact: bool,
}

struct Dsatur<'a> {
    adj: &'a [BitSet],
    degree: Vec<usize>,
    color: Vec<usize>,
    counts: Vec<Vec<u32>>,
    sat: Vec<usize>,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, adj: &'a [BitSet], max_colors: usize) -> Self {
        let n = adj.len();
        Dsatur {
            adj,
            degree: (0..n).map(|v| g.degree(v)).collect(),
            color: vec![UNCOLORED; n],
            counts: vec![vec![0; max_colors + 1]; n],
            sat: vec![0; n],
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for u in self.adj[v].iter() {
            if self.counts[u][c] == 0 {
                self.sat[u] += 1;
            }
            self.counts[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = UNCOLORED;
        for u in self.adj[v].iter() {
            self.counts[u][c] -= 1;
            if self.counts[u][c] == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    /// Uncolored vertex of maximum saturation; ties by degree, then lowest index.
    fn select(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.color.len() {
            if self.color[v] != UNCOLORED {
                continue;
            }
            best = match best {
                Some(b) if (self.sat[b], self.degree[b]) >= (self.sat[v], self.degree[v]) => Some(b),
                _ => Some(v),
            };
        }
        best
    }
}

/// Greedy DSATUR coloring (colors numbered from 0).
pub fn dsatur_coloring(g: &Graph) -> Vec<usize> {
    let adj: Vec<BitSet> = (0..g.n()).map(|v| g.neighbors(v).clone()).collect();
    let mut d = Dsatur::new(g, &adj, g.n());
    while let Some(v) = d.select() {
        let c = (0..).find(|&c| d.counts[v][c] == 0).unwrap();
        d.assign(v, c);
    }
    d.color
}

struct BranchAndBound<'a> {
    d: Dsatur<'a>,
    lower: usize,
    best: usize,
    best_coloring: Vec<usize>,
    budget: &'a Budget,
    nodes: u64,
    stopped: bool,
}

impl BranchAndBound<'_> {
    fn search(&mut self, used: usize) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.budget.expired() {
            self.stopped = true;
        }
        if self.stopped {
            return;
        }
        let Some(v) = self.d.select() else {
            self.best = used;
            self.best_coloring = self.d.color.clone();
            if self.best <= self.lower {
                self.stopped = true;
            }
            return;
        };
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.d.counts[v][c] != 0 {
                continue;
            }
            self.d.assign(v, c);
            self.search(used.max(c + 1));
            self.d.unassign(v);
            if self.stopped {
                return;
            }
        }
    }
}

fn color_count(coloring: &[usize]) -> usize {
    coloring.iter().map(|&c| c + 1).max().unwrap_or(0)
}

/// Chromatic bracket within `budget`. Exact unless the budget expires; above
/// [`MAX_CHROMATIC_VERTICES`] only the clique and greedy bounds are used.
pub fn chromatic_bracket(g: &Graph, budget: &Budget) -> ChromaticBracket {
    let n = g.n();
    if n == 0 {
        return ChromaticBracket {
            lower: 0,
            upper: 0,
            coloring: vec![],
            clique: vec![],
            exact: true,
        };
    }
    let CliqueResult { vertices: clique, .. } = max_clique_with_budget(g, budget);
    let mut lower = clique.len();
    if n <= MAX_CHROMATIC_VERTICES {
        let alpha = max_clique_with_budget(&g.complement(), budget);
        if alpha.optimal {
            lower = lower.max(n.div_ceil(alpha.size()));
        }
    }
    let greedy = dsatur_coloring(g);
    let upper = color_count(&greedy);
    if upper <= lower {
        return ChromaticBracket {
            lower: upper,
            upper,
            coloring: greedy,
            clique,
            exact: true,
        };
    }
    if n > MAX_CHROMATIC_VERTICES {
        // too large for the tree search to close the gap; report the bracket
        return ChromaticBracket {
            lower,
            upper,
            coloring: greedy,
            clique,
            exact: false,
        };
    }
    let adj: Vec<BitSet> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut bb = BranchAndBound {
        d: Dsatur::new(g, &adj, upper),
        lower,
        best: upper,
        best_coloring: greedy,
        budget,
        nodes: 0,
        stopped: false,
    };
    for (c, &v) in clique.iter().enumerate() {
        bb.d.assign(v, c);
    }
    bb.search(clique.len());
    let exhausted = !bb.stopped || bb.best <= lower;
    let upper = bb.best;
    ChromaticBracket {
        lower: if exhausted { upper } else { lower },
        upper,
        coloring: bb.best_coloring,
        clique,
        exact: exhausted,
    }
}

pub fn chromatic_number_with_budget(g: &Graph, budget: &Budget) -> Result<usize> {
    if g.n() > MAX_CHROMATIC_VERTICES {
        return Err(Error::SizeExceeded {
            what: "chromatic number vertices".into(),
            size: g.n() as u128,
            limit: MAX_CHROMATIC_VERTICES,
        });
    }
    let b = chromatic_bracket(g, budget);
    if b.exact {
        Ok(b.upper)
    } else {
        Err(Error::Timeout {
            lower: b.lower as f64,
            upper: b.upper as f64,
        })
    }
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_with_budget(g, &Budget::default())
}

/// Lexicographic blow-up G[K_b]: each vertex becomes a b-clique, and copies of
/// adjacent vertices are fully joined. Its chromatic number is χ_b(G).
pub fn blow_up(g: &Graph, b: usize) -> Result<Graph> {
    let n = g.n();
    let labels = (0..n * b)
        .map(|i| crate::graph::Label::pair(g.label(i / b).clone(), crate::graph::Label::atom((i % b).to_string())))
        .collect();
    let mut h = Graph::new(labels)?;
    for v in 0..n {
        for i in 0..b {
            for j in i + 1..b {
                h.add_edge(v * b + i, v * b + j)?;
            }
        }
    }
    for (u, v) in g.edges() {
        for i in 0..b {
            for j in 0..b {
                h.add_edge(u * b + i, v * b + j)?;
            }
        }
    }
    Ok(h)
}

/// Least a admitting an a:b coloring.
pub fn b_fold_chromatic(g: &Graph, b: usize) -> Result<usize> {
    if b == 0 {
        return Err(Error::invalid("b-fold coloring needs b ≥ 1"));
    }
    if g.n() > 64 || b > 8 {
        return Err(Error::SizeExceeded {
            what: "b-fold chromatic (n·b)".into(),
            size: (g.n() * b) as u128,
            limit: 64 * 8,
        });
    }
    let h = blow_up(g, b)?;
    let r = chromatic_bracket(&h, &Budget::default());
    if r.exact {
        Ok(r.upper)
    } else {
        Err(Error::Timeout {
            lower: r.lower as f64,
            upper: r.upper as f64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, power, NamedGraph, ProductKind};

    #[test]
    fn known_chromatic_numbers() {
        let c5 = named_graph(NamedGraph::Pentagon).unwrap();
        assert_eq!(chromatic_number(&c5).unwrap(), 3);
        assert_eq!(
            chromatic_number(&power(&c5, 2, ProductKind::Strong).unwrap()).unwrap(),
            5
        );
        let g13 = named_graph(NamedGraph::G13).unwrap();
        assert_eq!(chromatic_number(&g13).unwrap(), 4);
        assert_eq!(
            chromatic_number(&named_graph(NamedGraph::Empty(3)).unwrap()).unwrap(),
            1
        );
    }

    #[test]
    fn bracket_coloring_is_proper() {
        let g13 = named_graph(NamedGraph::G13).unwrap();
        let b = chromatic_bracket(&g13, &Budget::unlimited());
        assert!(g13.is_proper_coloring(&b.coloring));
        assert_eq!(color_count(&b.coloring), 4);
    }

    #[test]
    fn b_fold() {
        let c5 = named_graph(NamedGraph::Pentagon).unwrap();
        assert_eq!(b_fold_chromatic(&c5, 1).unwrap(), 3);
        assert_eq!(b_fold_chromatic(&c5, 2).unwrap(), 5);
        let k3 = named_graph(NamedGraph::Complete(3)).unwrap();
        assert_eq!(b_fold_chromatic(&k3, 2).unwrap(), 6);
    }
}
