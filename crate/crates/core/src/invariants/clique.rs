//! Maximum clique by bitset branch and bound with greedy-coloring bounds.

use std::ops::Add;

use num_traits::Zero;

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::graph::Graph;

/// Outcome of a clique search. `optimal` is false only when the budget ran out,
/// in which case `vertices` is still a valid clique.
#[derive(Clone, Debug)]
pub struct CliqueResult {
    pub vertices: Vec<usize>,
    pub optimal: bool,
}

impl CliqueResult {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

struct Search<'a> {
    adj: Vec<BitSet>,
    best: Vec<usize>,
    budget: &'a Budget,
    nodes: u64,
    stopped: bool,
}

impl Search<'_> {
    /// Greedy sequential coloring of `cand`; returns vertices in color order
    /// together with the color number of each (a clique bound for the prefix).
    fn color_sort(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count());
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                q.difference_with(&self.adj[v]);
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: BitSet) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && self.budget.expired() {
            self.stopped = true;
        }
        if self.stopped {
            return;
        }
        let (order, bounds) = self.color_sort(&cand);
        for k in (0..order.len()).rev() {
            if clique.len() + bounds[k] <= self.best.len() || self.stopped {
                return;
            }
            let v = order[k];
            clique.push(v);
            let next = cand.intersection(&self.adj[v]);
            if next.is_empty() {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            cand.remove(v);
        }
    }
}

/// Maximum clique of `g` within `budget`.
pub fn max_clique_with_budget(g: &Graph, budget: &Budget) -> CliqueResult {
    let n = g.n();
    if n == 0 {
        return CliqueResult {
            vertices: vec![],
            optimal: true,
        };
    }
    // Relabel by non-increasing degree so greedy coloring sees hubs first.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<BitSet> = perm
        .iter()
        .map(|&v| BitSet::from_indices(n, g.neighbors(v).iter().map(|u| pos[u])))
        .collect();
    let mut s = Search {
        adj,
        best: vec![0],
        budget,
        nodes: 0,
        stopped: false,
    };
    s.expand(&mut Vec::new(), BitSet::full(n));
    let mut vertices: Vec<usize> = s.best.iter().map(|&i| perm[i]).collect();
    vertices.sort_unstable();
    CliqueResult {
        vertices,
        optimal: !s.stopped,
    }
}

pub fn max_clique(g: &Graph) -> Vec<usize> {
    max_clique_with_budget(g, &Budget::unlimited()).vertices
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

pub fn max_independent_set(g: &Graph) -> Vec<usize> {
    max_clique(&g.complement())
}

pub fn independence_number(g: &Graph) -> usize {
    max_independent_set(g).len()
}

/// Maximum-weight clique over at most 64 vertices given as adjacency masks.
/// Weights must be non-negative. Returns the weight and the vertex mask.
pub(crate) fn max_weight_clique<W>(adj: &[u64], w: &[W]) -> (W, u64)
where
    W: Clone + PartialOrd + Zero + for<'a> Add<&'a W, Output = W>,
{
    assert!(adj.len() <= 64 && adj.len() == w.len());
    let full = if adj.len() == 64 {
        u64::MAX
    } else {
        (1u64 << adj.len()) - 1
    };
    let mut best = (W::zero(), 0u64);
    weighted_expand(adj, w, W::zero(), 0, full, &mut best);
    best
}

fn weighted_expand<W>(adj: &[u64], w: &[W], cur: W, clique: u64, mut cand: u64, best: &mut (W, u64))
where
    W: Clone + PartialOrd + Zero + for<'a> Add<&'a W, Output = W>,
{
    // Color classes are cliques-excluding sets: each contributes at most its max weight.
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut bounds: Vec<W> = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut before = W::zero();
    while uncolored != 0 {
        let mut q = uncolored;
        let mut class_max = W::zero();
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u64 << v);
            q &= !adj[v];
            uncolored &= !(1u64 << v);
            if w[v] > class_max {
                class_max = w[v].clone();
            }
            order.push(v);
            bounds.push(before.clone() + &class_max);
        }
        before = before + &class_max;
    }
    if clique != 0 && cur > best.0 {
        *best = (cur.clone(), clique);
    }
    for k in (0..order.len()).rev() {
        if cur.clone() + &bounds[k] <= best.0 {
            return;
        }
        let v = order[k];
        let next = cand & adj[v];
        weighted_expand(adj, w, cur.clone() + &w[v], clique | (1u64 << v), next, best);
        cand &= !(1u64 << v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, power, NamedGraph, ProductKind};

    #[test]
    fn pentagon_clique_and_independence() {
        let c5 = named_graph(NamedGraph::Pentagon).unwrap();
        assert_eq!(clique_number(&c5), 2);
        assert_eq!(independence_number(&c5), 2);
        let s = power(&c5, 2, ProductKind::Strong).unwrap();
        assert_eq!(independence_number(&s), 5);
        let o = power(&c5, 2, ProductKind::Or).unwrap();
        assert_eq!(independence_number(&o), 4);
    }

    #[test]
    fn g13_and_complete() {
        let g = named_graph(NamedGraph::G13).unwrap();
        let c = max_clique(&g);
        assert_eq!(c.len(), 3);
        assert!(g.is_clique(&c));
        assert_eq!(clique_number(&named_graph(NamedGraph::Complete(7)).unwrap()), 7);
        assert_eq!(clique_number(&named_graph(NamedGraph::Empty(4)).unwrap()), 1);
    }

    #[test]
    fn weighted_clique_prefers_heavy_vertex() {
        // path 0-1-2 with weights 1, 1, 5: best clique is {1,2}
        let adj = [0b010, 0b101, 0b010];
        let (wt, mask) = max_weight_clique(&adj, &[1.0, 1.0, 5.0]);
        assert_eq!(wt, 6.0);
        assert_eq!(mask, 0b110);
    }
}
