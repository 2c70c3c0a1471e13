//! Fractional chromatic number by column generation over independent sets,
//! finished with an exact rational solve and an exact dual certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::clique::{clique_number, max_weight_clique};
use crate::invariants::coloring::dsatur_coloring;
use crate::invariants::simplex::{solve_packing, PackingSolution};
use crate::rational::Rational;

/// Largest graph the fractional solver accepts.
pub const MAX_FRACTIONAL_VERTICES: usize = 64;

/// Optimal fractional coloring with matching dual weights:
/// `Σ weight(I) = value = Σ dual(v)`, every vertex covered at least once, and
/// every independent set has dual weight at most 1 (checked exactly).
#[derive(Clone, Debug)]
pub struct FractionalColoring {
    pub value: Rational,
    pub sets: Vec<(Vec<usize>, Rational)>,
    pub dual: Vec<Rational>,
}

impl FractionalColoring {
    /// Re-checks primal feasibility and the value equality (the dual side is
    /// certified during the solve by exact pricing).
    pub fn check_primal(&self, g: &Graph) -> bool {
        let mut cover = vec![BigRational::zero(); g.n()];
        for (set, w) in &self.sets {
            if w.is_negative() || !g.is_independent(set) {
                return false;
            }
            for &v in set {
                cover[v] += &w.0;
            }
        }
        let total: BigRational = self.sets.iter().map(|(_, w)| w.0.clone()).sum();
        let dual: BigRational = self.dual.iter().map(|w| w.0.clone()).sum();
        cover.iter().all(|c| *c >= BigRational::one()) && total == self.value.0 && dual == self.value.0
    }
}

fn complement_masks(g: &Graph) -> Vec<u64> {
    let n = g.n();
    (0..n)
        .map(|v| {
            let mut m = 0u64;
            for u in 0..n {
                if u != v && !g.adjacent(u, v) {
                    m |= 1 << u;
                }
            }
            m
        })
        .collect()
}

/// Extends an independent set (as a mask) to a maximal one, lowest index first.
fn make_maximal(nonadj: &[u64], mut set: u64) -> u64 {
    for (v, &na) in nonadj.iter().enumerate() {
        if set & (1 << v) == 0 && set & !na == 0 {
            set |= 1 << v;
        }
    }
    set
}

fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask & (1 << v) != 0).collect()
}

fn initial_columns(g: &Graph, nonadj: &[u64]) -> Vec<u64> {
    let mut cols = Vec::new();
    let coloring = dsatur_coloring(g);
    let k = coloring.iter().max().map_or(0, |&c| c + 1);
    for c in 0..k {
        let mask = (0..g.n()).filter(|&v| coloring[v] == c).fold(0u64, |m, v| m | 1 << v);
        cols.push(make_maximal(nonadj, mask));
    }
    for v in 0..g.n() {
        cols.push(make_maximal(nonadj, 1 << v));
    }
    cols.sort_unstable();
    cols.dedup();
    cols
}

fn rows_of(cols: &[u64]) -> Vec<Vec<usize>> {
    cols.iter().map(|&c| mask_members(c)).collect()
}

/// Exact maximum dual weight of an independent set, with the set.
fn exact_pricing(nonadj: &[u64], y: &[BigRational]) -> (BigRational, u64) {
    let lcm = y.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let w: Vec<BigInt> = y
        .iter()
        .map(|q| (q * BigRational::from(lcm.clone())).to_integer().max(BigInt::zero()))
        .collect();
    let (best, mask) = max_weight_clique(nonadj, &w);
    (BigRational::new(best, lcm), mask)
}

pub fn fractional_chromatic_with_budget(g: &Graph, budget: &Budget) -> Result<FractionalColoring> {
    let n = g.n();
    if n > MAX_FRACTIONAL_VERTICES {
        return Err(Error::SizeExceeded {
            what: "fractional chromatic vertices".into(),
            size: n as u128,
            limit: MAX_FRACTIONAL_VERTICES,
        });
    }
    if n == 0 {
        return Ok(FractionalColoring {
            value: Rational::integer(0),
            sets: vec![],
            dual: vec![],
        });
    }
    let nonadj = complement_masks(g);
    let mut cols = initial_columns(g, &nonadj);
    loop {
        // float column generation
        loop {
            let sol: PackingSolution<f64> =
                solve_packing(n, &rows_of(&cols)).ok_or_else(|| Error::Convergence("unbounded master LP".into()))?;
            let w: Vec<f64> = sol.y.iter().map(|v| v.max(0.0)).collect();
            let (best, mask) = max_weight_clique(&nonadj, &w);
            if best <= 1.0 + 1e-9 {
                break;
            }
            if budget.expired() {
                return Err(Error::Timeout {
                    lower: sol.value / best,
                    upper: sol.value,
                });
            }
            let col = make_maximal(&nonadj, mask);
            if cols.contains(&col) {
                break;
            }
            cols.push(col);
        }
        // exact re-solve on the generated columns
        let sol: PackingSolution<BigRational> =
            solve_packing(n, &rows_of(&cols)).ok_or_else(|| Error::Convergence("unbounded master LP".into()))?;
        let (best, mask) = exact_pricing(&nonadj, &sol.y);
        if best <= BigRational::one() {
            let sets = cols
                .iter()
                .zip(&sol.x)
                .filter(|(_, x)| x.is_positive())
                .map(|(&c, x)| (mask_members(c), Rational(x.clone())))
                .collect();
            let fc = FractionalColoring {
                value: Rational(sol.value),
                sets,
                dual: sol.y.into_iter().map(Rational).collect(),
            };
            if !fc.check_primal(g) {
                return Err(Error::Convergence(
                    "exact fractional coloring failed verification".into(),
                ));
            }
            debug_assert!(BigRational::from(BigInt::from(clique_number(g))) <= fc.value.0);
            return Ok(fc);
        }
        if budget.expired() {
            return Err(Error::Timeout {
                lower: Rational((sol.value.clone()) / best).to_f64(),
                upper: Rational(sol.value).to_f64(),
            });
        }
        let col = make_maximal(&nonadj, mask);
        if cols.contains(&col) {
            return Err(Error::Convergence("column generation stalled".into()));
        }
        cols.push(col);
    }
}

pub fn fractional_chromatic(g: &Graph) -> Result<Rational> {
    Ok(fractional_chromatic_with_budget(g, &Budget::default())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{directed_line_graph, named_graph, DirectedGraph, NamedGraph};

    #[test]
    fn known_values() {
        let c5 = named_graph(NamedGraph::Pentagon).unwrap();
        assert_eq!(fractional_chromatic(&c5).unwrap(), Rational::new(5, 2));
        let g13 = named_graph(NamedGraph::G13).unwrap();
        let fc = fractional_chromatic_with_budget(&g13, &Budget::unlimited()).unwrap();
        assert_eq!(fc.value, Rational::new(35, 11));
        assert!(fc.check_primal(&g13));
        assert_eq!(
            fractional_chromatic(&named_graph(NamedGraph::Complete(4)).unwrap()).unwrap(),
            Rational::integer(4)
        );
        assert_eq!(
            fractional_chromatic(&named_graph(NamedGraph::Empty(4)).unwrap()).unwrap(),
            Rational::integer(1)
        );
    }

    #[test]
    fn line_graph_of_g13() {
        let g13 = named_graph(NamedGraph::G13).unwrap();
        let h = directed_line_graph(&DirectedGraph::bidirected(&g13)).unwrap();
        assert_eq!(fractional_chromatic(&h).unwrap(), Rational::integer(3));
    }
}
