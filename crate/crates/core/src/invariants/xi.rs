//! Orthogonal-rank brackets: α ≤ ⌈ϑ⌉ ≤ ξ ≤ min(χ(Ḡ), certificate dimension).

use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;
use crate::graph::Graph;
use crate::invariants::coloring::{chromatic_bracket, ChromaticBracket};
use crate::invariants::theta::{lovasz_theta, ThetaResult, MAX_THETA_VERTICES};
use crate::representation::OrthRep;

#[derive(Clone, Debug, Serialize)]
pub struct XiBounds {
    pub lower: usize,
    pub upper: usize,
    /// Size of the independent set found (a lower bound on α).
    pub alpha: usize,
    pub theta: Option<ThetaResult>,
    pub chi_complement: (usize, usize),
    pub certificate_dim: Option<usize>,
}

impl XiBounds {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

pub fn xi_bounds(g: &Graph, certificate: Option<&OrthRep>) -> Result<XiBounds> {
    xi_bounds_with_budget(g, certificate, &Budget::default())
}

/// The certificate is transported onto `g` by vertex label and must be valid
/// there; otherwise `InvalidCertificate`.
pub fn xi_bounds_with_budget(g: &Graph, certificate: Option<&OrthRep>, budget: &Budget) -> Result<XiBounds> {
    let certificate_dim = match certificate {
        Some(rep) => Some(rep.transport(g)?.dim()),
        None => None,
    };
    let chi = chromatic_bracket(&g.complement(), budget);
    xi_bounds_from_parts(g, certificate_dim, &chi)
}

/// Bracket from a known χ(Ḡ) bracket. Its clique part is an independent set
/// of `g`, so α needs no separate search.
pub(crate) fn xi_bounds_from_parts(
    g: &Graph,
    certificate_dim: Option<usize>,
    chi: &ChromaticBracket,
) -> Result<XiBounds> {
    let alpha = chi.clique.len();
    let theta = if g.n() <= MAX_THETA_VERTICES {
        Some(lovasz_theta(g)?)
    } else {
        None
    };
    let theta_floor = theta.map_or(0, |t| (t.lower - 1e-9).ceil().max(0.0) as usize);
    let lower = alpha.max(theta_floor);
    let upper = certificate_dim.map_or(chi.upper, |d| d.min(chi.upper));
    Ok(XiBounds {
        lower,
        upper,
        alpha,
        theta,
        chi_complement: (chi.lower, chi.upper),
        certificate_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, NamedGraph};
    use crate::representation::{builtin_representation, BuiltinRep};

    #[test]
    fn certified_brackets() {
        let c5 = builtin_representation(BuiltinRep::C5Bar).unwrap();
        let b = xi_bounds(c5.target(), Some(&c5)).unwrap();
        assert_eq!((b.lower, b.upper), (3, 3));
        let g = builtin_representation(BuiltinRep::G13Bar).unwrap();
        let b = xi_bounds(g.target(), Some(&g)).unwrap();
        assert_eq!((b.lower, b.upper), (3, 3));
        let h = builtin_representation(BuiltinRep::HBar(7)).unwrap();
        let b = xi_bounds(h.target(), Some(&h)).unwrap();
        assert_eq!((b.lower, b.upper), (8, 8));
    }

    #[test]
    fn wrong_certificate_is_rejected() {
        let c5 = builtin_representation(BuiltinRep::C5Bar).unwrap();
        // the pentagon itself has different non-edges
        let p = named_graph(NamedGraph::Pentagon).unwrap();
        assert!(xi_bounds(&p, Some(&c5)).is_err());
    }
}
