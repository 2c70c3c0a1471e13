//! Per-graph invariant summary in the JSON report format.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;
use crate::graph::Graph;
use crate::invariants::clique::max_clique_with_budget;
use crate::invariants::coloring::chromatic_bracket;
use crate::invariants::fractional::{fractional_chromatic_with_budget, MAX_FRACTIONAL_VERTICES};
use crate::invariants::theta::{lovasz_theta, MAX_THETA_VERTICES};
use crate::invariants::xi::xi_bounds_with_budget;
use crate::representation::OrthRep;

#[derive(Clone, Debug, Serialize)]
pub struct Interval<T> {
    pub lower: T,
    pub upper: T,
}

/// Exact value, or a certified bracket when a budget ran out.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Value<T> {
    Exact(T),
    Bracket(Interval<T>),
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub alpha: Value<usize>,
    pub omega: Value<usize>,
    pub chi: Value<usize>,
    pub chi_f: Option<Value<String>>,
    pub theta: Option<Interval<f64>>,
    pub xi: Interval<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub independent_set: Option<Vec<usize>>,
}

fn clique_value(g: &Graph, budget: &Budget, upper: usize) -> (Value<usize>, Vec<usize>) {
    let r = max_clique_with_budget(g, budget);
    let v = if r.optimal {
        Value::Exact(r.size())
    } else {
        Value::Bracket(Interval { lower: r.size(), upper })
    };
    (v, r.vertices)
}

pub fn invariant_report(
    g: &Graph,
    certificate: Option<&OrthRep>,
    budget: &Budget,
    with_certificates: bool,
) -> Result<InvariantReport> {
    let chi = chromatic_bracket(g, budget);
    let comp = g.complement();
    let (omega, _) = clique_value(g, budget, chi.lower);
    let (alpha, ind) = clique_value(&comp, budget, g.n());
    let chi_f = if g.n() <= MAX_FRACTIONAL_VERTICES {
        Some(match fractional_chromatic_with_budget(g, budget) {
            Ok(fc) => Value::Exact(fc.value.to_string()),
            Err(crate::Error::Timeout { lower, upper }) => Value::Bracket(Interval {
                lower: format!("{lower:.9}"),
                upper: format!("{upper:.9}"),
            }),
            Err(e) => return Err(e),
        })
    } else {
        None
    };
    let theta = if g.n() <= MAX_THETA_VERTICES {
        let t = lovasz_theta(g)?;
        Some(Interval {
            lower: t.lower,
            upper: t.upper,
        })
    } else {
        None
    };
    let xi = xi_bounds_with_budget(g, certificate, budget)?;
    Ok(InvariantReport {
        alpha,
        omega,
        chi: if chi.exact {
            Value::Exact(chi.upper)
        } else {
            Value::Bracket(Interval {
                lower: chi.lower,
                upper: chi.upper,
            })
        },
        chi_f,
        theta,
        xi: Interval {
            lower: xi.lower,
            upper: xi.upper,
        },
        coloring: with_certificates.then_some(chi.coloring),
        independent_set: with_certificates.then_some(ind),
    })
}
