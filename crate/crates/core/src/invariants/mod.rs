//! Graph invariants: clique and independence numbers, chromatic numbers
//! (ordinary, b-fold, fractional), the Lovász number and orthogonal-rank brackets.

pub mod clique;
pub mod coloring;
pub mod fractional;
pub mod report;
mod simplex;
pub mod structure;
pub mod theta;
pub mod xi;

pub use clique::{clique_number, independence_number, max_clique, max_independent_set};
pub use coloring::{
    b_fold_chromatic, chromatic_bracket, chromatic_number, chromatic_number_with_budget, ChromaticBracket,
};
pub use fractional::{fractional_chromatic, fractional_chromatic_with_budget, FractionalColoring};
pub use report::{invariant_report, InvariantReport};
pub use structure::{edge_chromatic_directed, verify_g13_structure, StructureRow};
pub use theta::{lovasz_theta, ThetaResult};
pub use xi::{xi_bounds, xi_bounds_with_budget, XiBounds};
