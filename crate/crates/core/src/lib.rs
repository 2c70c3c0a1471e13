//! Zero-error function computation with side information: confusion graphs,
//! their product structure, exact graph invariants, orthogonal-representation
//! protocols and classical/quantum rate bounds.

pub mod bitset;
pub mod budget;
pub mod confusion;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod protocol;
pub mod rates;
pub mod rational;
pub mod representation;

pub use budget::Budget;
pub use error::{Error, Result};
pub use rational::Rational;
