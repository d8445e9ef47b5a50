//! Exact solvers for maximizing all-paths phylogenetic diversity on a
//! phylogenetic network when the surviving taxa must stay viable in a food web.
//!
//! The crate offers two color-coding dynamic programs over a tree extension of
//! the food web, one parameterized by the acceptable diversity loss and one by
//! the number of saved taxa times the tree-edge height. A brute-force oracle
//! and a random instance generator support testing.

pub mod cli;
pub mod colorcoding;
pub mod diversity;
mod driver;
pub mod error;
pub mod generate;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod outcome;
pub mod scanwidth;
pub mod solver_dbar;
pub mod solver_kh;
pub mod viability;

#[cfg(test)]
pub(crate) mod testutil;

pub use driver::SolveConfig;
pub use error::{Error, Result};
pub use model::{FoodWeb, Instance, PhyloNetwork, ViabilityMode};
pub use outcome::{Algorithm, SolveOutcome};
