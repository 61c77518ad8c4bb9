//! Reachable-pair weights of directed graphs.
//!
//! The weight of a digraph is the number of ordered pairs `(u, v)` such that
//! `v` is reachable from `u`, counting every `(u, u)`. This crate computes
//! weights, the exact set `W(n)` of weights achievable on `n` vertices, the
//! end `b(n)` of its initial interval, witness digraphs for any achievable
//! weight, and closed-form estimators for `ζ(n)`, `b(n)` and `|W(n)|`.
//!
//! The recursive tables live in [`Tables`]; build them once with
//! [`Tables::prepare`] and share them read-only afterwards.

pub mod approx;
pub mod cache;
pub mod checks;
pub mod digraph;
mod error;
pub mod format;
pub mod oracle;
pub mod random;
pub mod weightset;
pub mod witness;

pub use approx::ApproxReport;
pub use digraph::{CliqueChain, Digraph, RearrangeReport};
pub use error::{Error, Result};
pub use weightset::{BLTable, Tables, WeightSet};
pub use witness::{Witness, WitnessTrace};
