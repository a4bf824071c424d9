//! Sufficient conditions for 2p-Hamilton-biconnectedness of balanced and
//! nearly balanced bipartite graphs, checked against an exact oracle.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: the bipartite graph type, BEL text format and generators.
//! - [`families`]: the extremal families `M`, `M⁻`, `N¹`, `N²`, `F` and
//!   containment tests for the "unless G ⊆ …" clauses.
//! - [`closure`]: the k-biclosure.
//! - [`hamilton`]: the subset-DP Hamiltonian path oracle, (2p-)Hamilton-
//!   biconnectedness verdicts, and the explicit path catalogs.
//! - [`spectral`]: ρ(G) and q(G) by power iteration, the closed-form
//!   characteristic polynomials, and the bound checks.
//! - [`theorems`]: hypothesis evaluators and oracle cross-validation.
//! - [`harness`]: JSON Lines sweeps with resume and replay.

pub mod closure;
pub mod error;
pub mod families;
pub mod graph;
pub mod hamilton;
pub mod harness;
pub mod spectral;
pub mod theorems;

pub use error::{Error, Result};
pub use families::FamilySpec;
pub use graph::{BalancedDeletionSet, BipartiteGraph, Part, VertexRef};
