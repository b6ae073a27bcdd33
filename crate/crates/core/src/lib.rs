//! Ranks and intersections of finitely generated subgroups of free groups
//! and of `F_k × Z/n`.
//!
//! The crate is organised bottom-up:
//!
//! - [`word`]: reduced words in a free group of fixed rank.
//! - [`stallings`]: folded core graphs, membership, index, bases and fiber
//!   products (subgroup intersection).
//! - [`graph_rank`]: reduced rank and maximal essential edge sets of finite
//!   multigraphs.
//! - [`magnus`]: the Magnus expansion and the bi-invariant order it induces.
//! - [`tree_action`]: finite balls of the Cayley tree, induced actions on
//!   forests of copies, invariant subforests and order-essential edges.
//! - [`voltage`]: voltage graphs for subgroups of `F_k × Z/n`, intersections
//!   and the rank-bound report.
//! - [`harness`]: seeded random subgroup generation and batch verification.

pub mod error;
mod fold;
pub mod graph_rank;
pub mod harness;
pub mod magnus;
pub mod stallings;
pub mod tree_action;
pub mod voltage;
pub mod word;

pub use error::{Error, Result};
pub use graph_rank::{EdgeId, FiniteGraph};
pub use magnus::{MagnusPolynomial, Monomial, Sign};
pub use stallings::{CoreGraph, Edge, Index};
pub use tree_action::{BallEdge, BallVertex, ForestBall, GroupElement, SubForest};
pub use voltage::{BoundReport, VoltageGraph};
pub use word::{Letter, Word};
