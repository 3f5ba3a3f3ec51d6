//! Construction and verification toolkit for layered-wheel graph families.
//!
//! The crate builds the parameterized family `G_k^g` (k layer paths of length
//! 2^(k+g), cross-linked at dyadic indices) and provides the machinery to
//! check its structural claims with machine-checkable certificates:
//!
//! * [`graph`] — immutable simple-graph substrate (BFS, girth, components).
//! * [`construction`] — the generator, the big/medium/small vertex
//!   classification, and the construction invariant suite.
//! * [`model`] — branch-set models, contractions, the linear clique-model
//!   witness, and a brute-force induced-minor search.
//! * [`series_parallel`] — the big-with-medium-neighbors contraction `H'`,
//!   a reduction-based series-parallel recognizer, and the two-terminal
//!   contraction `c(F)`.
//! * [`separators`] — exact rational weight functions, balanced separators,
//!   exact treewidth, and the full `K' -> H'' -> K'' -> K` separator
//!   assembly pipeline.
//! * [`theta`] — long-theta search, the order-constrained crossing-pattern
//!   witness, anticomplete path families, wide thetas, and the minimal
//!   three-vertex connector classification.

#![allow(clippy::needless_range_loop)]

pub mod construction;
pub mod graph;
pub mod model;
pub mod search;
pub mod separators;
pub mod series_parallel;
pub mod theta;

pub use construction::{LayeredWheel, LayeredWheelParams, VertexClass};
pub use graph::Graph;
pub use search::{Budget, SearchResult};
