//! Randomized constructions of sparse graph spanners and emulators.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`graph`]: an immutable CSR graph, bounded multi-source BFS, Dijkstra and
//!   seeded random-graph generators.
//! * [`mult`]: `(2k-1)`-spanners from exponentially shifted broadcasts, the
//!   retry wrapper with an explicit edge budget, and parameter presets.
//! * [`congest`]: a round-synchronous CONGEST simulation of the same
//!   construction with message accounting.
//! * [`weighted`]: the scale-decomposition pipeline for weighted graphs.
//! * [`nearadd`]: superclustering and interconnection for `(1+eps, beta)`
//!   spanners and emulators.
//! * [`verify`]: exact stretch oracles, Monte Carlo helpers, trial
//!   aggregation and approximate `S x V` distances.
//!
//! All randomness is derived from a user seed through [`rng::Substream`], so
//! every construction is a pure function of its inputs.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod congest;
pub mod error;
pub mod graph;
pub mod mult;
pub mod nearadd;
pub mod rng;
pub mod verify;
pub mod weighted;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphBuilder};
