//! Bend-minimum orthogonal representations of plane series-parallel 4-graphs.
//!
//! The pipeline works on a fixed planar embedding (rotation system plus a
//! designated external face):
//!
//! 1. [`graph`] — validated plane multigraph model and biconnectivity
//!    augmentation by a single dummy edge on the external face.
//! 2. [`spqtree`] — the SPQ*-decomposition tree with respect to a reference
//!    edge, P-node classification and exposed edges.
//! 3. [`interval`] — exact interval arithmetic for admissible spiralities,
//!    kept in doubled integers so semi-integers stay exact.
//! 4. [`budget`] — bottom-up visit computing per-node bend budgets, the
//!    post-budget intervals and flexibility breakpoints; the cumulative root
//!    budget is the optimum bend count.
//! 5. [`build`] — top-down visit assigning target spiralities and emitting an
//!    orthogonal representation realizing the optimum.
//! 6. [`compact`] — integer grid coordinates via rectangular refinement.
//! 7. [`flow`] / [`gen`] — an independent min-cost-flow oracle and a seeded
//!    random instance generator used for verification.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod budget;
pub mod build;
pub mod compact;
pub mod flow;
pub mod gen;
pub mod graph;
pub mod interval;
pub mod rep;
pub mod spqtree;

mod error;

pub use error::Error;

/// Convenience alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;
