//! Combinatorics and one-loop renormalization of random vector, matrix and
//! tensor models.
//!
//! - [`graph`]: edge-colored bipartite graphs, canonical forms, faces, GCT and DOT I/O
//! - [`census`]: connected invariants up to isomorphism
//! - [`melonic`]: jackets, degree, melonic recognition and the melon census
//! - [`power`]: strand networks and superficial divergence degrees
//! - [`beta`]: intermediate-field one-loop coefficients and the flow
//! - [`numerics`]: the lattice sum behind the one-loop logarithm
//! - [`gaussian`]: exact and Monte Carlo Gaussian moments of invariants
//! - [`cli`]: the `tensortrack` command line

pub mod beta;
pub mod census;
pub mod cli;
pub mod error;
pub mod gaussian;
pub mod graph;
pub mod melonic;
pub mod numerics;
pub mod perm;
pub mod power;

pub use error::{Error, Result};
pub use graph::{CanonicalForm, ColoredGraph, Edge};
