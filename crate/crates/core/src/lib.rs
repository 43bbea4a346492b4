//! Preferential attachment random graphs and the finite machinery around
//! their first-order convergence law.
//!
//! * [`generator`]: seeded growth of `G_n` with `m` edges per vertex and
//!   attachment weight `deg + delta`.
//! * [`graph`]: the arrival-ordered multigraph, its simple view, and bounded
//!   path and cycle search.
//! * [`census`]: ordered subgraph counts `N_n(H, pi)` and the exact growth
//!   exponent `B(H, pi)` with optimizer count `r(H, pi)`.
//! * [`structure`]: the Q1, Q2, Q3 locality conditions with witnesses.
//! * [`game`]: exact `gamma`-pebble Ehrenfeucht–Fraïssé game solver.
//! * [`experiments`]: Monte Carlo harnesses, estimators and report output.

pub mod census;
pub mod error;
pub mod experiments;
pub mod fenwick;
pub mod game;
pub mod generator;
pub mod graph;
pub mod io;
pub mod params;
pub mod structure;

pub use census::{
    classify_pattern, count_ordered_copies, exponent_b, predicted_growth, ExponentReport,
    GrowthLaw, OrderedPattern, PatternClass,
};
pub use error::{Error, Result};
pub use game::{duplicator_wins, GameConfig, GameVerdict};
pub use generator::{attachment_weights, grow, new_initial, snapshots, PaStream, WeightTable};
pub use graph::{ArrivalGraph, Cycle, Distance, PrefixSet, SimpleView, Vertex};
pub use params::ModelParams;
pub use structure::{StructureParams, StructureReport};
