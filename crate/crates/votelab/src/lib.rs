//! Voting rules, per-profile axioms, and smoothed-satisfaction analysis.
//!
//! The crate is organized around a small set of exact-rational primitives:
//!
//! * [`Ranking`], [`Profile`], and [`Histogram`] — weighted preference data,
//!   all arithmetic in arbitrary-precision rationals so that ties are decided
//!   exactly, never by floating-point proximity.
//! * [`rules`] — irresolute co-winner computation for positional scoring
//!   rules, multi-round score-based elimination (STV, Coombs, Baldwin) with
//!   parallel-universes tie-breaking, maximin, Copeland, ranked pairs, and
//!   Schulze, plus deterministic resolute refinements.
//! * [`axioms`] — per-profile checks for the Condorcet criterion and
//!   participation, and a rule-level Condorcet-loser decision backed by an
//!   exact LP.
//! * [`geometry`] — hyperplane sign signatures, integer polyhedra with
//!   characteristic cones, and LP feasibility over the convex hull of a
//!   finite preference model.
//! * [`classifier`] — asymptotic labels for smoothed axiom satisfaction.
//! * [`sampling`] — reproducible Monte Carlo estimation.
//! * [`constructions`] — deterministic generators for majority-graph
//!   realizations and participation-violation profiles.
//! * [`preflib`] — Preflib SOC ingestion and corpus evaluation.

pub mod axioms;
pub mod classifier;
pub mod constructions;
pub mod fastpath;
pub mod geometry;
pub mod lp;
pub mod majority;
pub mod model;
pub mod preflib;
pub mod profile;
pub mod ranking;
pub mod rules;
pub mod sampling;

pub use majority::{MajorityStructure, WeightedMajorityGraph};
pub use profile::{Histogram, Profile};
pub use ranking::Ranking;
pub use rules::{RuleSpec, TieBreakOrder};

use num::BigRational;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Convenience constructor for integer rationals.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Convenience constructor for `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("infeasible construction: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
