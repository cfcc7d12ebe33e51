//! Predictive moments of exchangeable Bernoulli sequences.
//!
//! The central objects are mixing measures on `[0,1]` (point masses, finite
//! discrete measures, Beta laws) and their posteriors under Bernoulli
//! sampling. Everything predictive about the next `k` observations is a
//! polynomial functional of the posterior: the probability of a block pattern
//! with `s` ones in `k` slots equals `E[θ^s (1−θ)^{k−s} | data]`, so the
//! `k`-step predictives are determined by the first `k` posterior moments and
//! by nothing less.
//!
//! Modules:
//! - [`measures`] — mixing measures, moments, posterior updating;
//! - [`hierarchy`] — the triangular run↔moment binomial transform and the
//!   complete-monotonicity screen;
//! - [`predictive`] — pattern/run predictives, plug-in vs Bayes gaps,
//!   predictive ranges, mean-equivalence witnesses;
//! - [`beta_exact`] — exact rational arithmetic for Beta posteriors with
//!   half-integer parameters (Jeffreys/Hill predictives);
//! - [`geometry`] — Bernoulli KL geometry and proper-scoring-rule regrets;
//! - [`dynamics`] — martingale schemes, order/c.i.d. diagnostics, asymptotic
//!   gap experiments, and stopping-value distortion;
//! - [`verify`] — the runnable property suite behind the `verify` CLI verb.
//!
//! All numeric code is generic over [`scalar::Scalar`], instantiated with
//! either exact rationals or `f64`; the mode is picked at construction and
//! never changes silently.

pub mod beta_exact;
pub mod dynamics;
pub mod geometry;
pub mod hierarchy;
pub mod measures;
pub mod predictive;
pub mod rng;
pub mod scalar;
pub mod verify;

pub use measures::{MixingMeasure, MomentSequence, PosteriorState};
pub use scalar::{Rational, Scalar};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("every atom received zero likelihood; posterior is degenerate")]
    DegeneratePosterior,
    #[error("invalid bracket: need a < m < b within [0,1], got a={a}, m={m}, b={b}")]
    InvalidBracket { a: String, m: String, b: String },
    #[error("invalid counts: need 0 <= s <= n, got n={n}, s={s}")]
    InvalidCounts { n: u64, s: u64 },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("order {requested} exceeds the exact binomial limit {max}")]
    OrderTooLarge { requested: u32, max: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate posterior admits no stopping witness")]
    NoWitness,
    #[error("unknown figure id: {0}")]
    UnknownFigure(String),
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
    #[error("cannot parse number: {0:?}")]
    ParseNumber(String),
}

pub type Result<T> = std::result::Result<T, Error>;
