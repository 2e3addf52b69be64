//! Exact square-root approximation by mediants.
//!
//! A bracket `lower < sqrt(n) < upper` is refined by replacing one bound with
//! the mediant `(p1+p2)/(q1+q2)` of the two. The crate provides the exact
//! arithmetic, seed brackets, the iteration engine, a continued-fraction
//! oracle for cross-checking, and a corpus of historical tables with
//! verifiers that recompute every printed value.

pub mod cli;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod rational;
pub mod seeds;

pub use engine::{refine, refine_raw, RefinePolicy, StopRule, Termination, Trace, TraceRow};
pub use error::{Error, Result};
pub use rational::{FractionText, Radicand, RawFraction, Rational};
pub use seeds::{heron_bounds, integer_bounds, Bracket, ClassifiedApprox, SeedPair, Side};
