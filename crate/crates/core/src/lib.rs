//! Summation of slowly convergent positive series.
//!
//! A positive series is summed literally, one term at a time, and the
//! decision of when to stop is delegated to an auxiliary sequence
//! `ζ_{n+1} = ζ_n · a_n / a_{n+1} − 1` seeded with `ζ_N = ε / a_N`. When the
//! term ratios `a_{n+1}/a_n` increase, that sequence keeps increasing exactly
//! when the remainder after `N` is smaller than `ε`, so a decrease rejects the
//! hypothesis `R_N < ε`.
//!
//! Modules:
//!
//! * [`series`] – series definitions, the built-in catalog and ratio checks.
//! * [`expr`] – a small expression language for user-defined terms.
//! * [`summation`] – compensated, resumable partial sums.
//! * [`kummer`] – the ζ-sequence test of a remainder hypothesis.
//! * [`search`] – step-forward and modified step-forward searches.
//! * [`bounds`] – integral-test remainder brackets used as baselines.

pub mod bounds;
pub mod error;
pub mod expr;
pub mod kummer;
pub mod search;
pub mod series;
pub mod summation;

pub use bounds::{Bracket, BracketMethod, BracketTarget};
pub use error::{Error, Result};
pub use expr::Expr;
pub use kummer::{TestConfig, TestOutcome, TraceKeep, Verdict, ZetaPoint};
pub use search::{SearchConfig, SearchMode, SearchReport, StepRecord, Termination};
pub use series::{RatioMonotone, RatioProbe, SeriesDef};
pub use summation::SumState;
