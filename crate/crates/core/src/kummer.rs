//! The ζ-sequence test of a remainder hypothesis.
//!
//! To test `R_N = Σ_{k>N} a_k < ε` the sequence is seeded with
//! `ζ_N = ε / a_N` and advanced by `ζ_{n+1} = ζ_n · (a_n / a_{n+1}) − 1`.
//! Summing the recurrence gives `a_N ζ_N − a_j ζ_j = Σ_{N<k≤j} a_k`, hence
//! `ζ_j = (ε − R_N + R_j) / a_j`. With increasing ratios `a_{n+1}/a_n` the
//! sequence keeps increasing when the hypothesis holds; a decrease (or a
//! non-positive value) rejects it. Acceptance only means no decrease was seen
//! within the horizon.

use crate::error::{Error, Result};
use crate::series::SeriesDef;

pub const DEFAULT_HORIZON: u64 = 1_000_000_000;

/// Number of trailing ζ values kept with [`TraceKeep::Boundary`].
pub const BOUNDARY_LEN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKeep {
    None,
    Boundary,
    /// Every ζ value including the seed. Memory grows with the horizon.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestConfig {
    pub epsilon: f64,
    pub horizon: u64,
    pub trace_keep: TraceKeep,
    /// A step counts as a decrease when `ζ_{j+1} < ζ_j − decrease_tolerance`.
    pub decrease_tolerance: f64,
}

impl TestConfig {
    pub fn new(epsilon: f64) -> TestConfig {
        TestConfig {
            epsilon,
            horizon: DEFAULT_HORIZON,
            trace_keep: TraceKeep::Boundary,
            decrease_tolerance: 0.0,
        }
    }

    pub fn with_horizon(mut self, horizon: u64) -> TestConfig {
        self.horizon = horizon;
        self
    }

    pub fn with_trace(mut self, trace_keep: TraceKeep) -> TestConfig {
        self.trace_keep = trace_keep;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive and finite, got {}",
                self.epsilon
            )));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidArgument("horizon must be at least 1".into()));
        }
        if self.decrease_tolerance.is_nan() || self.decrease_tolerance < 0.0 {
            return Err(Error::InvalidArgument(
                "decrease tolerance must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AcceptedAtHorizon,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaPoint {
    pub index: u64,
    pub zeta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestOutcome {
    pub verdict: Verdict,
    pub seed_index: u64,
    pub seed_zeta: f64,
    /// ζ values computed after the seed.
    pub iterations: u64,
    /// Peak index `j`: the last index before the first decrease.
    pub break_index: Option<u64>,
    /// Retained ζ values in index order, as selected by [`TraceKeep`].
    pub zetas: Vec<ZetaPoint>,
    pub negative_hit: bool,
    /// The scan stopped early because ζ overflowed to +∞ while still
    /// increasing. The verdict is then an acceptance with fewer than
    /// `horizon` iterations.
    pub range_exhausted: bool,
}

impl TestOutcome {
    pub fn rejected(&self) -> bool {
        self.verdict == Verdict::Rejected
    }

    pub fn zeta_at(&self, index: u64) -> Option<f64> {
        self.zetas.iter().find(|p| p.index == index).map(|p| p.zeta)
    }

    pub fn last(&self) -> Option<ZetaPoint> {
        self.zetas.last().copied()
    }
}

/// `ζ_N = ε / a_N`.
pub fn seed_zeta(series: &SeriesDef, n: u64, epsilon: f64) -> Result<f64> {
    Ok(epsilon / series.term(n)?)
}

/// One recurrence step from `ζ_n` to `ζ_{n+1}`.
pub fn zeta_step(series: &SeriesDef, n: u64, zeta_n: f64) -> Result<f64> {
    let a_n = series.term(n)?;
    let a_next = series.term(n + 1)?;
    Ok(step(zeta_n, a_n, a_next))
}

#[inline(always)]
fn step(zeta: f64, a_n: f64, a_next: f64) -> f64 {
    zeta * (a_n / a_next) - 1.0
}

/// `ζ_j = (c + R_j) / a_j` with `c = ε − R_N`, from externally supplied
/// remainders. Used to check the recurrence against exact tails.
pub fn zeta_closed_form(
    series: &SeriesDef,
    n: u64,
    epsilon: f64,
    j: u64,
    tail_j: f64,
    tail_n: f64,
) -> Result<f64> {
    if j < n {
        return Err(Error::InvalidArgument(format!("need j >= N, got j={j}, N={n}")));
    }
    let excess = epsilon - tail_n;
    Ok((excess + tail_j) / series.term(j)?)
}

struct Trace {
    keep: TraceKeep,
    points: Vec<ZetaPoint>,
}

impl Trace {
    fn push(&mut self, index: u64, zeta: f64) {
        match self.keep {
            TraceKeep::None => {}
            TraceKeep::Full => self.points.push(ZetaPoint { index, zeta }),
            TraceKeep::Boundary => {
                if self.points.len() == BOUNDARY_LEN {
                    self.points.remove(0);
                }
                self.points.push(ZetaPoint { index, zeta });
            }
        }
    }
}

/// Tests the hypothesis `R_N < ε`.
pub fn run_test(series: &SeriesDef, n: u64, config: &TestConfig) -> Result<TestOutcome> {
    config.validate()?;
    let mut a_cur = series.term(n)?;
    let seed = config.epsilon / a_cur;
    let mut trace = Trace {
        keep: config.trace_keep,
        points: Vec::new(),
    };
    trace.push(n, seed);

    let mut outcome = TestOutcome {
        verdict: Verdict::AcceptedAtHorizon,
        seed_index: n,
        seed_zeta: seed,
        iterations: 0,
        break_index: None,
        zetas: Vec::new(),
        negative_hit: false,
        range_exhausted: false,
    };

    let mut zeta = seed;
    let mut index = n;
    while outcome.iterations < config.horizon {
        let a_next = series.term(index + 1)?;
        let next = step(zeta, a_cur, a_next);
        if next.is_nan() {
            return Err(Error::ZetaOverflow { n: index + 1 });
        }
        if next == f64::INFINITY {
            outcome.range_exhausted = true;
            break;
        }
        outcome.iterations += 1;
        trace.push(index + 1, next);
        let negative = next <= 0.0;
        if negative || next < zeta - config.decrease_tolerance {
            outcome.verdict = Verdict::Rejected;
            outcome.break_index = Some(index);
            outcome.negative_hit = negative;
            break;
        }
        zeta = next;
        a_cur = a_next;
        index += 1;
    }
    outcome.zetas = trace.points;
    Ok(outcome)
}
