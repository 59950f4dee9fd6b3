//! Step-forward searches.
//!
//! Each step tests `R_N < ε` at the current index; on rejection the partial
//! sum is extended to the first `m` with `S_m >= S_N + ε`, which becomes the
//! new `N`. The modified search additionally refines `ε` to `ε / K` whenever
//! a rejection took `M` or more iterations: that test is discarded and the
//! search restarts at the same `N` with the refined value.
//!
//! Step numbers count threshold crossings, whatever `ε` was in force.

use crate::error::{Error, Result};
use crate::kummer::{self, TestConfig, TraceKeep, Verdict, DEFAULT_HORIZON};
use crate::series::SeriesDef;
use crate::summation::SumState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Plain,
    Modified,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub epsilon: f64,
    pub mode: SearchMode,
    /// Interrupt threshold `M`: a rejection needing `M` or more iterations
    /// triggers a refinement.
    pub interrupt_after: u64,
    /// Refinement divisor `K`.
    pub refine_divisor: f64,
    /// How many times `ε` may be refined.
    pub refine_depth: u32,
    /// Per-test iteration cap.
    pub horizon: u64,
    /// Maximum number of terms the partial sum may hold. Neither summation
    /// nor a ζ scan goes past index `n0 + total_budget − 1`.
    pub total_budget: u64,
}

impl SearchConfig {
    pub fn plain(epsilon: f64) -> SearchConfig {
        SearchConfig {
            epsilon,
            mode: SearchMode::Plain,
            interrupt_after: 2,
            refine_divisor: 10.0,
            refine_depth: 1,
            horizon: DEFAULT_HORIZON,
            total_budget: DEFAULT_HORIZON,
        }
    }

    pub fn modified(epsilon: f64) -> SearchConfig {
        SearchConfig {
            mode: SearchMode::Modified,
            ..SearchConfig::plain(epsilon)
        }
    }

    pub fn with_cap(mut self, cap: u64) -> SearchConfig {
        self.horizon = cap;
        self.total_budget = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if self.horizon == 0 || self.total_budget == 0 {
            return bad("horizon and budget must be at least 1".into());
        }
        if self.mode == SearchMode::Modified {
            if self.interrupt_after < 2 {
                return bad(format!("M must be at least 2, got {}", self.interrupt_after));
            }
            if !(self.refine_divisor > 1.0 && self.refine_divisor.is_finite()) {
                return bad(format!("K must exceed 1, got {}", self.refine_divisor));
            }
            if self.refine_depth == 0 {
                return bad("refinement depth must be at least 1".into());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub step_number: u64,
    /// Recurrence iterations the rejecting test needed.
    pub iterations_in_step: u64,
    pub reached_index: u64,
    pub partial_sum: f64,
    pub epsilon_in_force: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// A test ran its full horizon without seeing a decrease.
    AcceptedHypothesis,
    /// A test's scan ran into the index cap without a verdict.
    CapReached,
    /// A threshold crossing needed more terms than the budget allowed.
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub start_index: u64,
    pub start_sum: f64,
    pub records: Vec<StepRecord>,
    pub termination: Termination,
    pub final_state: SumState,
    pub final_epsilon: f64,
    /// Iterations of the last test run. When the search ended inside a
    /// threshold crossing this is the rejection that started the crossing.
    pub final_test_iterations: u64,
    pub refinements: u32,
}

impl SearchReport {
    /// `[S, S + ε]`. Certified only by a horizon-limited acceptance, and not
    /// at all unless `termination` is `AcceptedHypothesis`.
    pub fn sum_interval(&self) -> (f64, f64) {
        let s = self.final_state.value();
        (s, s + self.final_epsilon)
    }
}

pub fn step_forward(series: &SeriesDef, start: SumState, config: &SearchConfig) -> Result<SearchReport> {
    let config = SearchConfig {
        mode: SearchMode::Plain,
        ..*config
    };
    search_with(series, start, &config, |_| {})
}

pub fn modified_step_forward(
    series: &SeriesDef,
    start: SumState,
    config: &SearchConfig,
) -> Result<SearchReport> {
    let config = SearchConfig {
        mode: SearchMode::Modified,
        ..*config
    };
    search_with(series, start, &config, |_| {})
}

/// Runs the search selected by `config.mode`.
pub fn search(series: &SeriesDef, start: SumState, config: &SearchConfig) -> Result<SearchReport> {
    search_with(series, start, config, |_| {})
}

/// As [`search`], calling `on_step` as soon as each record is complete.
pub fn search_with(
    series: &SeriesDef,
    start: SumState,
    config: &SearchConfig,
    mut on_step: impl FnMut(&StepRecord),
) -> Result<SearchReport> {
    config.validate()?;
    let start_index = start
        .last_index()
        .ok_or_else(|| Error::InvalidArgument("search needs a non-empty starting sum".into()))?;
    let cap_index = series.n0().saturating_add(config.total_budget - 1);
    if start_index > cap_index {
        return Err(Error::InvalidArgument(format!(
            "start index {start_index} is beyond the index cap {cap_index}"
        )));
    }

    let mut report = SearchReport {
        start_index,
        start_sum: start.value(),
        records: Vec::new(),
        termination: Termination::AcceptedHypothesis,
        final_state: start,
        final_epsilon: config.epsilon,
        final_test_iterations: 0,
        refinements: 0,
    };
    let mut epsilon = config.epsilon;
    let mut step_number = 0u64;

    loop {
        let state = &mut report.final_state;
        let n = state.index();
        let room = cap_index - n;
        let horizon = config.horizon.min(room);
        report.final_epsilon = epsilon;

        if horizon == 0 {
            report.termination = Termination::CapReached;
            report.final_test_iterations = 0;
            break;
        }
        let test = kummer::run_test(
            series,
            n,
            &TestConfig {
                epsilon,
                horizon,
                trace_keep: TraceKeep::None,
                decrease_tolerance: 0.0,
            },
        )?;

        match test.verdict {
            Verdict::Rejected
                if config.mode == SearchMode::Modified
                    && report.refinements < config.refine_depth
                    && test.iterations >= config.interrupt_after =>
            {
                epsilon /= config.refine_divisor;
                report.refinements += 1;
                continue;
            }
            Verdict::Rejected => {}
            Verdict::AcceptedAtHorizon if horizon < config.horizon && !test.range_exhausted => {
                // scan cut short by the index cap
                state.advance_to(cap_index)?;
                report.termination = Termination::CapReached;
                report.final_test_iterations = test.iterations;
                break;
            }
            Verdict::AcceptedAtHorizon => {
                report.termination = Termination::AcceptedHypothesis;
                report.final_test_iterations = test.iterations;
                break;
            }
        }

        let threshold = state.value() + epsilon;
        match state.extend_to_threshold(threshold, cap_index - n) {
            Ok(reached) => {
                step_number += 1;
                let record = StepRecord {
                    step_number,
                    iterations_in_step: test.iterations,
                    reached_index: reached,
                    partial_sum: state.value(),
                    epsilon_in_force: epsilon,
                };
                on_step(&record);
                report.records.push(record);
            }
            Err(Error::BudgetExhausted { .. }) => {
                report.termination = Termination::BudgetExhausted;
                report.final_test_iterations = test.iterations;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
