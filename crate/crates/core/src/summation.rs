//! Compensated partial sums.
//!
//! Every reported sum is produced by the same accumulation path: terms are
//! added one at a time in increasing index order into a Neumaier
//! accumulator. A state that is later advanced therefore ends bit-identical
//! to a state summed to the same index in one go.

use crate::error::{Error, Result};
use crate::series::SeriesDef;

/// Default cap on the number of terms a single summation may add.
pub const DEFAULT_TERM_BUDGET: u64 = 20_000_000_000;

/// Neumaier (improved Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn compensation(&self) -> f64 {
        self.compensation
    }
}

/// Resumable partial sum `S_N = Σ_{n0 ≤ n ≤ N} a_n`.
#[derive(Debug, Clone)]
pub struct SumState {
    series: SeriesDef,
    next: u64,
    acc: Neumaier,
    terms_added: u64,
}

impl SumState {
    /// An empty sum positioned before the first term.
    pub fn new(series: SeriesDef) -> SumState {
        let next = series.n0();
        SumState {
            series,
            next,
            acc: Neumaier::new(),
            terms_added: 0,
        }
    }

    pub fn series(&self) -> &SeriesDef {
        &self.series
    }

    /// Last index included in the sum, `None` for an empty sum.
    pub fn last_index(&self) -> Option<u64> {
        (self.terms_added > 0).then(|| self.next - 1)
    }

    /// Last index included; panics on an empty sum.
    pub fn index(&self) -> u64 {
        self.last_index().expect("empty partial sum has no last index")
    }

    pub fn value(&self) -> f64 {
        self.acc.value()
    }

    pub fn compensation(&self) -> f64 {
        self.acc.compensation()
    }

    pub fn terms_added(&self) -> u64 {
        self.terms_added
    }

    #[inline]
    fn push_next(&mut self) -> Result<()> {
        let a = self.series.term(self.next)?;
        self.acc.add(a);
        self.next += 1;
        self.terms_added += 1;
        Ok(())
    }

    /// Adds terms up to and including `index`.
    pub fn advance_to(&mut self, index: u64) -> Result<()> {
        while self.next <= index {
            self.push_next()?;
        }
        Ok(())
    }

    /// Adds terms until `S_m >= threshold` and stops at the first such `m`.
    ///
    /// At most `budget` terms are added; when they run out the state keeps
    /// the progress made and [`Error::BudgetExhausted`] is returned.
    pub fn extend_to_threshold(&mut self, threshold: f64, budget: u64) -> Result<u64> {
        if threshold.is_nan() || threshold <= self.value() {
            return Err(Error::InvalidArgument(format!(
                "threshold {threshold} does not exceed the current sum {}",
                self.value()
            )));
        }
        if budget == 0 {
            return Err(Error::InvalidArgument("term budget must be at least 1".into()));
        }
        for _ in 0..budget {
            self.push_next()?;
            if self.value() >= threshold {
                return Ok(self.next - 1);
            }
        }
        Err(Error::BudgetExhausted {
            reached: self.next - 1,
            value: self.value(),
        })
    }
}

/// `S_N` with the default term budget.
pub fn partial_sum(series: &SeriesDef, n: u64) -> Result<SumState> {
    partial_sum_with_budget(series, n, DEFAULT_TERM_BUDGET)
}

pub fn partial_sum_with_budget(series: &SeriesDef, n: u64, budget: u64) -> Result<SumState> {
    let n0 = series.n0();
    if n < n0 {
        return Err(Error::IndexBeforeStart { n, n0 });
    }
    let terms = n - n0 + 1;
    if terms > budget {
        return Err(Error::IterationBudgetExceeded {
            requested: n,
            terms,
            budget,
        });
    }
    let mut state = SumState::new(series.clone());
    state.advance_to(n)?;
    Ok(state)
}

/// Compensated `Σ_{from ≤ k ≤ to} a_k`.
pub fn sum_range(series: &SeriesDef, from: u64, to: u64) -> Result<f64> {
    if from < series.n0() || to < from {
        return Err(Error::InvalidArgument(format!(
            "sum_range needs n0 <= from <= to, got n0={}, from={from}, to={to}",
            series.n0()
        )));
    }
    let mut acc = Neumaier::new();
    for k in from..=to {
        acc.add(series.term(k)?);
    }
    Ok(acc.value())
}
