//! Integral-test brackets for the remainder `R_n = Σ_{k>n} a_k`.
//!
//! With `f` the continuous extension of the terms and `I(x) = ∫_x^∞ f`:
//!
//! | method   | lower                      | upper            | needs                 |
//! |----------|----------------------------|------------------|-----------------------|
//! | integral | `I(n+1)`                   | `I(n)`           | `f` decreasing        |
//! | morley   | `I(n) − a_n/2`             | `I(n) − a_{n+1}/2` | decreasing, convex  |
//! | nelsen   | `a_{n+1}/2 + I(n+1)`       | `I(n+1/2)`       | decreasing, convex    |
//! | boas     | `I(n+1/2) + f′(n+1/2)/8`   | `I(n+1/2)`       | decreasing, `f′` known |
//!
//! Shape conditions are checked by sampling, not proved.

use std::fmt;

use crate::error::{Error, Result};
use crate::series::SeriesDef;
use crate::summation::partial_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketMethod {
    Integral,
    Morley,
    Nelsen,
    Boas,
}

impl BracketMethod {
    pub const ALL: [BracketMethod; 4] = [
        BracketMethod::Integral,
        BracketMethod::Morley,
        BracketMethod::Nelsen,
        BracketMethod::Boas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BracketMethod::Integral => "integral",
            BracketMethod::Morley => "morley",
            BracketMethod::Nelsen => "nelsen",
            BracketMethod::Boas => "boas",
        }
    }
}

impl fmt::Display for BracketMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketTarget {
    Remainder,
    Sum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
    pub method: BracketMethod,
    pub at_index: u64,
    pub target: BracketTarget,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn is_subset_of(&self, other: &Bracket) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }
}

const SHAPE_SAMPLES: usize = 64;
/// Sampled shape checks span `[n, n · SHAPE_SPAN]`.
const SHAPE_SPAN: f64 = 1e6;

fn sample_points(n: u64) -> impl Iterator<Item = f64> {
    let start = n.max(1) as f64;
    (0..=SHAPE_SAMPLES).map(move |k| start * SHAPE_SPAN.powf(k as f64 / SHAPE_SAMPLES as f64))
}

/// `f(x_k) > f(x_{k+1})` on 64 consecutive sample pairs.
pub fn sampled_decreasing(series: &SeriesDef, n: u64) -> bool {
    let values: Vec<f64> = sample_points(n).map(|x| series.continuous(x)).collect();
    values.windows(2).all(|w| w[0] > w[1])
}

/// Non-negative second differences at 64 sample points.
pub fn sampled_convex(series: &SeriesDef, n: u64) -> bool {
    sample_points(n).skip(1).all(|x| {
        let h = 0.01 * x;
        let d2 = series.continuous(x - h) - 2.0 * series.continuous(x) + series.continuous(x + h);
        d2 >= 0.0
    })
}

fn require_shape(series: &SeriesDef, n: u64, convex: bool) -> Result<()> {
    if n < series.n0() {
        return Err(Error::IndexBeforeStart { n, n0: series.n0() });
    }
    if !series.has_tail_integral() {
        return Err(Error::MissingTailIntegral(series.name().to_string()));
    }
    if !sampled_decreasing(series, n) {
        return Err(Error::Precondition(format!(
            "f is not decreasing on [{n}, ∞) for `{}`",
            series.name()
        )));
    }
    if convex && !sampled_convex(series, n) {
        return Err(Error::Precondition(format!(
            "f is not convex on [{n}, ∞) for `{}`",
            series.name()
        )));
    }
    Ok(())
}

fn bracket(lower: f64, upper: f64, method: BracketMethod, n: u64) -> Result<Bracket> {
    if !(lower.is_finite() && upper.is_finite() && lower <= upper) {
        return Err(Error::Precondition(format!(
            "{method} bracket at {n} is degenerate: [{lower}, {upper}]"
        )));
    }
    Ok(Bracket {
        lower: lower.max(0.0),
        upper,
        method,
        at_index: n,
        target: BracketTarget::Remainder,
    })
}

pub fn integral_bracket(series: &SeriesDef, n: u64) -> Result<Bracket> {
    require_shape(series, n, false)?;
    let x = n as f64;
    bracket(
        series.tail_integral(x + 1.0)?,
        series.tail_integral(x)?,
        BracketMethod::Integral,
        n,
    )
}

pub fn morley_bracket(series: &SeriesDef, n: u64) -> Result<Bracket> {
    require_shape(series, n, true)?;
    let i_n = series.tail_integral(n as f64)?;
    bracket(
        i_n - 0.5 * series.term(n)?,
        i_n - 0.5 * series.term(n + 1)?,
        BracketMethod::Morley,
        n,
    )
}

pub fn nelsen_bracket(series: &SeriesDef, n: u64) -> Result<Bracket> {
    require_shape(series, n, true)?;
    let x = n as f64;
    bracket(
        0.5 * series.term(n + 1)? + series.tail_integral(x + 1.0)?,
        series.tail_integral(x + 0.5)?,
        BracketMethod::Nelsen,
        n,
    )
}

pub fn boas_bracket(series: &SeriesDef, n: u64) -> Result<Bracket> {
    if !series.has_derivative() && series.has_tail_integral() {
        return Err(Error::MissingDerivative(series.name().to_string()));
    }
    require_shape(series, n, false)?;
    let mid = n as f64 + 0.5;
    let i_mid = series.tail_integral(mid)?;
    bracket(
        i_mid + 0.125 * series.derivative(mid)?,
        i_mid,
        BracketMethod::Boas,
        n,
    )
}

pub fn remainder_bracket(series: &SeriesDef, n: u64, method: BracketMethod) -> Result<Bracket> {
    match method {
        BracketMethod::Integral => integral_bracket(series, n),
        BracketMethod::Morley => morley_bracket(series, n),
        BracketMethod::Nelsen => nelsen_bracket(series, n),
        BracketMethod::Boas => boas_bracket(series, n),
    }
}

/// Bracket for the full sum: `[S_N + lower, S_N + upper]`.
pub fn estimate_sum(series: &SeriesDef, n: u64, method: BracketMethod) -> Result<Bracket> {
    let remainder = remainder_bracket(series, n, method)?;
    let s = partial_sum(series, n)?.value();
    Ok(Bracket {
        lower: s + remainder.lower,
        upper: s + remainder.upper,
        target: BracketTarget::Sum,
        ..remainder
    })
}
