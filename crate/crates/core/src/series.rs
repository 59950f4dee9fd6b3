//! Positive series: term rules, the built-in catalog and the ratio
//! monotonicity check.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{self, Expr};

/// Largest integral exponent evaluated by repeated squaring.
const MAX_EXACT_EXPONENT: f64 = 9_007_199_254_740_992.0; // 2^53

/// `base^exponent` with a fixed evaluation rule shared by catalog terms and
/// parsed expressions: integral exponents use binary exponentiation (exact
/// for small integers and dyadic bases), everything else `exp(y · ln x)`.
pub fn power(base: f64, exponent: f64) -> f64 {
    if exponent.fract() == 0.0 && exponent.abs() <= MAX_EXACT_EXPONENT {
        let e = exponent.abs() as u64;
        if exponent >= 0.0 {
            return binary_power(base, e);
        }
        let denominator = binary_power(base, e);
        if denominator.is_infinite() {
            // the reciprocal would flush to zero although the true value may
            // still be a representable (subnormal) number
            binary_power(1.0 / base, e)
        } else {
            1.0 / denominator
        }
    } else if base > 0.0 {
        (exponent * base.ln()).exp()
    } else if base == 0.0 {
        if exponent > 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        f64::NAN
    }
}

fn binary_power(base: f64, mut e: u64) -> f64 {
    let mut b = base;
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        e >>= 1;
        if e > 0 {
            b *= b;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioMonotone {
    VerifiedIncreasing,
    VerifiedNot,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    Increasing,
    /// First `j` with `b_{j+1} <= b_j`.
    ViolationAt(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioProbe {
    pub n_lo: u64,
    pub n_hi: u64,
    pub verdict: ProbeVerdict,
}

/// Upper end of the scan backing a `VerifiedIncreasing` flag.
pub const RATIO_SCAN_LIMIT: u64 = 1_000_000;

#[derive(Clone)]
enum TermRule {
    /// `log(n+1)/n^p`
    LogOverPower(f64),
    /// `1/(n*log(n)^2)`
    InvNLogSquared,
    /// `1/(n*log(n)*loglog(n)^2)`
    InvNLogLogLogSquared,
    /// `1/n^p`
    InvPower(f64),
    /// `1/(n*(n+1))`
    Telescoping,
    /// `r^n`
    Geometric(f64),
    Expression(Arc<Expr>),
}

impl TermRule {
    // Each arm mirrors the operation order of the catalog formula text so a
    // parsed copy of that text evaluates bit-identically.
    #[inline]
    fn eval(&self, x: f64) -> f64 {
        match *self {
            TermRule::LogOverPower(p) => (x + 1.0).ln() / power(x, p),
            TermRule::InvNLogSquared => 1.0 / (x * power(x.ln(), 2.0)),
            TermRule::InvNLogLogLogSquared => 1.0 / (x * x.ln() * power(x.ln().ln(), 2.0)),
            TermRule::InvPower(p) => 1.0 / power(x, p),
            TermRule::Telescoping => 1.0 / (x * (x + 1.0)),
            TermRule::Geometric(r) => power(r, x),
            TermRule::Expression(ref e) => e.eval(x),
        }
    }
}

/// A positive series `Σ_{n ≥ n0} a_n`.
#[derive(Clone)]
pub struct SeriesDef {
    name: String,
    formula: String,
    rule: TermRule,
    n0: u64,
    tail_integral: Option<fn(f64) -> f64>,
    term_derivative: Option<fn(f64) -> f64>,
    ratio_monotone: RatioMonotone,
}

impl fmt::Debug for SeriesDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesDef")
            .field("name", &self.name)
            .field("formula", &self.formula)
            .field("n0", &self.n0)
            .field("tail_integral", &self.tail_integral.is_some())
            .field("term_derivative", &self.term_derivative.is_some())
            .field("ratio_monotone", &self.ratio_monotone)
            .finish()
    }
}

impl SeriesDef {
    /// A series whose term is given by an expression in `n`.
    pub fn from_expression(text: &str, n0: u64) -> Result<SeriesDef> {
        let parsed = expr::parse(text)?;
        Ok(SeriesDef {
            name: text.to_string(),
            formula: parsed.to_string(),
            rule: TermRule::Expression(Arc::new(parsed)),
            n0,
            tail_integral: None,
            term_derivative: None,
            ratio_monotone: RatioMonotone::Unknown,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Term formula in the expression grammar.
    pub fn formula(&self) -> &str {
        &self.formula
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn ratio_monotone(&self) -> RatioMonotone {
        self.ratio_monotone
    }

    pub fn has_tail_integral(&self) -> bool {
        self.tail_integral.is_some()
    }

    pub fn has_derivative(&self) -> bool {
        self.term_derivative.is_some()
    }

    /// `a_n`.
    #[inline]
    pub fn term(&self, n: u64) -> Result<f64> {
        if n < self.n0 {
            return Err(Error::IndexBeforeStart { n, n0: self.n0 });
        }
        let value = self.rule.eval(n as f64);
        if value > 0.0 && value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonPositiveTerm { n, value })
        }
    }

    /// `b_n = a_{n+1} / a_n`.
    pub fn ratio(&self, n: u64) -> Result<f64> {
        let a = self.term(n)?;
        Ok(self.term(n + 1)? / a)
    }

    /// Continuous extension `f(x)` with `f(n) = a_n`, unchecked.
    pub fn continuous(&self, x: f64) -> f64 {
        self.rule.eval(x)
    }

    /// `∫_x^∞ f`.
    pub fn tail_integral(&self, x: f64) -> Result<f64> {
        self.tail_integral
            .map(|i| i(x))
            .ok_or_else(|| Error::MissingTailIntegral(self.name.clone()))
    }

    /// `f′(x)`.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.term_derivative
            .map(|d| d(x))
            .ok_or_else(|| Error::MissingDerivative(self.name.clone()))
    }

    /// Scans `[n_lo, n_hi]` and, when the ratios increase strictly up to
    /// [`RATIO_SCAN_LIMIT`], marks the series as verified.
    pub fn verify_ratio_monotone(&mut self, n_hi: u64) -> Result<RatioProbe> {
        let probe = check_ratio_monotone(self, self.n0, n_hi)?;
        self.ratio_monotone = match probe.verdict {
            ProbeVerdict::ViolationAt(_) => RatioMonotone::VerifiedNot,
            ProbeVerdict::Increasing if n_hi >= RATIO_SCAN_LIMIT => RatioMonotone::VerifiedIncreasing,
            ProbeVerdict::Increasing => RatioMonotone::Unknown,
        };
        Ok(probe)
    }
}

/// Returns the first `j` in `[n_lo, n_hi)` with `b_{j+1} <= b_j`, if any.
pub fn check_ratio_monotone(series: &SeriesDef, n_lo: u64, n_hi: u64) -> Result<RatioProbe> {
    if n_lo < series.n0 || n_hi <= n_lo {
        return Err(Error::InvalidArgument(format!(
            "ratio scan needs n0 <= n_lo < n_hi, got n0={}, n_lo={n_lo}, n_hi={n_hi}",
            series.n0
        )));
    }
    let mut a_prev = series.term(n_lo)?;
    let mut a_cur = series.term(n_lo + 1)?;
    let mut b_prev = a_cur / a_prev;
    for j in n_lo..n_hi {
        a_prev = a_cur;
        a_cur = series.term(j + 2)?;
        let b = a_cur / a_prev;
        if b <= b_prev {
            return Ok(RatioProbe {
                n_lo,
                n_hi,
                verdict: ProbeVerdict::ViolationAt(j),
            });
        }
        b_prev = b;
    }
    Ok(RatioProbe {
        n_lo,
        n_hi,
        verdict: ProbeVerdict::Increasing,
    })
}

/// Identifiers accepted by [`catalog_lookup`]; `geom` takes a ratio argument,
/// as in `geom(0.5)`.
pub const CATALOG_NAMES: [&str; 7] = ["logA", "logB", "boasC", "loglogD", "invsq", "telescope", "geom(r)"];

fn entry(
    name: &str,
    formula: &str,
    rule: TermRule,
    n0: u64,
    tail_integral: Option<fn(f64) -> f64>,
    term_derivative: Option<fn(f64) -> f64>,
    ratio_monotone: RatioMonotone,
) -> SeriesDef {
    SeriesDef {
        name: name.to_string(),
        formula: formula.to_string(),
        rule,
        n0,
        tail_integral,
        term_derivative,
        ratio_monotone,
    }
}

// ∫_x^∞ log(t+1) t^{-3/2} dt
fn log_a_tail(x: f64) -> f64 {
    2.0 * (x + 1.0).ln() / x.sqrt() + 4.0 * (1.0 / x.sqrt()).atan()
}

fn log_a_derivative(x: f64) -> f64 {
    power(x, -1.5) / (x + 1.0) - 1.5 * (x + 1.0).ln() * power(x, -2.5)
}

fn boas_tail(x: f64) -> f64 {
    1.0 / x.ln()
}

fn boas_derivative(x: f64) -> f64 {
    let l = x.ln();
    -(l + 2.0) / (x * x * l * l * l)
}

fn loglog_tail(x: f64) -> f64 {
    1.0 / x.ln().ln()
}

fn loglog_derivative(x: f64) -> f64 {
    let l = x.ln();
    let ll = l.ln();
    let g = x * l * ll * ll;
    -(l * ll * ll + ll * ll + 2.0 * ll) / (g * g)
}

fn invsq_tail(x: f64) -> f64 {
    1.0 / x
}

fn invsq_derivative(x: f64) -> f64 {
    -2.0 / (x * x * x)
}

/// Looks up a built-in series by name.
pub fn catalog_lookup(name: &str) -> Result<SeriesDef> {
    use RatioMonotone::*;
    let series = match name {
        "logA" => entry(
            "logA",
            "log(n+1)/n^1.5",
            TermRule::LogOverPower(1.5),
            1,
            Some(log_a_tail),
            Some(log_a_derivative),
            VerifiedIncreasing,
        ),
        "logB" => entry(
            "logB",
            "log(n+1)/n^1.75",
            TermRule::LogOverPower(1.75),
            1,
            None,
            None,
            VerifiedIncreasing,
        ),
        "boasC" => entry(
            "boasC",
            "1/(n*log(n)^2)",
            TermRule::InvNLogSquared,
            2,
            Some(boas_tail),
            Some(boas_derivative),
            VerifiedIncreasing,
        ),
        "loglogD" => entry(
            "loglogD",
            "1/(n*log(n)*loglog(n)^2)",
            TermRule::InvNLogLogLogSquared,
            3,
            Some(loglog_tail),
            Some(loglog_derivative),
            VerifiedIncreasing,
        ),
        "invsq" => entry(
            "invsq",
            "1/n^2",
            TermRule::InvPower(2.0),
            1,
            Some(invsq_tail),
            Some(invsq_derivative),
            VerifiedIncreasing,
        ),
        "telescope" => entry(
            "telescope",
            "1/(n*(n+1))",
            TermRule::Telescoping,
            1,
            None,
            None,
            VerifiedIncreasing,
        ),
        _ => return geometric_from_name(name),
    };
    Ok(series)
}

fn geometric_from_name(name: &str) -> Result<SeriesDef> {
    let ratio = name
        .strip_prefix("geom(")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::UnknownSeries(name.to_string()))?;
    let r: f64 = ratio
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("`{ratio}` is not a number in {name}")))?;
    geometric(r)
}

/// `Σ_{n ≥ 0} r^n` for `0 < r < 1`.
pub fn geometric(r: f64) -> Result<SeriesDef> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "geometric ratio must lie in (0, 1), got {r}"
        )));
    }
    Ok(entry(
        &format!("geom({r})"),
        &format!("{r}^n"),
        TermRule::Geometric(r),
        0,
        None,
        None,
        RatioMonotone::VerifiedNot,
    ))
}
