//! `kummer-sum`: sums, ζ-tests, step-forward searches and remainder brackets
//! for positive series, from the built-in catalog or an expression in `n`.
//!
//! Exit codes: 0 success or accepted hypothesis, 1 rejected hypothesis,
//! 2 usage error, 3 domain error (non-positive term, overflow, failed
//! precondition).

mod args;
mod reproduce;
mod table;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kummer_sum::bounds::{estimate_sum, remainder_bracket};
use kummer_sum::kummer::run_test;
use kummer_sum::search::search_with;
use kummer_sum::summation::{partial_sum, SumState};
use kummer_sum::{BracketMethod, Error, SearchConfig, SearchMode, TestConfig, Termination, TraceKeep, Verdict};

use args::{parse_count, parse_positive, parse_positive_count, resolve_series};
use reproduce::{record_cells, Reproduce, TableId, SEARCH_COLUMNS};
use table::{col, float_col, Cell, Format, TableWriter};

#[derive(Parser, Debug)]
#[command(name = "kummer-sum", version, about = "Sum positive series with the ζ-sequence test and step-forward search")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: Format,

    /// Decimals shown for sums and ζ values
    #[arg(long, default_value_t = 6, global = true)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// Catalog name (logA, logB, boasC, loglogD, invsq, telescope, geom(r))
    /// or an expression in n such as "1/(n*(n+1))"
    #[arg(long)]
    series: String,

    /// First index of an expression series (default 1)
    #[arg(long, value_parser = parse_count)]
    from: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partial sums S_N
    Sum {
        #[command(flatten)]
        series: SeriesArgs,
        /// Last index; repeat for several sums
        #[arg(long, required = true, value_parser = parse_count)]
        upto: Vec<u64>,
    },
    /// Test the hypothesis that the remainder after N is below ε
    Test {
        #[command(flatten)]
        series: SeriesArgs,
        /// Index N whose remainder Σ_{k>N} a_k is tested
        #[arg(long, value_parser = parse_count)]
        at: u64,
        #[arg(long, value_parser = parse_positive)]
        epsilon: f64,
        /// Maximum number of recurrence steps
        #[arg(long, default_value = "1e9", value_parser = parse_positive_count)]
        horizon: u64,
        /// Print every ζ value instead of the last few
        #[arg(long)]
        trace: bool,
    },
    /// Step-forward search for the sum
    Search {
        #[command(flatten)]
        series: SeriesArgs,
        /// Index of the starting partial sum
        #[arg(long, value_parser = parse_count)]
        start: u64,
        #[arg(long, value_parser = parse_positive)]
        epsilon: f64,
        #[arg(long, value_enum, default_value = "plain")]
        mode: ModeArg,
        /// Rejections needing at least M iterations refine ε (modified mode)
        #[arg(long, default_value = "2", value_parser = parse_positive_count)]
        m: u64,
        /// Refinement divisor
        #[arg(long, default_value = "10", value_parser = parse_positive)]
        k: f64,
        /// Maximum number of terms in the partial sum
        #[arg(long, default_value = "1e9", value_parser = parse_positive_count)]
        cap: u64,
        /// How many times ε may be refined
        #[arg(long, default_value = "1", value_parser = parse_positive_count)]
        depth: u64,
        /// Per-test iteration limit (default: the cap). A test can only
        /// accept if its scan of this many steps fits below the cap.
        #[arg(long, value_parser = parse_positive_count)]
        horizon: Option<u64>,
    },
    /// Integral-test brackets for the remainder or the sum
    Bounds {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, value_parser = parse_count)]
        at: u64,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "remainder")]
        target: TargetArg,
    },
    /// Recompute the published tables
    Reproduce {
        #[arg(long, value_enum)]
        table: TableId,
        /// Cap every search at 1e8 terms; later steps are marked skipped
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Modified,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Integral,
    Morley,
    Nelsen,
    Boas,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetArg {
    Remainder,
    Sum,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        if e.is_usage() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        CliError::Io(e)
    }
}

/// Where results go: tables to stdout, verdict and summary lines too unless
/// the output is CSV, in which case they go to stderr so stdout stays a
/// single parseable table.
struct Output<'a> {
    format: Format,
    precision: usize,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn summary(&mut self, line: &str) -> io::Result<()> {
        if self.format == Format::Csv {
            eprintln!("{line}");
            Ok(())
        } else {
            writeln!(self.out, "{line}")?;
            self.out.flush()
        }
    }

    fn fixed(&self, x: f64) -> String {
        table::fixed(x, self.precision)
    }
}

fn cmd_sum(o: &mut Output, series: &SeriesArgs, upto: &[u64]) -> Result<ExitCode, CliError> {
    let series = resolve_series(&series.series, series.from)?;
    let mut upto = upto.to_vec();
    upto.sort_unstable();
    upto.dedup();
    let mut state = SumState::new(series);
    let mut table = TableWriter::new(o.format, o.out, &[col("n"), float_col("S_n")])?;
    for n in upto {
        state.advance_to(n)?;
        table.row(&[Cell::text(n.to_string()), Cell::float(state.value(), o.precision)])?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_test(o: &mut Output, series: &SeriesArgs, at: u64, epsilon: f64, horizon: u64, trace: bool) -> Result<ExitCode, CliError> {
    let series = resolve_series(&series.series, series.from)?;
    let keep = if trace { TraceKeep::Full } else { TraceKeep::Boundary };
    let outcome = run_test(&series, at, &TestConfig::new(epsilon).with_horizon(horizon).with_trace(keep))?;

    let verdict = match outcome.verdict {
        Verdict::Rejected => format!(
            "REJECTED peak={} iters={}",
            outcome.break_index.expect("rejections record their peak"),
            outcome.iterations
        ),
        Verdict::AcceptedAtHorizon => {
            let last = outcome.last().expect("the seed is always kept");
            let mut line = format!(
                "ACCEPTED@HORIZON ζ_last={} n_last={} iters={}",
                o.fixed(last.zeta),
                last.index,
                outcome.iterations
            );
            if outcome.range_exhausted {
                line.push_str(" (ζ overflowed to +inf while increasing)");
            }
            line
        }
    };
    o.summary(&verdict)?;
    o.summary(&format!("seed ζ_{}={}", outcome.seed_index, o.fixed(outcome.seed_zeta)))?;

    let mut table = TableWriter::new(o.format, o.out, &[col("n"), float_col("zeta")])?;
    for point in &outcome.zetas {
        table.row(&[Cell::text(point.index.to_string()), Cell::float(point.zeta, o.precision)])?;
    }
    Ok(match outcome.verdict {
        Verdict::Rejected => ExitCode::from(1),
        Verdict::AcceptedAtHorizon => ExitCode::SUCCESS,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    o: &mut Output,
    series: &SeriesArgs,
    start: u64,
    epsilon: f64,
    mode: ModeArg,
    m: u64,
    k: f64,
    cap: u64,
    depth: u64,
    horizon: Option<u64>,
) -> Result<ExitCode, CliError> {
    let series = resolve_series(&series.series, series.from)?;
    let config = SearchConfig {
        epsilon,
        mode: match mode {
            ModeArg::Plain => SearchMode::Plain,
            ModeArg::Modified => SearchMode::Modified,
        },
        interrupt_after: m,
        refine_divisor: k,
        refine_depth: u32::try_from(depth).map_err(|_| CliError::Usage(format!("--depth {depth} is too large")))?,
        horizon: horizon.unwrap_or(cap),
        ..SearchConfig::plain(epsilon).with_cap(cap)
    };
    config.validate()?;
    let start = partial_sum(&series, start)?;
    o.summary(&format!("start n={} S={}", start.index(), o.fixed(start.value())))?;

    let precision = o.precision;
    let mut table = TableWriter::new(o.format, o.out, &SEARCH_COLUMNS)?;
    let mut io_error = None;
    let report = search_with(&series, start, &config, |record| {
        if io_error.is_none() {
            io_error = table.row(&record_cells(record, precision)).err();
        }
    })?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    drop(table);

    let s = report.final_state.value();
    let n = report.final_state.index();
    let line = match report.termination {
        Termination::AcceptedHypothesis => {
            let (lo, hi) = report.sum_interval();
            format!(
                "ACCEPTED interval=[{},{}] n={n} epsilon={}",
                o.fixed(lo),
                o.fixed(hi),
                report.final_epsilon
            )
        }
        Termination::CapReached => format!("CAP S={} n={n} iters={}", o.fixed(s), report.final_test_iterations),
        Termination::BudgetExhausted => format!("BUDGET S={} n={n} epsilon={}", o.fixed(s), report.final_epsilon),
    };
    o.summary(&line)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(o: &mut Output, series: &SeriesArgs, at: u64, method: MethodArg, target: TargetArg) -> Result<ExitCode, CliError> {
    let series = resolve_series(&series.series, series.from)?;
    let methods: Vec<BracketMethod> = match method {
        MethodArg::Integral => vec![BracketMethod::Integral],
        MethodArg::Morley => vec![BracketMethod::Morley],
        MethodArg::Nelsen => vec![BracketMethod::Nelsen],
        MethodArg::Boas => vec![BracketMethod::Boas],
        MethodArg::All => BracketMethod::ALL.to_vec(),
    };
    let single = methods.len() == 1;
    let columns = [col("method"), col("n"), float_col("lower"), float_col("upper"), float_col("width")];
    let mut table = TableWriter::new(o.format, o.out, &columns)?;
    for method in methods {
        let bracket = match target {
            TargetArg::Remainder => remainder_bracket(&series, at, method),
            TargetArg::Sum => estimate_sum(&series, at, method),
        };
        let bracket = match bracket {
            Ok(b) => b,
            Err(e @ (Error::Precondition(_) | Error::MissingTailIntegral(_) | Error::MissingDerivative(_))) if !single => {
                eprintln!("{method}: skipped: {e}");
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        table.row(&[
            Cell::text(method.name()),
            Cell::text(at.to_string()),
            Cell::float(bracket.lower, o.precision),
            Cell::float(bracket.upper, o.precision),
            Cell::float(bracket.width(), o.precision),
        ])?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let mut o = Output {
        format: cli.format,
        precision: cli.precision,
        out: &mut lock,
    };
    match &cli.command {
        Command::Sum { series, upto } => cmd_sum(&mut o, series, upto),
        Command::Test { series, at, epsilon, horizon, trace } => cmd_test(&mut o, series, *at, *epsilon, *horizon, *trace),
        Command::Search { series, start, epsilon, mode, m, k, cap, depth, horizon } => {
            cmd_search(&mut o, series, *start, *epsilon, *mode, *m, *k, *cap, *depth, *horizon)
        }
        Command::Bounds { series, at, method, target } => cmd_bounds(&mut o, series, *at, *method, *target),
        Command::Reproduce { table, fast } => {
            Reproduce {
                format: o.format,
                precision: o.precision,
                fast: *fast,
                out: o.out,
            }
            .run(*table)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        // a closed pipe (e.g. `| head`) is not a failure of the computation
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
