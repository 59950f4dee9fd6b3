use std::io::Write;

use clap::ValueEnum;
use kummer_sum::kummer::run_test;
use kummer_sum::search::search_with;
use kummer_sum::series::catalog_lookup;
use kummer_sum::summation::{partial_sum, SumState};
use kummer_sum::{SearchConfig, SearchReport, StepRecord, TestConfig, Termination, TraceKeep};

use crate::table::{col, fixed, float_col, Cell, Format, TableWriter};
use crate::CliError;

/// Index cap of a full reproduction run.
pub const FULL_CAP: u64 = 1_000_000_000;
/// Index cap under `--fast`.
pub const FAST_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    PartialSums,
    ZetaReject,
    ZetaAccept,
    #[value(name = "sf-logA")]
    SfLogA,
    #[value(name = "sf-logB")]
    SfLogB,
    #[value(name = "msf-logA")]
    MsfLogA,
    #[value(name = "msf-logB")]
    MsfLogB,
    All,
}

impl TableId {
    const EACH: [TableId; 7] = [
        TableId::PartialSums,
        TableId::ZetaReject,
        TableId::ZetaAccept,
        TableId::SfLogA,
        TableId::SfLogB,
        TableId::MsfLogA,
        TableId::MsfLogB,
    ];

    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// A search table: series, starting index, ε, mode and the number of steps
/// in the published table (the last one being the run's final row).
struct SearchTable {
    series: &'static str,
    start: u64,
    epsilon: f64,
    modified: bool,
    published_steps: u64,
    title: &'static str,
}

fn search_table(id: TableId) -> Option<SearchTable> {
    let t = |series, start, epsilon, modified, published_steps, title| SearchTable {
        series,
        start,
        epsilon,
        modified,
        published_steps,
        title,
    };
    match id {
        TableId::SfLogA => Some(t("logA", 100_000, 0.01, false, 9, "step-forward search, log(n+1)/n^1.5, ε = 0.01")),
        TableId::SfLogB => Some(t("logB", 1_000_000, 1e-4, false, 7, "step-forward search, log(n+1)/n^1.75, ε = 0.0001")),
        TableId::MsfLogA => Some(t(
            "logA",
            100_000,
            0.01,
            true,
            39,
            "modified step-forward search, log(n+1)/n^1.5, ε = 0.01, M = 2, K = 10",
        )),
        TableId::MsfLogB => Some(t(
            "logB",
            1_000_000,
            1e-4,
            true,
            28,
            "modified step-forward search, log(n+1)/n^1.75, ε = 0.0001, M = 2, K = 10",
        )),
        _ => None,
    }
}

pub struct Reproduce<'a> {
    pub format: Format,
    pub precision: usize,
    pub fast: bool,
    pub out: &'a mut dyn Write,
}

impl Reproduce<'_> {
    pub fn run(&mut self, id: TableId) -> Result<(), CliError> {
        let ids: Vec<TableId> = if id == TableId::All { TableId::EACH.to_vec() } else { vec![id] };
        for (k, id) in ids.into_iter().enumerate() {
            if k > 0 {
                writeln!(self.out)?;
            }
            match id {
                TableId::PartialSums => self.partial_sums()?,
                TableId::ZetaReject => self.zeta_table(id, 0.1, &[17_802, 17_803, 17_804, 17_805])?,
                TableId::ZetaAccept => self.zeta_table(id, 0.15, &[59_996, 59_997, 59_998, 59_999])?,
                _ => self.search_rows(id)?,
            }
        }
        Ok(())
    }

    fn label(&mut self, id: TableId, title: &str) -> Result<(), CliError> {
        match self.format {
            Format::Markdown => writeln!(self.out, "### {}: {title}\n", id.name())?,
            _ => writeln!(self.out, "# {}: {title}", id.name())?,
        }
        Ok(())
    }

    fn partial_sums(&mut self) -> Result<(), CliError> {
        self.label(TableId::PartialSums, "partial sums of log(n+1)/n^1.5")?;
        let mut state = SumState::new(catalog_lookup("logA")?);
        let precision = self.precision;
        let mut table = TableWriter::new(self.format, self.out, &[col("n"), float_col("S_n")])?;
        for n in [5_000, 10_000, 20_000, 50_000, 100_000] {
            state.advance_to(n)?;
            table.row(&[Cell::text(n.to_string()), Cell::float(state.value(), precision)])?;
        }
        Ok(())
    }

    fn zeta_table(&mut self, id: TableId, epsilon: f64, indices: &[u64]) -> Result<(), CliError> {
        let series = catalog_lookup("logA")?;
        let config = TestConfig::new(epsilon).with_horizon(50_000).with_trace(TraceKeep::Full);
        let outcome = run_test(&series, 10_000, &config)?;
        let title = format!(
            "ζ_n from ζ_10000 = {} (ε = {epsilon}), {} after {} iterations",
            fixed(outcome.seed_zeta, self.precision),
            if outcome.rejected() { "rejected" } else { "accepted at the horizon" },
            outcome.iterations,
        );
        self.label(id, &title)?;
        let precision = self.precision;
        let mut table = TableWriter::new(self.format, self.out, &[col("n"), float_col("zeta")])?;
        for &n in indices {
            let zeta = outcome
                .zeta_at(n)
                .ok_or_else(|| CliError::Domain(format!("ζ_{n} was not computed")))?;
            table.row(&[Cell::text(n.to_string()), Cell::float(zeta, precision)])?;
        }
        Ok(())
    }

    fn search_rows(&mut self, id: TableId) -> Result<(), CliError> {
        let spec = search_table(id).expect("search table id");
        let cap = if self.fast { FAST_CAP } else { FULL_CAP };
        self.label(id, &format!("{} (index cap {cap})", spec.title))?;

        let series = catalog_lookup(spec.series)?;
        let config = if spec.modified {
            SearchConfig::modified(spec.epsilon)
        } else {
            SearchConfig::plain(spec.epsilon)
        }
        .with_cap(cap);
        let start = partial_sum(&series, spec.start)?;

        let precision = self.precision;
        let mut table = TableWriter::new(self.format, self.out, &SEARCH_COLUMNS)?;
        table.row(&[
            Cell::text("0"),
            Cell::text("N/A"),
            Cell::text(spec.start.to_string()),
            Cell::float(start.value(), precision),
            Cell::text(spec.epsilon.to_string()),
        ])?;
        let mut io_error = None;
        let report = search_with(&series, start, &config, |record| {
            if io_error.is_none() {
                io_error = table.row(&record_cells(record, precision)).err();
            }
        })?;
        if let Some(e) = io_error {
            return Err(e.into());
        }

        let next_step = report.records.last().map_or(1, |r| r.step_number + 1);
        if self.fast && report.termination != Termination::AcceptedHypothesis {
            // the run was cut short by the fast budget: the remaining
            // published steps are not computed
            for step in next_step..=spec.published_steps.max(next_step) {
                table.row(&[
                    Cell::text(step.to_string()),
                    Cell::text("skipped (budget)"),
                    Cell::text(""),
                    Cell::blank_float(),
                    Cell::text(""),
                ])?;
            }
        } else {
            table.row(&final_row(&report, next_step, precision))?;
        }
        Ok(())
    }
}

pub const SEARCH_COLUMNS: [crate::table::Column; 5] =
    [col("step"), col("iterations"), col("n"), float_col("S_n"), col("epsilon")];

pub fn record_cells(record: &StepRecord, precision: usize) -> [Cell; 5] {
    [
        Cell::text(record.step_number.to_string()),
        Cell::text(record.iterations_in_step.to_string()),
        Cell::text(record.reached_index.to_string()),
        Cell::float(record.partial_sum, precision),
        Cell::text(record.epsilon_in_force.to_string()),
    ]
}

/// The row that closes a search table: the last test's iterations and the
/// index and sum the search ended at.
fn final_row(report: &SearchReport, step: u64, precision: usize) -> [Cell; 5] {
    [
        Cell::text(step.to_string()),
        Cell::text(report.final_test_iterations.to_string()),
        Cell::text(report.final_state.index().to_string()),
        Cell::float(report.final_state.value(), precision),
        Cell::text(report.final_epsilon.to_string()),
    ]
}
