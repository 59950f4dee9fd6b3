use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Markdown,
}

/// One table cell: the displayed text and, for floating-point values, the
/// full-precision form that CSV output carries in an extra column.
#[derive(Debug, Clone)]
pub struct Cell {
    pub text: String,
    pub full: Option<String>,
}

impl Cell {
    pub fn text(text: impl Into<String>) -> Cell {
        Cell { text: text.into(), full: None }
    }

    pub fn float(x: f64, precision: usize) -> Cell {
        Cell {
            text: fixed(x, precision),
            full: Some(full_precision(x)),
        }
    }

    /// A float column entry with no value, e.g. a skipped row.
    pub fn blank_float() -> Cell {
        Cell { text: String::new(), full: Some(String::new()) }
    }
}

/// `precision` decimals, switching to scientific notation for magnitudes
/// where fixed notation would be unreadable or show only zeros.
pub fn fixed(x: f64, precision: usize) -> String {
    let a = x.abs();
    if a >= 1e15 || (a > 0.0 && a < 0.1f64.powi(precision as i32)) {
        format!("{x:.precision$e}")
    } else {
        format!("{x:.precision$}")
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn full_precision(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, Copy)]
pub struct Column {
    pub name: &'static str,
    /// Whether CSV output adds a `<name>_full` column for this one.
    pub float: bool,
}

pub const fn col(name: &'static str) -> Column {
    Column { name, float: false }
}

pub const fn float_col(name: &'static str) -> Column {
    Column { name, float: true }
}

enum Sink<'a> {
    Text(&'a mut dyn Write),
    Csv(Box<csv::Writer<&'a mut dyn Write>>),
}

/// Writes a table row by row, flushing after each row so that long runs can
/// be consumed as they progress.
pub struct TableWriter<'a> {
    format: Format,
    columns: Vec<Column>,
    sink: Sink<'a>,
}

impl<'a> TableWriter<'a> {
    pub fn new(format: Format, out: &'a mut dyn Write, columns: &[Column]) -> io::Result<TableWriter<'a>> {
        let sink = match format {
            Format::Csv => Sink::Csv(Box::new(csv::WriterBuilder::new().from_writer(out))),
            Format::Plain | Format::Markdown => Sink::Text(out),
        };
        let mut table = TableWriter { format, columns: columns.to_vec(), sink };
        table.write_header()?;
        Ok(table)
    }

    fn write_header(&mut self) -> io::Result<()> {
        let names: Vec<&str> = self.columns.iter().map(|c| c.name).collect();
        match &mut self.sink {
            Sink::Csv(w) => {
                let mut header: Vec<String> = names.iter().map(|s| s.to_string()).collect();
                header.extend(self.columns.iter().filter(|c| c.float).map(|c| format!("{}_full", c.name)));
                w.write_record(&header)?;
                w.flush()
            }
            Sink::Text(w) => {
                match self.format {
                    Format::Markdown => {
                        writeln!(w, "| {} |", names.join(" | "))?;
                        writeln!(w, "|{}", "---|".repeat(names.len()))?;
                    }
                    _ => writeln!(w, "{}", names.join(", "))?,
                }
                w.flush()
            }
        }
    }

    pub fn row(&mut self, cells: &[Cell]) -> io::Result<()> {
        assert_eq!(cells.len(), self.columns.len(), "row width does not match the header");
        match &mut self.sink {
            Sink::Csv(w) => {
                let mut record: Vec<&str> = cells.iter().map(|c| c.text.as_str()).collect();
                for (column, cell) in self.columns.iter().zip(cells) {
                    if column.float {
                        record.push(cell.full.as_deref().unwrap_or(""));
                    }
                }
                w.write_record(&record)?;
                w.flush()
            }
            Sink::Text(w) => {
                let texts: Vec<&str> = cells.iter().map(|c| c.text.as_str()).collect();
                match self.format {
                    Format::Markdown => writeln!(w, "| {} |", texts.join(" | "))?,
                    _ => writeln!(w, "{}", texts.join(", "))?,
                }
                w.flush()
            }
        }
    }
}
