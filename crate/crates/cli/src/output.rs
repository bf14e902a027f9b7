use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Duration;

use crate::error::CliError;

/// One long-format CSV row: a single metric of a single table cell.
#[derive(Debug, Clone, Default)]
pub struct Record {
    pub experiment: &'static str,
    pub case: String,
    pub alpha: Option<f64>,
    pub k: Option<usize>,
    pub h: String,
    pub method: String,
    pub metric: &'static str,
    pub value: f64,
    pub paper_value: Option<f64>,
    pub tol: Option<f64>,
    pub delta: Option<f64>,
    pub delta_source: Option<&'static str>,
    pub systems_solved: Option<usize>,
    pub wall_time: Option<Duration>,
}

impl Record {
    pub fn metric(&self, metric: &'static str, value: f64, paper_value: Option<f64>) -> Self {
        Self { metric, value, paper_value, ..self.clone() }
    }
}

const HEADER: [&str; 13] = [
    "experiment",
    "case",
    "alpha",
    "k",
    "h",
    "method",
    "metric",
    "value",
    "paper_value",
    "tol",
    "delta",
    "delta_source",
    "systems_solved",
];

pub fn sci(v: f64) -> String {
    format!("{v:.6e}")
}

fn opt_sci(v: Option<f64>) -> String {
    v.filter(|v| !v.is_nan()).map(sci).unwrap_or_default()
}

/// Counts print as integers, everything else in scientific notation.
fn value(metric: &str, v: f64) -> String {
    if matches!(metric, "nodes" | "grid" | "dim" | "cases" | "worst_case" | "steps" | "is_m_matrix") {
        format!("{}", v as i64)
    } else {
        sci(v)
    }
}

pub fn write_csv<W: Write>(out: W, records: &[Record], timings: bool) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = HEADER.to_vec();
    if timings {
        header.push("wall_time_s");
    }
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![
            r.experiment.to_string(),
            r.case.clone(),
            r.alpha.map(|a| format!("{a}")).unwrap_or_default(),
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            r.h.clone(),
            r.method.clone(),
            r.metric.to_string(),
            value(r.metric, r.value),
            r.paper_value.filter(|v| !v.is_nan()).map(|v| value(r.metric, v)).unwrap_or_default(),
            opt_sci(r.tol),
            opt_sci(r.delta),
            r.delta_source.unwrap_or_default().to_string(),
            r.systems_solved.map(|s| s.to_string()).unwrap_or_default(),
        ];
        if timings {
            row.push(r.wall_time.map(|t| sci(t.as_secs_f64())).unwrap_or_default());
        }
        w.write_record(&row)?;
    }
    w.flush().map_err(|source| CliError::Io { path: "output".into(), source })?;
    Ok(())
}

pub fn write_records(path: Option<&Path>, records: &[Record], timings: bool) -> Result<(), CliError> {
    match path {
        Some(p) => write_csv(BufWriter::new(create(p)?), records, timings),
        None => write_csv(io::stdout().lock(), records, timings),
    }
}

fn create(path: &Path) -> Result<File, CliError> {
    File::create(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Whitespace-separated columns with a `#` header line; header only when `rows` is empty.
pub fn emit_plotdata(path: &Path, columns: &[&str], rows: &[Vec<f64>]) -> Result<(), CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    let mut w = BufWriter::new(create(path)?);
    writeln!(w, "# {}", columns.join(" ")).map_err(io_err)?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| sci(*v)).collect();
        writeln!(w, "{}", line.join(" ")).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}
