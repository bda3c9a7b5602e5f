//! Deterministic tabular output. Every scenario emits two tables with fixed
//! columns: a per-sample series (complex values as `re`/`im`) and a summary
//! of scalar results with targets, tolerances and pass/fail flags. Files
//! carry a `#` comment preamble echoing the full effective configuration,
//! so a run is reproducible from its own output.

use std::fmt::Write as _;

use cheshire_core::C64;

use crate::config::ScenarioConfig;

/// One table cell. Floats render as `{:.16e}` so output is byte-stable.
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// A fixed-column table rendered as tab-separated text.
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Comment preamble, header row, then one line per row.
    pub fn render(&self, preamble: &[(String, String)]) -> String {
        let mut out = String::new();
        for (key, value) in preamble {
            writeln!(out, "# {key} = {value}").unwrap();
        }
        writeln!(out, "{}", self.columns.join("\t")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            writeln!(out, "{}", cells.join("\t")).unwrap();
        }
        out
    }
}

pub const SERIES_COLUMNS: &[&str] = &["index", "label", "re", "im"];
pub const SUMMARY_COLUMNS: &[&str] = &["name", "value", "target", "tolerance", "status"];

/// Everything a scenario produces; the `run` verb writes it as two files.
pub struct ScenarioOutput {
    pub series: Table,
    pub summary: Table,
}

impl ScenarioOutput {
    pub fn new() -> Self {
        Self { series: Table::new(SERIES_COLUMNS), summary: Table::new(SUMMARY_COLUMNS) }
    }

    /// One complex sample of a labelled series.
    pub fn series_point(&mut self, index: usize, label: &str, value: C64) {
        self.series.push(vec![
            Cell::Int(index as i64),
            Cell::Text(label.to_string()),
            Cell::Float(value.re),
            Cell::Float(value.im),
        ]);
    }

    /// A reported quantity without an acceptance target.
    pub fn info(&mut self, name: &str, value: f64) {
        self.summary.push(vec![
            Cell::Text(name.to_string()),
            Cell::Float(value),
            Cell::Text("-".to_string()),
            Cell::Text("-".to_string()),
            Cell::Text("info".to_string()),
        ]);
    }

    /// A quantity checked against `target` within `tolerance`.
    pub fn gauge(&mut self, name: &str, value: f64, target: f64, tolerance: f64, pass: bool) {
        self.summary.push(vec![
            Cell::Text(name.to_string()),
            Cell::Float(value),
            Cell::Float(target),
            Cell::Float(tolerance),
            Cell::Text(if pass { "pass" } else { "fail" }.to_string()),
        ]);
    }

    /// A quantity checked against a one-sided bound.
    pub fn bound(&mut self, name: &str, value: f64, bound: f64, pass: bool) {
        self.summary.push(vec![
            Cell::Text(name.to_string()),
            Cell::Float(value),
            Cell::Float(bound),
            Cell::Text("-".to_string()),
            Cell::Text(if pass { "pass" } else { "fail" }.to_string()),
        ]);
    }
}

/// Comment block echoed into both files: scenario name, every effective
/// configuration entry in sorted order, then the seed.
pub fn preamble(scenario: &str, config: &ScenarioConfig) -> Vec<(String, String)> {
    let mut entries = vec![("scenario".to_string(), scenario.to_string())];
    entries.extend(config.entries().map(|(k, v)| (k.to_string(), v.to_string())));
    entries.push(("seed".to_string(), config.seed.to_string()));
    entries
}
