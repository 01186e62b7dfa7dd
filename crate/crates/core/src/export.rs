//! Plot-friendly CSV tables and JSON report envelopes.
//!
//! Every file carries the tool version, the format version, the seed and an
//! echo of the configuration. CSV files put these in `#` comment lines ahead
//! of the header row. Floats are written with Rust's shortest round-trip
//! formatting, so identical inputs give byte-identical files.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{FsqError, Result};
use crate::finite_section::{CompressionTraceReport, PseudospectrumGrid, SzegoSequence};
use crate::groups::TraceConvergenceTable;

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputMeta {
    pub tool_version: String,
    pub format_version: u32,
    pub seed: Option<u64>,
    pub config: Value,
}

impl OutputMeta {
    pub fn new(seed: Option<u64>, config: Value) -> Self {
        Self {
            tool_version: TOOL_VERSION.to_string(),
            format_version: FORMAT_VERSION,
            seed,
            config,
        }
    }
}

/// JSON envelope around a report body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    #[serde(flatten)]
    pub meta: OutputMeta,
    pub data: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(meta: OutputMeta, data: T) -> Self {
        Self { meta, data }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| FsqError::Parse(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, out: W, meta: &OutputMeta) -> Result<()> {
        let io = |e: std::io::Error| FsqError::Resource(e.to_string());
        let mut out = out;
        writeln!(out, "# tool_version={}", meta.tool_version).map_err(io)?;
        writeln!(out, "# format_version={}", meta.format_version).map_err(io)?;
        match meta.seed {
            Some(s) => writeln!(out, "# seed={s}").map_err(io)?,
            None => writeln!(out, "# seed=none").map_err(io)?,
        }
        writeln!(out, "# config={}", meta.config).map_err(io)?;
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| FsqError::Resource(e.to_string());
        w.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row).map_err(csv_err)?;
        }
        w.flush().map_err(io)
    }

    pub fn render(&self, meta: &OutputMeta) -> Result<String> {
        let mut buf = Vec::new();
        self.write_to(&mut buf, meta)?;
        String::from_utf8(buf).map_err(|e| FsqError::Parse(e.to_string()))
    }
}

/// Parses a table written by [`CsvTable::write_to`], skipping comment lines.
pub fn read_table(text: &str) -> Result<CsvTable> {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let err = |e: csv::Error| FsqError::Parse(e.to_string());
    let columns = r.headers().map_err(err)?.iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|x| x.iter().map(String::from).collect()))
        .collect::<std::result::Result<_, _>>()
        .map_err(err)?;
    Ok(CsvTable { columns, rows })
}

fn f(x: f64) -> String {
    format!("{x}")
}

/// Columns `re, im, s_min, member`.
pub fn pseudospectrum_table(grid: &PseudospectrumGrid) -> CsvTable {
    let mut t = CsvTable::new(&["re", "im", "s_min", "member"]);
    for (idx, (&s, &m)) in grid.s_min.iter().zip(&grid.membership).enumerate() {
        let z = grid.point(idx);
        t.push(vec![f(z.re), f(z.im), f(s), (m as u8).to_string()]);
    }
    t
}

/// Long format `n, index, eigenvalue`.
pub fn eigenvalue_table(spectra: &[(usize, Vec<f64>)]) -> CsvTable {
    let mut t = CsvTable::new(&["n", "index", "eigenvalue"]);
    for (n, values) in spectra {
        for (i, &v) in values.iter().enumerate() {
            t.push(vec![n.to_string(), i.to_string(), f(v)]);
        }
    }
    t
}

pub fn szego_table(seq: &SzegoSequence) -> CsvTable {
    let mut t = CsvTable::new(&["n", "dim", "value"]);
    for r in &seq.rows {
        t.push(vec![r.n.to_string(), r.dim.to_string(), f(r.value)]);
    }
    t
}

/// Long format `word, p, trace`.
pub fn trace_table(table: &TraceConvergenceTable) -> CsvTable {
    let mut t = CsvTable::new(&["word", "p", "trace"]);
    for row in &table.rows {
        for (&p, &tr) in table.primes.iter().zip(&row.traces) {
            t.push(vec![row.word.to_string(), p.to_string(), tr.to_string()]);
        }
    }
    t
}

/// Long format `n, dim, word, re, im`.
pub fn compression_table(report: &CompressionTraceReport) -> CsvTable {
    let mut t = CsvTable::new(&["n", "dim", "word", "re", "im"]);
    for row in &report.rows {
        for (w, v) in report.words.iter().zip(&row.values) {
            t.push(vec![row.n.to_string(), row.dim.to_string(), w.to_string(), f(v.re), f(v.im)]);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_header_and_roundtrip() {
        let meta = OutputMeta::new(Some(7), json!({"n": 3}));
        let mut t = CsvTable::new(&["a", "b"]);
        t.push(vec![f(0.1), "x,y".into()]);
        let text = t.render(&meta).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(format!("# tool_version={TOOL_VERSION}").as_str()));
        assert_eq!(lines.next(), Some("# format_version=1"));
        assert_eq!(lines.next(), Some("# seed=7"));
        assert_eq!(lines.next(), Some(r#"# config={"n":3}"#));
        assert_eq!(lines.next(), Some("a,b"));
        assert_eq!(read_table(&text).unwrap(), t);
    }

    #[test]
    fn report_flattens_metadata() {
        let r = Report::new(OutputMeta::new(None, json!({})), json!([1, 2]));
        let v: Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(v["format_version"], 1);
        assert_eq!(v["seed"], Value::Null);
        assert_eq!(v["data"], json!([1, 2]));
    }
}
