//! The report document every subcommand emits.
//!
//! JSON layout (version 1):
//!
//! | key          | content                                                   |
//! |--------------|-----------------------------------------------------------|
//! | `version`    | schema version, currently `1`                             |
//! | `command`    | subcommand name                                           |
//! | `inputs`     | effective inputs after config/env/flag resolution         |
//! | `results`    | subcommand-specific object                                |
//! | `provenance` | `{subject, text}` notes for every asserted identity       |
//! | `warnings`   | human-readable warnings                                   |
//! | `timings`    | only with `--timings`                                     |
//! | `pass`       | overall verdict                                           |
//!
//! Object keys inside `inputs` and `results` are sorted, so output is
//! byte-stable for fixed inputs. CSV renders the document's primary table;
//! text renders a summary followed by the same table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub subject: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub elapsed_ms: u64,
}

/// Rows for the CSV and text renderings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tabular {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Tabular {
    pub fn new(headers: &[&str]) -> Self {
        Tabular {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub provenance: Vec<Provenance>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    pub pass: bool,
    #[serde(skip)]
    pub summary: Vec<(String, String)>,
    #[serde(skip)]
    pub table: Tabular,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        ReportDocument {
            version: REPORT_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            provenance: Vec::new(),
            warnings: Vec::new(),
            timings: None,
            pass: true,
            summary: Vec::new(),
            table: Tabular::default(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("inputs serialize");
        self.inputs.insert(key.to_string(), v);
        self
    }

    pub fn note(&mut self, subject: impl Into<String>, text: impl Into<String>) {
        self.provenance.push(Provenance {
            subject: subject.into(),
            text: text.into(),
        });
    }

    pub fn summarize(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.table.headers).expect("in-memory write");
        for row in &self.table.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "permv {} (report v{})", self.command, self.version);
        let width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
        if !self.table.headers.is_empty() && !self.table.rows.is_empty() {
            out.push('\n');
            out.push_str(&render_columns(&self.table));
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(out, "elapsed: {} ms", t.elapsed_ms);
        }
        let _ = writeln!(out, "{}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

fn render_columns(t: &Tabular) -> String {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if k + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let pad = w - cell.chars().count();
                s.push_str(cell);
                s.extend(std::iter::repeat_n(' ', pad + 2));
            }
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(&t.headers);
    for row in &t.rows {
        out.push_str(&line(row));
    }
    out
}
