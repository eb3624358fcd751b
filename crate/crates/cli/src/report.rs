//! Report documents and their two renderings.
//!
//! The machine format is JSON lines: an `invocation` header, then one
//! [`Record`] per row. Field names are frozen.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    Machine,
}

/// Caps as recorded in a report header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsRecord {
    pub max_size: usize,
    pub enumerate_involutions: usize,
    pub time_budget_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invocation {
    pub command: String,
    pub specs: Vec<String>,
    pub caps: Option<CapsRecord>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

/// One output row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub kind: String,
    pub ring: String,
    pub flag_or_check: String,
    pub status: String,
    pub witness: Option<String>,
    pub nanos: u64,
}

impl Record {
    pub fn new(kind: &str, ring: impl Into<String>, flag_or_check: impl Into<String>, status: impl Into<String>) -> Record {
        Record {
            kind: kind.to_string(),
            ring: ring.into(),
            flag_or_check: flag_or_check.into(),
            status: status.into(),
            witness: None,
            nanos: 0,
        }
    }

    pub fn witness(mut self, w: Option<String>) -> Record {
        self.witness = w.filter(|s| !s.is_empty());
        self
    }

    pub fn nanos(mut self, n: u128) -> Record {
        self.nanos = n.min(u64::MAX as u128) as u64;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportDocument {
    pub invocation: Invocation,
    pub records: Vec<Record>,
    pub format: Format,
}

#[derive(Serialize, Deserialize)]
struct Header {
    kind: String,
    format: Format,
    #[serde(flatten)]
    invocation: Invocation,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("empty report")]
    Empty,
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line 1: expected an invocation header, got kind {0:?}")]
    NoHeader(String),
}

impl ReportDocument {
    pub fn render(&self) -> String {
        match self.format {
            Format::Human => self.to_human(),
            Format::Machine => self.to_machine(),
        }
    }

    pub fn to_machine(&self) -> String {
        let header = Header { kind: "invocation".into(), format: self.format, invocation: self.invocation.clone() };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    pub fn parse_machine(text: &str) -> Result<ReportDocument, ReportError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(ReportError::Empty)?;
        let json = |source| ReportError::Json { line: 1, source };
        let value: serde_json::Value = serde_json::from_str(first).map_err(json)?;
        match value.get("kind").and_then(|k| k.as_str()) {
            Some("invocation") => {}
            other => return Err(ReportError::NoHeader(other.unwrap_or_default().to_string())),
        }
        let header: Header = serde_json::from_value(value).map_err(json)?;
        let records = lines
            .map(|(i, l)| serde_json::from_str(l).map_err(|source| ReportError::Json { line: i + 1, source }))
            .collect::<Result<_, _>>()?;
        Ok(ReportDocument { invocation: header.invocation, records, format: header.format })
    }

    /// Aligned table, one line per record.
    pub fn to_human(&self) -> String {
        let inv = &self.invocation;
        let mut out = format!("finring {}", inv.command);
        for s in &inv.specs {
            let _ = write!(out, " {s}");
        }
        out.push('\n');
        if let Some(c) = &inv.caps {
            let _ = writeln!(out, "caps: max size {}, enumerate involutions up to {}", c.max_size, c.enumerate_involutions);
        }
        if self.records.is_empty() {
            out.push_str("(no rows)\n");
            return out;
        }
        let cols: Vec<[String; 6]> = self
            .records
            .iter()
            .map(|r| {
                [
                    r.kind.clone(),
                    r.ring.clone(),
                    r.flag_or_check.clone(),
                    r.status.clone(),
                    human_time(r.nanos),
                    r.witness.clone().unwrap_or_default(),
                ]
            })
            .collect();
        let head = ["kind", "ring", "flag/check", "status", "time", "witness"];
        let mut width = head.map(|h| h.chars().count());
        for row in &cols {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: [&str; 6]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i == 5 {
                    s.push_str(c);
                } else {
                    let _ = write!(s, "{c:<w$}  ", w = width[i]);
                }
            }
            s.trim_end().to_string()
        };
        out.push_str(&line(head));
        out.push('\n');
        for row in &cols {
            out.push_str(&line([&row[0], &row[1], &row[2], &row[3], &row[4], &row[5]]));
            out.push('\n');
        }
        out
    }
}

fn human_time(nanos: u64) -> String {
    match nanos {
        0 => String::new(),
        n if n < 1_000 => format!("{n}ns"),
        n if n < 1_000_000 => format!("{:.1}µs", n as f64 / 1e3),
        n if n < 1_000_000_000 => format!("{:.1}ms", n as f64 / 1e6),
        n => format!("{:.2}s", n as f64 / 1e9),
    }
}
