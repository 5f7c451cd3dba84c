//! Reports: per-degree tables, findings and extra payloads, rendered as text or JSON.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::alpha_ce::DegreeRow;
use crate::linalg::{rank, RatMatrix};

pub const TOOL: &str = "homlie";
pub const REPORT_FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub degree: usize,
    pub dim_c: usize,
    pub dim_im: usize,
    pub dim_ker: usize,
    pub dim_h: usize,
}

impl From<&DegreeRow> for TableRow {
    fn from(r: &DegreeRow) -> Self {
        TableRow {
            degree: r.degree,
            dim_c: r.dim_c,
            dim_im: r.dim_im,
            dim_ker: r.dim_ker,
            dim_h: r.dim_h,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn new(title: impl Into<String>, rows: &[DegreeRow]) -> Self {
        Table {
            title: title.into(),
            rows: rows.iter().map(TableRow::from).collect(),
        }
    }

    /// Rows of a complex given its differentials d¹, d², …
    pub fn from_differentials(title: impl Into<String>, diffs: &[RatMatrix]) -> Self {
        let mut rows = Vec::new();
        let mut prev = 0;
        for (k, d) in diffs.iter().enumerate() {
            let r = rank(d);
            rows.push(TableRow {
                degree: k + 1,
                dim_c: d.cols(),
                dim_im: r,
                dim_ker: d.cols() - r,
                dim_h: d.cols() - r - prev,
            });
            prev = r;
        }
        Table { title: title.into(), rows }
    }

    pub fn h_dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim_h).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub property: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub tool_version: String,
    pub format_version: u64,
    pub command: String,
    pub input: Value,
    #[serde(default)]
    pub tables: Vec<Table>,
    #[serde(default)]
    pub findings: Vec<Finding>,
    /// Command-specific payloads (representatives, bases, output documents).
    #[serde(default)]
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Report {
            tool: TOOL.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            format_version: REPORT_FORMAT_VERSION,
            command: command.into(),
            input,
            tables: Vec::new(),
            findings: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn finding(&mut self, property: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.findings.push(Finding {
            property: property.into(),
            holds,
            detail: detail.into(),
        });
    }

    pub fn all_hold(&self) -> bool {
        self.findings.iter().all(|f| f.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&render_table(t));
            out.push('\n');
        }
        for f in &self.findings {
            let tag = if f.holds { "ok  " } else { "FAIL" };
            if f.detail.is_empty() {
                let _ = writeln!(out, "{tag} {}", f.property);
            } else {
                let _ = writeln!(out, "{tag} {}: {}", f.property, f.detail);
            }
        }
        for (k, v) in &self.data {
            match v {
                Value::Array(items) if !items.is_empty() => {
                    let _ = writeln!(out, "{k}:");
                    for item in items {
                        let _ = writeln!(out, "  {item}");
                    }
                }
                _ => {
                    let _ = writeln!(out, "{k}: {v}");
                }
            }
        }
        out
    }
}

pub const TABLE_HEADER: [&str; 5] = ["i", "dim C̃ⁱ", "dim Im ∂ⁱ", "dim ker ∂ⁱ", "dim H̃ⁱ"];

pub fn render_table(t: &Table) -> String {
    let cells: Vec<[String; 5]> = t
        .rows
        .iter()
        .map(|r| [r.degree, r.dim_c, r.dim_im, r.dim_ker, r.dim_h].map(|x| x.to_string()))
        .collect();
    let width = |c: usize| cells.iter().map(|r| r[c].chars().count()).chain([TABLE_HEADER[c].chars().count()]).max().unwrap_or(0);
    let widths: Vec<usize> = (0..5).map(width).collect();
    let line = |row: [&str; 5]| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}", w = *w)).collect();
        padded.join("  ")
    };
    let mut out = format!("# {}\n", t.title);
    out.push_str(&line(TABLE_HEADER));
    out.push('\n');
    for r in &cells {
        out.push_str(&line([&r[0], &r[1], &r[2], &r[3], &r[4]]));
        out.push('\n');
    }
    out
}
