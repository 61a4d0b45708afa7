//! Output formats. Every command produces a JSON value and one or more
//! tables; markdown renders all tables, CSV only the first.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever the JSON layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

pub struct Table {
    pub title: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: Option<String>, header: &[&str]) -> Table {
        Table {
            title,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

pub struct Report {
    pub command: &'static str,
    pub data: Value,
    pub tables: Vec<Table>,
    /// Lines printed after the markdown tables.
    pub summary: Vec<String>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    data: &'a Value,
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn markdown(t: &Table, out: &mut String) {
    if let Some(title) = &t.title {
        out.push_str(&format!("### {title}\n\n"));
    }
    let line = |cells: &[String]| format!("| {} |\n", cells.iter().map(|c| md_cell(c)).collect::<Vec<_>>().join(" | "));
    out.push_str(&line(&t.header));
    out.push_str(&format!("|{}\n", "---|".repeat(t.header.len())));
    for r in &t.rows {
        out.push_str(&line(r));
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command: report.command,
                data: &report.data,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Md => {
            let mut out = String::new();
            for (i, t) in report.tables.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                markdown(t, &mut out);
            }
            if !report.summary.is_empty() {
                out.push('\n');
                for l in &report.summary {
                    out.push_str(l);
                    out.push('\n');
                }
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(t) = report.tables.first() {
                w.write_record(&t.header).expect("in-memory write");
                for r in &t.rows {
                    w.write_record(r).expect("in-memory write");
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
    }
}
