use std::fmt::Write;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A labelled integer grid for CSV and Markdown output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub corner: String,
    pub rows: Vec<Vec<String>>,
    /// Column labels; `0..` when empty.
    pub columns: Vec<String>,
}

impl Table {
    pub fn grid<T: ToString>(name: &str, corner: &str, rows: &[Vec<T>]) -> Self {
        Table {
            name: name.into(),
            corner: corner.into(),
            rows: rows
                .iter()
                .map(|r| r.iter().map(T::to_string).collect())
                .collect(),
            columns: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
    pub tables: Vec<Table>,
}

pub fn digest(parts: &[(&str, String)]) -> String {
    let mut h = Sha256::new();
    for (k, v) in parts {
        h.update(k.as_bytes());
        h.update([0]);
        h.update(v.as_bytes());
        h.update([0]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(command: &str, digest: String) -> Self {
        Report {
            command: command.into(),
            digest,
            checks: Vec::new(),
            data: Map::new(),
            tables: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail,
        });
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(
            key.into(),
            serde_json::to_value(value).expect("report values serialize"),
        );
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("tool".into(), Value::from(env!("CARGO_PKG_NAME")));
                obj.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
                obj.insert("command".into(), Value::from(self.command.clone()));
                obj.insert("input_digest".into(), Value::from(self.digest.clone()));
                obj.insert("pass".into(), Value::from(self.pass()));
                obj.insert(
                    "checks".into(),
                    serde_json::to_value(&self.checks).expect("checks serialize"),
                );
                for (k, v) in &self.data {
                    obj.insert(k.clone(), v.clone());
                }
                let mut out = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
                out.push('\n');
                out
            }
            Format::Csv => {
                let mut out = String::new();
                let labelled = self.tables.len() > 1;
                for (k, t) in self.tables.iter().enumerate() {
                    if labelled {
                        if k > 0 {
                            out.push('\n');
                        }
                        writeln!(out, "# {}", t.name).expect("write");
                    }
                    for row in &t.rows {
                        writeln!(out, "{}", row.join(",")).expect("write");
                    }
                }
                out
            }
            Format::Markdown => {
                let mut out = String::new();
                for t in &self.tables {
                    writeln!(out, "### {}\n", t.name).expect("write");
                    let width = t.rows.iter().map(Vec::len).max().unwrap_or(0);
                    let columns: Vec<String> = if t.columns.is_empty() {
                        (0..width).map(|j| j.to_string()).collect()
                    } else {
                        t.columns.clone()
                    };
                    writeln!(out, "| {} | {} |", t.corner, columns.join(" | ")).expect("write");
                    writeln!(out, "|{}", "---|".repeat(width + 1)).expect("write");
                    for (i, row) in t.rows.iter().enumerate() {
                        writeln!(out, "| {i} | {} |", row.join(" | ")).expect("write");
                    }
                    out.push('\n');
                }
                if !self.checks.is_empty() {
                    writeln!(out, "### checks\n").expect("write");
                    for c in &self.checks {
                        let mark = if c.pass { "PASS" } else { "FAIL" };
                        match &c.detail {
                            Some(d) => writeln!(out, "- {mark} {}: {d}", c.name),
                            None => writeln!(out, "- {mark} {}", c.name),
                        }
                        .expect("write");
                    }
                }
                out
            }
        }
    }
}
