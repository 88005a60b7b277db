use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A table plus the JSON body it came from.
pub struct Report {
    pub command: &'static str,
    pub title: String,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// None for commands that only compute
    pub holds: Option<bool>,
    pub body: Value,
    /// instance to save when `holds` is false
    pub witness: Option<Value>,
}

impl Report {
    pub fn new(command: &'static str, title: impl Into<String>, headers: Vec<&'static str>) -> Self {
        Report { command, title: title.into(), headers, rows: Vec::new(), holds: None, body: json!({}), witness: None }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn failed(&self) -> bool {
        self.holds == Some(false)
    }

    /// The emitted JSON document; serde_json's map keeps keys sorted.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("command".into(), json!(self.command));
        if let Some(h) = self.holds {
            m.insert("holds".into(), json!(h));
        }
        m.insert("result".into(), self.body.clone());
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n",
            Format::Csv => {
                let mut out = self.headers.join(",") + "\n";
                for r in &self.rows {
                    out += &r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",");
                    out.push('\n');
                }
                out
            }
            Format::Text => {
                let mut out = format!("{}\n", self.title);
                out += &text_table(&self.headers, &self.rows);
                if let Some(h) = self.holds {
                    let _ = writeln!(out, "holds: {}", if h { "yes" } else { "NO" });
                }
                out
            }
        }
    }

    /// Writes the witness next to the run for replay; returns the path.
    pub fn write_witness(&self, dir: &Path, tag: &str) -> std::io::Result<Option<PathBuf>> {
        let Some(w) = &self.witness else { return Ok(None) };
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("ncx-failure-{tag}.json"));
        let doc = json!({ "schema_version": SCHEMA_VERSION, "command": self.command, "witness": w, "report": self.body });
        std::fs::write(&path, serde_json::to_string_pretty(&doc).expect("serializable") + "\n")?;
        Ok(Some(path))
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let width = |i: usize| rows.iter().map(|r| r[i].chars().count()).chain([headers[i].chars().count()]).max().unwrap_or(0);
    let widths: Vec<usize> = (0..headers.len()).map(width).collect();
    let line = |cells: Vec<&str>| {
        let mut s = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ");
        s.truncate(s.trim_end().len());
        s + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn yn(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "?".to_string(), |v| v.to_string())
}
