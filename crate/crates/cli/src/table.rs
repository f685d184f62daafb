//! Tabular results and their json / csv / text renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub recipe: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub about: String,
    pub rings: Vec<String>,
    pub budget: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matrix {
    pub title: String,
    pub rows: Vec<Vec<String>>,
}

/// Rows share `columns`; a column named `status` drives the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub matrices: Vec<Matrix>,
    pub provenance: Provenance,
}

impl ResultTable {
    pub fn new(recipe: &str, columns: &[&str], budget: u64) -> ResultTable {
        ResultTable {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            matrices: Vec::new(),
            provenance: Provenance {
                recipe: recipe.to_string(),
                about: String::new(),
                rings: Vec::new(),
                budget,
                seed: None,
            },
        }
    }

    pub fn about(mut self, about: &str) -> ResultTable {
        self.provenance.about = about.to_string();
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn add_ring(&mut self, key: &str) {
        if !self.provenance.rings.iter().any(|r| r == key) {
            self.provenance.rings.push(key.to_string());
        }
    }

    pub fn add_matrix(&mut self, title: impl Into<String>, rows: Vec<Vec<String>>) {
        self.matrices.push(Matrix {
            title: title.into(),
            rows,
        });
    }

    fn status_column(&self) -> Option<usize> {
        self.columns.iter().position(|c| c == "status")
    }

    pub fn count(&self, status: Status) -> usize {
        self.status_column()
            .map_or(0, |i| self.rows.iter().filter(|r| r[i] == status.as_str()).count())
    }

    pub fn failed(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    pub fn to_json_value(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self.columns.iter().cloned().zip(r.iter().map(|c| cell_value(c))).collect();
                Value::Object(m)
            })
            .collect();
        let mut out = Map::new();
        out.insert("rows".into(), Value::Array(rows));
        if !self.matrices.is_empty() {
            out.insert("matrices".into(), json!(self.matrices));
        }
        out.insert("provenance".into(), json!(self.provenance));
        Value::Object(out)
    }

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("json");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        w.write_record(&self.columns).expect("csv");
        for r in &self.rows {
            w.write_record(r).expect("csv");
        }
        for m in &self.matrices {
            w.write_record([""]).expect("csv");
            w.write_record([format!("matrix: {}", m.title)]).expect("csv");
            for r in &m.rows {
                w.write_record(r).expect("csv");
            }
        }
        String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
    }

    /// Aligned columns, then each matrix as a padded grid.
    fn text(&self) -> String {
        let mut s = String::new();
        let p = &self.provenance;
        writeln!(s, "# recipe: {}", p.recipe).unwrap();
        if !p.about.is_empty() {
            writeln!(s, "# about: {}", p.about).unwrap();
        }
        writeln!(s, "# rings: {}", p.rings.join(", ")).unwrap();
        writeln!(s, "# budget: {}", p.budget).unwrap();
        if let Some(seed) = p.seed {
            writeln!(s, "# seed: {seed}").unwrap();
        }
        if !self.rows.is_empty() {
            s.push('\n');
            let mut all = vec![self.columns.clone()];
            all.extend(self.rows.iter().cloned());
            s.push_str(&grid(&all));
        }
        for m in &self.matrices {
            writeln!(s, "\n## {}", m.title).unwrap();
            s.push_str(&grid(&m.rows));
        }
        s
    }
}

fn cell_value(c: &str) -> Value {
    match c.parse::<u64>() {
        Ok(v) if c == v.to_string() => Value::from(v),
        _ => Value::from(c),
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| width(c)).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{c}{}", " ".repeat(widths[j] - width(c))))
            .collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}
