use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Floats are written with 17 significant digits.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Clone, Debug)]
pub enum Cell {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => float(*x),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) => serde_json::Number::from_f64(*x)
                .map(Value::Number)
                .unwrap_or_else(|| Value::String(x.to_string())),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// Either a table (CSV by default) or a record (JSON by default). A record
/// keeps its keys in insertion order.
#[derive(Clone, Debug)]
pub enum Report {
    Table {
        header: Vec<&'static str>,
        rows: Vec<Vec<Cell>>,
    },
    Record(Vec<(String, Cell)>),
}

impl Report {
    pub fn table(header: Vec<&'static str>) -> Self {
        Report::Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        if let Report::Table { rows, header } = self {
            debug_assert_eq!(row.len(), header.len());
            rows.push(row);
        }
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Into<Cell>) {
        if let Report::Record(kv) = self {
            kv.push((key.into(), value.into()));
        }
    }

    pub fn render(&self, format: Option<Format>) -> String {
        let format = format.unwrap_or(match self {
            Report::Table { .. } => Format::Csv,
            Report::Record(_) => Format::Json,
        });
        match (self, format) {
            (Report::Table { header, rows }, Format::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header).expect("in-memory write");
                for r in rows {
                    w.write_record(r.iter().map(Cell::text))
                        .expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
            }
            (Report::Table { header, rows }, Format::Json) => {
                let arr: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            header
                                .iter()
                                .zip(r)
                                .map(|(h, c)| (h.to_string(), c.json()))
                                .collect::<Map<_, _>>(),
                        )
                    })
                    .collect();
                serde_json::to_string_pretty(&arr).expect("json") + "\n"
            }
            (Report::Record(kv), Format::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["key", "value"]).expect("in-memory write");
                for (k, v) in kv {
                    w.write_record([k.clone(), v.text()])
                        .expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
            }
            (Report::Record(kv), Format::Json) => {
                let obj: Map<String, Value> =
                    kv.iter().map(|(k, v)| (k.clone(), v.json())).collect();
                serde_json::to_string_pretty(&Value::Object(obj)).expect("json") + "\n"
            }
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(text.as_bytes())?;
            s.flush()
        }
    }
}
