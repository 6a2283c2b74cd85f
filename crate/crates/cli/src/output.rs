//! Rendering of reports as aligned text, CSV or JSON lines.

use std::fmt::Write as _;

use bacodes::pud::format_sig6;
use bacodes::LatticeValue;
use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    #[value(name = "json-lines")]
    JsonLines,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i128),
    Bool(bool),
    /// Six significant digits in text, full precision in JSON.
    Num(f64),
    /// Shortest round-trip representation everywhere.
    Full(f64),
    /// An exact discrepancy and its value.
    Disc(LatticeValue, f64),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn int(v: impl Into<i128>) -> Self {
        Cell::Int(v.into())
    }

    pub fn disc(v: impl Into<LatticeValue>, gamma: f64) -> Self {
        let v = v.into();
        Cell::Disc(v, v.value(gamma))
    }

    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Num(x) => format_sig6(*x),
            Cell::Full(x) => x.to_string(),
            Cell::Disc(v, x) => format!("{v} ({})", format_sig6(*x)),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => json!(s),
            Cell::Int(v) => match i64::try_from(*v) {
                Ok(v) => json!(v),
                Err(_) => json!(v.to_string()),
            },
            Cell::Bool(b) => json!(b),
            Cell::Num(x) | Cell::Full(x) => float(*x),
            Cell::Disc(v, x) => json!({ "exact": v.to_string(), "value": float(*x) }),
            Cell::Empty => Value::Null,
        }
    }
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// One block of output.
#[derive(Clone, Debug, PartialEq)]
pub enum Report {
    /// Named fields of a single result.
    Record(Vec<(&'static str, Cell)>),
    /// Rows under fixed column names.
    Table {
        columns: Vec<&'static str>,
        rows: Vec<Vec<Cell>>,
    },
    /// Text passed through unchanged in every format.
    Raw(String),
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn aligned(lines: &[Vec<String>], out: &mut String) {
    let cols = lines.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| lines.iter().filter_map(|l| l.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for line in lines {
        let mut text = String::new();
        for (c, cell) in line.iter().enumerate() {
            if c + 1 == line.len() {
                text.push_str(cell);
            } else {
                write!(text, "{cell:<w$}  ", w = widths[c]).unwrap();
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match (self, format) {
            (Report::Raw(s), _) => out.push_str(s),
            (Report::Record(fields), Format::Table) => {
                let lines: Vec<Vec<String>> =
                    fields.iter().map(|(k, v)| vec![k.to_string(), v.render()]).collect();
                aligned(&lines, &mut out);
            }
            (Report::Record(fields), Format::Csv) => {
                out.push_str("field,value\n");
                for (k, v) in fields {
                    writeln!(out, "{k},{}", csv_field(&v.render())).unwrap();
                }
            }
            (Report::Record(fields), Format::JsonLines) => {
                let map: Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
                writeln!(out, "{}", Value::Object(map)).unwrap();
            }
            (Report::Table { columns, rows }, Format::Table) => {
                let mut lines = vec![columns.iter().map(|c| c.to_string()).collect::<Vec<_>>()];
                lines.extend(rows.iter().map(|r| r.iter().map(Cell::render).collect()));
                aligned(&lines, &mut out);
            }
            (Report::Table { columns, rows }, Format::Csv) => {
                writeln!(out, "{}", columns.join(",")).unwrap();
                for r in rows {
                    let fields: Vec<String> = r.iter().map(|c| csv_field(&c.render())).collect();
                    writeln!(out, "{}", fields.join(",")).unwrap();
                }
            }
            (Report::Table { columns, rows }, Format::JsonLines) => {
                for r in rows {
                    let map: Map<String, Value> =
                        columns.iter().zip(r).map(|(k, v)| (k.to_string(), v.json())).collect();
                    writeln!(out, "{}", Value::Object(map)).unwrap();
                }
            }
        }
        out
    }
}
