//! Deterministic CSV and JSON rendering.

use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    /// Twelve significant digits in scientific notation.
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.11e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let io = |e: csv::Error| crate::error::CliError::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| crate::error::CliError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        json!({ "columns": self.columns, "rows": rows })
    }
}

/// What a command produces.
#[derive(Debug, Clone, PartialEq)]
pub enum Product {
    Table(Table),
    Report(Value),
}

impl Product {
    pub fn default_format(&self) -> Format {
        match self {
            Product::Table(_) => Format::Csv,
            Product::Report(_) => Format::Json,
        }
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match (self, format) {
            (Product::Table(t), Format::Csv) => t.to_csv(),
            (Product::Table(t), Format::Json) => Ok(pretty(&t.to_json())),
            (Product::Report(v), Format::Json) => Ok(pretty(v)),
            (Product::Report(v), Format::Csv) => report_to_table(v).to_csv(),
        }
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// One-row table of the report's top-level scalar fields, in key order.
fn report_to_table(v: &Value) -> Table {
    let empty = Map::new();
    let obj = v.as_object().unwrap_or(&empty);
    let scalars: Vec<(&String, Cell)> = obj
        .iter()
        .filter_map(|(k, v)| match v {
            Value::Number(n) if n.is_i64() => Some((k, Cell::Int(n.as_i64().unwrap()))),
            Value::Number(n) => n.as_f64().map(|x| (k, Cell::Num(x))),
            Value::Bool(b) => Some((k, Cell::Text(b.to_string()))),
            Value::String(s) => Some((k, Cell::Text(s.clone()))),
            _ => None,
        })
        .collect();
    let mut t = Table::new(scalars.iter().map(|(k, _)| k.as_str()));
    t.push(scalars.into_iter().map(|(_, c)| c).collect());
    t
}
