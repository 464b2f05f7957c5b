//! Tables and their CSV / JSON renderings.
//!
//! Floats are always written as `{:.16e}` (17 significant digits), so output
//! is byte-identical across runs and round-trips exactly.

use std::fmt::Write as _;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Null,
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Str(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    fn json_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) if v.is_finite() => format_float(*v),
            Cell::Float(v) => json_string(&format_float(*v)),
            Cell::Str(s) => json_string(s),
            Cell::Null => "null".into(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Float(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Cell::Str(s) => Some(s),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

/// `{:.16e}`; non-finite values become `nan`, `inf`, `-inf`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Cells of one column, top to bottom.
    pub fn values(&self, name: &str) -> Option<Vec<&Cell>> {
        let j = self.column(name)?;
        Some(self.rows.iter().map(|r| &r[j]).collect())
    }
}

/// The `schema_version` / `command` / `parameters` / `columns` / `rows` envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    /// Normalized flag values in a fixed order.
    pub parameters: Vec<(String, String)>,
    pub table: Table,
}

impl OutputRecord {
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        w.write_record(&self.table.columns).expect("in-memory write");
        for row in &self.table.rows {
            w.write_record(row.iter().map(Cell::csv_text)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"schema_version\": {},", json_string(SCHEMA_VERSION));
        let _ = writeln!(s, "  \"command\": {},", json_string(&self.command));
        s.push_str("  \"parameters\": {");
        for (i, (k, v)) in self.parameters.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            let _ = write!(s, "{sep}\n    {}: {}", json_string(k), json_string(v));
        }
        s.push_str(if self.parameters.is_empty() { "},\n" } else { "\n  },\n" });
        let cols: Vec<String> = self.table.columns.iter().map(|c| json_string(c)).collect();
        let _ = writeln!(s, "  \"columns\": [{}],", cols.join(", "));
        s.push_str("  \"rows\": [");
        for (i, row) in self.table.rows.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            let cells: Vec<String> = row.iter().map(Cell::json_text).collect();
            let _ = write!(s, "{sep}\n    [{}]", cells.join(", "));
        }
        s.push_str(if self.table.rows.is_empty() { "]\n" } else { "\n  ]\n" });
        s.push_str("}\n");
        s
    }
}
