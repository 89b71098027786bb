//! Tables of homogeneous rows rendered as CSV or JSON. Floats carry 17
//! significant digits; NaN and infinities become JSON null and empty CSV
//! cells.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A serializable record with a fixed column order.
pub trait Row: Serialize {
    const COLUMNS: &'static [&'static str];
}

/// Declares a row struct whose column list is its field list.
#[macro_export]
macro_rules! row {
    ($(#[$m:meta])* $name:ident { $($field:ident : $ty:ty),* $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, serde::Serialize)]
        pub struct $name { $(pub $field: $ty),* }
        impl $crate::output::Row for $name {
            const COLUMNS: &'static [&'static str] = &[$(stringify!($field)),*];
        }
    };
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// A single record: JSON renders an object instead of an array.
    pub record: bool,
    /// Diagnostics for standard error.
    pub notes: Vec<String>,
}

impl Table {
    pub fn from_rows<R: Row>(rows: &[R]) -> CliResult<Self> {
        let cells = rows
            .iter()
            .map(|r| {
                let Value::Object(map) = serde_json::to_value(r).map_err(|e| CliError::Output(e.to_string()))? else {
                    return Err(CliError::Output("row did not serialize to an object".into()));
                };
                R::COLUMNS
                    .iter()
                    .map(|c| map.get(*c).cloned().ok_or_else(|| CliError::Output(format!("row lacks column {c}"))))
                    .collect()
            })
            .collect::<CliResult<_>>()?;
        Ok(Self { columns: R::COLUMNS.to_vec(), rows: cells, record: false, notes: Vec::new() })
    }

    pub fn record<R: Row>(row: R) -> CliResult<Self> {
        Ok(Self { record: true, ..Self::from_rows(&[row])? })
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.notes.push(note);
        self
    }
}

pub fn format_float(v: f64) -> Option<String> {
    v.is_finite().then(|| format!("{v:.16e}"))
}

fn write_json(v: &Value, out: &mut String) {
    match v {
        Value::Number(n) if n.is_f64() => match n.as_f64().and_then(format_float) {
            Some(s) => out.push_str(&s),
            None => out.push_str("null"),
        },
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_json(item, out);
            }
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn json_row(columns: &[&str], row: &[Value], out: &mut String) {
    out.push('{');
    for (i, (c, v)) in columns.iter().zip(row).enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&Value::String(c.to_string()).to_string());
        out.push(':');
        write_json(v, out);
    }
    out.push('}');
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => n.as_f64().and_then(format_float).unwrap_or_default(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        nested => {
            let mut s = String::new();
            write_json(nested, &mut s);
            s
        }
    }
}

/// Renders the table. CSV always has a header row, even with no data rows.
pub fn emit_table(table: &Table, format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = String::new();
            if table.record && table.rows.len() == 1 {
                json_row(&table.columns, &table.rows[0], &mut out);
            } else {
                out.push('[');
                for (i, row) in table.rows.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    json_row(&table.columns, row, &mut out);
                }
                out.push(']');
            }
            out.push('\n');
            Ok(out.into_bytes())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| CliError::Output(e.to_string());
            w.write_record(&table.columns).map_err(err)?;
            for row in &table.rows {
                w.write_record(row.iter().map(csv_cell)).map_err(err)?;
            }
            w.into_inner().map_err(|e| CliError::Output(e.to_string()))
        }
    }
}
