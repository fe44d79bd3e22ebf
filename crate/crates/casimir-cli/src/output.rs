//! Rendering of result envelopes.
//!
//! JSON is the archival format: the envelope verbatim, pretty-printed. CSV
//! and table views flatten nested objects into dotted column names. A sweep
//! envelope contributes one row per sweep point; anything else is one row.
//! CSV floats are written with 17 significant digits so a round-trip through
//! text reproduces the exact bits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use crate::config::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

pub fn emit(envelope: &Value, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(envelope)
                .expect("envelopes are valid JSON by construction");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(&rows_of(envelope))?,
        Format::Table => render_table(&rows_of(envelope)),
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

type Row = Vec<(String, Value)>;

/// One flat row per sweep point, or a single row for everything else.
fn rows_of(envelope: &Value) -> Vec<Row> {
    match envelope.pointer("/result/rows").and_then(Value::as_array) {
        Some(points) => points.iter().map(flatten).collect(),
        None => vec![flatten(envelope)],
    }
}

/// Depth-first flattening into dotted keys; array elements get their index
/// as a path segment.
fn flatten(value: &Value) -> Row {
    let mut row = Vec::new();
    walk("", value, &mut row);
    row
}

fn walk(prefix: &str, value: &Value, row: &mut Row) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_owned()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                walk(&join(key), inner, row);
            }
        }
        Value::Array(items) => {
            for (index, inner) in items.iter().enumerate() {
                walk(&join(&index.to_string()), inner, row);
            }
        }
        leaf => row.push((prefix.to_owned(), leaf.clone())),
    }
}

/// Column order: first appearance across all rows.
fn header_union(rows: &[Row]) -> Vec<String> {
    let mut columns = Vec::new();
    for row in rows {
        for (key, _) in row {
            if !columns.contains(key) {
                columns.push(key.clone());
            }
        }
    }
    columns
}

fn lookup<'a>(row: &'a Row, key: &str) -> Option<&'a Value> {
    row.iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

fn csv_cell(value: Option<&Value>) -> String {
    match value {
        None | Some(Value::Null) => String::new(),
        Some(Value::Bool(b)) => b.to_string(),
        Some(Value::Number(n)) => {
            if let Some(i) = n.as_i64() {
                i.to_string()
            } else if let Some(u) = n.as_u64() {
                u.to_string()
            } else {
                format!("{:.16e}", n.as_f64().expect("not i64/u64, so f64"))
            }
        }
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

fn render_csv(rows: &[Row]) -> Result<String, CliError> {
    let columns = header_union(rows);
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(&columns)
        .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    for row in rows {
        let record: Vec<String> = columns
            .iter()
            .map(|column| csv_cell(lookup(row, column)))
            .collect();
        writer
            .write_record(&record)
            .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 strings is UTF-8"))
}

fn table_cell(value: Option<&Value>) -> String {
    match value {
        None | Some(Value::Null) => "-".to_owned(),
        Some(Value::Number(n)) if n.is_f64() => {
            format!("{:.6e}", n.as_f64().expect("checked"))
        }
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

fn render_table(rows: &[Row]) -> String {
    let mut text = String::new();
    if let [row] = rows {
        // One record reads best as a key/value listing.
        let width = row.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (key, value) in row {
            let _ = writeln!(text, "{key:width$}  {}", table_cell(Some(value)));
        }
        return text;
    }
    let columns = header_union(rows);
    let mut widths: Vec<usize> = columns.iter().map(String::len).collect();
    let grid: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            columns
                .iter()
                .enumerate()
                .map(|(i, column)| {
                    let cell = table_cell(lookup(row, column));
                    widths[i] = widths[i].max(cell.len());
                    cell
                })
                .collect()
        })
        .collect();
    for (i, column) in columns.iter().enumerate() {
        let sep = if i + 1 == columns.len() { "\n" } else { "  " };
        let _ = write!(text, "{column:width$}{sep}", width = widths[i]);
    }
    for row in grid {
        for (i, cell) in row.iter().enumerate() {
            let sep = if i + 1 == row.len() { "\n" } else { "  " };
            let _ = write!(text, "{cell:width$}{sep}", width = widths[i]);
        }
    }
    text
}

/// Helper for tests and the sweep module: a flat single-row view.
#[allow(dead_code)]
pub fn flat_keys(envelope: &Value) -> Map<String, Value> {
    flatten(envelope).into_iter().collect()
}
