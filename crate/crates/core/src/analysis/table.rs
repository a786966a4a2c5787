//! Tabular output shared by every report: aligned text, CSV and JSON.
//!
//! All three formats carry the same numbers. Numbers print in shortest
//! round-trip form, so a value read back from any format is bit-identical.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    /// Undefined metric, e.g. IRR without a sign change.
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Missing => Value::Null,
        }
    }
}

/// Shortest round-trip decimal; scientific notation only for extreme magnitudes.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-6..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::validation(
                "format",
                format!("unknown format `{other}` (expected table, csv or json)"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match header");
        self.rows.push(row);
    }

    /// Column index by exact header name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric column, `None` for missing or text cells.
    pub fn numbers(&self, col: usize) -> Vec<Option<f64>> {
        self.rows
            .iter()
            .map(|r| match r[col] {
                Cell::Num(x) => Some(x),
                _ => None,
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Table => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let err = |e: csv::Error| Error::Csv(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Csv(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({
            "columns": self.columns,
            "rows": rows,
        }))
        .expect("tables serialize");
        s.push('\n');
        s
    }

    /// Column-aligned text; numbers right-aligned, text left-aligned.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain(std::iter::once(self.columns[i].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, parts: Vec<String>| {
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(
            &mut out,
            self.columns
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect(),
        );
        line(&mut out, widths.iter().map(|&w| "-".repeat(w)).collect());
        for (row, text) in self.rows.iter().zip(&cells) {
            line(
                &mut out,
                row.iter()
                    .zip(text)
                    .zip(&widths)
                    .map(|((cell, t), &w)| match cell {
                        Cell::Num(_) => format!("{t:>w$}"),
                        _ => format!("{t:<w$}"),
                    })
                    .collect(),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["pathway", "total (USD/kg)", "irr (fraction)"]);
        t.push(vec!["gray".into(), 1.799.into(), Cell::Missing]);
        t.push(vec!["green".into(), 0.1.into(), 0.07.into()]);
        t
    }

    #[test]
    fn csv_uses_lf_and_round_trip_numbers() {
        let csv = sample().to_csv().unwrap();
        assert_eq!(
            csv,
            "pathway,total (USD/kg),irr (fraction)\ngray,1.799,\ngreen,0.1,0.07\n"
        );
    }

    #[test]
    fn formats_carry_identical_numbers() {
        let t = sample();
        let json: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["rows"][0][1].as_f64(), Some(1.799));
        assert!(json["rows"][0][2].is_null());
        let text = t.to_text();
        assert!(text.contains("1.799") && text.contains("0.07"));
        let back: Vec<f64> = t
            .to_csv()
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert_eq!(back, vec![1.799, 0.1]);
    }

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(5.0), "5");
        assert_eq!(format_number(1e-300), "1e-300");
        assert_eq!(format_number(12_345_678.25), "12345678.25");
        assert_eq!(format_number(0.1 + 0.2), "0.30000000000000004");
    }

    #[test]
    #[should_panic]
    fn ragged_rows_are_a_bug() {
        Table::new(["a", "b"]).push(vec![1.0.into()]);
    }
}
