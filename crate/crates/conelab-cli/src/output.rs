//! Deterministic report emission: fixed field order, floats at up to 12
//! significant digits in their shortest round-trip form, so identical runs
//! produce byte-identical files on any platform.

use serde_json::{Map, Value};
use std::fmt::Write as _;

/// Shortest representation capped at 12 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into(); // collapse -0 as well
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let shortest = format!("{x}");
    if sig_digits(&shortest) <= 12 {
        shortest
    } else {
        let rounded = format!("{x:.11e}");
        // re-shorten: 1.20000000000e2 has a shorter round-trip form
        let v: f64 = rounded.parse().unwrap();
        format!("{v}")
    }
}

/// The f64 nearest to the 12-significant-digit decimal of x; JSON values go
/// through this so serde's shortest-round-trip printing stays within the
/// format contract.
pub fn round_sig(x: f64) -> f64 {
    fmt_float(x).parse().unwrap_or(x)
}

fn sig_digits(s: &str) -> usize {
    let mantissa = s.split(['e', 'E']).next().unwrap_or(s);
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let trimmed = digits.trim_start_matches('0');
    trimmed.len()
}

/// A column-aligned table for stdout plus CSV emission from the same rows.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row.iter()) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for (i, c) in self.columns.iter().enumerate() {
            let _ = write!(out, "{:<width$}  ", c, width = widths[i]);
        }
        out.push('\n');
        for (i, _) in self.columns.iter().enumerate() {
            let _ = write!(out, "{}  ", "-".repeat(widths[i]));
        }
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                let _ = write!(out, "{:<width$}  ", cell, width = widths[i]);
            }
            out.push('\n');
        }
        out
    }
}

/// Ordered-by-construction JSON object builder (serde_json sorts keys, which
/// is deterministic; numbers are pre-rounded to the format contract).
pub fn json_object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

pub fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x)).map(Value::Number).unwrap_or(Value::Null)
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_else(|_| "null".into());
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(-0.0), "0");
        assert_eq!(fmt_float(2.0), "2");
        assert_eq!(fmt_float(0.5), "0.5");
        // π has 17 significant digits in shortest form; capped to 12
        assert_eq!(fmt_float(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_float(1e300), "1e300");
        // idempotent through round_sig
        let x = 1.2345678901234567;
        assert_eq!(fmt_float(round_sig(x)), fmt_float(x));
    }

    #[test]
    fn table_csv_shape() {
        let mut t = Table::new(&["a", "b"]);
        t.row(vec!["1".into(), "2".into()]);
        assert_eq!(t.to_csv(), "a,b\n1,2\n");
    }
}
