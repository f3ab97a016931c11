// SPDX-License-Identifier: Apache-2.0

//! Tabular output as CSV or JSON.

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Printed to the configured number of significant digits.
    Num(f64),
    /// Printed with a fixed number of decimals.
    Fixed(f64, usize),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn opt(value: Option<f64>) -> Cell {
        value.map_or(Cell::Empty, Cell::Num)
    }

    fn text(&self, digits: usize) -> String {
        match self {
            Cell::Num(v) => format_significant(*v, digits),
            Cell::Fixed(v, decimals) => format!("{v:.decimals$}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Cell::Num(_) | Cell::Fixed(..) => {
                let printed = self.text(digits);
                printed
                    .parse::<f64>()
                    .ok()
                    .and_then(Number::from_f64)
                    .map_or(Value::Null, Value::Number)
            }
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// Formats `value` with `digits` significant digits, `%g` style: positional
/// for moderate magnitudes, scientific otherwise, trailing zeros dropped.
pub fn format_significant(value: f64, digits: usize) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    if value == 0.0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exponent) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exponent: i64 = exponent.parse().expect("integer exponent");
    if exponent < -4 || exponent >= digits as i64 {
        return format!("{}e{exponent}", trim_zeros(mantissa));
    }
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    trim_zeros(&format!("{value:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::new();
        out.push_str(&csv_line(self.headers.iter().cloned()));
        for row in &self.rows {
            out.push_str(&csv_line(row.iter().map(|c| c.text(digits))));
        }
        out
    }

    pub fn to_json(&self, digits: usize) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .headers
                        .iter()
                        .cloned()
                        .zip(row.iter().map(|c| c.json(digits)))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

fn csv_line(fields: impl Iterator<Item = String>) -> String {
    let mut line = fields
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f
            }
        })
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(4.871319017765272, 12), "4.87131901777");
        assert_eq!(format_significant(4.871319017765272, 5), "4.8713");
        assert_eq!(format_significant(27.145844179638342, 4), "27.15");
        assert_eq!(format_significant(9.9996, 4), "10");
        assert_eq!(format_significant(2146.0, 12), "2146");
        assert_eq!(format_significant(1234567.0, 3), "1.23e6");
        assert_eq!(format_significant(0.000123456, 3), "0.000123");
        assert_eq!(format_significant(5.979669e-10, 3), "5.98e-10");
        assert_eq!(format_significant(-2.5, 2), "-2.5");
        assert_eq!(format_significant(0.0, 3), "0");
    }

    #[test]
    fn csv_quotes_when_needed() {
        let mut t = Table::new(["name", "value"]);
        t.push(vec![Cell::Text("a,b".into()), Cell::Num(1.5)]);
        t.push(vec![Cell::Text("c".into()), Cell::Empty]);
        assert_eq!(t.to_csv(3), "name,value\n\"a,b\",1.5\nc,\n");
    }

    #[test]
    fn json_matches_printed_precision() {
        let mut t = Table::new(["x", "y"]);
        t.push(vec![Cell::Num(1.0 / 3.0), Cell::Fixed(2.0 / 3.0, 2)]);
        let json = t.to_json(4);
        assert_eq!(json[0]["x"].as_f64(), Some(0.3333));
        assert_eq!(json[0]["y"].as_f64(), Some(0.67));
    }
}
