//! Fixed-precision number formatting and CSV/JSON table output.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

/// Significant digits in every emitted number.
pub const SIG_DIGITS: usize = 12;

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros dropped,
/// exponent form outside `[1e-5, 1e12)`. Negative zero prints as `0`.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Bool(bool),
}

impl Cell {
    fn text(self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => fmt_num(v),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Int(v) => Value::from(v),
            // Round through the printed digits so CSV and JSON agree.
            Cell::Num(v) => fmt_num(v)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Bool(v) => Value::Bool(v),
        }
    }
}

/// A result table with a fixed column set.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.text()))?;
        }
        w.flush()
    }

    /// One object: `meta`, `columns` and `rows`, one row per line.
    pub fn write_json<W: Write, M: Serialize>(&self, mut out: W, meta: &M) -> io::Result<()> {
        let meta = serde_json::to_string(meta)?;
        let columns = serde_json::to_string(self.columns)?;
        write!(out, "{{\"meta\":{meta},\"columns\":{columns},\"rows\":[")?;
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<Value> = row.iter().map(|c| c.json()).collect();
            let sep = if i == 0 { "" } else { "," };
            write!(out, "{sep}\n{}", serde_json::to_string(&cells)?)?;
        }
        writeln!(out, "\n]}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(100.0), "100");
        assert_eq!(fmt_num(123456789012.0), "123456789012");
        assert_eq!(fmt_num(1234567890123.0), "1.23456789012e+12");
        assert_eq!(fmt_num(0.0001), "0.0001");
        assert_eq!(fmt_num(0.00001), "1e-05");
        assert_eq!(fmt_num(-2.5e-7), "-2.5e-07");
        assert_eq!(fmt_num(9.9999999999996), "10");
        assert_eq!(fmt_num(1e300), "1e+300");
        assert_eq!(fmt_num(f64::NAN), "nan");
    }

    #[test]
    fn csv_and_json_layout() {
        let mut t = Table::new(&["n", "value", "pass"]);
        t.push(vec![Cell::Int(3), Cell::Num(1.0 / 3.0), Cell::Bool(true)]);
        t.push(vec![Cell::Int(4), Cell::Num(0.25), Cell::Bool(false)]);
        let mut csv = Vec::new();
        t.write_csv(&mut csv).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "n,value,pass\n3,0.333333333333,true\n4,0.25,false\n"
        );

        let mut json = Vec::new();
        t.write_json(&mut json, &serde_json::json!({"k": 1})).unwrap();
        let text = String::from_utf8(json).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["rows"][0][1], serde_json::json!(0.333333333333));
        assert_eq!(v["meta"]["k"], 1);
        assert!(text.ends_with("]}\n"));
    }
}
