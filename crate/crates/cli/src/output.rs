use serde::Serialize;
use serde_json::Value;

use negspin_core::{CheckEntry, CheckReport};

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct JsonReport {
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub checks: Vec<CheckEntry>,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// 17 significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn from_checks(checks: &CheckReport) -> Self {
        let mut t = Table::new(vec!["name", "residual", "tolerance", "pass"]);
        for e in &checks.entries {
            t.push(vec![
                e.name.as_str().into(),
                e.residual.into(),
                e.tolerance.into(),
                e.pass.into(),
            ]);
        }
        t
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

impl JsonReport {
    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(format_float(1.5), "1.5000000000000000e0");
        assert_eq!(format_float(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(format_float(-2.0 / 3.0).parse::<f64>().unwrap(), -2.0 / 3.0);
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_has_header() {
        let mut t = Table::new(vec!["k", "E"]);
        t.push(vec![0usize.into(), 1.0.into()]);
        assert_eq!(t.to_csv().unwrap(), "k,E\n0,1.0000000000000000e0\n");
    }
}
