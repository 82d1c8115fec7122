//! CSV with a `#`-prefixed metadata block.

use std::fmt::Write as _;
use std::path::Path;

use crate::Failure;

pub const SCHEMA: &str = "ddcap-csv/1";

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Flag(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `1e-5 ..= 1e12`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        trim_zeros(&fixed).to_string()
    } else {
        let m = trim_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Flag(v) => u8::from(*v).to_string(),
            Cell::Text(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub metadata: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            metadata: vec![
                format!("schema: {SCHEMA}"),
                format!("ddcap {}", env!("CARGO_PKG_VERSION")),
            ],
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, line: impl Into<String>) {
        for l in line.into().lines() {
            self.metadata.push(l.to_string());
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for m in &self.metadata {
            let _ = writeln!(s, "# {m}");
        }
        let _ = writeln!(s, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    /// Writes to `path`, or stdout when `None`.
    pub fn write(&self, path: Option<&Path>) -> Result<(), Failure> {
        match path {
            Some(p) => std::fs::write(p, self.render())
                .map_err(|e| Failure::Io(format!("writing {}: {e}", p.display()))),
            None => {
                print!("{}", self.render());
                Ok(())
            }
        }
    }
}

/// Parses a rendered table back into its column names and numeric rows.
/// Non-numeric cells become NaN.
pub fn parse_numeric(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .map(|h| h.split(',').map(str::to_string).collect())
        .unwrap_or_default();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|c| c.parse().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    (header, rows)
}
