//! CSV tables with a `#` header that echoes the configuration.

use std::fmt::Write as _;

use pwlab_core::wide::WideReal;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Wide(String),
    Text(String),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<&WideReal> for Cell {
    fn from(v: &WideReal) -> Self {
        Cell::Wide(v.to_sci(17))
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn float17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => f.write_str(&float17(*v)),
            Cell::Wide(s) | Cell::Text(s) => f.write_str(s),
            Cell::Empty => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra `# key: value` lines after the config echo.
    pub notes: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.push((key.to_string(), value.into()));
    }

    pub fn to_csv(&self, config_json: &str) -> String {
        let mut out = String::new();
        writeln!(out, "# pwlab {}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(out, "# config: {config_json}").unwrap();
        for (k, v) in &self.notes {
            writeln!(out, "# {k}: {v}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300] {
            assert_eq!(float17(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(float17(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn header_then_columns() {
        let mut t = Table::new(vec!["a", "b"]);
        t.note("seed", "7");
        t.push(vec![Cell::from(1usize), Cell::from(None)]);
        let csv = t.to_csv("{}");
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# pwlab"));
        assert_eq!(lines[1], "# config: {}");
        assert_eq!(lines[2], "# seed: 7");
        assert_eq!(lines[3], "a,b");
        assert_eq!(lines[4], "1,");
    }
}
