//! Metric tables with a deterministic CSV rendering: identical runs give
//! identical bytes.

use crate::error::HarnessError;

#[derive(Debug, Clone, PartialEq)]
pub struct MetricTable {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

/// Shortest-roundtrip float formatting (Rust's default Display), which is
/// deterministic across runs and platforms.
pub fn fmt_f64(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v}")
    }
}

impl MetricTable {
    pub fn new(columns: &[&str]) -> MetricTable {
        MetricTable {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "column arity");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<MetricTable, HarnessError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| HarnessError::Validation("empty csv".into()))?;
        let columns: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
        let mut rows = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let row: Vec<String> = line.split(',').map(|c| c.trim().to_string()).collect();
            if row.len() != columns.len() {
                return Err(HarnessError::Validation(format!(
                    "ragged csv row: {line:?}"
                )));
            }
            rows.push(row);
        }
        Ok(MetricTable { columns, rows })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric column values; "inf" parses to infinity.
    pub fn column_f64(&self, name: &str) -> Result<Vec<f64>, HarnessError> {
        let idx = self
            .column_index(name)
            .ok_or_else(|| HarnessError::Validation(format!("no column {name:?}")))?;
        self.rows
            .iter()
            .map(|r| {
                let cell = &r[idx];
                if cell == "inf" {
                    Ok(f64::INFINITY)
                } else {
                    cell.parse::<f64>().map_err(|_| {
                        HarnessError::Validation(format!("non-numeric cell {cell:?}"))
                    })
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip() {
        let mut t = MetricTable::new(&["a", "b"]);
        t.push_row(vec!["1".into(), fmt_f64(0.5)]);
        t.push_row(vec!["2".into(), "inf".into()]);
        let text = t.to_csv();
        let back = MetricTable::parse_csv(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.column_f64("b").unwrap()[1], f64::INFINITY);
    }

    #[test]
    fn float_formatting_is_stable() {
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_f64(1.0), "1");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(0.5483113556160755), "0.5483113556160755");
    }
}
