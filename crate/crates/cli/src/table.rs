//! Column tables and their CSV form: header row, LF line endings, floats in
//! shortest round-trip notation.

use crate::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Shortest decimal that parses back to the same f64.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{x:?}")
    }
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self { headers: headers.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let bad = |e: csv::Error| CliError::Csv(e.to_string());
        w.write_record(&self.headers).map_err(bad)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|&x| fmt_float(x))).map_err(bad)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Csv(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Csv(e.to_string()))
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let headers: Vec<String> = rd
            .headers()
            .map_err(|e| CliError::Csv(e.to_string()))?
            .iter()
            .map(|h| h.trim().to_string())
            .collect();
        if headers.is_empty() || headers.iter().any(String::is_empty) {
            return Err(CliError::Csv("empty header field".into()));
        }
        let mut t = Table::new(headers);
        for (line, rec) in rd.records().enumerate() {
            let rec = rec.map_err(|e| CliError::Csv(e.to_string()))?;
            let row = rec
                .iter()
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<f64>, _>>()
                .map_err(|e| CliError::Csv(format!("row {}: {e}", line + 1)))?;
            t.rows.push(row);
        }
        Ok(t)
    }
}
