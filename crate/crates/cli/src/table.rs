use std::io::Write;

use serde_json::{Map, Number, Value as Json};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    /// Blank in CSV, `null` in JSON.
    Missing,
    /// Two CSV columns `<name>_re`, `<name>_im`; `{"re", "im"}` in JSON.
    Complex(f64, f64),
    Int(usize),
    Text(String),
    Bool(bool),
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

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// Rounds to 15 significant digits and prints the shortest decimal that reads
/// back as the rounded value, in exponent form outside `[1e-5, 1e16)`.
/// Infinities print as `inf` / `-inf`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let rounded = round_significant(x);
    if rounded == 0.0 {
        return "0".to_string();
    }
    if (1e-5..1e16).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn round_significant(x: f64) -> f64 {
    format!("{x:.14e}").parse().expect("scientific notation re-parses")
}

fn json_number(x: f64) -> Json {
    if !x.is_finite() {
        return Json::String(format_number(x));
    }
    // Adding 0.0 turns -0.0 into 0.0.
    Json::Number(Number::from_f64(round_significant(x) + 0.0).expect("finite"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    /// Complex columns are detected from the first row.
    fn csv_header(&self) -> Vec<String> {
        let first = self.rows.first();
        let mut header = Vec::new();
        for (i, name) in self.columns.iter().enumerate() {
            match first.map(|r| &r[i]) {
                Some(Cell::Complex(..)) => {
                    header.push(format!("{name}_re"));
                    header.push(format!("{name}_im"));
                }
                _ => header.push(name.to_string()),
            }
        }
        header
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(self.csv_header())?;
        for row in &self.rows {
            let mut record = Vec::with_capacity(row.len() + 2);
            for cell in row {
                match cell {
                    Cell::Num(x) => record.push(format_number(*x)),
                    Cell::Missing => record.push(String::new()),
                    Cell::Complex(re, im) => {
                        record.push(format_number(*re));
                        record.push(format_number(*im));
                    }
                    Cell::Int(n) => record.push(n.to_string()),
                    Cell::Text(s) => record.push(s.clone()),
                    Cell::Bool(b) => record.push(b.to_string()),
                }
            }
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Json {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Num(x) => json_number(*x),
                        Cell::Missing => Json::Null,
                        Cell::Complex(re, im) => {
                            let mut c = Map::new();
                            c.insert("re".into(), json_number(*re));
                            c.insert("im".into(), json_number(*im));
                            Json::Object(c)
                        }
                        Cell::Int(n) => Json::Number((*n as u64).into()),
                        Cell::Text(s) => Json::String(s.clone()),
                        Cell::Bool(b) => Json::Bool(*b),
                    };
                    obj.insert(name.to_string(), value);
                }
                Json::Object(obj)
            })
            .collect();
        Json::Array(rows)
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())?;
                writeln!(out)?;
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(format_number(-7.143160011604109), "-7.14316001160411");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(f64::INFINITY), "inf");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1e-300), "1e-300");
        assert_eq!(format_number(9.720216954141972e-17), "9.72021695414197e-17");
        assert_eq!(format_number(2.5e-5), "0.000025");
    }

    #[test]
    fn csv_round_trip() {
        for x in [1.0 / 3.0, 123456.78901234568, -2.5e-7, 9.869604401089358] {
            let back: f64 = format_number(x).parse().unwrap();
            assert_eq!(format!("{back:.14e}"), format!("{x:.14e}"));
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["n", "E", "R"]);
        t.push(vec![1usize.into(), Cell::Complex(4.0, -1.5), Cell::Missing]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,E_re,E_im,R\n1,4,-1.5,\n");
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new(vec!["E", "T", "R"]);
        t.push(vec![Cell::Complex(4.0, -1.5), f64::INFINITY.into(), Cell::Missing]);
        let json = t.to_json().to_string();
        assert_eq!(json, r#"[{"E":{"re":4.0,"im":-1.5},"T":"inf","R":null}]"#);
    }
}
