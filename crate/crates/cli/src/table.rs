use std::io::Write;

use gammalab_core::mp::Ball;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(b) => Value::from(*b),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Column-ordered rows. Every ball becomes a value column and an `_err` column.
#[derive(Clone, Debug, Default)]
pub struct DataTable {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

pub struct RowBuilder<'a> {
    table: &'a mut DataTable,
    cells: Vec<Cell>,
}

impl<'a> RowBuilder<'a> {
    fn push(&mut self, name: &str, cell: Cell) {
        let idx = self.cells.len();
        match self.table.columns.get(idx) {
            Some(existing) => debug_assert_eq!(existing, name, "column order must match"),
            None => self.table.columns.push(name.to_string()),
        }
        self.cells.push(cell);
    }

    pub fn int(mut self, name: &str, v: u64) -> Self {
        self.push(name, Cell::Int(v));
        self
    }

    pub fn flag(mut self, name: &str, v: bool) -> Self {
        self.push(name, Cell::Bool(v));
        self
    }

    pub fn text(mut self, name: &str, v: impl Into<String>) -> Self {
        self.push(name, Cell::Text(v.into()));
        self
    }

    pub fn opt_text(mut self, name: &str, v: Option<String>) -> Self {
        self.push(name, v.map(Cell::Text).unwrap_or(Cell::Empty));
        self
    }

    pub fn ball(mut self, name: &str, v: &Ball) -> Self {
        self.push(name, Cell::Text(v.value_string()));
        self.push(&format!("{name}_err"), Cell::Text(v.error_string()));
        self
    }

    pub fn opt_ball(mut self, name: &str, v: Option<&Ball>) -> Self {
        match v {
            Some(b) => self.ball(name, b),
            None => {
                self.push(name, Cell::Empty);
                self.push(&format!("{name}_err"), Cell::Empty);
                self
            }
        }
    }

    pub fn finish(self) {
        self.table.rows.push(self.cells);
    }
}

impl DataTable {
    /// Table with a fixed header, for outputs that may have no rows.
    pub fn with_columns(columns: &[&str]) -> Self {
        DataTable { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self) -> RowBuilder<'_> {
        RowBuilder { table: self, cells: Vec::new() }
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let objects: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut m = Map::new();
                        for (c, v) in self.columns.iter().zip(row) {
                            m.insert(c.clone(), v.json());
                        }
                        Value::Object(m)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &objects)?;
                out.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self, format: Format) -> Result<Vec<u8>, CliError> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        Ok(buf)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let mut t = DataTable::default();
        t.row().int("n", 1).text("a", "5/2").ball("x", &Ball::from_int(3)).flag("ok", true).finish();
        t.row().int("n", 2).text("a", "a,b").opt_ball("x", None).flag("ok", false).finish();
        let csv = String::from_utf8(t.to_bytes(Format::Csv).unwrap()).unwrap();
        assert_eq!(csv, "n,a,x,x_err,ok\n1,5/2,3,0,true\n2,\"a,b\",,,false\n");
        let json: Value = serde_json::from_slice(&t.to_bytes(Format::Json).unwrap()).unwrap();
        assert_eq!(json[0]["x"], "3");
        assert_eq!(json[1]["x"], Value::Null);
        assert_eq!(json[1]["a"], "a,b");
    }

    #[test]
    fn empty_table_keeps_header() {
        let t = DataTable::with_columns(&["n", "q"]);
        assert_eq!(t.to_bytes(Format::Csv).unwrap(), b"n,q\n");
        assert_eq!(t.to_bytes(Format::Json).unwrap(), b"[]\n");
    }
}
