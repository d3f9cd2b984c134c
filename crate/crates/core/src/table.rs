// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Plain CSV tables: one header row, numbers with 17 significant digits,
//! written atomically (temporary file in the target directory, then rename).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::error::Result;

/// A single table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
    /// A gap, e.g. a sweep point where the eigensolver failed.
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Text(if x { "true" } else { "false" }.into())
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.into())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Formats a real with 17 significant digits; non-finite values use `nan`,
/// `inf`, `-inf`.
pub fn format_real(x: f64) -> String {
    format_real_digits(x, FULL_PRECISION)
}

/// Significant digits that round-trip every `f64`.
pub const FULL_PRECISION: usize = 17;

/// [`format_real`] with `digits` (1 to 17) significant digits.
pub fn format_real_digits(x: f64, digits: usize) -> String {
    let digits = digits.clamp(1, FULL_PRECISION);
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.*e}", digits - 1)
    }
}

fn escape(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics if its width differs from the header's.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn to_csv(&self) -> String {
        self.to_csv_digits(FULL_PRECISION)
    }

    /// CSV text with reals printed to `digits` significant digits.
    pub fn to_csv_digits(&self, digits: usize) -> String {
        let mut out = String::new();
        let head: Vec<String> = self.header.iter().map(|h| escape(h)).collect();
        out.push_str(&head.join(","));
        out.push('\n');
        for row in &self.rows {
            for (k, cell) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                match cell {
                    Cell::Real(x) => out.push_str(&format_real_digits(*x, digits)),
                    Cell::Int(i) => {
                        let _ = write!(out, "{i}");
                    }
                    Cell::Text(s) => out.push_str(&escape(s)),
                    Cell::Empty => {}
                }
            }
            out.push('\n');
        }
        out
    }

    /// Writes the CSV to `path` atomically, creating parent directories.
    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_csv().as_bytes())
    }

    /// [`Table::write`] with `digits` significant digits.
    pub fn write_digits(&self, path: &Path, digits: usize) -> Result<()> {
        write_atomic(path, self.to_csv_digits(digits).as_bytes())
    }
}

/// Writes bytes to `path` through a temporary sibling file and a rename, so
/// readers never observe a partially written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
