//! Serialization helpers shared by the command-line front end.
//!
//! JSON floats are written with 17 significant digits (`{:.16e}`), which
//! round-trips every `f64` exactly and keeps output byte-stable.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::constants::Constants;
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Compact JSON formatter with fixed 17-significant-digit floats.
#[derive(Debug, Default, Clone, Copy)]
pub struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// `{:.16e}` rendering used for every JSON float.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Writes `value` as one line of JSON followed by `\n`.
pub fn write_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut *out, SigDigits);
    value.serialize(&mut ser)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Envelope placed around every JSON result.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub constants: Constants,
    pub result: T,
}

/// Leading `#` comment lines for CSV and OBJ artifacts.
pub fn provenance_lines(command: &str, k: &Constants) -> Vec<String> {
    vec![
        format!("schema_version = {SCHEMA_VERSION}; command = {command}"),
        format!(
            "constants: h = {:e}, c = {:e}, G = {:e}, L = {:e}, N_coeff = {:e}, alpha_inv = {}",
            k.h(),
            k.c(),
            k.g(),
            k.terminal_length(),
            k.n_coeff(),
            k.alpha_inv()
        ),
    ]
}

/// Minimal CSV writer: provenance comments, a header, then rows of numbers.
pub struct CsvWriter<'w, W: Write> {
    out: &'w mut W,
    columns: usize,
}

impl<'w, W: Write> CsvWriter<'w, W> {
    pub fn new(out: &'w mut W, comments: &[String], header: &[&str]) -> Result<Self> {
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "{}", header.join(","))?;
        Ok(CsvWriter {
            out,
            columns: header.len(),
        })
    }

    pub fn row(&mut self, cells: &[Cell]) -> Result<()> {
        debug_assert_eq!(cells.len(), self.columns);
        let line: Vec<String> = cells.iter().map(Cell::render).collect();
        writeln!(self.out, "{}", line.join(","))?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // shortest round-trip representation
            Cell::Float(v) => format!("{v:?}"),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
