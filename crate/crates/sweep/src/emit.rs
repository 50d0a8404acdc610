//! CSV and JSON writers.
//!
//! Floats carry 17 significant digits in both formats so every value parses
//! back to the same `f64`. Missing values are empty CSV cells or JSON `null`.
//! Lines end in `\n`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};
use serde_json::{Map, Value};

use crate::config::{Format, Param};
use crate::run::ResultRow;

pub const RESULT_COLUMNS: [&str; 9] = [
    "j_left",
    "j_right",
    "j_forward",
    "j_backward",
    "r",
    "first_law_residual",
    "entropy_production",
    "nullspace_dim",
    "flags",
];

#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    #[error("cannot write {path}: {source}")]
    Destination { path: String, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Column names: swept parameters in axis order, then the result fields.
pub fn header(params: &[Param]) -> Vec<&'static str> {
    params
        .iter()
        .map(|p| p.name())
        .chain(RESULT_COLUMNS)
        .collect()
}

/// `d.dddddddddddddddde±x`; 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[ResultRow], params: &[Param], out: W) -> Result<(), EmitError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(header(params))?;
    for row in rows {
        let mut record: Vec<String> = row.params.iter().map(|&(_, v)| format_float(v)).collect();
        record.extend([
            cell(row.j_left),
            cell(row.j_right),
            cell(row.j_forward),
            cell(row.j_backward),
            cell(row.r),
            cell(row.first_law_residual),
            cell(row.entropy_production),
            row.nullspace_dim.to_string(),
            row.flags.join(";"),
        ]);
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

fn number(x: Option<f64>) -> Value {
    x.and_then(serde_json::Number::from_f64)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn to_json(rows: &[ResultRow]) -> Value {
    let objects = rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for &(p, v) in &row.params {
                obj.insert(p.name().into(), number(Some(v)));
            }
            let values = [
                row.j_left,
                row.j_right,
                row.j_forward,
                row.j_backward,
                row.r,
                row.first_law_residual,
                row.entropy_production,
            ];
            for (name, v) in RESULT_COLUMNS.iter().zip(values) {
                obj.insert((*name).into(), number(v));
            }
            obj.insert("nullspace_dim".into(), Value::from(row.nullspace_dim));
            obj.insert("flags".into(), Value::from(row.flags.clone()));
            Value::Object(obj)
        })
        .collect();
    Value::Array(objects)
}

/// Pretty layout with floats at 17 significant digits, like the CSV cells.
struct Digits17(PrettyFormatter<'static>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(fn $name<W: ?Sized + Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(writer $(, $arg)*)
        })*
    };
}

impl Formatter for Digits17 {
    delegate! {
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    }

    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_float(value).as_bytes())
    }
}

pub fn write_json<W: Write>(rows: &[ResultRow], mut out: W) -> Result<(), EmitError> {
    let mut ser = Serializer::with_formatter(&mut out, Digits17(PrettyFormatter::new()));
    to_json(rows).serialize(&mut ser)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn write<W: Write>(
    rows: &[ResultRow],
    params: &[Param],
    format: Format,
    out: W,
) -> Result<(), EmitError> {
    match format {
        Format::Csv => write_csv(rows, params, out),
        Format::Json => write_json(rows, out),
    }
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn emit(
    rows: &[ResultRow],
    params: &[Param],
    format: Format,
    path: Option<&Path>,
) -> Result<(), EmitError> {
    match path {
        Some(path) => {
            let file = File::create(path).map_err(|source| EmitError::Destination {
                path: path.display().to_string(),
                source,
            })?;
            write(rows, params, format, BufWriter::new(file))
        }
        None => write(rows, params, format, io::stdout().lock()),
    }
}

pub fn to_csv_string(rows: &[ResultRow], params: &[Param]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, params, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is UTF-8")
}

pub fn to_json_string(rows: &[ResultRow]) -> String {
    let mut buf = Vec::new();
    write_json(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("json output is UTF-8")
}
