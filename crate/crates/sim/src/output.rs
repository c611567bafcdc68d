//! CSV encoding of sweep rows.
//!
//! Numbers carry ten significant digits in scientific notation, element
//! counts are plain integers, blank cells mean "not applicable", and lines
//! end in a bare LF.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::config::{Architecture, BetaSetting};
use crate::sweep::SweepRow;
use crate::SimError;

pub const HEADER: [&str; 7] = [
    "axis",
    "architecture",
    "beta_db",
    "rate_bps_hz",
    "m_required",
    "m_real",
    "branch",
];

pub fn format_number(x: f64) -> String {
    format!("{x:.9e}")
}

fn format_beta(b: Option<BetaSetting>) -> String {
    match b {
        None => String::new(),
        Some(BetaSetting::Max) => "max".into(),
        Some(BetaSetting::Db(v)) => format_number(v),
    }
}

fn record(row: &SweepRow) -> [String; 7] {
    [
        format_number(row.axis),
        row.architecture.as_str().to_owned(),
        format_beta(row.beta),
        row.rate_bps_hz.map(format_number).unwrap_or_default(),
        row.m_required.map(|m| m.to_string()).unwrap_or_default(),
        row.m_real.map(format_number).unwrap_or_default(),
        row.branch.clone(),
    ]
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), SimError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(record(row))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}

/// Writes `rows` to `path`, creating parent directories as needed.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<(), SimError> {
    let io_err = |error| SimError::Io {
        path: path.to_owned(),
        error,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io_err)?;
    }
    let file = File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_csv(rows, &mut out)?;
    out.flush().map_err(io_err)
}

fn parse_err(line: u64, message: impl Into<String>) -> SimError {
    SimError::Parse {
        line,
        message: message.into(),
    }
}

fn opt_f64(cell: &str, line: u64, column: &str) -> Result<Option<f64>, SimError> {
    if cell.is_empty() {
        return Ok(None);
    }
    cell.parse()
        .map(Some)
        .map_err(|_| parse_err(line, format!("{column}: not a number: {cell:?}")))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>, SimError> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    if r.headers()?.iter().ne(HEADER) {
        return Err(parse_err(1, "unexpected header"));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != HEADER.len() {
            return Err(parse_err(line, format!("expected {} fields, found {}", HEADER.len(), rec.len())));
        }
        let architecture = Architecture::parse(&rec[1])
            .ok_or_else(|| parse_err(line, format!("unknown architecture {:?}", &rec[1])))?;
        let beta = match &rec[2] {
            "" => None,
            "max" => Some(BetaSetting::Max),
            v => Some(BetaSetting::Db(
                opt_f64(v, line, "beta_db")?.expect("non-empty cell"),
            )),
        };
        let m_required = match &rec[4] {
            "" => None,
            v => Some(
                v.parse()
                    .map_err(|_| parse_err(line, format!("m_required: not an integer: {v:?}")))?,
            ),
        };
        rows.push(SweepRow {
            axis: opt_f64(&rec[0], line, "axis")?.ok_or_else(|| parse_err(line, "axis is blank"))?,
            architecture,
            beta,
            rate_bps_hz: opt_f64(&rec[3], line, "rate_bps_hz")?,
            m_required,
            m_real: opt_f64(&rec[5], line, "m_real")?,
            branch: rec[6].to_owned(),
        });
    }
    Ok(rows)
}

pub fn read_csv_file(path: &Path) -> Result<Vec<SweepRow>, SimError> {
    let file = File::open(path).map_err(|error| SimError::Io {
        path: path.to_owned(),
        error,
    })?;
    read_csv(file)
}
