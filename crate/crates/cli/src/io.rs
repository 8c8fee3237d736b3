//! Trajectory CSV files, timestamp lists and atomic output.
//!
//! Trajectory files carry a header `t,x,y` or `t,x,y,z` (any number of
//! coordinate columns is accepted) followed by one point per row, with
//! coordinates already projected to a Cartesian frame.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;
use trajzip::trajectory::dedup_timestamps;
use trajzip::Trajectory;

use crate::error::{CliError, CliResult};

pub fn read_trajectory(path: &Path, dedup: bool) -> CliResult<Trajectory> {
    let data = fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    parse_trajectory(&data, dedup).map_err(|e| e.context(path.display()))
}

pub fn parse_trajectory(data: &[u8], dedup: bool) -> CliResult<Trajectory> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(data);
    let header = reader
        .headers()
        .map_err(|e| CliError::Data(format!("line 1: {e}")))?
        .clone();
    if header.len() < 2 || &header[0] != "t" {
        return Err(CliError::Data(
            "line 1: expected a header starting with t followed by coordinate columns".into(),
        ));
    }
    let dim = header.len() - 1;
    let mut times = Vec::new();
    let mut coords = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::Data(format!("line {line}: {e}"))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != dim + 1 {
            return Err(CliError::Data(format!(
                "line {line}: expected {} fields, found {}",
                dim + 1,
                record.len()
            )));
        }
        let mut values = record.iter().map(|field| {
            field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    CliError::Data(format!("line {line}: {field:?} is not a finite number"))
                })
        });
        let t = values.next().expect("record has fields")?;
        if let Some(&prev) = times.last() {
            if t < prev || (t == prev && !dedup) {
                let what = if t == prev {
                    "duplicate timestamp"
                } else {
                    "timestamps must increase"
                };
                let hint = if t == prev {
                    " (use --dedup to drop repeats)"
                } else {
                    ""
                };
                return Err(CliError::Data(format!("line {line}: {what} {t}{hint}")));
            }
        }
        times.push(t);
        for v in values {
            coords.push(v?);
        }
    }
    if dedup {
        dedup_timestamps(dim, &mut times, &mut coords);
    }
    Ok(Trajectory::new(dim, times, coords)?)
}

/// One timestamp per line; blank lines are ignored.
pub fn read_timestamps(path: &Path) -> CliResult<Vec<f64>> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    CliError::Data(format!(
                        "{}: line {}: {l:?} is not a timestamp",
                        path.display(),
                        i + 1
                    ))
                })
        })
        .collect()
}

pub fn header(dim: usize) -> Vec<String> {
    let mut h = vec!["t".to_string()];
    match dim {
        1..=3 => h.extend(["x", "y", "z"][..dim].iter().map(|s| s.to_string())),
        _ => h.extend((1..=dim).map(|i| format!("x{i}"))),
    }
    h
}

/// Serializes `(t, point)` rows as CSV.
pub fn trajectory_csv<'a>(
    dim: usize,
    rows: impl IntoIterator<Item = (f64, &'a [f64])>,
) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Data(e.to_string());
    w.write_record(header(dim)).map_err(csv_err)?;
    let mut fields = Vec::with_capacity(dim + 1);
    for (t, p) in rows {
        fields.clear();
        fields.push(t.to_string());
        fields.extend(p.iter().map(f64::to_string));
        w.write_record(&fields).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Data(e.to_string()))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| CliError::Data(format!("{}: {e}", path.display()));
    let mut tmp = NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

/// Files in `dir` with the given extension, sorted by name.
pub fn list_files(dir: &Path, extension: &str) -> CliResult<Vec<PathBuf>> {
    let entries =
        fs::read_dir(dir).map_err(|e| CliError::Data(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == extension) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}
