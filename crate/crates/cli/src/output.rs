//! Deterministic CSV and JSON emitters with atomic file writes.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

pub const VERSION_LINE: &str = concat!("# ptent ", env!("CARGO_PKG_VERSION"));

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// `base_N<k>.<ext>`, dropping a `.csv` or `.json` extension from `base`.
pub fn suffixed(base: &Path, n_bath: usize, ext: &str) -> PathBuf {
    let stem = match base.extension().and_then(|e| e.to_str()) {
        Some("csv") | Some("json") => base.with_extension(""),
        _ => base.to_path_buf(),
    };
    let name = format!("{}_N{n_bath}.{ext}", stem.file_name().map(|s| s.to_string_lossy()).unwrap_or_default());
    stem.with_file_name(name)
}

/// CSV text with the version comment line, further `#` comments, a header
/// and one row per record.
pub fn csv_table(comments: &[String], header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    writeln!(buf, "{VERSION_LINE}")?;
    for c in comments {
        writeln!(buf, "# {c}")?;
    }
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    Ok(buf)
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut buf = serde_json::to_vec_pretty(value)?;
    buf.push(b'\n');
    Ok(buf)
}

/// Shortest round-trip formatting, exponent form for very small or large
/// magnitudes.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

fn to_stdout(bytes: &[u8]) -> Result<()> {
    let mut lock = io::stdout().lock();
    match lock.write_all(bytes).and_then(|_| lock.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, bytes),
        None => to_stdout(bytes),
    }
}

/// One path per line on stdout.
pub fn list_paths(paths: &[PathBuf]) -> Result<()> {
    let text: String = paths.iter().map(|p| format!("{}\n", p.display())).collect();
    to_stdout(text.as_bytes())
}
