//! Element list files, CSV text and the `--out` directory layout.

use std::fs;
use std::path::{Path, PathBuf};

use repgap_core::MonoidTable;

use crate::error::CliError;

/// Reads an element list written by `enumerate`.
pub fn load_table(path: &Path) -> Result<MonoidTable, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    MonoidTable::from_export(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

/// CSV with a header row, `,` separators and LF line endings.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io {
        path: "csv output".into(),
        source: e.into_error(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv fields are ASCII"))
}

/// Fixed six-decimal rendering of a log10 value, independent of locale.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.6}");
    // avoid a signed zero in the output
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Where artifacts go: stdout, or `<out>/<label>/<artifact>`.
#[derive(Clone, Debug)]
pub struct Sink {
    pub out: Option<PathBuf>,
}

impl Sink {
    /// Writes one artifact. Without `--out` only `primary` artifacts are
    /// printed, so that stdout carries a single document.
    pub fn emit(&self, label: &str, artifact: &str, contents: &str, primary: bool) -> Result<(), CliError> {
        match &self.out {
            Some(root) => {
                let dir = root.join(label);
                fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
                let path = dir.join(artifact);
                fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
                println!("wrote {}", path.display());
            }
            None if primary => print!("{contents}"),
            None => {}
        }
        Ok(())
    }
}

/// Directory label for a family and a size argument as typed.
pub fn label(family: &str, n: &str) -> String {
    let n: String = n
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    format!("{family}_{n}")
}
