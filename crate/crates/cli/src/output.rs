//! Deterministic table output: 17-significant-digit floats, LF endings,
//! and atomic writes so partial files are never left behind.

use std::io::Write;
use std::path::Path;

/// 17 significant digits round-trip f64 exactly and render bit-identically
/// across runs.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    text
}

/// Write to `path` via a sibling temp file and rename, or to stdout when no
/// path is given.
pub fn write_table(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|err| format!("writing stdout: {err}"))
        }
        Some(path) => {
            let file_name = path
                .file_name()
                .ok_or_else(|| format!("invalid output path {}", path.display()))?;
            let mut tmp_name = file_name.to_os_string();
            tmp_name.push(".tmp");
            let tmp = path.with_file_name(tmp_name);
            std::fs::write(&tmp, content)
                .map_err(|err| format!("writing {}: {err}", tmp.display()))?;
            std::fs::rename(&tmp, path)
                .map_err(|err| format!("renaming onto {}: {err}", path.display()))
        }
    }
}
