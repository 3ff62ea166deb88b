//! Plain CSV emission. Floats are written in shortest round-trip form, so
//! files are byte-stable across runs.

use std::fs;
use std::path::Path;

/// Joins a header and rows into a CSV document.
pub fn document(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Writes named CSV documents into the output directory, returning the
/// file names for the report.
pub fn write_all(out_dir: &Path, files: &[(String, String)]) -> anyhow::Result<Vec<String>> {
    fs::create_dir_all(out_dir)?;
    let mut names = Vec::with_capacity(files.len());
    for (name, content) in files {
        fs::write(out_dir.join(name), content)?;
        names.push(name.clone());
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_layout() {
        let doc = document("a,b", vec!["1,2".to_string(), "3,4".to_string()]);
        assert_eq!(doc, "a,b\n1,2\n3,4\n");
    }
}
