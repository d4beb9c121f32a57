//! Matrix file loading (JSON or CSV) and the machine-readable error
//! convention: results on stdout, diagnostics as JSON on stderr.

use gdn_core::RealMatrix;
use std::fmt;
use std::path::Path;

/// Process exit codes: 0 success/affirmative, 2 negative verdict,
/// 64 usage/parse error, 70 internal numerical failure.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NUMERIC: i32 = 70;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NUMERIC,
            kind: "numerical-failure",
            message: message.into(),
        }
    }

    /// Serialized onto stderr before exiting.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": { "code": self.kind, "message": self.message }
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

/// Loads a matrix from JSON (`{"n": .., "data": [..]}`) or plain CSV
/// (n rows of n comma-separated values). The format is sniffed from the
/// content, not the extension.
pub fn load_matrix(path: &Path) -> Result<RealMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|msg| CliError::usage(format!("{}: {msg}", path.display())))
}

pub fn parse_matrix(text: &str) -> Result<RealMatrix, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        serde_json::from_str::<RealMatrix>(text).map_err(|e| format!("bad matrix JSON: {e}"))
    } else {
        parse_csv(text)
    }
}

fn parse_csv(text: &str) -> Result<RealMatrix, String> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<f64>, _> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect();
        let row = row.map_err(|e| format!("line {}: {e}", lineno + 1))?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err("empty matrix".into());
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(format!("expected {n} values per row for an {n}x{n} matrix"));
    }
    let entries = rows.into_iter().flatten().collect();
    RealMatrix::new(n, entries).map_err(|e| e.to_string())
}

/// Pretty JSON on stdout.
pub fn print_json<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::numeric(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_json_matrix() {
        let m = parse_matrix(r#"{"n": 2, "data": [1.0, 2.0, 3.0, 4.0]}"#).unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m[(1, 0)], 3.0);
    }

    #[test]
    fn parses_csv_matrix() {
        let m = parse_matrix("1, 2\n3, 4\n").unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m[(0, 1)], 2.0);
    }

    #[test]
    fn rejects_ragged_csv() {
        assert!(parse_matrix("1,2\n3\n").is_err());
    }

    #[test]
    fn rejects_truncated_json() {
        assert!(parse_matrix(r#"{"n": 2, "data": [1.0, 2.0"#).is_err());
        assert!(parse_matrix(r#"{"n": 3, "data": [1.0]}"#).is_err());
    }

    #[test]
    fn matrix_json_round_trips() {
        let m = RealMatrix::from_rows(&[&[1.5, 0.0], &[2e-17, 3.0]]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"data\""));
        let back: RealMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);
    }
}
