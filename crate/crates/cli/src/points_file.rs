//! Reader for point-set files.
//!
//! Two formats are accepted and auto-detected:
//!
//! - JSON: an array of arrays of integers, `[[1, 0, 0, 0], [2, -5, 3, 1]]`;
//! - plain text: one point per line, `n+1` integers separated by spaces or
//!   commas, with `#` starting a comment.
//!
//! Entries are interpreted modulo the working prime by the caller.

use std::fs;
use std::path::Path;

pub fn read_points_file(path: &Path) -> Result<Vec<Vec<i64>>, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read points file {}: {e}", path.display()))?;
    parse_points(&text).map_err(|e| format!("bad points file {}: {e}", path.display()))
}

pub fn parse_points(text: &str) -> Result<Vec<Vec<i64>>, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        serde_json::from_str::<Vec<Vec<i64>>>(trimmed)
            .map_err(|e| format!("invalid JSON point list: {e}"))
    } else {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row: Result<Vec<i64>, _> = line
                .split([' ', '\t', ','])
                .filter(|t| !t.is_empty())
                .map(str::parse::<i64>)
                .collect();
            match row {
                Ok(r) => rows.push(r),
                Err(_) => return Err(format!("line {}: expected integers", lineno + 1)),
            }
        }
        Ok(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text_rows() {
        let text = "# a comment\n1 0 0 0\n2, -5, 3, 1\n\n0 1 0 0  # trailing\n";
        let rows = parse_points(text).unwrap();
        assert_eq!(
            rows,
            vec![vec![1, 0, 0, 0], vec![2, -5, 3, 1], vec![0, 1, 0, 0]]
        );
    }

    #[test]
    fn parses_json_rows() {
        let rows = parse_points("[[1, 0], [3, 4]]").unwrap();
        assert_eq!(rows, vec![vec![1, 0], vec![3, 4]]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_points("1 two 3").is_err());
        assert!(parse_points("[[1, ]]").is_err());
    }
}
