//! Gram matrix files: the rank on the first line, then one row per line.

use std::fs;
use std::path::Path;

use hflens_core::IntLattice;

use crate::CliError;

pub fn parse_gram(text: &str) -> Result<IntLattice, CliError> {
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| CliError::Gram("empty file".into()))?;
    let n: usize =
        header.parse().map_err(|_| CliError::Gram(format!("first line must be the rank, got '{header}'")))?;
    let mut rows = Vec::with_capacity(n);
    for (k, line) in lines.enumerate() {
        let row = line
            .split_whitespace()
            .map(|x| x.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Gram(format!("row {}: {e}", k + 1)))?;
        if row.len() != n {
            return Err(CliError::Gram(format!("row {} has {} entries, expected {n}", k + 1, row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(CliError::Gram(format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(IntLattice::new(rows)?)
}

pub fn read_gram(path: &Path) -> Result<IntLattice, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_gram(&text)
}

pub fn render_gram(l: &IntLattice) -> String {
    let mut out = format!("{}\n", l.rank());
    for row in l.rows() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let e8 = IntLattice::minus_e8();
        assert_eq!(parse_gram(&render_gram(&e8)).unwrap(), e8);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_gram("").is_err());
        assert!(parse_gram("2\n-1 0\n").is_err());
        assert!(parse_gram("2\n-1 1\n0 -1\n").is_err());
        assert!(parse_gram("2\n-1 0 0\n0 -1\n").is_err());
        assert!(parse_gram("x\n").is_err());
        assert!(parse_gram("# comment\n1\n-1\n").is_ok());
    }
}
