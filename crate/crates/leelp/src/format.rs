//! Generator-matrix files: a header line `q n k`, then `k` rows of `n`
//! space-separated symbols. Blank lines and `#` comments are skipped.

use std::fmt::Write as _;
use std::path::Path;

use leelp_core::codes::LinearCode;

use crate::error::{CliError, CliResult};

/// A parsed generator matrix; the rank is not checked here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFile {
    pub q: u32,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

impl GeneratorFile {
    pub fn k(&self) -> usize {
        self.rows.len()
    }
}

fn numbers(line: &str, lineno: usize, path: &str) -> CliResult<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| CliError::Format {
                path: path.to_string(),
                line: lineno,
                message: format!("expected a nonnegative integer, found {tok:?}"),
            })
        })
        .collect()
}

/// Parses file contents; `path` only labels error messages.
pub fn parse_generator(text: &str, path: &str) -> CliResult<GeneratorFile> {
    let fail = |line: usize, message: String| CliError::Format { path: path.to_string(), line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| fail(1, "missing header line \"q n k\"".into()))?;
    let header = numbers(header, hline, path)?;
    let [q, n, k] = header[..] else {
        return Err(fail(hline, format!("header needs 3 numbers \"q n k\", found {}", header.len())));
    };
    let q = u32::try_from(q).map_err(|_| fail(hline, format!("modulus {q} is too large")))?;
    if !leelp_core::lee::is_odd_prime(q) {
        return Err(fail(hline, format!("modulus {q} is not an odd prime")));
    }
    if n == 0 {
        return Err(fail(hline, "block length must be positive".into()));
    }
    let (n, k) = (n as usize, k as usize);
    let mut rows = Vec::with_capacity(k);
    let mut last = hline;
    for (lineno, line) in lines {
        if rows.len() == k {
            return Err(fail(lineno, format!("unexpected row beyond the declared k = {k}")));
        }
        let row = numbers(line, lineno, path)?;
        if row.len() != n {
            return Err(fail(lineno, format!("expected {n} symbols, found {}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= q as u64) {
            return Err(fail(lineno, format!("symbol {bad} is not below q = {q}")));
        }
        rows.push(row.into_iter().map(|x| x as u32).collect());
        last = lineno;
    }
    if rows.len() != k {
        return Err(fail(last + 1, format!("expected {k} rows, found {}", rows.len())));
    }
    Ok(GeneratorFile { q, n, rows })
}

pub fn read_generator(path: &Path) -> CliResult<GeneratorFile> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_generator(&text, &path.display().to_string())
}

pub fn write_generator(q: u32, n: usize, rows: &[Vec<u32>]) -> String {
    let mut out = format!("{q} {n} {}\n", rows.len());
    for row in rows {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

pub fn code_to_string(code: &LinearCode) -> String {
    write_generator(code.q(), code.n(), code.generator())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let rows = vec![vec![1, 0, 3], vec![0, 1, 2]];
        let text = write_generator(7, 3, &rows);
        assert_eq!(text, "7 3 2\n1 0 3\n0 1 2\n");
        assert_eq!(parse_generator(&text, "x").unwrap(), GeneratorFile { q: 7, n: 3, rows });
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_generator("# example\n5 2 1\n\n1 4  # row\n", "x").unwrap();
        assert_eq!(g.rows, vec![vec![1, 4]]);
    }

    fn line_of(text: &str) -> usize {
        match parse_generator(text, "m.txt").unwrap_err() {
            CliError::Format { line, .. } => line,
            other => panic!("{other}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("5 2"), 1);
        assert_eq!(line_of("4 2 1\n1 0\n"), 1);
        assert_eq!(line_of("5 2 2\n1 0\n0 x\n"), 3);
        assert_eq!(line_of("5 2 2\n1 0\n0 5\n"), 3);
        assert_eq!(line_of("5 2 2\n1 0 2\n"), 2);
        assert_eq!(line_of("5 2 2\n1 0\n"), 3);
        assert_eq!(line_of("5 2 1\n1 0\n1 1\n"), 3);
    }

    #[test]
    fn message_names_file() {
        let msg = parse_generator("5 2 1\n7 0\n", "g.txt").unwrap_err().to_string();
        assert!(msg.starts_with("g.txt:2:"), "{msg}");
    }
}
