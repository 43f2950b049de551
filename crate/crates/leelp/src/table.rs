//! k-bound grids over ranges of `n` and `d`.

use leelp_core::lee::{check_odd_prime, half};
use leelp_core::lp::{Arithmetic, Method};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::TableCache;
use crate::error::{CliError, CliResult};
use crate::report::{arithmetic_label, bound_with_table};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub n: usize,
    pub d: u32,
    /// `None` for blank cells (`d > n*s`) and failed cells.
    pub k_bound: Option<u32>,
    pub size_bound: Option<String>,
    pub error: Option<String>,
}

impl TableCell {
    fn text(&self) -> String {
        match (&self.k_bound, &self.error) {
            (Some(k), _) => k.to_string(),
            (None, Some(e)) => format!("error: {e}"),
            (None, None) => String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub q: u32,
    pub method: String,
    pub arithmetic: String,
    pub n_values: Vec<usize>,
    pub d_values: Vec<u32>,
    /// Row-major: all `d` for the first `n`, then the next `n`.
    pub cells: Vec<TableCell>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
    Markdown,
}

impl TableFormat {
    pub fn from_name(name: &str) -> Option<TableFormat> {
        match name {
            "csv" => Some(TableFormat::Csv),
            "json" => Some(TableFormat::Json),
            "md" | "markdown" => Some(TableFormat::Markdown),
            _ => None,
        }
    }
}

impl TableDocument {
    pub fn cell(&self, n: usize, d: u32) -> Option<&TableCell> {
        let i = self.n_values.iter().position(|&x| x == n)?;
        let j = self.d_values.iter().position(|&x| x == d)?;
        self.cells.get(i * self.d_values.len() + j)
    }

    pub fn k_bound(&self, n: usize, d: u32) -> Option<u32> {
        self.cell(n, d).and_then(|c| c.k_bound)
    }

    pub fn errors(&self) -> impl Iterator<Item = &TableCell> {
        self.cells.iter().filter(|c| c.error.is_some())
    }

    fn rows(&self) -> impl Iterator<Item = (usize, &[TableCell])> {
        self.n_values.iter().copied().zip(self.cells.chunks(self.d_values.len().max(1)))
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["n".to_string()];
        header.extend(self.d_values.iter().map(u32::to_string));
        w.write_record(&header)?;
        for (n, row) in self.rows() {
            let mut rec = vec![n.to_string()];
            rec.extend(row.iter().map(TableCell::text));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("k-bounds, q = {}, method {} ({})\n\n", self.q, self.method, self.arithmetic);
        out.push_str("| n \\ d |");
        for d in &self.d_values {
            out.push_str(&format!(" {d} |"));
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(self.d_values.len()));
        out.push('\n');
        for (n, row) in self.rows() {
            out.push_str(&format!("| {n} |"));
            for c in row {
                out.push_str(&format!(" {} |", c.text()));
            }
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: TableFormat) -> CliResult<String> {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            TableFormat::Markdown => Ok(self.to_markdown()),
        }
    }
}

/// Computes every cell of the grid in parallel; the order of `cells` does
/// not depend on scheduling.
pub fn compute_table(
    q: u32,
    n_values: &[usize],
    d_values: &[u32],
    method: Method,
    arithmetic: Option<Arithmetic>,
    cache: &TableCache,
) -> CliResult<TableDocument> {
    check_odd_prime(q).map_err(|e| CliError::Usage(e.to_string()))?;
    if n_values.is_empty() || d_values.is_empty() {
        return Err(CliError::Usage("n and d ranges must be nonempty".into()));
    }
    if n_values.contains(&0) || d_values.contains(&0) {
        return Err(CliError::Usage("n and d must be positive".into()));
    }
    let arithmetic = arithmetic.unwrap_or(method.default_arithmetic());
    let s = half(q) as u32;
    let tables: Vec<_> = n_values.par_iter().map(|&n| cache.table(q, n).map_err(|e| e.to_string())).collect();
    let jobs: Vec<(usize, usize, u32)> =
        (0..n_values.len()).flat_map(|i| d_values.iter().map(move |&d| (i, n_values[i], d))).collect();
    let cells = jobs
        .par_iter()
        .map(|&(i, n, d)| {
            let mut cell = TableCell { n, d, k_bound: None, size_bound: None, error: None };
            if d as u64 > n as u64 * s as u64 {
                return cell;
            }
            match tables[i].as_ref().map_err(Clone::clone).and_then(|t| {
                bound_with_table(q, n, d, method, arithmetic, t).map_err(|e| e.to_string())
            }) {
                Ok(r) => {
                    cell.k_bound = Some(r.k_bound);
                    cell.size_bound = Some(r.size_bound);
                }
                Err(e) => cell.error = Some(e),
            }
            cell
        })
        .collect();
    Ok(TableDocument {
        q,
        method: method.name().into(),
        arithmetic: arithmetic_label(method, arithmetic),
        n_values: n_values.to_vec(),
        d_values: d_values.to_vec(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> TableDocument {
        compute_table(5, &[2, 3], &[3, 4, 5, 6, 7], Method::Compact, None, &TableCache::disabled()).unwrap()
    }

    #[test]
    fn blanks_beyond_weight_ceiling() {
        let t = small();
        assert_eq!(t.k_bound(2, 3), Some(1));
        assert_eq!(t.cell(2, 5).unwrap().k_bound, None);
        assert!(t.cell(2, 5).unwrap().error.is_none());
        assert!(t.k_bound(3, 6).is_some());
        assert_eq!(t.k_bound(3, 7), None);
        assert_eq!(t.errors().count(), 0);
    }

    #[test]
    fn renderings() {
        let t = small();
        let csv = t.to_csv().unwrap();
        assert_eq!(csv.lines().next().unwrap(), "n,3,4,5,6,7");
        assert!(csv.lines().nth(1).unwrap().starts_with("2,1,0,,,"), "{csv}");
        let md = t.to_markdown();
        assert!(md.contains("| 2 | 1 | 0 |  |  |  |"), "{md}");
        let back: TableDocument = serde_json::from_str(&t.render(TableFormat::Json).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn guard_is_reported_inline() {
        // q = 13, n = 11 has more compositions than the table guard allows
        let t = compute_table(13, &[2, 11], &[3], Method::Compact, None, &TableCache::disabled()).unwrap();
        assert!(t.k_bound(2, 3).is_some());
        assert!(t.cell(11, 3).unwrap().error.is_some());
    }
}
