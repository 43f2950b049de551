//! Dumps of the Lee-number table and the compact orbit matrix.

use leelp_core::lee::orbit_partition;
use leelp_core::lp::compact_eigen_matrix;
use serde::{Deserialize, Serialize};

use crate::cache::TableCache;
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    pub class: usize,
    pub representative: usize,
    pub members: Vec<usize>,
    pub min_weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeeNumberDump {
    pub q: u32,
    pub n: usize,
    /// Index of each composition, descending lexicographic order.
    pub compositions: Vec<Vec<u32>>,
    /// `lee_numbers[t][u]` holds the power-basis coefficients of `L_t(u)`.
    pub lee_numbers: Vec<Vec<Vec<String>>>,
    pub orbits: Vec<OrbitInfo>,
    /// Integer matrix indexed by orbit class, row then column.
    pub compact: Vec<Vec<String>>,
}

pub fn lee_number_dump(q: u32, n: usize, cache: &TableCache) -> CliResult<LeeNumberDump> {
    leelp_core::lee::check_odd_prime(q).map_err(|e| CliError::Usage(e.to_string()))?;
    if n == 0 {
        return Err(CliError::Usage("block length n must be at least 1".into()));
    }
    let table = cache.table(q, n)?;
    let partition = orbit_partition(n, q)?;
    let compact = compact_eigen_matrix(q, n, &table, &partition)?;
    let m = table.len();
    let coeffs: Vec<Vec<String>> = table.coefficients().map(|c| c.iter().map(ToString::to_string).collect()).collect();
    Ok(LeeNumberDump {
        q,
        n,
        compositions: table.space().iter().map(|t| t.counts().to_vec()).collect(),
        lee_numbers: coeffs.chunks(m).map(<[_]>::to_vec).collect(),
        orbits: (0..partition.len())
            .map(|c| OrbitInfo {
                class: c,
                representative: partition.representative(c),
                members: partition.class(c).to_vec(),
                min_weight: partition.min_weight(c),
            })
            .collect(),
        compact: compact.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
    })
}

/// Plain-text rendering; Lee numbers are written as polynomials in `z`.
pub fn dump_text(q: u32, n: usize, cache: &TableCache) -> CliResult<String> {
    let dump = lee_number_dump(q, n, cache)?;
    let table = cache.table(q, n)?;
    let mut out = format!("Lee numbers L_t(u), q = {q}, n = {n}, z = 2cos(2pi/{q})\ncompositions\n");
    for (i, t) in dump.compositions.iter().enumerate() {
        out.push_str(&format!("  {i:>4} {t:?}\n"));
    }
    out.push_str("rows t, columns u\n");
    for t in 0..table.len() {
        let cells: Vec<String> = table.row(t).iter().map(ToString::to_string).collect();
        out.push_str(&format!("  {t:>4} | {}\n", cells.join(" | ")));
    }
    out.push_str("orbit classes\n");
    for o in &dump.orbits {
        out.push_str(&format!("  {:>4} rep {} min weight {} members {:?}\n", o.class, o.representative, o.min_weight, o.members));
    }
    out.push_str("compact matrix, rows and columns by class\n");
    for (a, row) in dump.compact.iter().enumerate() {
        out.push_str(&format!("  {a:>4} | {}\n", row.join(" ")));
    }
    Ok(out)
}
