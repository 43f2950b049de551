//! Single bound computations and their serializable report.

use std::time::Instant;

use leelp_core::lee::{check_odd_prime, half, orbit_partition};
use leelp_core::leenum::LeeNumberTable;
use leelp_core::lp::{compute_bound_with, Arithmetic, BoundResult, Method, Optimum, FLOAT_REPORT_TOLERANCE};
use serde::{Deserialize, Serialize};

use crate::cache::TableCache;
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub q: u32,
    pub n: usize,
    pub d: u32,
    pub method: String,
    /// `exact rational`, `exact Q(zeta)` or `float, tolerance 1e-6`.
    pub arithmetic: String,
    pub exact: bool,
    /// Exact value as `a/b` or a `Q(zeta)` expression, or a float; `None`
    /// when no LP was needed (`d > n*s`).
    pub lp_optimum: Option<String>,
    pub lp_optimum_approx: Option<f64>,
    /// Decimal, since it can exceed 64 bits.
    pub size_bound: String,
    pub k_bound: u32,
    pub num_vars: usize,
    pub num_constraints: usize,
    pub iterations: usize,
    pub elapsed_ms: f64,
}

pub fn arithmetic_label(method: Method, arithmetic: Arithmetic) -> String {
    match (method, arithmetic) {
        (Method::Compact, Arithmetic::Exact) => "exact rational".into(),
        (_, Arithmetic::Exact) => "exact Q(zeta)".into(),
        (_, Arithmetic::Float) => format!("float, tolerance {FLOAT_REPORT_TOLERANCE:e}"),
    }
}

impl BoundReport {
    pub fn from_result(result: &BoundResult, elapsed_ms: f64) -> BoundReport {
        let (lp_optimum, approx) = match &result.optimum {
            None => (None, None),
            Some(o) => {
                let text = match o {
                    Optimum::Exact(r) => r.to_string(),
                    Optimum::Field(x) => x.to_string(),
                    Optimum::Float(x) => format!("{x}"),
                };
                (Some(text), Some(o.to_f64()))
            }
        };
        BoundReport {
            q: result.q,
            n: result.n,
            d: result.d,
            method: result.method.name().into(),
            arithmetic: arithmetic_label(result.method, result.arithmetic),
            exact: result.arithmetic == Arithmetic::Exact,
            lp_optimum,
            lp_optimum_approx: approx,
            size_bound: result.size_bound.to_string(),
            k_bound: result.k_bound,
            num_vars: result.num_vars,
            num_constraints: result.num_constraints,
            iterations: result.iterations,
            elapsed_ms,
        }
    }

    pub fn to_text(&self) -> String {
        let optimum = self.lp_optimum.as_deref().unwrap_or("none (no word reaches weight d)");
        let approx = match (self.exact, self.lp_optimum_approx) {
            (true, Some(x)) => format!(" ~ {x:.6}"),
            _ => String::new(),
        };
        format!(
            "q={} n={} d={} method={} arithmetic={}\n  lp optimum  {optimum}{approx}\n  size bound  {}\n  k bound     {}\n  lp size     {} vars, {} rows, {} pivots, {:.1} ms\n",
            self.q,
            self.n,
            self.d,
            self.method,
            self.arithmetic,
            self.size_bound,
            self.k_bound,
            self.num_vars,
            self.num_constraints,
            self.iterations,
            self.elapsed_ms
        )
    }
}

/// Checks `q` odd prime, `n >= 1` and `1 <= d <= n*s + 1`.
pub fn check_bound_params(q: u32, n: usize, d: u32) -> CliResult<()> {
    check_odd_prime(q).map_err(|e| CliError::Usage(e.to_string()))?;
    if n == 0 {
        return Err(CliError::Usage("block length n must be at least 1".into()));
    }
    let ceiling = n as u64 * half(q) as u64 + 1;
    if d == 0 || d as u64 > ceiling {
        return Err(CliError::Usage(format!("distance d = {d} must lie in 1..={ceiling} for q = {q}, n = {n}")));
    }
    Ok(())
}

/// Solves one bound with a prebuilt table.
pub fn bound_with_table(
    q: u32,
    n: usize,
    d: u32,
    method: Method,
    arithmetic: Arithmetic,
    table: &LeeNumberTable,
) -> CliResult<BoundReport> {
    let start = Instant::now();
    let partition = orbit_partition(n, q)?;
    let result = compute_bound_with(q, n, d, method, arithmetic, table, &partition)?;
    Ok(BoundReport::from_result(&result, start.elapsed().as_secs_f64() * 1e3))
}

pub fn bound(q: u32, n: usize, d: u32, method: Method, arithmetic: Option<Arithmetic>, cache: &TableCache) -> CliResult<BoundReport> {
    check_bound_params(q, n, d)?;
    let table = cache.table(q, n)?;
    bound_with_table(q, n, d, method, arithmetic.unwrap_or(method.default_arithmetic()), &table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_headline() {
        let r = bound(5, 8, 8, Method::Compact, None, &TableCache::disabled()).unwrap();
        assert_eq!(r.size_bound, "75");
        assert_eq!(r.k_bound, 2);
        assert!(r.exact);
        assert_eq!(r.arithmetic, "exact rational");
    }

    #[test]
    fn float_label() {
        let r = bound(5, 4, 3, Method::Theorem1, None, &TableCache::disabled()).unwrap();
        assert_eq!(r.arithmetic, "float, tolerance 1e-6");
        assert!(!r.exact);
    }

    #[test]
    fn trivial_distance() {
        let r = bound(5, 2, 5, Method::Compact, None, &TableCache::disabled()).unwrap();
        assert_eq!((r.size_bound.as_str(), r.k_bound, r.lp_optimum.as_deref()), ("1", 0, None));
    }

    #[test]
    fn parameter_errors_are_usage() {
        for (q, n, d) in [(4, 2, 3), (5, 0, 1), (5, 2, 0), (5, 2, 6)] {
            let e = bound(q, n, d, Method::Compact, None, &TableCache::disabled()).unwrap_err();
            assert_eq!(e.exit_code(), crate::error::EXIT_USAGE, "{q} {n} {d}: {e}");
        }
    }

    #[test]
    fn json_round_trip() {
        let r = bound(7, 4, 5, Method::DualRefined, Some(Arithmetic::Exact), &TableCache::disabled()).unwrap();
        let back: BoundReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
