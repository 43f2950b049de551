//! Checks run on a generator matrix: distance, distribution laws and the
//! refined LP at the code's own minimum distance.

use leelp_core::codes::{check_orbit_equalities, dual_distribution, rank, InnerDistribution, LinearCode};
use leelp_core::cycreal::CycReal;
use leelp_core::lee::{orbit_partition, OrbitPartition};
use leelp_core::leenum::LeeNumberTable;
use leelp_core::lp::{build_refined_lp, Method};
use leelp_core::simplex::{verify_solution, LpSolution, LpStatus};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cache::TableCache;
use crate::error::CliResult;
use crate::format::{code_to_string, GeneratorFile};
use crate::report::{bound_with_table, BoundReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionEntry {
    pub index: usize,
    pub composition: Vec<u32>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub q: u32,
    pub n: usize,
    pub k_declared: usize,
    pub rank: usize,
    pub warnings: Vec<String>,
    /// Generator actually checked: the declared rows, or an independent
    /// subset of them when the matrix is rank deficient.
    pub generator: String,
    pub size: String,
    pub min_distance: Option<u32>,
    pub d_claim: Option<u32>,
    pub claim_holds: Option<bool>,
    /// Nonzero entries only.
    pub inner_distribution: Vec<DistributionEntry>,
    pub distribution_ok: bool,
    pub orbit_equalities_ok: bool,
    pub orbit_violations: Vec<usize>,
    pub dual_nonnegative: bool,
    pub dual_size_ok: bool,
    /// The distribution is a feasible point of the refined LP at `min_distance`.
    pub lp_feasible: Option<bool>,
    /// Compact bound at `(q, n, min_distance)`.
    pub bound: Option<BoundReport>,
    /// `|C| <= size_bound`.
    pub within_bound: Option<bool>,
    /// `rank == k_bound`.
    pub meets_bound: Option<bool>,
}

impl VerifyReport {
    /// All checks hold; a missed bound is not a failure.
    pub fn passed(&self) -> bool {
        self.rank == self.k_declared
            && self.claim_holds != Some(false)
            && self.distribution_ok
            && self.orbit_equalities_ok
            && self.dual_nonnegative
            && self.dual_size_ok
            && self.lp_feasible != Some(false)
            && self.within_bound != Some(false)
    }

    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "pass" } else { "FAIL" };
        let opt = |b: Option<bool>| b.map_or("n/a", yes);
        let mut out = format!("[{},{}] code over F_{} (declared k = {})\n", self.n, self.rank, self.q, self.k_declared);
        for w in &self.warnings {
            out.push_str(&format!("  warning: {w}\n"));
        }
        out.push_str(&format!("  size                {}\n", self.size));
        match self.min_distance {
            Some(d) => out.push_str(&format!("  min Lee distance    {d}\n")),
            None => out.push_str("  min Lee distance    undefined (zero code)\n"),
        }
        if let Some(c) = self.d_claim {
            out.push_str(&format!("  claim d >= {c}       {}\n", opt(self.claim_holds)));
        }
        out.push_str(&format!("  B conditions        {}\n", yes(self.distribution_ok)));
        out.push_str(&format!("  orbit equalities    {}\n", yes(self.orbit_equalities_ok)));
        out.push_str(&format!("  dual nonnegative    {}\n", yes(self.dual_nonnegative && self.dual_size_ok)));
        out.push_str(&format!("  refined LP feasible {}\n", opt(self.lp_feasible)));
        if let Some(b) = &self.bound {
            out.push_str(&format!(
                "  bound at d = {}      size {}, k {} ({})\n",
                b.d,
                b.size_bound,
                b.k_bound,
                if self.meets_bound == Some(true) { "met" } else { "not met" }
            ));
        }
        out.push_str("  inner distribution\n");
        for e in &self.inner_distribution {
            out.push_str(&format!("    {:>4} {:?} {}\n", e.index, e.composition, e.value));
        }
        out
    }
}

/// Whether `b` satisfies every row of the refined LP at distance `d`,
/// checked exactly.
pub fn refined_lp_feasible(
    b: &InnerDistribution,
    d: u32,
    table: &LeeNumberTable,
    partition: &OrbitPartition,
) -> CliResult<bool> {
    let lp = build_refined_lp::<CycReal>(b.q, b.n, d, table, partition)?;
    let Ok(values) = b.lp_point(&lp, None) else {
        return Ok(false);
    };
    let objective = lp.objective_value(&values);
    let sol = LpSolution { status: LpStatus::Optimal, objective, values, iterations: 0, certified: true };
    Ok(verify_solution(&lp, &sol, 0.0).passed())
}

fn independent_rows(g: &GeneratorFile) -> Vec<Vec<u32>> {
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for row in &g.rows {
        kept.push(row.clone());
        if rank(&kept, g.q) < kept.len() {
            kept.pop();
        }
    }
    kept
}

pub fn verify_code(g: &GeneratorFile, d_claim: Option<u32>, cache: &TableCache) -> CliResult<VerifyReport> {
    let rows = independent_rows(g);
    let mut warnings = Vec::new();
    if rows.len() < g.k() {
        warnings.push(format!("generator has rank {} < k = {}; checking the span of independent rows", rows.len(), g.k()));
    }
    let code = LinearCode::new(g.q, g.n, rows)?;
    let table = cache.table(g.q, g.n)?;
    let partition = orbit_partition(g.n, g.q)?;
    let b = code.inner_distribution()?;
    let check = b.check();
    let orbit = check_orbit_equalities(&b, &partition)?;
    let beta = dual_distribution(&b, &table)?;
    let dual_size = BigUint::from(g.q).pow(g.n as u32) / code.size();
    let dual_size_ok = beta.check().sum_matches_size && beta.code_size == num_rational::BigRational::from_integer(dual_size.into());
    let min_distance = if code.k() == 0 { None } else { Some(code.min_lee_distance()?) };
    let (mut lp_feasible, mut bound, mut within, mut meets) = (None, None, None, None);
    if let Some(d) = min_distance {
        lp_feasible = Some(refined_lp_feasible(&b, d, &table, &partition)?);
        let report = bound_with_table(g.q, g.n, d, Method::Compact, Method::Compact.default_arithmetic(), &table)?;
        within = report.size_bound.parse::<BigUint>().ok().map(|bound| code.size() <= bound);
        meets = Some(code.k() as u32 == report.k_bound);
        bound = Some(report);
    }
    let inner_distribution = b
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
        .map(|(i, v)| DistributionEntry { index: i, composition: table.space().get(i).counts().to_vec(), value: v.to_string() })
        .collect();
    Ok(VerifyReport {
        q: g.q,
        n: g.n,
        k_declared: g.k(),
        rank: code.k(),
        warnings,
        generator: code_to_string(&code),
        size: code.size().to_string(),
        min_distance,
        d_claim,
        claim_holds: d_claim.map(|c| min_distance.is_some_and(|d| d >= c)),
        inner_distribution,
        distribution_ok: check.passed(),
        orbit_equalities_ok: orbit.passed(),
        orbit_violations: orbit.violations,
        dual_nonnegative: beta.check().negative_entries.is_empty(),
        dual_size_ok,
        lp_feasible,
        bound,
        within_bound: within,
        meets_bound: meets,
    })
}
