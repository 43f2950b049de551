//! The linear programs whose optimum `opt` gives the size bound `1 + opt`.
//!
//! Variables are normalized inner-distribution entries `B_t` (or one `gamma`
//! per orbit class in the compact form). The entry for the zero composition
//! is fixed to one and substituted into the right-hand sides; entries that
//! must vanish are dropped from the problem and listed in `fixed_zero`.

mod problem;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use problem::{Constraint, LpProblem, LpScalar, Relation};
pub(crate) use problem::dot;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::lee::{half, OrbitPartition};
use crate::leenum::LeeNumberTable;
use crate::cycreal::CycReal;
use crate::simplex::{eliminate_equalities, solve_max_exact, solve_max_float, verify_solution, LpSolution, LpStatus};

/// Scalars that can hold a Lee number.
pub trait FromCyc: LpScalar {
    fn from_cyc(a: &CycInt) -> Self;
}

impl FromCyc for f64 {
    fn from_cyc(a: &CycInt) -> Self {
        a.to_f64()
    }
}

/// Slack added before flooring a floating-point optimum.
pub const FLOAT_REPORT_TOLERANCE: f64 = 1e-6;

/// Substitution tolerance used to accept a floating-point optimum.
pub const FLOAT_VERIFY_TOLERANCE: f64 = 1e-9;

fn check_inputs(q: u32, n: usize, d: u32, table: &LeeNumberTable) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter("minimum distance must be at least 1".into()));
    }
    if table.q() != q || table.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "Lee-number table for (q, n) = ({}, {}) used with ({q}, {n})",
            table.q(),
            table.n()
        )));
    }
    Ok(())
}

/// True when no nonzero word has Lee weight `d` or more.
pub fn is_trivial_distance(q: u32, n: usize, d: u32) -> bool {
    d as u64 > n as u64 * half(q) as u64
}

/// Rows `sum_i L_k(t_i) B_i >= -[n; k]` over the given columns, one per `k`.
fn delsarte_rows<T: FromCyc>(lp: &mut LpProblem<T>, table: &LeeNumberTable) -> Result<()> {
    let columns = lp.labels.clone();
    for k in 0..table.len() {
        let coeffs = columns.iter().map(|&i| T::from_cyc(table.get(k, i))).collect();
        let count = table.get(k, 0).as_integer().ok_or_else(|| {
            Error::Internal(format!("L_k(0) is not an integer for composition index {k}"))
        })?;
        lp.add_constraint(coeffs, Relation::Ge, -T::from_bigint(&count))?;
    }
    Ok(())
}

fn lp_over<T: FromCyc>(free: Vec<usize>, pinned: Vec<usize>) -> Result<LpProblem<T>> {
    LpProblem::with_labels(vec![T::one(); free.len()], free, pinned)
}

/// The general bound: one variable `B_t` per nonzero composition of weight
/// at least `d`, one inequality per composition `k`.
pub fn build_theorem1_lp<T: FromCyc>(q: u32, n: usize, d: u32, table: &LeeNumberTable) -> Result<LpProblem<T>> {
    check_inputs(q, n, d, table)?;
    let space = table.space();
    let (free, pinned): (Vec<usize>, Vec<usize>) = (1..space.len()).partition(|&i| space.get(i).weight() >= d);
    let mut lp = lp_over(free, pinned)?;
    delsarte_rows(&mut lp, table)?;
    Ok(lp)
}

/// Columns that survive in the refined problems: members of classes whose
/// every member has weight at least `d`. Any class containing a low-weight
/// member is zero throughout, since linear codes have `B` constant on
/// classes.
fn refined_columns(partition: &OrbitPartition, d: u32) -> (Vec<usize>, Vec<usize>) {
    let mut free = Vec::new();
    let mut pinned = Vec::new();
    for c in 1..partition.len() {
        let target = if partition.min_weight(c) >= d { &mut free } else { &mut pinned };
        target.extend_from_slice(partition.class(c));
    }
    free.sort_unstable();
    pinned.sort_unstable();
    (free, pinned)
}

fn check_partition(table: &LeeNumberTable, partition: &OrbitPartition) -> Result<()> {
    if partition.q() != table.q() || partition.space() != table.space() {
        return Err(Error::DimensionMismatch("orbit partition does not match the Lee-number table".into()));
    }
    Ok(())
}

/// The general problem plus `B_t = B_u` for `u` in the orbit of `t`.
pub fn build_refined_lp<T: FromCyc>(
    q: u32,
    n: usize,
    d: u32,
    table: &LeeNumberTable,
    partition: &OrbitPartition,
) -> Result<LpProblem<T>> {
    check_inputs(q, n, d, table)?;
    check_partition(table, partition)?;
    let (free, pinned) = refined_columns(partition, d);
    let mut lp = lp_over(free, pinned)?;
    delsarte_rows(&mut lp, table)?;
    for c in 1..partition.len() {
        let members = partition.class(c);
        let Some(first) = lp.column_of(members[0]) else {
            continue;
        };
        for &other in &members[1..] {
            let j = lp.column_of(other).expect("classes are pinned whole");
            let mut coeffs = vec![T::zero(); lp.num_vars()];
            coeffs[first] = T::one();
            coeffs[j] = -T::one();
            lp.add_constraint(coeffs, Relation::Eq, T::zero())?;
        }
    }
    Ok(lp)
}

/// The general problem plus, for each orbit representative `k_u` and every
/// other `k_v` in its class,
/// `sum_i B_i (L_{k_u}(t_i) - L_{k_v}(t_i)) = 0`.
///
/// These say the dual distribution is constant on classes. The sum includes
/// `B_0 = 1`, whose coefficient `[n; k_u] - [n; k_v]` vanishes.
pub fn build_dual_refined_lp<T: FromCyc>(
    q: u32,
    n: usize,
    d: u32,
    table: &LeeNumberTable,
    partition: &OrbitPartition,
) -> Result<LpProblem<T>> {
    check_partition(table, partition)?;
    let mut lp = build_theorem1_lp::<T>(q, n, d, table)?;
    let columns = lp.labels.clone();
    for c in 1..partition.len() {
        let members = partition.class(c);
        let ku = members[0];
        for &kv in &members[1..] {
            let rhs = table.get(ku, 0) - table.get(kv, 0);
            if !rhs.is_zero() {
                return Err(Error::Internal(format!("[n; k] differs inside the orbit of composition {ku}")));
            }
            let diffs: Vec<CycInt> = columns.iter().map(|&i| table.get(ku, i) - table.get(kv, i)).collect();
            if diffs.iter().all(CycInt::is_zero) {
                continue;
            }
            lp.add_constraint(diffs.iter().map(T::from_cyc).collect(), Relation::Eq, T::zero())?;
        }
    }
    Ok(lp)
}

/// The orbit-summed eigenmatrix `U(a, b) = sum_{t in class b} L_{k_a}(t)`
/// with one row per class representative `k_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactEigenMatrix {
    q: u32,
    n: usize,
    entries: Vec<Vec<BigInt>>,
    orbit_sizes: Vec<usize>,
    min_weights: Vec<u32>,
}

impl CompactEigenMatrix {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of classes, `kappa + 1`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, a: usize, b: usize) -> &BigInt {
        &self.entries[a][b]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn orbit_sizes(&self) -> &[usize] {
        &self.orbit_sizes
    }

    pub fn min_weights(&self) -> &[u32] {
        &self.min_weights
    }
}

/// `Upsilon A`: every row of the table with its columns summed over classes.
/// Fails if an entry is not an integer.
pub fn orbit_summed_rows(table: &LeeNumberTable, partition: &OrbitPartition) -> Result<Vec<Vec<BigInt>>> {
    check_partition(table, partition)?;
    let mut out = Vec::with_capacity(table.len());
    for k in 0..table.len() {
        let mut row = Vec::with_capacity(partition.len());
        for (b, class) in partition.classes().iter().enumerate() {
            let mut sum = CycInt::zero(table.ring());
            for &t in class {
                sum.add_assign_ref(table.get(k, t));
            }
            let value = sum.as_integer().ok_or_else(|| {
                Error::Internal(format!("orbit sum over class {b} in row {k} is not an integer: {sum}"))
            })?;
            row.push(value);
        }
        out.push(row);
    }
    Ok(out)
}

/// Builds [`CompactEigenMatrix`], checking on the way that
/// * every orbit-summed entry is an integer,
/// * the orbit-summed rows agree across each class of `k`,
/// * `(q - 1) / |class b| * U(a, b) = m1 (q - 1) - m2` with
///   `m1 + m2 = [n; k_a]`, `m1, m2 >= 0`: summing over all multiples of a
///   word, each word of composition `k_a` contributes `q - 1` or `-1`.
pub fn compact_eigen_matrix(q: u32, n: usize, table: &LeeNumberTable, partition: &OrbitPartition) -> Result<CompactEigenMatrix> {
    if table.q() != q || table.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "Lee-number table for (q, n) = ({}, {}) used with ({q}, {n})",
            table.q(),
            table.n()
        )));
    }
    let summed = orbit_summed_rows(table, partition)?;
    let qm1 = BigInt::from(q - 1);
    let mut entries = Vec::with_capacity(partition.len());
    for (a, class) in partition.classes().iter().enumerate() {
        let rep = class[0];
        for &other in &class[1..] {
            if summed[other] != summed[rep] {
                return Err(Error::Internal(format!(
                    "orbit-summed rows {rep} and {other} differ inside class {a}"
                )));
            }
        }
        let count = table.get(rep, 0).as_integer().expect("checked integral above");
        for (b, value) in summed[rep].iter().enumerate() {
            let size = BigInt::from(partition.class_size(b));
            let scaled = value * &qm1;
            let (e, r) = scaled.div_rem(&size);
            let (m1, r1) = (&e + &count).div_rem(&BigInt::from(q));
            if !r.is_zero() || !r1.is_zero() || m1.is_negative() || m1 > count {
                return Err(Error::Internal(format!(
                    "entry ({a}, {b}) = {value} is not of the form m1 (q - 1) - m2 with m1 + m2 = {count}"
                )));
            }
        }
        entries.push(summed[rep].clone());
    }
    let orbit_sizes = (0..partition.len()).map(|c| partition.class_size(c)).collect();
    let min_weights = (0..partition.len()).map(|c| partition.min_weight(c)).collect();
    Ok(CompactEigenMatrix { q, n, entries, orbit_sizes, min_weights })
}

/// The compact form: `max sum_b |class b| gamma_b` subject to
/// `sum_b U(a, b) gamma_b >= -U(a, 0)` for every class `a`, with `gamma_b`
/// dropped when class `b` has a member of weight below `d`. Labels are
/// class indices.
pub fn build_compact_lp(q: u32, n: usize, d: u32, compact: &CompactEigenMatrix) -> Result<LpProblem<BigRational>> {
    if d == 0 {
        return Err(Error::InvalidParameter("minimum distance must be at least 1".into()));
    }
    if compact.q != q || compact.n != n {
        return Err(Error::DimensionMismatch(format!(
            "compact matrix for (q, n) = ({}, {}) used with ({q}, {n})",
            compact.q, compact.n
        )));
    }
    let (free, pinned): (Vec<usize>, Vec<usize>) = (1..compact.len()).partition(|&b| compact.min_weights[b] >= d);
    let objective = free.iter().map(|&b| BigRational::from_i64(compact.orbit_sizes[b] as i64)).collect();
    let mut lp = LpProblem::with_labels(objective, free, pinned)?;
    for row in &compact.entries {
        let coeffs = lp.labels.iter().map(|&b| BigRational::from_integer(row[b].clone())).collect();
        lp.add_constraint(coeffs, Relation::Ge, BigRational::from_integer(-row[0].clone()))?;
    }
    Ok(lp)
}

/// Largest `k` with `q^k <= bound` (0 for `bound <= 1`).
pub fn k_bound_from_size(bound: &BigUint, q: u32) -> u32 {
    let q = BigUint::from(q);
    let mut k = 0;
    let mut power = q.clone();
    while &power <= bound {
        k += 1;
        power *= &q;
    }
    k
}

/// Size bound `floor(1 + opt)` from an exact optimum.
pub fn size_bound_exact(optimum: &BigRational) -> BigUint {
    let floor = (optimum + BigRational::one()).floor().to_integer();
    floor.to_biguint().unwrap_or_else(BigUint::one).max(BigUint::one())
}

/// Size bound `floor(1 + opt + 1e-6)` from a floating-point optimum.
pub fn size_bound_float(optimum: f64) -> Result<BigUint> {
    let value = libm::floor(1.0 + optimum + FLOAT_REPORT_TOLERANCE);
    if !value.is_finite() {
        return Err(Error::Internal(format!("non-finite optimum {optimum}")));
    }
    Ok(BigUint::from(value.max(1.0).to_u128().unwrap_or(1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Theorem1,
    Refined,
    DualRefined,
    Compact,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Theorem1, Method::Refined, Method::DualRefined, Method::Compact];

    pub fn name(self) -> &'static str {
        match self {
            Method::Theorem1 => "theorem1",
            Method::Refined => "refined",
            Method::DualRefined => "dual-refined",
            Method::Compact => "compact",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }

    /// Arithmetic used when none is requested: the compact form has integer
    /// data and is solved over the rationals, the others in `f64`.
    pub fn default_arithmetic(self) -> Arithmetic {
        match self {
            Method::Compact => Arithmetic::Exact,
            _ => Arithmetic::Float,
        }
    }
}

/// `Exact` means rationals for the compact form and `Q(zeta)` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arithmetic {
    Exact,
    Float,
}

impl Arithmetic {
    pub fn name(self) -> &'static str {
        match self {
            Arithmetic::Exact => "exact",
            Arithmetic::Float => "float",
        }
    }
}

impl core::fmt::Display for Method {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Optimum {
    Exact(BigRational),
    /// Exact, but irrational in general.
    Field(CycReal),
    Float(f64),
}

impl Optimum {
    pub fn to_f64(&self) -> f64 {
        match self {
            Optimum::Exact(r) => LpScalar::to_f64(r),
            Optimum::Field(x) => x.to_f64(),
            Optimum::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Optimum::Float(_))
    }

    /// `floor(1 + opt)`, with `1e-6` of slack for a float optimum.
    pub fn size_bound(&self) -> Result<BigUint> {
        match self {
            Optimum::Exact(r) => Ok(size_bound_exact(r)),
            Optimum::Field(x) => {
                let floor = (x.clone() + CycReal::one()).floor();
                Ok(floor.to_biguint().unwrap_or_else(BigUint::one).max(BigUint::one()))
            }
            Optimum::Float(x) => size_bound_float(*x),
        }
    }
}

/// Outcome of one bound computation.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub q: u32,
    pub n: usize,
    pub d: u32,
    pub method: Method,
    pub arithmetic: Arithmetic,
    /// `None` when no word has weight `d` or more and the bound is 1
    /// without solving anything.
    pub optimum: Option<Optimum>,
    pub size_bound: BigUint,
    pub k_bound: u32,
    pub num_vars: usize,
    pub num_constraints: usize,
    pub iterations: usize,
}

fn solved<T: LpScalar>(sol: LpSolution<T>) -> Result<LpSolution<T>> {
    match sol.status {
        LpStatus::Optimal => Ok(sol),
        other => Err(Error::Internal(format!("solve ended with status {other:?}"))),
    }
}

fn build<T: FromCyc>(
    q: u32,
    n: usize,
    d: u32,
    method: Method,
    table: &LeeNumberTable,
    partition: &OrbitPartition,
) -> Result<LpProblem<T>> {
    match method {
        Method::Theorem1 => build_theorem1_lp(q, n, d, table),
        Method::Refined => build_refined_lp(q, n, d, table, partition),
        Method::DualRefined => build_dual_refined_lp(q, n, d, table, partition),
        Method::Compact => unreachable!("the compact form has its own builder"),
    }
}

/// Builds and solves the LP for `method` in its default arithmetic.
pub fn compute_bound(
    q: u32,
    n: usize,
    d: u32,
    method: Method,
    table: &LeeNumberTable,
    partition: &OrbitPartition,
) -> Result<BoundResult> {
    compute_bound_with(q, n, d, method, method.default_arithmetic(), table, partition)
}

/// Builds and solves the LP for `method`. The table and partition must
/// match `(q, n)`.
pub fn compute_bound_with(
    q: u32,
    n: usize,
    d: u32,
    method: Method,
    arithmetic: Arithmetic,
    table: &LeeNumberTable,
    partition: &OrbitPartition,
) -> Result<BoundResult> {
    check_inputs(q, n, d, table)?;
    check_partition(table, partition)?;
    let mut result = BoundResult {
        q,
        n,
        d,
        method,
        arithmetic,
        optimum: None,
        size_bound: BigUint::one(),
        k_bound: 0,
        num_vars: 0,
        num_constraints: 0,
        iterations: 0,
    };
    if is_trivial_distance(q, n, d) {
        return Ok(result);
    }
    let mut shape = |vars: usize, rows: usize| {
        result.num_vars = vars;
        result.num_constraints = rows;
    };
    let (optimum, iterations) = match (method, arithmetic) {
        (Method::Compact, _) => {
            let compact = compact_eigen_matrix(q, n, table, partition)?;
            let lp = build_compact_lp(q, n, d, &compact)?;
            shape(lp.num_vars(), lp.constraints.len());
            if arithmetic == Arithmetic::Exact {
                let sol = solved(solve_max_exact(&lp))?;
                (Optimum::Exact(sol.objective), sol.iterations)
            } else {
                let sol = solved(solve_max_float(&to_float(&lp), FLOAT_VERIFY_TOLERANCE))?;
                (Optimum::Float(sol.objective), sol.iterations)
            }
        }
        (_, arithmetic) => {
            // equalities are eliminated exactly first; what is left has only
            // inequality rows and is tame in floating point too
            let exact: LpProblem<CycReal> = build(q, n, d, method, table, partition)?;
            let pre = eliminate_equalities(&exact)
                .ok_or_else(|| Error::Internal(format!("{method} equalities are inconsistent")))?;
            shape(pre.reduced.num_vars(), pre.reduced.constraints.len());
            if arithmetic == Arithmetic::Exact {
                let sol = pre.lift(&solved(solve_max_exact(&pre.reduced))?);
                if !verify_solution(&exact, &sol, 0.0).passed() {
                    return Err(Error::Internal(format!("{method} optimum fails substitution")));
                }
                let value = match sol.objective.as_rational() {
                    Some(r) => Optimum::Exact(r),
                    None => Optimum::Field(sol.objective),
                };
                (value, sol.iterations)
            } else {
                let fpre = pre.map(LpScalar::to_f64);
                let sol = fpre.lift(&solved(solve_max_float(&fpre.reduced, FLOAT_VERIFY_TOLERANCE))?);
                if !verify_solution(&to_float(&exact), &sol, FLOAT_VERIFY_TOLERANCE).passed() {
                    return Err(Error::Internal(format!("{method} float optimum fails substitution")));
                }
                (Optimum::Float(sol.objective), sol.iterations)
            }
        }
    };
    result.iterations = iterations;
    result.size_bound = optimum.size_bound()?;
    result.k_bound = k_bound_from_size(&result.size_bound, q);
    result.optimum = Some(optimum);
    Ok(result)
}

/// The same problem with every coefficient rounded to `f64`.
pub fn to_float<T: LpScalar>(lp: &LpProblem<T>) -> LpProblem<f64> {
    LpProblem {
        objective: lp.objective.iter().map(LpScalar::to_f64).collect(),
        constraints: lp
            .constraints
            .iter()
            .map(|c| Constraint { coeffs: c.coeffs.iter().map(LpScalar::to_f64).collect(), relation: c.relation, rhs: c.rhs.to_f64() })
            .collect(),
        labels: lp.labels.clone(),
        fixed_zero: lp.fixed_zero.clone(),
    }
}
