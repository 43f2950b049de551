//! Dense two-phase primal simplex for `max c.x, A x (>=|<=|=) b, x >= 0`.
//!
//! The same code runs over exact rationals, where Bland's rule is used
//! throughout and no tolerance is involved, and over `f64`, where Dantzig's
//! rule is used until a run of degenerate pivots triggers a permanent switch
//! to Bland's rule.

use alloc::vec;
use alloc::vec::Vec;


use crate::lp::{dot, Constraint, LpProblem, LpScalar, Relation};

/// Pivot budget per phase before giving up.
pub const MAX_PIVOTS: usize = 50_000;

/// Degenerate pivots in a row after which the float path switches to Bland.
const DEGENERATE_STREAK: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// The float path could not produce a verified optimum, or the pivot
    /// budget ran out.
    NumericallyUnstable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub objective: T,
    pub values: Vec<T>,
    pub iterations: usize,
    /// All reduced costs of the final basis are nonpositive (within the
    /// pivot tolerance on the float path).
    pub certified: bool,
}

impl<T: LpScalar> LpSolution<T> {
    fn without_point(status: LpStatus, n: usize, iterations: usize) -> Self {
        LpSolution { status, objective: T::zero(), values: vec![T::zero(); n], iterations, certified: false }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    Bland,
    Dantzig,
}

struct Tableau<T> {
    /// rows x (columns + 1); the last entry of each row is the rhs
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    /// reduced costs c_j - z_j followed by -z
    cost: Vec<T>,
    columns: usize,
    /// columns that may never enter the basis again
    barred: Vec<bool>,
    eps: T,
    iterations: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
    Exhausted,
}

impl<T: LpScalar> Tableau<T> {
    fn positive(&self, v: &T) -> bool {
        *v > self.eps
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.columns + 1;
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() / p.clone();
            }
        }
        let pivot_row = core::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..width {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f.mul_ref(&pivot_row[j]);
                }
            }
            if !T::EXACT {
                row[c] = T::zero();
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (cj, pj) in self.cost.iter_mut().zip(&pivot_row) {
                if !pj.is_zero() {
                    *cj -= &f.mul_ref(pj);
                }
            }
            if !T::EXACT {
                self.cost[c] = T::zero();
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
        self.iterations += 1;
    }

    fn entering(&self, rule: Rule) -> Option<usize> {
        let candidates = (0..self.columns).filter(|&j| !self.barred[j] && self.positive(&self.cost[j]));
        match rule {
            Rule::Bland => candidates.into_iter().next(),
            Rule::Dantzig => {
                let mut best: Option<usize> = None;
                for j in candidates {
                    if best.is_none_or(|b| self.cost[j] > self.cost[b]) {
                        best = Some(j);
                    }
                }
                best
            }
        }
    }

    /// Minimum-ratio row; ties go to the smallest basic variable index.
    fn leaving(&self, c: usize) -> Option<usize> {
        let rhs = self.columns;
        let mut best: Option<(usize, T)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !self.positive(&row[c]) {
                continue;
            }
            let ratio = row[rhs].clone() / row[c].clone();
            best = match best {
                None => Some((i, ratio)),
                Some((b, br)) => {
                    if ratio < br || (ratio == br && self.basis[i] < self.basis[b]) {
                        Some((i, ratio))
                    } else {
                        Some((b, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn run(&mut self, initial: Rule) -> PhaseEnd {
        let mut rule = initial;
        let mut streak = 0usize;
        let start = self.iterations;
        loop {
            if self.iterations - start >= MAX_PIVOTS {
                return PhaseEnd::Exhausted;
            }
            let Some(c) = self.entering(rule) else {
                return PhaseEnd::Optimal;
            };
            let Some(r) = self.leaving(c) else {
                return PhaseEnd::Unbounded;
            };
            let degenerate = !self.positive(&self.rows[r][self.columns]);
            self.pivot(r, c);
            if rule == Rule::Dantzig {
                streak = if degenerate { streak + 1 } else { 0 };
                if streak >= DEGENERATE_STREAK {
                    rule = Rule::Bland;
                }
            }
        }
    }

    fn set_objective(&mut self, costs: &[T]) {
        let width = self.columns + 1;
        self.cost = vec![T::zero(); width];
        for (j, c) in costs.iter().enumerate() {
            self.cost[j] = c.clone();
        }
        for (i, row) in self.rows.iter().enumerate() {
            let cb = if self.basis[i] < costs.len() { costs[self.basis[i]].clone() } else { T::zero() };
            if cb.is_zero() {
                continue;
            }
            for (cj, rj) in self.cost.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *cj -= &cb.mul_ref(rj);
                }
            }
        }
    }
}

fn solve<T: LpScalar>(lp: &LpProblem<T>, rule: Rule) -> LpSolution<T> {
    let n = lp.num_vars();
    let zero = T::zero();

    // orient rows so every rhs is nonnegative, preferring slack-only rows
    let mut oriented: Vec<(Vec<T>, Relation, T)> = Vec::with_capacity(lp.constraints.len());
    for row in &lp.constraints {
        if row.rhs < zero || (row.rhs.is_zero() && row.relation == Relation::Ge) {
            let flipped = match row.relation {
                Relation::Ge => Relation::Le,
                Relation::Le => Relation::Ge,
                Relation::Eq => Relation::Eq,
            };
            oriented.push((row.coeffs.iter().map(|c| -c.clone()).collect(), flipped, -row.rhs.clone()));
        } else {
            oriented.push((row.coeffs.clone(), row.relation, row.rhs.clone()));
        }
    }

    let m = oriented.len();
    let slacks = oriented.iter().filter(|r| r.1 != Relation::Eq).count();
    let artificials = oriented.iter().filter(|r| r.1 != Relation::Le).count();
    let columns = n + slacks + artificials;
    let first_artificial = n + slacks;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, first_artificial);
    for (coeffs, relation, rhs) in oriented {
        let mut row = vec![T::zero(); columns + 1];
        for (j, c) in coeffs.into_iter().enumerate() {
            row[j] = c;
        }
        row[columns] = rhs;
        match relation {
            Relation::Le => {
                row[next_slack] = T::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -T::one();
                next_slack += 1;
                row[next_art] = T::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = T::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }

    let eps = T::pivot_tolerance();
    let mut tab = Tableau {
        rows,
        basis,
        cost: Vec::new(),
        columns,
        barred: vec![false; columns],
        eps: eps.clone(),
        iterations: 0,
    };

    if artificials > 0 {
        // phase 1: maximize -(sum of artificials)
        let mut phase1 = vec![T::zero(); columns];
        for c in phase1.iter_mut().skip(first_artificial) {
            *c = -T::one();
        }
        tab.set_objective(&phase1);
        match tab.run(rule) {
            PhaseEnd::Optimal => {}
            PhaseEnd::Unbounded | PhaseEnd::Exhausted => {
                return LpSolution::without_point(LpStatus::NumericallyUnstable, n, tab.iterations)
            }
        }
        // -z is stored at the rhs position of the cost row
        let infeasibility = tab.cost[columns].clone();
        if infeasibility > eps.clone() * T::from_i64(1 + m as i64) {
            return LpSolution::without_point(LpStatus::Infeasible, n, tab.iterations);
        }
        for j in first_artificial..columns {
            tab.barred[j] = true;
        }
        // drive zero-level artificials out of the basis; drop redundant rows
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] < first_artificial {
                r += 1;
                continue;
            }
            let replacement = (0..first_artificial).find(|&j| tab.rows[r][j].abs() > eps);
            match replacement {
                Some(j) => {
                    tab.pivot(r, j);
                    r += 1;
                }
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                }
            }
        }
    }

    let mut costs = lp.objective.clone();
    costs.resize(columns, T::zero());
    tab.set_objective(&costs);
    let status = match tab.run(rule) {
        PhaseEnd::Optimal => LpStatus::Optimal,
        PhaseEnd::Unbounded => LpStatus::Unbounded,
        PhaseEnd::Exhausted => LpStatus::NumericallyUnstable,
    };
    if status != LpStatus::Optimal {
        return LpSolution::without_point(status, n, tab.iterations);
    }

    let mut values = vec![T::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            values[b] = tab.rows[i][columns].clone();
        }
    }
    if !T::EXACT {
        // clamp round-off below zero
        for v in values.iter_mut() {
            if *v < zero {
                *v = T::zero();
            }
        }
    }
    let certified = (0..columns).all(|j| tab.barred[j] || !tab.positive(&tab.cost[j]));
    LpSolution { status, objective: dot(&lp.objective, &values), values, iterations: tab.iterations, certified }
}

/// Exact two-phase simplex with Bland's rule, over the rationals or any
/// other exact ordered field.
pub fn solve_max_exact<T: LpScalar>(lp: &LpProblem<T>) -> LpSolution<T> {
    assert!(T::EXACT, "solve_max_exact needs an exact scalar");
    solve(lp, Rule::Bland)
}

/// Floating-point two-phase simplex. The optimum is re-verified by
/// substitution at `tolerance` (relative to each row's magnitude); failure
/// is reported as [`LpStatus::NumericallyUnstable`].
pub fn solve_max_float(lp: &LpProblem<f64>, tolerance: f64) -> LpSolution<f64> {
    let mut solution = solve(lp, Rule::Dantzig);
    if solution.is_optimal() && !verify_solution(lp, &solution, tolerance).passed() {
        solution.status = LpStatus::NumericallyUnstable;
    }
    solution
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub violated_rows: Vec<usize>,
    pub negative_values: Vec<usize>,
    pub objective_mismatch: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violated_rows.is_empty() && self.negative_values.is_empty() && !self.objective_mismatch
    }
}

/// Substitutes `solution.values` into every row and sign condition.
///
/// With exact scalars `tolerance` is ignored and the check is exact. With
/// `f64` a row is accepted when its violation is at most `tolerance` times
/// `1 + sum |a_j x_j| + |b|`.
pub fn verify_solution<T: LpScalar>(lp: &LpProblem<T>, solution: &LpSolution<T>, tolerance: f64) -> VerifyReport {
    let slack_allowed = |scale: f64| -> f64 {
        if T::EXACT {
            0.0
        } else {
            tolerance * (1.0 + scale)
        }
    };
    let mut report = VerifyReport { violated_rows: Vec::new(), negative_values: Vec::new(), objective_mismatch: false };
    let x = &solution.values;
    if x.len() != lp.num_vars() {
        report.objective_mismatch = true;
        return report;
    }
    for (j, v) in x.iter().enumerate() {
        if v.to_f64() < -slack_allowed(0.0) || (T::EXACT && *v < T::zero()) {
            report.negative_values.push(j);
        }
    }
    for (i, row) in lp.constraints.iter().enumerate() {
        let lhs = dot(&row.coeffs, x);
        let gap = lhs.clone() - row.rhs.clone();
        let ok = if T::EXACT {
            match row.relation {
                Relation::Ge => gap >= T::zero(),
                Relation::Le => gap <= T::zero(),
                Relation::Eq => gap.is_zero(),
            }
        } else {
            let scale: f64 =
                row.coeffs.iter().zip(x).map(|(a, v)| (a.to_f64() * v.to_f64()).abs()).sum::<f64>() + row.rhs.to_f64().abs();
            let allowed = slack_allowed(scale);
            let g = gap.to_f64();
            match row.relation {
                Relation::Ge => g >= -allowed,
                Relation::Le => g <= allowed,
                Relation::Eq => g.abs() <= allowed,
            }
        };
        if !ok {
            report.violated_rows.push(i);
        }
    }
    let objective = lp.objective_value(x);
    report.objective_mismatch = if T::EXACT {
        objective != solution.objective
    } else {
        (objective.to_f64() - solution.objective.to_f64()).abs() > slack_allowed(objective.to_f64().abs())
    };
    report
}

/// An LP with its equality rows solved away exactly.
///
/// Each eliminated variable is `x_p = r_p - sum_j R_pj x_j` over the
/// surviving columns; the condition `x_p >= 0` becomes an inequality row of
/// the reduced problem.
/// `(original column, r_p, [(reduced column, R_pj)])`.
pub type Substitution<T> = (usize, T, Vec<(usize, T)>);

#[derive(Clone, Debug, PartialEq)]
pub struct Presolved<T> {
    pub reduced: LpProblem<T>,
    /// Original column of each reduced column.
    pub kept: Vec<usize>,
    pub eliminated: Vec<Substitution<T>>,
    /// Constant part of the objective after substitution.
    pub offset: T,
    pub num_vars: usize,
}

impl<T: LpScalar> Presolved<T> {
    /// Values of the original variables from values of the reduced ones.
    pub fn expand(&self, reduced: &[T]) -> Vec<T> {
        let mut x = vec![T::zero(); self.num_vars];
        for (j, &col) in self.kept.iter().enumerate() {
            x[col] = reduced[j].clone();
        }
        for (col, r, expr) in &self.eliminated {
            let mut v = r.clone();
            for (j, c) in expr {
                v -= &c.mul_ref(&reduced[*j]);
            }
            x[*col] = v;
        }
        x
    }

    /// Maps a solution of [`Self::reduced`] back to the original problem.
    pub fn lift(&self, solution: &LpSolution<T>) -> LpSolution<T> {
        if !solution.is_optimal() {
            return LpSolution::without_point(solution.status, self.num_vars, solution.iterations);
        }
        let mut objective = solution.objective.clone();
        objective += &self.offset;
        LpSolution {
            status: solution.status,
            objective,
            values: self.expand(&solution.values),
            iterations: solution.iterations,
            certified: solution.certified,
        }
    }

    /// Converts every number with `f`; used to hand an exactly presolved
    /// problem to the floating-point solver.
    pub fn map<U: LpScalar>(&self, f: impl Fn(&T) -> U) -> Presolved<U> {
        let reduced = LpProblem {
            objective: self.reduced.objective.iter().map(&f).collect(),
            constraints: self
                .reduced
                .constraints
                .iter()
                .map(|c| Constraint { coeffs: c.coeffs.iter().map(&f).collect(), relation: c.relation, rhs: f(&c.rhs) })
                .collect(),
            labels: self.reduced.labels.clone(),
            fixed_zero: self.reduced.fixed_zero.clone(),
        };
        Presolved {
            reduced,
            kept: self.kept.clone(),
            eliminated: self
                .eliminated
                .iter()
                .map(|(col, r, expr)| (*col, f(r), expr.iter().map(|(j, c)| (*j, f(c))).collect()))
                .collect(),
            offset: f(&self.offset),
            num_vars: self.num_vars,
        }
    }
}

/// Solves the equality rows of `lp` by exact Gauss-Jordan elimination and
/// substitutes them into the rest. Returns `None` when the equalities are
/// inconsistent. Only meaningful for exact scalars.
pub fn eliminate_equalities<T: LpScalar>(lp: &LpProblem<T>) -> Option<Presolved<T>> {
    assert!(T::EXACT, "equalities are eliminated in exact arithmetic only");
    let n = lp.num_vars();
    let mut eq: Vec<(Vec<T>, T)> = lp
        .constraints
        .iter()
        .filter(|c| c.relation == Relation::Eq)
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..eq.len()).find(|&i| !eq[i].0[col].is_zero()) else {
            continue;
        };
        eq.swap(r, p);
        let inv = T::one() / eq[r].0[col].clone();
        for v in eq[r].0.iter_mut() {
            if !v.is_zero() {
                *v = v.mul_ref(&inv);
            }
        }
        eq[r].1 = eq[r].1.mul_ref(&inv);
        let (head, tail) = eq.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        let pivot_row = &*pivot_row;
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row.0[col].is_zero() {
                continue;
            }
            let f = row.0[col].clone();
            for j in 0..n {
                if !pivot_row.0[j].is_zero() {
                    row.0[j] -= &f.mul_ref(&pivot_row.0[j]);
                }
            }
            row.1 -= &f.mul_ref(&pivot_row.1);
        }
        pivots.push(col);
        r += 1;
        if r == eq.len() {
            break;
        }
    }
    if eq[r..].iter().any(|(_, rhs)| !rhs.is_zero()) {
        return None;
    }
    eq.truncate(r);

    let kept: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let eliminated: Vec<Substitution<T>> = pivots
        .iter()
        .zip(&eq)
        .map(|(&p, (row, rhs))| {
            let expr = kept
                .iter()
                .enumerate()
                .filter(|(_, &c)| !row[c].is_zero())
                .map(|(j, &c)| (j, row[c].clone()))
                .collect();
            (p, rhs.clone(), expr)
        })
        .collect();

    // a.x = sum_j (a_j - sum_p a_p R_pj) x_j + sum_p a_p r_p
    let substitute = |coeffs: &[T]| -> (Vec<T>, T) {
        let mut out: Vec<T> = kept.iter().map(|&c| coeffs[c].clone()).collect();
        let mut constant = T::zero();
        for (p, r_p, expr) in &eliminated {
            let a = &coeffs[*p];
            if a.is_zero() {
                continue;
            }
            constant += &a.mul_ref(r_p);
            for (j, c) in expr {
                out[*j] -= &a.mul_ref(c);
            }
        }
        (out, constant)
    };

    let (objective, offset) = substitute(&lp.objective);
    let labels = kept.iter().map(|&c| lp.labels[c]).collect();
    let mut reduced = LpProblem { objective, constraints: Vec::new(), labels, fixed_zero: lp.fixed_zero.clone() };
    for c in lp.constraints.iter().filter(|c| c.relation != Relation::Eq) {
        let (coeffs, constant) = substitute(&c.coeffs);
        reduced.constraints.push(Constraint { coeffs, relation: c.relation, rhs: c.rhs.clone() - constant });
    }
    for (_, r_p, expr) in &eliminated {
        let mut coeffs = vec![T::zero(); kept.len()];
        for (j, c) in expr {
            coeffs[*j] = c.clone();
        }
        reduced.constraints.push(Constraint { coeffs, relation: Relation::Le, rhs: r_p.clone() });
    }
    Some(Presolved { reduced, kept, eliminated, offset, num_vars: n })
}
