//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use leelp_core::codes::{check_orbit_equalities, dual_distribution, rank, InnerDistribution, LinearCode};
use leelp_core::cycreal::CycReal;
use leelp_core::lee::{half, orbit_partition, verify_scheme_axioms, OrbitPartition};
use leelp_core::leenum::{lee_number_table, lee_number_table_direct, LeeNumberTable};
use leelp_core::lp::{build_refined_lp, compact_eigen_matrix, compute_bound_with, orbit_summed_rows, Arithmetic, Method, Optimum};
use leelp_core::simplex::{verify_solution, LpSolution, LpStatus};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Slack on the float theorem-1 optimum: `1 + opt` within this of the
/// published integer.
const THEOREM1_FLOAT_SLACK: f64 = 1.0;
/// Float agreement used only when an optimum is not exact.
const EQUIVALENCE_TOLERANCE: f64 = 1e-6;
const CODES_PER_CASE: usize = 100;
const PROPERTY_SEED: u64 = 0x1ee;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn setup(q: u32, n: usize) -> (LeeNumberTable, OrbitPartition) {
    (lee_number_table(q, n).unwrap(), orbit_partition(n, q).unwrap())
}

fn headline_bounds() -> Check {
    let mut notes = Vec::new();
    for (q, n, d, plain, refined) in [(5u32, 8usize, 8u32, 134u32, 75u32), (7, 7, 11, 55, 40)] {
        let (table, partition) = setup(q, n);
        let t1 = compute_bound_with(q, n, d, Method::Theorem1, Arithmetic::Float, &table, &partition).map_err(|e| e.to_string())?;
        let opt = t1.optimum.as_ref().map_or(0.0, Optimum::to_f64);
        if t1.size_bound != BigUint::from(plain) || ((1.0 + opt) - plain as f64).abs() > THEOREM1_FLOAT_SLACK {
            return Err(format!("({q},{n},{d}) theorem1 gives {} (1+opt = {:.6}), expected {plain}", t1.size_bound, 1.0 + opt));
        }
        for (method, arithmetic) in
            [(Method::Compact, Arithmetic::Exact), (Method::Refined, Arithmetic::Exact), (Method::DualRefined, Arithmetic::Exact)]
        {
            let r = compute_bound_with(q, n, d, method, arithmetic, &table, &partition).map_err(|e| e.to_string())?;
            if r.size_bound != BigUint::from(refined) {
                return Err(format!("({q},{n},{d}) {method} gives {}, expected {refined}", r.size_bound));
            }
        }
        notes.push(format!("({q},{n},{d}): theorem1 {plain} [1+opt {:.4}], refined/compact {refined}", 1.0 + opt));
    }
    Ok(notes.join("; "))
}

/// Printed k-bounds, rows by n, from d = 3 upward; missing cells are blank.
fn printed_q5() -> Vec<(usize, Vec<u32>)> {
    vec![
        (2, vec![1]),
        (3, vec![1, 1]),
        (4, vec![2, 2, 1, 1]),
        (5, vec![3, 3, 2, 1, 1]),
        (6, vec![4, 3, 3, 2, 1, 1, 1]),
        (7, vec![5, 4, 3, 3, 2, 1, 1, 1]),
        (8, vec![6, 5, 4, 4, 3, 2, 2, 1, 1, 1]),
        (9, vec![7, 6, 5, 5, 4, 3, 3, 2, 1, 1, 1]),
        // the last printed column covers d = 14 and d = 15
        (10, vec![8, 7, 6, 6, 5, 4, 3, 3, 2, 2, 1, 1, 1]),
    ]
}

fn printed_q7() -> Vec<(usize, Vec<u32>)> {
    vec![
        (2, vec![1]),
        (3, vec![2, 1, 1, 1]),
        (4, vec![2, 2, 2, 1, 1]),
        (5, vec![3, 3, 2, 2, 1, 1, 1]),
        (6, vec![4, 4, 3, 3, 2, 2, 1, 1, 1, 1]),
        (7, vec![5, 5, 4, 4, 3, 3, 2, 2, 1, 1, 1]),
        (8, vec![6, 6, 5, 4, 4, 4, 3, 3, 2, 2, 1, 1, 1]),
        (9, vec![7, 6, 6, 5, 5, 4, 4, 3, 3, 3, 2, 1, 1, 1, 1, 1]),
    ]
}

fn table_reproduction() -> Check {
    let mut mismatches = Vec::new();
    let mut cells = 0;
    for (q, rows) in [(5u32, printed_q5()), (7, printed_q7())] {
        for (n, printed) in rows {
            let (table, partition) = setup(q, n);
            for (i, &expected) in printed.iter().enumerate() {
                let d = 3 + i as u32;
                let r = compute_bound_with(q, n, d, Method::Compact, Arithmetic::Exact, &table, &partition)
                    .map_err(|e| format!("({q},{n},{d}): {e}"))?;
                cells += 1;
                if r.k_bound != expected {
                    mismatches.push(format!(
                        "(q={q},n={n},d={d}) computed k={} (size bound {}) vs printed {expected}",
                        r.k_bound, r.size_bound
                    ));
                }
            }
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{cells} printed cells match"))
    } else {
        Err(format!("{} of {cells} cells differ: {}", mismatches.len(), mismatches.join("; ")))
    }
}

fn example_codes() -> Check {
    let g1 = vec![vec![1, 0, 0, 2, 2, 3, 3, 1], vec![0, 1, 2, 3, 0, 3, 4, 3]];
    let g2 = vec![
        vec![1, 0, 0, 0, 0, 4, 2, 0, 1],
        vec![0, 1, 0, 0, 0, 2, 4, 1, 0],
        vec![0, 0, 1, 0, 0, 2, 2, 1, 1],
        vec![0, 0, 0, 1, 0, 3, 3, 3, 1],
        vec![0, 0, 0, 0, 1, 1, 2, 2, 2],
    ];
    let g3 = vec![vec![1, 0, 0, 0, 5, 4, 4], vec![0, 1, 0, 0, 3, 6, 6], vec![0, 0, 1, 0, 1, 4, 6], vec![0, 0, 0, 1, 6, 5, 3]];
    let (mut notes, mut failures) = (Vec::new(), Vec::new());
    for (name, q, g, expected) in [("G1", 5u32, g1, 8u32), ("G2", 5, g2, 5), ("G3", 7, g3, 5)] {
        let n = g[0].len();
        let code = LinearCode::new(q, n, g).map_err(|e| e.to_string())?;
        let d = code.min_lee_distance().map_err(|e| e.to_string())?;
        if d != expected {
            let mut witness = Vec::new();
            code.for_each_codeword(|w| {
                let weight: u32 = w.iter().map(|&x| x.min(q - x)).sum();
                if witness.is_empty() && weight == d {
                    witness = w.to_vec();
                }
            })
            .map_err(|e| e.to_string())?;
            failures.push(format!("{name}: distance {d}, expected {expected} (codeword {witness:?} has weight {d})"));
            continue;
        }
        let (table, partition) = setup(q, n);
        let b = compute_bound_with(q, n, d, Method::Compact, Arithmetic::Exact, &table, &partition).map_err(|e| e.to_string())?;
        if b.k_bound as usize != code.k() {
            failures.push(format!("{name}: k = {} but the bound at d = {d} is {}", code.k(), b.k_bound));
            continue;
        }
        notes.push(format!("{name} [{n},{}] d={d} meets k-bound", code.k()));
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(failures.into_iter().chain(notes).collect::<Vec<_>>().join("; "))
    }
}

fn oracle_equivalence() -> Check {
    let mut entries = 0;
    for q in [5u32, 7] {
        for n in 1..=4 {
            let a = lee_number_table(q, n).map_err(|e| e.to_string())?;
            let b = lee_number_table_direct(q, n).map_err(|e| e.to_string())?;
            if a != b {
                let m = a.len();
                let bad = (0..m * m).find(|&i| a.get(i / m, i % m) != b.get(i / m, i % m)).unwrap_or(0);
                return Err(format!("(q={q},n={n}) first difference at entry ({}, {})", bad / m, bad % m));
            }
            entries += a.len() * a.len();
        }
    }
    Ok(format!("{entries} entries identical for q in {{5,7}}, n <= 4"))
}

fn integrality_and_rows() -> Check {
    let mut checked = 0;
    for q in [5u32, 7] {
        for n in 1..=6 {
            let (table, partition) = setup(q, n);
            let summed = orbit_summed_rows(&table, &partition).map_err(|e| format!("(q={q},n={n}) {e}"))?;
            for class in partition.classes() {
                if let Some(&other) = class.iter().find(|&&t| summed[t] != summed[class[0]]) {
                    return Err(format!("(q={q},n={n}) rows {} and {other} differ within one orbit", class[0]));
                }
            }
            compact_eigen_matrix(q, n, &table, &partition).map_err(|e| format!("(q={q},n={n}) {e}"))?;
            checked += summed.len() * partition.len();
        }
    }
    Ok(format!("{checked} orbit-summed entries integral, rows constant on orbits, q in {{5,7}}, n <= 6"))
}

fn random_code(rng: &mut ChaCha8Rng, q: u32, n: usize) -> LinearCode {
    let k = rng.random_range(1..=n);
    loop {
        let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.random_range(0..q)).collect()).collect();
        if rank(&rows, q) == k {
            return LinearCode::new(q, n, rows).expect("full rank");
        }
    }
}

fn feasible_at(b: &InnerDistribution, d: u32, table: &LeeNumberTable, partition: &OrbitPartition) -> bool {
    let lp = build_refined_lp::<CycReal>(b.q, b.n, d, table, partition).expect("refined LP");
    let Ok(values) = b.lp_point(&lp, None) else {
        return false;
    };
    let objective = lp.objective_value(&values);
    let sol = LpSolution { status: LpStatus::Optimal, objective, values, iterations: 0, certified: true };
    verify_solution(&lp, &sol, 0.0).passed()
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);
    let mut total = 0;
    for q in [5u32, 7] {
        for n in 3..=5 {
            let (table, partition) = setup(q, n);
            let mut optima: BTreeMap<u32, BigRational> = BTreeMap::new();
            for i in 0..CODES_PER_CASE {
                let code = random_code(&mut rng, q, n);
                let tag = format!("(q={q},n={n}) code {i} {:?}", code.generator());
                let b = code.inner_distribution().map_err(|e| e.to_string())?;
                if !b.check().passed() {
                    return Err(format!("{tag}: B conditions fail"));
                }
                if !check_orbit_equalities(&b, &partition).map_err(|e| e.to_string())?.passed() {
                    return Err(format!("{tag}: B not constant on orbits"));
                }
                let beta = dual_distribution(&b, &table).map_err(|e| format!("{tag}: {e}"))?;
                if !beta.check().passed() {
                    return Err(format!("{tag}: dual distribution fails its conditions"));
                }
                if dual_distribution(&beta, &table).map_err(|e| e.to_string())?.values != b.values {
                    return Err(format!("{tag}: double transform does not recover B"));
                }
                let dual = code.dual().map_err(|e| e.to_string())?;
                if dual.inner_distribution().map_err(|e| e.to_string())?.values != beta.values {
                    return Err(format!("{tag}: transform differs from the enumerated dual"));
                }
                let d = code.min_lee_distance().map_err(|e| e.to_string())?;
                if !feasible_at(&b, d, &table, &partition) {
                    return Err(format!("{tag}: B infeasible for the refined LP at d = {d}"));
                }
                if let std::collections::btree_map::Entry::Vacant(e) = optima.entry(d) {
                    let r = compute_bound_with(q, n, d, Method::Refined, Arithmetic::Exact, &table, &partition)
                        .map_err(|e| e.to_string())?;
                    let opt = match r.optimum {
                        Some(Optimum::Exact(x)) => x,
                        Some(Optimum::Field(x)) => x.floor().into(),
                        _ => BigRational::from_integer(0.into()),
                    };
                    e.insert(opt);
                }
                let size = BigRational::from_integer(code.size().into());
                // a field optimum is floored above, which keeps the comparison valid for an integer |C| - 1
                if optima[&d] < size - BigRational::one() {
                    return Err(format!("{tag}: refined optimum {} below |C| - 1", optima[&d]));
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} random codes (seed {PROPERTY_SEED:#x}), {CODES_PER_CASE} per (q, n)"))
}

fn theorem4_equivalence() -> Check {
    let (mut exact, mut float) = (0, 0);
    for q in [5u32, 7] {
        for n in 1..=5 {
            let (table, partition) = setup(q, n);
            for d in 1..=(n * half(q)) as u32 {
                let solve = |m| compute_bound_with(q, n, d, m, Arithmetic::Exact, &table, &partition).map_err(|e| format!("({q},{n},{d}) {m}: {e}"));
                let (a, b) = (solve(Method::Refined)?.optimum, solve(Method::DualRefined)?.optimum);
                match (a, b) {
                    (Some(x), Some(y)) if x.is_exact() && y.is_exact() => {
                        if x != y {
                            return Err(format!("({q},{n},{d}) refined {x:?} vs dual-refined {y:?}"));
                        }
                        exact += 1;
                    }
                    (Some(x), Some(y)) => {
                        if (x.to_f64() - y.to_f64()).abs() > EQUIVALENCE_TOLERANCE {
                            return Err(format!("({q},{n},{d}) refined {} vs dual-refined {}", x.to_f64(), y.to_f64()));
                        }
                        float += 1;
                    }
                    (x, y) => return Err(format!("({q},{n},{d}) one side missing: {x:?} / {y:?}")),
                }
            }
        }
    }
    Ok(format!("{exact} instances equal exactly, {float} within {EQUIVALENCE_TOLERANCE:e}"))
}

fn scheme_axioms() -> Check {
    let mut notes = Vec::new();
    for (q, n) in [(5u32, 1usize), (5, 2), (5, 3), (7, 1), (7, 2)] {
        let r = verify_scheme_axioms(q, n).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("(q={q},n={n}) {:?}", r.violation));
        }
        notes.push(format!("({q},{n}) {} pairs", r.pairs_checked));
    }
    Ok(notes.join(", "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("headline bounds 134/75 and 55/40", headline_bounds),
        ("k-bound tables q=5 and q=7 match the printed values", table_reproduction),
        ("example codes G1, G2, G3 reach distance 8, 5, 5", example_codes),
        ("Lee-number recursion equals direct expansion", oracle_equivalence),
        ("orbit-summed matrix integral with orbit-constant rows", integrality_and_rows),
        ("random linear code property suites", property_suites),
        ("refined and dual-refined optima coincide", theorem4_equivalence),
        ("association scheme axioms by exhaustion", scheme_axioms),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {title} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {title} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
