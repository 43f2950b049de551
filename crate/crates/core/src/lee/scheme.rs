//! Brute-force check that the composition relations on `Z_q^n` form an
//! association scheme.

use alloc::vec;
use alloc::vec::Vec;

use super::{check_odd, for_each_word, half, symbol_weight, CompositionSpace};
use crate::error::{Error, Result};

/// Largest `q^n` accepted by [`verify_scheme_axioms`].
pub const SCHEME_GUARD: u128 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeViolation {
    /// (i): `(x, y)` and `(y, x)` lie in different relations.
    NotSymmetric { x: Vec<u32>, y: Vec<u32> },
    /// (ii): the pair falls into no relation.
    Unclassified { x: Vec<u32>, y: Vec<u32> },
    /// (iii): relation 0 is not exactly the diagonal.
    NotIdentity { x: Vec<u32>, y: Vec<u32> },
    /// (iv): the intersection number `c_ijk` depends on the pair.
    IntersectionNumber {
        i: usize,
        j: usize,
        k: usize,
        x: Vec<u32>,
        y: Vec<u32>,
        expected: u64,
        found: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeReport {
    pub q: u32,
    pub n: usize,
    /// Number of relations, `alpha + 1`.
    pub relations: usize,
    pub pairs_checked: u64,
    pub violation: Option<SchemeViolation>,
}

impl SchemeReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks axioms (i)-(iv) for the relations `K_t` (pairs whose difference has
/// Lee composition `t`) by exhausting all pairs and all third points.
pub fn verify_scheme_axioms(q: u32, n: usize) -> Result<SchemeReport> {
    check_odd(q)?;
    if n == 0 {
        return Err(Error::EmptyBlock);
    }
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > SCHEME_GUARD {
        return Err(Error::SizeGuard { what: "q^n", size, limit: SCHEME_GUARD });
    }
    let space = CompositionSpace::new(n, half(q))?;
    let m = space.len();

    let mut words: Vec<Vec<u32>> = Vec::with_capacity(size as usize);
    for_each_word(q, n, |xs| words.push(xs.to_vec()));

    // composition index of every word, addressed by its base-q index
    let mut class_of_word = Vec::with_capacity(words.len());
    for w in &words {
        let mut counts = vec![0u32; half(q) + 1];
        for &a in w {
            counts[symbol_weight(a, q) as usize] += 1;
        }
        class_of_word.push(space.index_of_counts(&counts));
    }
    let relation = |x: &[u32], y: &[u32]| -> Option<usize> {
        let mut idx = 0usize;
        for (&a, &b) in x.iter().zip(y).rev() {
            idx = idx * q as usize + ((a + q - b) % q) as usize;
        }
        class_of_word[idx]
    };

    let mut report = SchemeReport { q, n, relations: m, pairs_checked: 0, violation: None };
    // reference[k] = intersection numbers c_{ij k}, flattened over (i, j)
    let mut reference: Vec<Option<Vec<u64>>> = vec![None; m];
    let mut row_x = vec![0usize; words.len()];
    let mut row_y = vec![0usize; words.len()];
    let mut counts = vec![0u64; m * m];

    for x in &words {
        for (z, w) in words.iter().enumerate() {
            row_x[z] = match relation(x, w) {
                Some(r) => r,
                None => {
                    report.violation = Some(SchemeViolation::Unclassified { x: x.clone(), y: w.clone() });
                    return Ok(report);
                }
            };
        }
        for y in &words {
            report.pairs_checked += 1;
            let k = relation(x, y).expect("classified above");
            if relation(y, x) != Some(k) {
                report.violation = Some(SchemeViolation::NotSymmetric { x: x.clone(), y: y.clone() });
                return Ok(report);
            }
            if (k == 0) != (x == y) {
                report.violation = Some(SchemeViolation::NotIdentity { x: x.clone(), y: y.clone() });
                return Ok(report);
            }
            for (z, w) in words.iter().enumerate() {
                row_y[z] = relation(y, w).expect("classified above");
            }
            counts.iter_mut().for_each(|c| *c = 0);
            for z in 0..words.len() {
                counts[row_x[z] * m + row_y[z]] += 1;
            }
            match &reference[k] {
                None => reference[k] = Some(counts.clone()),
                Some(expected) => {
                    if let Some(pos) = (0..m * m).find(|&p| expected[p] != counts[p]) {
                        report.violation = Some(SchemeViolation::IntersectionNumber {
                            i: pos / m,
                            j: pos % m,
                            k,
                            x: x.clone(),
                            y: y.clone(),
                            expected: expected[pos],
                            found: counts[pos],
                        });
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lee_scheme_passes() {
        for &(q, n) in &[(5u32, 1usize), (7, 2), (5, 3)] {
            let report = verify_scheme_axioms(q, n).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.pairs_checked, (q as u64).pow(2 * n as u32));
        }
    }

    #[test]
    fn guard_refuses_large_spaces() {
        assert!(matches!(verify_scheme_axioms(7, 6), Err(Error::SizeGuard { size: 117_649, .. })));
        assert_eq!(verify_scheme_axioms(5, 0), Err(Error::EmptyBlock));
    }
}
