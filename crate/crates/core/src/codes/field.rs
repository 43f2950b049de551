//! Row reduction over the prime field `F_q`.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn inverse(a: u32, q: u32) -> u32 {
    // q is prime, so a^(q-2) is the inverse
    let (mut base, mut exp, mut acc) = (a as u64 % q as u64, q as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u32>>, q: u32) -> Vec<usize> {
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inverse(rows[r][c], q);
        for v in rows[r].iter_mut() {
            *v = (*v * inv) % q;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = (*x + (q - f) * p) % q;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<u32>], q: u32) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, q).len()
}

/// A basis of `{x : G x^T = 0}` for a matrix in reduced row echelon form
/// with the given pivots.
pub(crate) fn nullspace(reduced: &[Vec<u32>], pivots: &[usize], n: usize, q: u32) -> Vec<Vec<u32>> {
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (row, &p) in reduced.iter().zip(pivots) {
            v[p] = (q - row[free]) % q;
        }
        basis.push(v);
    }
    basis
}
