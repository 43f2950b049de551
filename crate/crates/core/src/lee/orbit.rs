use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_odd_prime, half, CompositionSpace, LeeComposition};
use crate::error::{Error, Result};

/// The permutation `pi_r` of `{0, ..., s}` with `pi_r(i) = |k|`,
/// `k * r = i (mod q)`, `-s <= k <= s`.
///
/// If `t` is the composition of `x`, the composition of `r x` is
/// `t.permuted(&pi_r)`.
pub fn multiplier_permutation(q: u32, r: u32) -> Result<Vec<usize>> {
    check_odd_prime(q)?;
    if r.is_multiple_of(q) {
        return Err(Error::InvalidMultiplier { r, q });
    }
    let r = r % q;
    let inv = (1..q).find(|&v| (v * r) % q == 1).expect("q is prime");
    let s = half(q);
    Ok((0..=s)
        .map(|i| {
            let k = (i as u32 * inv) % q;
            k.min(q - k) as usize
        })
        .collect())
}

/// All permutations `pi_1, ..., pi_{q-1}`.
fn all_permutations(q: u32) -> Result<Vec<Vec<usize>>> {
    (1..q).map(|r| multiplier_permutation(q, r)).collect()
}

/// `tau(t)`: the compositions reachable from `t` by scalar multiplication,
/// in enumeration (descending lexicographic) order.
pub fn orbit(t: &LeeComposition, q: u32) -> Result<Vec<LeeComposition>> {
    check_odd_prime(q)?;
    if t.s() != half(q) {
        return Err(Error::DimensionMismatch(alloc::format!(
            "composition {t} does not match q = {q}"
        )));
    }
    let set: BTreeSet<LeeComposition> =
        all_permutations(q)?.iter().map(|p| t.permuted(p)).collect();
    Ok(set.into_iter().rev().collect())
}

/// Partition of the composition indices into `tau`-classes.
///
/// Classes are ordered by their representative, the smallest member index,
/// so class 0 is always `{[n, 0, ..., 0]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    q: u32,
    space: CompositionSpace,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn new(space: CompositionSpace, q: u32) -> Result<Self> {
        check_odd_prime(q)?;
        if space.s() != half(q) {
            return Err(Error::DimensionMismatch(alloc::format!(
                "composition space with s = {} does not match q = {q}",
                space.s()
            )));
        }
        let perms = all_permutations(q)?;
        let mut class_of = vec![usize::MAX; space.len()];
        let mut classes = Vec::new();
        for i in 0..space.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let t = space.get(i);
            let mut members: Vec<usize> = perms
                .iter()
                .map(|p| space.index_of(&t.permuted(p)).expect("permutation stays in the space"))
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        Ok(OrbitPartition { q, space, classes, class_of })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn space(&self) -> &CompositionSpace {
        &self.space
    }

    /// Number of classes, `kappa + 1`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_of(&self, index: usize) -> usize {
        self.class_of[index]
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Smallest Lee weight among the class members. A class survives a
    /// minimum-distance constraint `d` only if this is at least `d`.
    pub fn min_weight(&self, c: usize) -> u32 {
        self.classes[c].iter().map(|&i| self.space.get(i).weight()).min().unwrap_or(0)
    }
}

pub fn orbit_partition(n: usize, q: u32) -> Result<OrbitPartition> {
    check_odd_prime(q)?;
    OrbitPartition::new(CompositionSpace::new(n, half(q))?, q)
}
