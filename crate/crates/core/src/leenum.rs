//! Lee numbers `L_t(u)`: the coefficients of
//! `prod_l (z_0 + eta_l z_1 + eta_{2l} z_2 + ... + eta_{sl} z_s)^{u_l}`.
//!
//! The table is grown one coordinate at a time: appending a coordinate of
//! Lee weight `j` multiplies the generating polynomial by
//! `z_0 + sum_{i>=1} eta_{ij} z_i`, so
//! `L_t(u + e_j) = L_{t - e_0}(u) + sum_{i>=1} eta_{ij} L_{t - e_i}(u)` with
//! out-of-range terms dropped.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use crate::cyclotomic::{CycInt, CycRing};
use crate::error::{Error, Result};
use crate::lee::{check_odd_prime, half, CompositionSpace, LeeComposition};

/// Default cap on the number of compositions `C(n + s, s)`.
pub const DEFAULT_COMPOSITION_GUARD: usize = 1500;

/// Which coordinate is appended last when reaching `u` from the length
/// below. Every order yields the same table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IncrementOrder {
    /// `u` is built by incrementing `u_0` first, then `u_1`, ..., `u_s`; the
    /// final step is at the highest nonzero component.
    #[default]
    Canonical,
    /// The final step is at the lowest nonzero component.
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableOptions {
    pub max_compositions: usize,
    pub order: IncrementOrder,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { max_compositions: DEFAULT_COMPOSITION_GUARD, order: IncrementOrder::Canonical }
    }
}

/// The matrix `Upsilon(t, u) = L_t(u)` over all compositions of length `n`.
#[derive(Clone, Debug)]
pub struct LeeNumberTable {
    q: u32,
    ring: Arc<CycRing>,
    space: CompositionSpace,
    entries: Vec<CycInt>,
}

impl PartialEq for LeeNumberTable {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.space == other.space && self.entries == other.entries
    }
}

impl Eq for LeeNumberTable {}

impl LeeNumberTable {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn space(&self) -> &CompositionSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    /// `L_t(u)` by composition indices.
    pub fn get(&self, t: usize, u: usize) -> &CycInt {
        &self.entries[t * self.space.len() + u]
    }

    pub fn entry(&self, t: &LeeComposition, u: &LeeComposition) -> Option<&CycInt> {
        Some(self.get(self.space.index_of(t)?, self.space.index_of(u)?))
    }

    /// Row `t` of the table: `L_t(u)` for every `u`.
    pub fn row(&self, t: usize) -> &[CycInt] {
        let m = self.space.len();
        &self.entries[t * m..(t + 1) * m]
    }

    /// Rebuilds a table from stored power-basis coefficients, row-major.
    /// The result is checked against the column-sum and first-column laws.
    pub fn from_coefficients(q: u32, n: usize, coefficients: Vec<Vec<BigInt>>) -> Result<Self> {
        check_odd_prime(q)?;
        let ring = CycRing::new(q)?;
        let space = CompositionSpace::new(n, half(q))?;
        let m = space.len();
        if coefficients.len() != m * m || coefficients.iter().any(|c| c.len() != ring.s()) {
            return Err(Error::DimensionMismatch(alloc::format!(
                "expected {m}x{m} entries with {} coefficients each",
                ring.s()
            )));
        }
        let entries = coefficients.into_iter().map(|c| CycInt::from_coeffs(&ring, c)).collect();
        let table = LeeNumberTable { q, ring, space, entries };
        if !row_column_sums(&table).passed() {
            return Err(Error::Internal("stored Lee-number table fails its checksums".into()));
        }
        Ok(table)
    }

    /// Power-basis coefficients of every entry, row-major.
    pub fn coefficients(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.iter().map(CycInt::coeffs)
    }
}

pub fn lee_number_table(q: u32, n: usize) -> Result<LeeNumberTable> {
    lee_number_table_with(q, n, TableOptions::default())
}

pub fn lee_number_table_with(q: u32, n: usize, options: TableOptions) -> Result<LeeNumberTable> {
    check_odd_prime(q)?;
    if n == 0 {
        return Err(Error::EmptyBlock);
    }
    let s = half(q);
    let count = binomial(n + s, s);
    if count > options.max_compositions as u128 {
        return Err(Error::SizeGuard {
            what: "C(n+s, s) compositions",
            size: count,
            limit: options.max_compositions as u128,
        });
    }
    let ring = CycRing::new(q)?;

    // length 0: L_[]([]) = 1
    let mut space = CompositionSpace::build(0, s);
    let mut entries = vec![CycInt::one(&ring)];

    for m in 1..=n {
        let next = CompositionSpace::build(m, s);
        let width = next.len();
        let prev_width = space.len();
        let mut level = vec![CycInt::zero(&ring); width * width];
        let mut shifted = vec![0u32; s + 1];
        for (ui, u) in next.iter().enumerate() {
            let counts = u.counts();
            let j = match options.order {
                IncrementOrder::Canonical => (0..=s).rev().find(|&i| counts[i] > 0),
                IncrementOrder::Reversed => (0..=s).find(|&i| counts[i] > 0),
            }
            .expect("compositions of positive length are nonzero");
            shifted.copy_from_slice(counts);
            shifted[j] -= 1;
            let base = space.index_of_counts(&shifted).expect("shorter composition exists");

            for (ti, t) in next.iter().enumerate() {
                let acc = &mut level[ti * width + ui];
                shifted.copy_from_slice(t.counts());
                for i in 0..=s {
                    if shifted[i] == 0 {
                        continue;
                    }
                    shifted[i] -= 1;
                    let below = space.index_of_counts(&shifted).expect("shorter composition exists");
                    let prev = &entries[below * prev_width + base];
                    if i == 0 {
                        acc.add_assign_ref(prev);
                    } else {
                        acc.add_eta_multiple((i * j) as i64, prev);
                    }
                    shifted[i] += 1;
                }
            }
        }
        space = next;
        entries = level;
    }

    Ok(LeeNumberTable { q, ring, space, entries })
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Coefficients of `z^t` for every `t`, by expanding the generating product.
fn expand_generating_polynomial(ring: &Arc<CycRing>, u: &LeeComposition) -> BTreeMap<Vec<u32>, CycInt> {
    let s = ring.s();
    let mut poly: BTreeMap<Vec<u32>, CycInt> = BTreeMap::new();
    poly.insert(vec![0; s + 1], CycInt::one(ring));
    for (l, &power) in u.counts().iter().enumerate() {
        for _ in 0..power {
            let mut product: BTreeMap<Vec<u32>, CycInt> = BTreeMap::new();
            for (monomial, coeff) in &poly {
                for i in 0..=s {
                    let mut key = monomial.clone();
                    key[i] += 1;
                    // z_0 always enters with coefficient 1
                    let term = if i == 0 { coeff.clone() } else { coeff * &CycInt::eta(ring, (i * l) as i64) };
                    match product.get_mut(&key) {
                        Some(existing) => *existing = &*existing + &term,
                        None => {
                            product.insert(key, term);
                        }
                    }
                }
            }
            poly = product;
        }
    }
    poly
}

/// `L_t(u)` read directly off the expanded generating polynomial. Meant for
/// small `n`; it is the independent check on [`lee_number_table`].
pub fn lee_number_direct(t: &LeeComposition, u: &LeeComposition, q: u32) -> Result<CycInt> {
    check_odd_prime(q)?;
    if t.n() != u.n() || t.s() != half(q) || u.s() != half(q) {
        return Err(Error::DimensionMismatch(alloc::format!(
            "compositions {t} and {u} do not share a length for q = {q}"
        )));
    }
    let ring = CycRing::new(q)?;
    let poly = expand_generating_polynomial(&ring, u);
    Ok(poly.get(t.counts()).cloned().unwrap_or_else(|| CycInt::zero(&ring)))
}

/// The full table computed by direct expansion, one column at a time.
pub fn lee_number_table_direct(q: u32, n: usize) -> Result<LeeNumberTable> {
    check_odd_prime(q)?;
    let ring = CycRing::new(q)?;
    let space = CompositionSpace::new(n, half(q))?;
    let m = space.len();
    let mut entries = vec![CycInt::zero(&ring); m * m];
    for (ui, u) in space.iter().enumerate() {
        for (key, value) in expand_generating_polynomial(&ring, u) {
            let ti = space.index_of_counts(&key).expect("monomials are compositions");
            entries[ti * m + ui] = value;
        }
    }
    Ok(LeeNumberTable { q, ring, space, entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChecksumReport {
    /// `sum_t L_t(u)` for each `u`.
    pub column_sums: Vec<CycInt>,
    /// Columns whose sum is not `q^n [u = n e_0]`.
    pub bad_columns: Vec<usize>,
    /// Rows `t` with `L_t(n e_0) != [n over t]`.
    pub bad_first_column: Vec<usize>,
}

impl ChecksumReport {
    pub fn passed(&self) -> bool {
        self.bad_columns.is_empty() && self.bad_first_column.is_empty()
    }
}

pub fn row_column_sums(table: &LeeNumberTable) -> ChecksumReport {
    let m = table.len();
    let ring = table.ring();
    let total = BigInt::from(BigUint::from(table.q).pow(table.n() as u32));
    let mut column_sums = Vec::with_capacity(m);
    let mut bad_columns = Vec::new();
    for u in 0..m {
        let sum = (0..m).fold(CycInt::zero(ring), |acc, t| &acc + table.get(t, u));
        let expected = if u == 0 { total.clone() } else { BigInt::from(0) };
        if sum.as_integer() != Some(expected) {
            bad_columns.push(u);
        }
        column_sums.push(sum);
    }
    let bad_first_column = (0..m)
        .filter(|&t| table.get(t, 0).as_integer() != Some(BigInt::from(table.space().get(t).word_count())))
        .collect();
    ChecksumReport { column_sums, bad_columns, bad_first_column }
}
