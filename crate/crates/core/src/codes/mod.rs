//! Linear codes over `F_q`: enumeration, Lee distance, inner distribution
//! and its MacWilliams transform.

mod field;
mod search;

pub use field::rank;
pub use search::{random_code_search, search_chunk, ChunkOutcome, SearchOutcome, SEARCH_CHUNK};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::lee::{check_odd_prime, for_each_word, half, symbol_weight, CompositionSpace, OrbitPartition, Word};
use crate::leenum::LeeNumberTable;
use crate::lp::{LpProblem, LpScalar};

/// Largest `q^k` (or `|C|^2` for word sets) that will be enumerated.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

fn guard(what: &'static str, size: u128) -> Result<()> {
    if size > ENUMERATION_GUARD {
        return Err(Error::SizeGuard { what, size, limit: ENUMERATION_GUARD });
    }
    Ok(())
}

/// Maps a word's weight counts to its composition index by a dense lookup.
pub(crate) struct CompositionIndexer {
    q: u32,
    radix: usize,
    lookup: Vec<usize>,
    counts: Vec<u32>,
}

impl CompositionIndexer {
    pub(crate) fn new(space: &CompositionSpace, q: u32) -> Self {
        let radix = space.n() + 1;
        let size = radix.pow(space.s() as u32);
        let mut lookup = vec![usize::MAX; size];
        for (i, t) in space.iter().enumerate() {
            lookup[Self::key(radix, t.counts())] = i;
        }
        CompositionIndexer { q, radix, lookup, counts: vec![0; space.s() + 1] }
    }

    fn key(radix: usize, counts: &[u32]) -> usize {
        counts[1..].iter().rev().fold(0, |acc, &c| acc * radix + c as usize)
    }

    pub(crate) fn index(&mut self, word: &[u32]) -> usize {
        self.counts.iter_mut().for_each(|c| *c = 0);
        for &x in word {
            self.counts[symbol_weight(x, self.q) as usize] += 1;
        }
        self.lookup[Self::key(self.radix, &self.counts)]
    }
}

/// The code spanned by the rows of a full-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    q: u32,
    n: usize,
    generator: Vec<Vec<u32>>,
}

impl LinearCode {
    /// Fails with [`Error::RankDeficient`] when the rows are dependent.
    pub fn new(q: u32, n: usize, generator: Vec<Vec<u32>>) -> Result<Self> {
        check_odd_prime(q)?;
        if n == 0 {
            return Err(Error::EmptyBlock);
        }
        for (i, row) in generator.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(&symbol) = row.iter().find(|&&x| x >= q) {
                return Err(Error::SymbolOutOfRange { symbol, q });
            }
        }
        let r = rank(&generator, q);
        if r != generator.len() {
            return Err(Error::RankDeficient { rank: r, k: generator.len() });
        }
        Ok(LinearCode { q, n, generator })
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero_code(q: u32, n: usize) -> Result<Self> {
        LinearCode::new(q, n, Vec::new())
    }

    /// The whole space, generated by the identity matrix.
    pub fn full_space(q: u32, n: usize) -> Result<Self> {
        let rows = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        LinearCode::new(q, n, rows)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.generator
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.q).pow(self.k() as u32)
    }

    fn enumeration_size(&self) -> u128 {
        (self.q as u128).checked_pow(self.k() as u32).unwrap_or(u128::MAX)
    }

    /// Visits every codeword once, the zero word first.
    pub fn for_each_codeword(&self, mut f: impl FnMut(&[u32])) -> Result<()> {
        self.walk(|w| {
            f(w);
            true
        })
    }

    /// Odometer over the message vectors; `f` returns false to stop.
    fn walk(&self, mut f: impl FnMut(&[u32]) -> bool) -> Result<()> {
        guard("q^k", self.enumeration_size())?;
        let (q, k) = (self.q, self.k());
        let mut word = vec![0u32; self.n];
        let mut digits = vec![0u32; k];
        loop {
            if !f(&word) {
                return Ok(());
            }
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(());
                }
                // adding a row q times returns to the start, so carries are free
                for (w, g) in word.iter_mut().zip(&self.generator[i]) {
                    *w = (*w + g) % q;
                }
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    pub fn codewords(&self) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        self.for_each_codeword(|w| out.push(Word::new(self.q, w.to_vec()).expect("valid symbols")))?;
        Ok(out)
    }

    /// `B_t = |{c in C : composition(c) = t}|`; for a linear code this is the
    /// normalized pair census.
    pub fn inner_distribution(&self) -> Result<InnerDistribution> {
        let space = CompositionSpace::new(self.n, half(self.q))?;
        let mut indexer = CompositionIndexer::new(&space, self.q);
        let mut counts = vec![0u64; space.len()];
        self.for_each_codeword(|w| counts[indexer.index(w)] += 1)?;
        Ok(InnerDistribution {
            q: self.q,
            n: self.n,
            values: counts.into_iter().map(|c| BigRational::from_integer(BigInt::from(c))).collect(),
            code_size: BigRational::from_integer(self.size().into()),
        })
    }

    /// Minimum Lee weight of a nonzero codeword.
    pub fn min_lee_distance(&self) -> Result<u32> {
        if self.k() == 0 {
            return Err(Error::InvalidParameter("the zero code has no minimum distance".into()));
        }
        Ok(self.min_weight_above(0)?.expect("no cutoff"))
    }

    /// Like [`Self::min_lee_distance`] but gives up with `None` as soon as a
    /// nonzero codeword of weight at most `cutoff` turns up.
    pub(crate) fn min_weight_above(&self, cutoff: u32) -> Result<Option<u32>> {
        let q = self.q;
        let mut best = self.n as u32 * half(q) as u32 + 1;
        let mut first = true;
        let mut stopped = false;
        self.walk(|word| {
            if first {
                first = false;
                return true;
            }
            let w: u32 = word.iter().map(|&x| symbol_weight(x, q)).sum();
            best = best.min(w);
            stopped = best <= cutoff;
            !stopped
        })?;
        Ok(if stopped { None } else { Some(best) })
    }

    /// A parity-check matrix: a basis of the dual code. For a generator of
    /// systematic form `[I | P]` this is `[-P^T | I]`.
    pub fn parity_check(&self) -> Vec<Vec<u32>> {
        let mut reduced = self.generator.clone();
        let pivots = field::rref(&mut reduced, self.q);
        field::nullspace(&reduced, &pivots, self.n, self.q)
    }

    pub fn dual(&self) -> Result<LinearCode> {
        LinearCode::new(self.q, self.n, self.parity_check())
    }

    /// Whether the generator starts with the `k x k` identity.
    pub fn is_systematic(&self) -> bool {
        self.generator.iter().enumerate().all(|(i, row)| (0..self.k()).all(|j| row[j] == u32::from(i == j)))
    }
}

/// Pairwise Lee-distance minimum over a word set. Quadratic; meant for
/// cross-checks.
pub fn min_pairwise_distance(words: &[Word]) -> Result<Option<u32>> {
    let size = (words.len() as u128).saturating_mul(words.len() as u128);
    guard("|C|^2", size)?;
    let mut best: Option<u32> = None;
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            let d = x.lee_distance(y)?;
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    Ok(best)
}

/// The inner distribution `B_t`, indexed by composition, and `|C|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerDistribution {
    pub q: u32,
    pub n: usize,
    pub values: Vec<BigRational>,
    pub code_size: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionCheck {
    pub zero_entry_is_one: bool,
    pub negative_entries: Vec<usize>,
    pub sum_matches_size: bool,
}

impl DistributionCheck {
    pub fn passed(&self) -> bool {
        self.zero_entry_is_one && self.negative_entries.is_empty() && self.sum_matches_size
    }
}

impl InnerDistribution {
    /// `B_0 = 1`, `B_t >= 0`, `sum_t B_t = |C|`.
    pub fn check(&self) -> DistributionCheck {
        let sum = self.values.iter().fold(BigRational::zero(), |acc, v| acc + v);
        DistributionCheck {
            zero_entry_is_one: self.values.first().is_some_and(One::is_one),
            negative_entries: (0..self.values.len()).filter(|&i| self.values[i].is_negative()).collect(),
            sum_matches_size: sum == self.code_size,
        }
    }

    /// The point of `lp` this distribution corresponds to: `B` at every
    /// label (a composition index, or a class index for the compact form,
    /// where the class representative is used). Fails if a dropped variable
    /// would be nonzero.
    pub fn lp_point<T: LpScalar>(&self, lp: &LpProblem<T>, partition: Option<&OrbitPartition>) -> Result<Vec<T>> {
        let value = |label: usize| -> &BigRational {
            match partition {
                Some(p) => &self.values[p.representative(label)],
                None => &self.values[label],
            }
        };
        if let Some(&label) = lp.fixed_zero.iter().find(|&&l| !value(l).is_zero()) {
            return Err(Error::InvalidParameter(format!("variable {label} is fixed to zero but B is nonzero there")));
        }
        Ok(lp.labels.iter().map(|&l| T::from_rational(value(l))).collect())
    }
}

/// Normalized pair census `B_t = |{(x, y) in C^2 : composition(x - y) = t}| / |C|`
/// for an arbitrary word set.
pub fn inner_distribution_of_words(q: u32, n: usize, words: &[Word]) -> Result<InnerDistribution> {
    check_odd_prime(q)?;
    if words.is_empty() {
        return Err(Error::InvalidParameter("empty word set".into()));
    }
    if words.iter().any(|w| w.q() != q || w.len() != n) {
        return Err(Error::DimensionMismatch(format!("word set is not contained in Z_{q}^{n}")));
    }
    guard("|C|^2", (words.len() as u128).saturating_mul(words.len() as u128))?;
    let space = CompositionSpace::new(n, half(q))?;
    let mut indexer = CompositionIndexer::new(&space, q);
    let mut counts = vec![0u64; space.len()];
    let mut diff = vec![0u32; n];
    for x in words {
        for y in words {
            for ((d, &a), &b) in diff.iter_mut().zip(x.elements()).zip(y.elements()) {
                *d = (a + q - b) % q;
            }
            counts[indexer.index(&diff)] += 1;
        }
    }
    let size = BigInt::from(words.len());
    Ok(InnerDistribution {
        q,
        n,
        values: counts.into_iter().map(|c| BigRational::new(BigInt::from(c), size.clone())).collect(),
        code_size: BigRational::from_integer(size),
    })
}

/// `beta_k = (1 / |C|) sum_i L_k(t_i) B_i`, the inner distribution of the
/// dual code; its size is `q^n / |C|`. The `zeta` parts must cancel exactly.
pub fn dual_distribution(b: &InnerDistribution, table: &LeeNumberTable) -> Result<InnerDistribution> {
    if table.q() != b.q || table.n() != b.n || table.len() != b.values.len() {
        return Err(Error::DimensionMismatch("distribution and Lee-number table disagree on (q, n)".into()));
    }
    if b.code_size.is_zero() {
        return Err(Error::InvalidParameter("code size is zero".into()));
    }
    // clear denominators so the sum stays in Z[zeta]
    let lcm = b.values.iter().fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()));
    let scaled: Vec<BigInt> = b.values.iter().map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let denominator = BigRational::from_integer(lcm) * &b.code_size;
    let mut values = Vec::with_capacity(table.len());
    for k in 0..table.len() {
        let mut acc = CycInt::zero(table.ring());
        for (i, c) in scaled.iter().enumerate() {
            if !c.is_zero() {
                acc.add_assign_ref(&table.get(k, i).scale(c));
            }
        }
        let Some(value) = acc.as_integer() else {
            return Err(Error::Internal(format!("dual distribution entry {k} does not cancel to a rational: {acc}")));
        };
        values.push(BigRational::from_integer(value) / &denominator);
    }
    let size = BigRational::from_integer(BigInt::from(b.q).pow(b.n as u32)) / &b.code_size;
    Ok(InnerDistribution { q: b.q, n: b.n, values, code_size: size })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEqualityReport {
    /// Classes on which `B` is not constant.
    pub violations: Vec<usize>,
}

impl OrbitEqualityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `B` is constant on every orbit class, as it must be for a
/// linear code.
pub fn check_orbit_equalities(b: &InnerDistribution, partition: &OrbitPartition) -> Result<OrbitEqualityReport> {
    if partition.space().len() != b.values.len() || partition.n() != b.n || partition.q() != b.q {
        return Err(Error::DimensionMismatch("distribution and orbit partition disagree".into()));
    }
    let violations = (0..partition.len())
        .filter(|&c| {
            let members = partition.class(c);
            members.iter().any(|&i| b.values[i] != b.values[members[0]])
        })
        .collect();
    Ok(OrbitEqualityReport { violations })
}

/// All words of `Z_q^n` as a word set; for tests of the nonlinear paths.
pub fn all_words(q: u32, n: usize) -> Result<Vec<Word>> {
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    guard("q^n", size)?;
    let mut out = Vec::new();
    for_each_word(q, n, |w| out.push(Word::new(q, w.to_vec()).expect("valid symbols")));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lee::{composition_count, orbit_partition};
    use crate::leenum::lee_number_table;
    use proptest::prelude::*;

    fn ints(values: &[i64]) -> Vec<BigRational> {
        values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()
    }

    /// The [3, 2] code over F_7 with 49 codewords.
    fn example_code() -> LinearCode {
        LinearCode::new(7, 3, vec![vec![1, 0, 3], vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn example_code_distribution() {
        let b = example_code().inner_distribution().unwrap();
        let mut expected = vec![0i64; 20];
        for (i, v) in [(0, 1), (5, 6), (6, 6), (8, 6), (10, 2), (11, 6), (14, 6), (15, 6), (16, 2), (17, 6), (19, 2)] {
            expected[i] = v;
        }
        assert_eq!(b.values, ints(&expected));
        assert!(b.check().passed());
        let partition = orbit_partition(3, 7).unwrap();
        assert!(check_orbit_equalities(&b, &partition).unwrap().passed());
    }

    #[test]
    fn zero_and_full_codes() {
        let zero = LinearCode::zero_code(5, 2).unwrap();
        let b = zero.inner_distribution().unwrap();
        assert_eq!(b.values, ints(&[1, 0, 0, 0, 0, 0]));
        let full = LinearCode::full_space(5, 2).unwrap();
        let b_full = full.inner_distribution().unwrap();
        let space = CompositionSpace::new(2, 2).unwrap();
        for (i, t) in space.iter().enumerate() {
            let count: BigInt = composition_count(t, 5).unwrap().into();
            assert_eq!(b_full.values[i], BigRational::from_integer(count));
        }
        let table = lee_number_table(5, 2).unwrap();
        let dual_full = dual_distribution(&b_full, &table).unwrap();
        assert_eq!(dual_full.values, ints(&[1, 0, 0, 0, 0, 0]));
        let dual_zero = dual_distribution(&b, &table).unwrap();
        assert_eq!(dual_zero.values, b_full.values);
        assert!(zero.min_lee_distance().is_err());
    }

    #[test]
    fn rank_deficient_rejected() {
        let err = LinearCode::new(5, 3, vec![vec![1, 2, 3], vec![2, 4, 1]]).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rank: 1, k: 2 });
        assert!(matches!(LinearCode::new(5, 3, vec![vec![1, 7, 0]]), Err(Error::SymbolOutOfRange { .. })));
        assert!(matches!(LinearCode::new(6, 3, vec![vec![1, 0, 0]]), Err(Error::InvalidModulus(6) | Error::UnsupportedModulus(6))));
    }

    #[test]
    fn example_dual_matches_enumeration() {
        let code = example_code();
        let dual = code.dual().unwrap();
        assert_eq!(dual.k(), 1);
        let table = lee_number_table(7, 3).unwrap();
        let beta = dual_distribution(&code.inner_distribution().unwrap(), &table).unwrap();
        assert_eq!(beta, dual.inner_distribution().unwrap());
        for c in code.codewords().unwrap() {
            for h in code.parity_check() {
                let dot: u32 = c.elements().iter().zip(&h).map(|(a, b)| a * b).sum();
                assert_eq!(dot % 7, 0);
            }
        }
    }

    #[test]
    fn optimal_length_eight_code() {
        let g1 = LinearCode::new(5, 8, vec![vec![1, 0, 0, 2, 2, 3, 3, 1], vec![0, 1, 2, 3, 0, 3, 4, 3]]).unwrap();
        assert_eq!(g1.min_lee_distance().unwrap(), 8);
        assert_eq!(min_pairwise_distance(&g1.codewords().unwrap()).unwrap(), Some(8));
    }

    #[test]
    fn nonlinear_set_breaks_orbit_equality() {
        let words = vec![Word::new(5, vec![0, 0, 0]).unwrap(), Word::new(5, vec![0, 0, 1]).unwrap()];
        let b = inner_distribution_of_words(5, 3, &words).unwrap();
        assert!(b.check().passed());
        let partition = orbit_partition(3, 5).unwrap();
        assert!(!check_orbit_equalities(&b, &partition).unwrap().passed());
    }

    #[test]
    fn word_set_census_agrees_for_linear_codes() {
        let code = example_code();
        let by_pairs = inner_distribution_of_words(7, 3, &code.codewords().unwrap()).unwrap();
        assert_eq!(by_pairs, code.inner_distribution().unwrap());
    }

    #[test]
    fn systematic_parity_check() {
        let code = LinearCode::new(5, 4, vec![vec![1, 0, 2, 3], vec![0, 1, 4, 1]]).unwrap();
        assert!(code.is_systematic());
        assert_eq!(code.parity_check(), vec![vec![3, 1, 1, 0], vec![2, 4, 0, 1]]);
    }

    #[test]
    fn guard_refuses_huge_codes() {
        let code = LinearCode::full_space(7, 9).unwrap();
        assert!(matches!(code.inner_distribution(), Err(Error::SizeGuard { .. })));
    }

    fn generator(q: u32, n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
        prop::collection::vec(prop::collection::vec(0..q, n), k)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn macwilliams_involution(rows in generator(5, 4, 2)) {
            let Ok(code) = LinearCode::new(5, 4, rows) else { return Ok(()); };
            let table = lee_number_table(5, 4).unwrap();
            let b = code.inner_distribution().unwrap();
            let beta = dual_distribution(&b, &table).unwrap();
            prop_assert!(beta.check().passed());
            prop_assert_eq!(&beta, &code.dual().unwrap().inner_distribution().unwrap());
            prop_assert_eq!(dual_distribution(&beta, &table).unwrap(), b);
        }

        #[test]
        fn min_distance_matches_pairs(rows in generator(7, 4, 2)) {
            let Ok(code) = LinearCode::new(7, 4, rows) else { return Ok(()); };
            let pairwise = min_pairwise_distance(&code.codewords().unwrap()).unwrap();
            prop_assert_eq!(Some(code.min_lee_distance().unwrap()), pairwise);
        }
    }
}
