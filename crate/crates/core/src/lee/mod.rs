//! The Lee metric on `Z_q^n` and Lee compositions.

mod orbit;
mod scheme;
mod space;

pub use orbit::{multiplier_permutation, orbit, orbit_partition, OrbitPartition};
pub use scheme::{verify_scheme_axioms, SchemeReport, SchemeViolation, SCHEME_GUARD};
pub use space::{enumerate_compositions, CompositionSpace};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Returns true when `q` is an odd prime.
pub fn is_odd_prime(q: u32) -> bool {
    if q < 3 || q.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u32;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Accepts any odd `q >= 3`.
pub fn check_odd(q: u32) -> Result<()> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(Error::InvalidModulus(q));
    }
    Ok(())
}

/// Accepts odd primes only; the orbit machinery needs `F_q` to be a field.
pub fn check_odd_prime(q: u32) -> Result<()> {
    if !is_odd_prime(q) {
        return Err(Error::UnsupportedModulus(q));
    }
    Ok(())
}

/// `s = floor(q / 2)`, the largest Lee weight of a single symbol.
pub fn half(q: u32) -> usize {
    (q / 2) as usize
}

/// Lee weight of a single symbol `x` in `Z_q`.
#[inline]
pub fn symbol_weight(x: u32, q: u32) -> u32 {
    let x = x % q;
    x.min(q - x)
}

/// A word of `Z_q^n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    q: u32,
    elements: Vec<u32>,
}

impl Word {
    pub fn new(q: u32, elements: Vec<u32>) -> Result<Self> {
        check_odd(q)?;
        if elements.is_empty() {
            return Err(Error::EmptyBlock);
        }
        if let Some(&symbol) = elements.iter().find(|&&x| x >= q) {
            return Err(Error::SymbolOutOfRange { symbol, q });
        }
        Ok(Word { q, elements })
    }

    pub fn zero(q: u32, n: usize) -> Result<Self> {
        Word::new(q, vec![0; n])
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn lee_weight(&self) -> u32 {
        self.elements.iter().map(|&x| symbol_weight(x, self.q)).sum()
    }

    /// Lee distance, i.e. the Lee weight of `self - other`.
    pub fn lee_distance(&self, other: &Word) -> Result<u32> {
        self.check_compatible(other)?;
        Ok(self
            .elements
            .iter()
            .zip(&other.elements)
            .map(|(&x, &y)| symbol_weight(x + self.q - y, self.q))
            .sum())
    }

    pub fn sub(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let elements = self
            .elements
            .iter()
            .zip(&other.elements)
            .map(|(&x, &y)| (x + self.q - y) % self.q)
            .collect();
        Ok(Word { q: self.q, elements })
    }

    /// The scalar multiple `r * self`.
    pub fn scale(&self, r: u32) -> Word {
        let r = r % self.q;
        let elements = self.elements.iter().map(|&x| (x * r) % self.q).collect();
        Word { q: self.q, elements }
    }

    pub fn composition(&self) -> LeeComposition {
        let mut counts = vec![0u32; half(self.q) + 1];
        for &x in &self.elements {
            counts[symbol_weight(x, self.q) as usize] += 1;
        }
        LeeComposition(counts)
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.q != other.q || self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "words over Z_{}^{} and Z_{}^{}",
                self.q,
                self.len(),
                other.q,
                other.len()
            )));
        }
        Ok(())
    }
}

pub fn lee_weight(x: &Word) -> u32 {
    x.lee_weight()
}

pub fn lee_distance(x: &Word, y: &Word) -> Result<u32> {
    x.lee_distance(y)
}

pub fn lee_composition(x: &Word) -> LeeComposition {
    x.composition()
}

/// Counts `(t_0, ..., t_s)` of symbols of each Lee weight in a word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LeeComposition(Vec<u32>);

impl LeeComposition {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "a Lee composition needs at least two entries, got {}",
                counts.len()
            )));
        }
        if counts.iter().all(|&c| c == 0) {
            return Err(Error::EmptyBlock);
        }
        Ok(LeeComposition(counts))
    }

    /// The composition `[n, 0, ..., 0]` of the zero word.
    pub fn zero(n: usize, s: usize) -> Self {
        let mut counts = vec![0; s + 1];
        counts[0] = n as u32;
        LeeComposition(counts)
    }

    pub(crate) fn from_counts_unchecked(counts: Vec<u32>) -> Self {
        LeeComposition(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Block length `n = sum t_i`.
    pub fn n(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn s(&self) -> usize {
        self.0.len() - 1
    }

    /// `sum i * t_i`, the Lee weight shared by every word of this composition.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &c)| i as u32 * c).sum()
    }

    pub fn is_zero_word(&self) -> bool {
        self.0[1..].iter().all(|&c| c == 0)
    }

    /// `[t_{perm(0)}, ..., t_{perm(s)}]`.
    pub fn permuted(&self, perm: &[usize]) -> LeeComposition {
        LeeComposition(perm.iter().map(|&p| self.0[p]).collect())
    }

    /// Number of words of `Z_q^n` (q odd) having this composition:
    /// `multinomial(n; t) * 2^(n - t_0)`.
    pub fn word_count(&self) -> BigUint {
        let mut acc = BigUint::one();
        let mut placed = 0u64;
        // multinomial as a product of binomials, each exact
        for &c in &self.0 {
            for j in 1..=c as u64 {
                acc *= placed + j;
                acc /= j;
            }
            placed += c as u64;
        }
        acc << (self.n() - self.0[0] as usize)
    }
}

impl fmt::Display for LeeComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `[n over t]`, validated against `q`.
pub fn composition_count(t: &LeeComposition, q: u32) -> Result<BigUint> {
    check_odd(q)?;
    if t.s() != half(q) {
        return Err(Error::DimensionMismatch(format!(
            "composition {t} has {} entries, q = {q} needs {}",
            t.s() + 1,
            half(q) + 1
        )));
    }
    Ok(t.word_count())
}

pub fn composition_weight(t: &LeeComposition) -> u32 {
    t.weight()
}

/// Iterates all words of `Z_q^n` in base-q counting order (first coordinate
/// fastest).
pub(crate) fn for_each_word(q: u32, n: usize, mut f: impl FnMut(&[u32])) {
    let mut digits = vec![0u32; n];
    loop {
        f(&digits);
        let mut i = 0;
        loop {
            if i == n {
                return;
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
