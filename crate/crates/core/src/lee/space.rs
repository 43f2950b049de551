use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::LeeComposition;
use crate::error::{Error, Result};

/// All Lee compositions of length `n` with `s + 1` parts, in descending
/// lexicographic order of `(t_0, ..., t_s)`. Index 0 is `[n, 0, ..., 0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSpace {
    n: usize,
    s: usize,
    list: Vec<LeeComposition>,
    index: BTreeMap<LeeComposition, usize>,
}

impl CompositionSpace {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyBlock);
        }
        if s == 0 {
            return Err(Error::InvalidParameter("s must be at least 1".into()));
        }
        Ok(Self::build(n, s))
    }

    /// Also admits `n = 0` (the single empty composition), which the Lee-number
    /// recursion uses as its base case.
    pub(crate) fn build(n: usize, s: usize) -> Self {
        let mut list = Vec::new();
        let mut counts = vec![0u32; s + 1];
        fill(&mut counts, 0, n as u32, &mut list);
        let index = list.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        CompositionSpace { n, s, list, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &LeeComposition {
        &self.list[i]
    }

    pub fn index_of(&self, t: &LeeComposition) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Index of the composition given by raw counts, if valid here.
    pub fn index_of_counts(&self, counts: &[u32]) -> Option<usize> {
        self.index.get(&LeeComposition::from_counts_unchecked(counts.to_vec())).copied()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, LeeComposition> {
        self.list.iter()
    }

    pub fn as_slice(&self) -> &[LeeComposition] {
        &self.list
    }
}

fn fill(counts: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<LeeComposition>) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        out.push(LeeComposition::from_counts_unchecked(counts.to_vec()));
        return;
    }
    for v in (0..=remaining).rev() {
        counts[pos] = v;
        fill(counts, pos + 1, remaining - v, out);
    }
    counts[pos] = 0;
}

pub fn enumerate_compositions(n: usize, s: usize) -> Result<Vec<LeeComposition>> {
    Ok(CompositionSpace::new(n, s)?.list)
}
