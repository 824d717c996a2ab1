//! Fixed-universe bit sets used for points, filters and Galois sets.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A subset of `0..universe`.
///
/// Ordering is numeric on the bit pattern (bit `i` has weight `2^i`), so the
/// empty set sorts first and the full universe last.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    universe: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let n = (universe - lo).min(WORD);
            *w = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        }
        s
    }

    pub fn singleton(universe: usize, p: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(p);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Self::empty(universe);
        for p in items {
            s.insert(p);
        }
        s
    }

    pub fn from_predicate(universe: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(universe);
        for p in 0..universe {
            if pred(p) {
                s.insert(p);
            }
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, p: usize) -> bool {
        p < self.universe && self.words[p / WORD] >> (p % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, p: usize) {
        assert!(p < self.universe, "point {p} outside universe of size {}", self.universe);
        self.words[p / WORD] |= 1 << (p % WORD);
    }

    #[inline]
    pub fn remove(&mut self, p: usize) {
        if p < self.universe {
            self.words[p / WORD] &= !(1 << (p % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.universe, other.universe);
        PointSet {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.universe, other.universe);
        PointSet {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn complement(&self) -> PointSet {
        let full = PointSet::full(self.universe);
        PointSet {
            universe: self.universe,
            words: self.words.iter().zip(&full.words).map(|(a, f)| !a & f).collect(),
        }
    }

    pub fn union_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&p| self.contains(p))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Relabel points: point `p` goes to `perm[p]` in a universe of `perm.len()`.
    pub fn relabel(&self, perm: &[usize]) -> PointSet {
        PointSet::from_indices(perm.len(), self.iter().map(|p| perm[p]))
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
