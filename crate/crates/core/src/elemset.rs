//! Fixed-domain bitsets over canonical element indices.

use std::cmp::Ordering;
use std::fmt;

use crate::ring::Elem;

const WORD: usize = u64::BITS as usize;

/// A set of ring elements, stored as a bitset over `0..domain`.
///
/// Ordering is lexicographic on the ascending list of members, which is the
/// order used for every canonical listing of subrings and covers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    domain: usize,
    words: Vec<u64>,
    count: usize,
}

impl ElementSet {
    pub fn empty(domain: usize) -> Self {
        Self {
            domain,
            words: vec![0; domain.div_ceil(WORD)],
            count: 0,
        }
    }

    pub fn full(domain: usize) -> Self {
        let mut s = Self::empty(domain);
        for i in 0..domain {
            s.insert_index(i);
        }
        s
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(domain: usize, elems: I) -> Self {
        let mut s = Self::empty(domain);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(domain: usize, idx: I) -> Self {
        let mut s = Self::empty(domain);
        for i in idx {
            s.insert_index(i);
        }
        s
    }

    /// Rebuilds a set from raw words; bits at or beyond `domain` must be clear.
    pub fn from_words(domain: usize, words: Vec<u64>) -> Option<Self> {
        if words.len() != domain.div_ceil(WORD) {
            return None;
        }
        if !domain.is_multiple_of(WORD) {
            if let Some(last) = words.last() {
                if last >> (domain % WORD) != 0 {
                    return None;
                }
            }
        }
        let count = words.iter().map(|w| w.count_ones() as usize).sum();
        Some(Self {
            domain,
            words,
            count,
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn domain(&self) -> usize {
        self.domain
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_full(&self) -> bool {
        self.count == self.domain
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.contains_index(e.index())
    }

    #[inline]
    pub fn contains_index(&self, i: usize) -> bool {
        debug_assert!(i < self.domain);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Inserts `e`; returns true if it was not already present.
    #[inline]
    pub fn insert(&mut self, e: Elem) -> bool {
        self.insert_index(e.index())
    }

    #[inline]
    pub fn insert_index(&mut self, i: usize) -> bool {
        assert!(i < self.domain, "index {i} out of domain {}", self.domain);
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        if *w & mask == 0 {
            *w |= mask;
            self.count += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, e: Elem) -> bool {
        let i = e.index();
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        if *w & mask != 0 {
            *w &= !mask;
            self.count -= 1;
            true
        } else {
            false
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &Self) {
        assert_eq!(self.domain, other.domain);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.recount();
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.domain, other.domain);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<Elem> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.domain, other.domain);
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let count = words.iter().map(|w| w.count_ones() as usize).sum();
        Self {
            domain: self.domain,
            words,
            count,
        }
    }

    fn recount(&mut self) {
        self.count = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.domain
            .cmp(&other.domain)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.index())).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(Elem::from_index(self.word_idx * WORD + bit));
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = Elem;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
