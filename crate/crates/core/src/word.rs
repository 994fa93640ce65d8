//! Words over a generating set, generator subsets, and group elements.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported number of generators; [`GenSet`] is a 64-bit mask.
pub const MAX_RANK: usize = 64;

/// A finite sequence of generator indices.
///
/// Words are ordered by ShortLex: shorter words first, then lexicographically
/// with generators compared by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from generator indices. Indices are not checked against a
    /// rank here; [`crate::CoxeterSystem::word`] does that.
    pub fn from_indices<I: IntoIterator<Item = usize>>(letters: I) -> Self {
        Word(
            letters
                .into_iter()
                .map(|s| {
                    assert!(s < MAX_RANK, "generator index {s} exceeds MAX_RANK");
                    s as u8
                })
                .collect(),
        )
    }

    pub(crate) fn from_raw(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letter(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().map(|&s| s as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.letters().collect()
    }

    pub fn push(&mut self, s: usize) {
        assert!(s < MAX_RANK);
        self.0.push(s as u8);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The word with the letter at `i` removed.
    pub fn without(&self, i: usize) -> Word {
        let mut letters = self.0.clone();
        letters.remove(i);
        Word(letters)
    }

    /// The word with the letters at `i` and `j` removed (`i != j`).
    pub fn without_pair(&self, i: usize, j: usize) -> Word {
        Word(
            self.0
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, &s)| s)
                .collect(),
        )
    }

    /// Set of generators occurring in the word.
    pub fn support(&self) -> GenSet {
        self.letters().collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A subset of the generating set, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn from_bits(bits: u64) -> Self {
        GenSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(s: usize) -> Self {
        assert!(s < MAX_RANK);
        GenSet(1 << s)
    }

    /// All generators `0..rank`.
    pub fn full(rank: usize) -> Self {
        assert!(rank <= MAX_RANK);
        if rank == MAX_RANK {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << rank) - 1)
        }
    }

    pub fn contains(self, s: usize) -> bool {
        s < MAX_RANK && self.0 & (1 << s) != 0
    }

    pub fn insert(&mut self, s: usize) {
        assert!(s < MAX_RANK);
        self.0 |= 1 << s;
    }

    pub fn with(self, s: usize) -> Self {
        let mut out = self;
        out.insert(s);
        out
    }

    pub fn without(self, s: usize) -> Self {
        GenSet(self.0 & !(1u64 << s))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_RANK).filter(move |&s| bits & (1 << s) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, in increasing order of bit mask.
    pub fn subsets(self) -> impl Iterator<Item = GenSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(GenSet(cur))
        })
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = GenSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for GenSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// A group element, held as its canonical word: the ShortLex-least reduced
/// expression.
///
/// Elements are only produced by a [`crate::CoxeterSystem`], so two elements of
/// the same system are equal iff they represent the same group element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Element(Word);

impl Element {
    pub fn identity() -> Self {
        Element(Word::empty())
    }

    pub(crate) fn from_canonical(word: Word) -> Self {
        Element(word)
    }

    pub fn canonical(&self) -> &Word {
        &self.0
    }

    /// Length ℓ(w) of the element.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order() {
        let a = Word::from_indices([1]);
        let b = Word::from_indices([0, 1]);
        let c = Word::from_indices([1, 0]);
        assert!(a < b);
        assert!(b < c);
        assert!(Word::empty() < a);
    }

    #[test]
    fn genset_subsets_enumerates_all() {
        let t: GenSet = [0, 2, 5].into_iter().collect();
        let subs: Vec<_> = t.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(t)));
        assert_eq!(GenSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn genset_full_and_iter() {
        assert_eq!(GenSet::full(3).to_vec(), vec![0, 1, 2]);
        assert_eq!(GenSet::full(0), GenSet::EMPTY);
        assert_eq!(GenSet::full(64).len(), 64);
        assert!(!GenSet::singleton(2).contains(64));
    }

    #[test]
    fn word_edits() {
        let w = Word::from_indices([0, 1, 2, 1]);
        assert_eq!(w.without(1).to_vec(), vec![0, 2, 1]);
        assert_eq!(w.without_pair(0, 3).to_vec(), vec![1, 2]);
        assert_eq!(w.reversed().to_vec(), vec![1, 2, 1, 0]);
        assert_eq!(w.support().to_vec(), vec![0, 1, 2]);
    }
}
