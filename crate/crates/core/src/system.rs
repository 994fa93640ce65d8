//! The word problem: reduction to canonical form by braid-move saturation.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Mutex;

use crate::error::{CoxeterError, Result};
use crate::matrix::CoxeterMatrix;
use crate::word::{Element, GenSet, Word};

/// Default cap on the number of words in one braid closure.
pub const DEFAULT_CLOSURE_BUDGET: usize = 200_000;

/// Default number of memoized single-letter extensions.
pub const DEFAULT_CACHE_CAPACITY: usize = 1 << 16;

enum Saturation {
    /// Some word in the closure had two equal adjacent letters; this is that
    /// word with the pair removed.
    Deletable(Vec<u8>),
    /// The closure admits no deletion; this is its ShortLex-least word.
    Reduced(Vec<u8>),
}

/// A Coxeter system (W, S) together with the machinery to compute in W.
///
/// All operations are pure. The system keeps a bounded memo table of
/// `(canonical word, generator) -> canonical word` extensions behind a mutex;
/// it is cleared wholesale when full and never changes a result.
#[derive(Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    /// m(s,t) with 0 for infinity, row-major.
    orders: Vec<u32>,
    closure_budget: usize,
    cache_capacity: usize,
    cache: Mutex<HashMap<(Word, u8), Word>>,
}

impl Clone for CoxeterSystem {
    fn clone(&self) -> Self {
        CoxeterSystem::with_limits(self.matrix.clone(), self.closure_budget, self.cache_capacity)
    }
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        Self::with_limits(matrix, DEFAULT_CLOSURE_BUDGET, DEFAULT_CACHE_CAPACITY)
    }

    /// A system with explicit closure budget and cache capacity. A capacity of
    /// zero disables memoization.
    pub fn with_limits(matrix: CoxeterMatrix, closure_budget: usize, cache_capacity: usize) -> Self {
        let n = matrix.rank();
        let orders = (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .map(|(s, t)| matrix.order(s, t).finite().unwrap_or(0))
            .collect();
        CoxeterSystem {
            matrix,
            orders,
            closure_budget,
            cache_capacity,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn closure_budget(&self) -> usize {
        self.closure_budget
    }

    /// Checks that every letter names a generator.
    pub fn word(&self, letters: &[usize]) -> Result<Word> {
        for &s in letters {
            self.check_generator(s)?;
        }
        Ok(Word::from_indices(letters.iter().copied()))
    }

    pub fn check_generator(&self, s: usize) -> Result<()> {
        if s < self.rank() {
            Ok(())
        } else {
            Err(CoxeterError::InvalidGenerator { index: s, rank: self.rank() })
        }
    }

    pub fn check_genset(&self, t: GenSet) -> Result<()> {
        t.iter().try_for_each(|s| self.check_generator(s))
    }

    pub fn generator(&self, s: usize) -> Result<Element> {
        self.check_generator(s)?;
        Ok(Element::from_canonical(Word::from_indices([s])))
    }

    fn m(&self, s: u8, t: u8) -> u32 {
        self.orders[s as usize * self.rank() + t as usize]
    }

    /// Reduces a word to the canonical (ShortLex-least reduced) expression of
    /// the element it represents.
    ///
    /// Letters are fed one at a time; each extension saturates the braid
    /// closure of the current reduced word followed by the new letter, and
    /// deletes an adjacent equal pair if one appears.
    pub fn reduce(&self, w: &Word) -> Result<Element> {
        for s in w.letters() {
            self.check_generator(s)?;
        }
        let mut current = Word::empty();
        for s in w.raw() {
            current = self.extend(&current, *s)?;
        }
        Ok(Element::from_canonical(current))
    }

    /// Reduces a word by saturating the braid closure of the whole word,
    /// deleting an adjacent equal pair whenever one appears, until the closure
    /// admits no deletion. Slower than [`reduce`](Self::reduce) on long
    /// inputs but follows the move sequence literally.
    pub fn reduce_by_saturation(&self, w: &Word) -> Result<Element> {
        for s in w.letters() {
            self.check_generator(s)?;
        }
        let mut letters = w.raw().to_vec();
        loop {
            match self.saturate(&letters)? {
                Saturation::Deletable(shorter) => letters = shorter,
                Saturation::Reduced(min) => return Ok(Element::from_canonical(Word::from_raw(min))),
            }
        }
    }

    /// Canonical word of `v·s` where `v` is canonical.
    fn extend(&self, v: &Word, s: u8) -> Result<Word> {
        let key = (v.clone(), s);
        if self.cache_capacity > 0 {
            if let Some(hit) = self.cache.lock().unwrap().get(&key) {
                return Ok(hit.clone());
            }
        }
        let mut letters = v.raw().to_vec();
        letters.push(s);
        let result = loop {
            match self.saturate(&letters)? {
                Saturation::Deletable(shorter) => letters = shorter,
                Saturation::Reduced(min) => break Word::from_raw(min),
            }
        };
        if self.cache_capacity > 0 {
            let mut cache = self.cache.lock().unwrap();
            if cache.len() >= self.cache_capacity {
                cache.clear();
            }
            cache.insert(key, result.clone());
        }
        Ok(result)
    }

    /// Breadth-first closure of `start` under braid moves.
    fn saturate(&self, start: &[u8]) -> Result<Saturation> {
        if let Some(i) = adjacent_pair(start) {
            return Ok(Saturation::Deletable(delete_pair(start, i)));
        }
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.to_vec());
        queue.push_back(start.to_vec());
        let mut best = start.to_vec();
        while let Some(word) = queue.pop_front() {
            for next in self.braid_neighbors(&word) {
                if seen.contains(&next) {
                    continue;
                }
                if let Some(i) = adjacent_pair(&next) {
                    return Ok(Saturation::Deletable(delete_pair(&next, i)));
                }
                if seen.len() >= self.closure_budget {
                    return Err(CoxeterError::ClosureBudgetExceeded { budget: self.closure_budget });
                }
                if next < best {
                    best = next.clone();
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        Ok(Saturation::Reduced(best))
    }

    /// All words obtained from `word` by one braid move.
    fn braid_neighbors(&self, word: &[u8]) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for i in 0..word.len().saturating_sub(1) {
            let (a, b) = (word[i], word[i + 1]);
            if a == b {
                continue;
            }
            let m = self.m(a, b) as usize;
            if m == 0 || i + m > word.len() {
                continue;
            }
            let alternates = word[i..i + m]
                .iter()
                .enumerate()
                .all(|(k, &c)| c == if k % 2 == 0 { a } else { b });
            if !alternates {
                continue;
            }
            let mut next = word.to_vec();
            for (k, c) in next[i..i + m].iter_mut().enumerate() {
                *c = if k % 2 == 0 { b } else { a };
            }
            out.push(next);
        }
        out
    }

    /// Every reduced expression of `w`.
    pub fn reduced_expressions(&self, w: &Element) -> Result<Vec<Word>> {
        let start = w.canonical().raw().to_vec();
        let mut seen: HashSet<Vec<u8>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(word) = queue.pop_front() {
            for next in self.braid_neighbors(&word) {
                if seen.insert(next.clone()) {
                    if seen.len() > self.closure_budget {
                        return Err(CoxeterError::ClosureBudgetExceeded { budget: self.closure_budget });
                    }
                    queue.push_back(next);
                }
            }
        }
        let mut words: Vec<Word> = seen.into_iter().map(Word::from_raw).collect();
        words.sort();
        Ok(words)
    }

    pub fn is_reduced(&self, w: &Word) -> Result<bool> {
        Ok(self.reduce(w)?.length() == w.len())
    }

    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        let mut current = u.canonical().clone();
        for s in v.canonical().raw() {
            current = self.extend(&current, *s)?;
        }
        Ok(Element::from_canonical(current))
    }

    /// `w·s`.
    pub fn mul_gen(&self, w: &Element, s: usize) -> Result<Element> {
        self.check_generator(s)?;
        Ok(Element::from_canonical(self.extend(w.canonical(), s as u8)?))
    }

    /// `s·w`.
    pub fn gen_mul(&self, s: usize, w: &Element) -> Result<Element> {
        let s = self.generator(s)?;
        self.multiply(&s, w)
    }

    pub fn inverse(&self, w: &Element) -> Result<Element> {
        self.reduce(&w.canonical().reversed())
    }

    /// S(w) = { s : ℓ(ws) < ℓ(w) }.
    pub fn right_descents(&self, w: &Element) -> Result<GenSet> {
        let mut out = GenSet::EMPTY;
        for s in 0..self.rank() {
            if self.mul_gen(w, s)?.length() < w.length() {
                out.insert(s);
            }
        }
        Ok(out)
    }

    /// { s : ℓ(sw) < ℓ(w) }.
    pub fn left_descents(&self, w: &Element) -> Result<GenSet> {
        self.right_descents(&self.inverse(w)?)
    }

    /// Whether `w` lies in the parabolic subgroup W_T. All reduced
    /// expressions of an element share one support, so the canonical word
    /// decides it.
    pub fn in_parabolic(&self, w: &Element, t: GenSet) -> bool {
        w.canonical().support().is_subset(t)
    }
}

fn adjacent_pair(word: &[u8]) -> Option<usize> {
    word.windows(2).position(|p| p[0] == p[1])
}

fn delete_pair(word: &[u8], i: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(word.len() - 2);
    out.extend_from_slice(&word[..i]);
    out.extend_from_slice(&word[i + 2..]);
    out
}
