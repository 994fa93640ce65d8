//! Brute-force ground truth: balls in the Cayley graph and parabolic cosets.
//!
//! The ball is grown one length at a time directly from the Coxeter matrix.
//! A vertex at length d+1 is a class of pairs (v, s) with v at length d and s
//! not a descent of v. Two pairs (v, s) and (v', t) name the same vertex
//! exactly when v and v' sit on opposite sides of a 2m(s,t)-gon through a
//! common vertex y at length d+1-m(s,t), which is found by walking down from v
//! along t, s, t, … and back up along the other alternation. No word is ever
//! rewritten, so the ball shares nothing with [`CoxeterSystem::reduce`].

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::ops::Range;

use crate::error::{CoxeterError, Result};
use crate::matrix::CoxeterMatrix;
use crate::system::CoxeterSystem;
use crate::word::{Element, GenSet, Word};

/// Default cap on the number of vertices in a ball.
pub const DEFAULT_SIZE_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug)]
struct Vertex {
    depth: usize,
    /// ShortLex-least path from the identity.
    word: Word,
    descents: GenSet,
    /// Neighbor across each generator; `None` when it lies outside the ball.
    neighbors: Vec<Option<usize>>,
}

/// All elements of length at most `radius`, with the Cayley graph edges
/// between them.
#[derive(Clone, Debug)]
pub struct Ball {
    rank: usize,
    radius: usize,
    vertices: Vec<Vertex>,
    /// `levels[d]` is the index range of the vertices at length d.
    levels: Vec<Range<usize>>,
    index: HashMap<Word, usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Ball {
    pub fn new(matrix: &CoxeterMatrix, radius: usize) -> Result<Ball> {
        Self::with_budget(matrix, radius, DEFAULT_SIZE_BUDGET)
    }

    pub fn with_budget(matrix: &CoxeterMatrix, radius: usize, budget: usize) -> Result<Ball> {
        let mut ball = Ball {
            rank: matrix.rank(),
            radius: 0,
            vertices: vec![Vertex {
                depth: 0,
                word: Word::empty(),
                descents: GenSet::EMPTY,
                neighbors: vec![None; matrix.rank()],
            }],
            levels: vec![Range { start: 0, end: 1 }],
            index: HashMap::from([(Word::empty(), 0)]),
        };
        if budget == 0 {
            return Err(CoxeterError::SizeBudgetExceeded { budget });
        }
        while ball.radius < radius {
            ball.grow(matrix, budget)?;
        }
        Ok(ball)
    }

    /// Enumerates a finite group completely: grows until a level comes out
    /// empty. Infinite groups run into the budget.
    pub fn whole_group(matrix: &CoxeterMatrix, budget: usize) -> Result<Ball> {
        let mut ball = Self::with_budget(matrix, 0, budget)?;
        while !ball.levels[ball.radius].is_empty() {
            ball.grow(matrix, budget)?;
        }
        Ok(ball)
    }

    fn grow(&mut self, matrix: &CoxeterMatrix, budget: usize) -> Result<()> {
        let d = self.radius;
        let level = self.levels[d].clone();
        let n = self.rank;

        // candidate id = (v - level.start) * n + s
        let cand = |v: usize, s: usize| (v - level.start) * n + s;
        let mut uf = UnionFind((0..level.len() * n).collect());
        for v in level.clone() {
            for s in 0..n {
                if self.vertices[v].descents.contains(s) {
                    continue;
                }
                for t in 0..n {
                    if t == s || !self.vertices[v].descents.contains(t) {
                        continue;
                    }
                    let Some(m) = matrix.order(s, t).finite() else { continue };
                    if let Some(other) = self.across_polygon(v, s, t, m as usize) {
                        uf.union(cand(v, s), cand(other, t));
                    }
                }
            }
        }

        let mut classes: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for v in level.clone() {
            for s in 0..n {
                if !self.vertices[v].descents.contains(s) {
                    classes.entry(uf.find(cand(v, s))).or_default().push((v, s));
                }
            }
        }
        let mut fresh: Vec<(Word, Vec<(usize, usize)>)> = classes
            .into_values()
            .map(|members| {
                let word = members
                    .iter()
                    .map(|&(v, s)| {
                        let mut w = self.vertices[v].word.clone();
                        w.push(s);
                        w
                    })
                    .min()
                    .expect("class is non-empty");
                (word, members)
            })
            .collect();
        fresh.sort_by(|a, b| a.0.cmp(&b.0));

        if self.vertices.len() + fresh.len() > budget {
            return Err(CoxeterError::SizeBudgetExceeded { budget });
        }
        let start = self.vertices.len();
        for (word, members) in fresh {
            let id = self.vertices.len();
            let mut vertex = Vertex {
                depth: d + 1,
                word: word.clone(),
                descents: GenSet::EMPTY,
                neighbors: vec![None; n],
            };
            for (v, s) in members {
                vertex.descents.insert(s);
                vertex.neighbors[s] = Some(v);
                self.vertices[v].neighbors[s] = Some(id);
            }
            self.index.insert(word, id);
            self.vertices.push(vertex);
        }
        self.levels.push(start..self.vertices.len());
        self.radius += 1;
        Ok(())
    }

    /// For a candidate (v, s) with t a descent of v and m = m(s,t), the vertex
    /// v' with v·s = v'·t, if the dihedral polygon closes inside the ball.
    fn across_polygon(&self, v: usize, s: usize, t: usize, m: usize) -> Option<usize> {
        // down from v along t, s, t, ... (m-1 letters)
        let mut cur = v;
        for k in 0..m - 1 {
            let letter = if k % 2 == 0 { t } else { s };
            if !self.vertices[cur].descents.contains(letter) {
                return None;
            }
            cur = self.vertices[cur].neighbors[letter]?;
        }
        // back up along the alternation of length m-1 that ends in s
        for k in 0..m - 1 {
            let letter = if (m - 2 - k).is_multiple_of(2) { s } else { t };
            if self.vertices[cur].descents.contains(letter) {
                return None;
            }
            cur = self.vertices[cur].neighbors[letter]?;
        }
        debug_assert!(!self.vertices[cur].descents.contains(t));
        Some(cur)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of elements at each length 0..=radius.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|r| r.len()).collect()
    }

    /// Elements in order of length, then ShortLex.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.vertices.iter().map(|v| Element::from_canonical(v.word.clone()))
    }

    /// Elements of length at most `radius`.
    pub fn elements_within(&self, radius: usize) -> impl Iterator<Item = Element> + '_ {
        let end = self.levels[radius.min(self.radius)].end;
        self.vertices[..end].iter().map(|v| Element::from_canonical(v.word.clone()))
    }

    /// Vertex id of an element given by its ShortLex-least word.
    pub fn vertex_of(&self, canonical: &Word) -> Option<usize> {
        self.index.get(canonical).copied()
    }

    pub fn depth(&self, vertex: usize) -> usize {
        self.vertices[vertex].depth
    }

    pub fn canonical_word(&self, vertex: usize) -> &Word {
        &self.vertices[vertex].word
    }

    pub fn descents(&self, vertex: usize) -> GenSet {
        self.vertices[vertex].descents
    }

    /// Vertex reached by multiplying on the right by `s`.
    pub fn step(&self, vertex: usize, s: usize) -> Option<usize> {
        self.vertices[vertex].neighbors[s]
    }

    /// Follows a word from the identity. `None` if the path leaves the ball.
    pub fn evaluate(&self, word: &Word) -> Option<usize> {
        self.evaluate_from(0, word)
    }

    pub fn evaluate_from(&self, vertex: usize, word: &Word) -> Option<usize> {
        word.letters().try_fold(vertex, |v, s| self.step(v, s))
    }

    /// Graphviz rendering of the Cayley graph, one undirected edge per pair.
    pub fn to_dot(&self, names: &[String]) -> String {
        let label = |v: usize| -> String {
            let w = &self.vertices[v].word;
            if w.is_empty() {
                "e".to_string()
            } else {
                w.letters().map(|s| names[s].as_str()).collect::<Vec<_>>().join("")
            }
        };
        let mut out = String::from("graph cayley {\n");
        for (id, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{id} [label=\"{}\"];", label(id));
            for (s, nb) in v.neighbors.iter().enumerate() {
                if let Some(nb) = *nb {
                    if nb > id {
                        let _ = writeln!(out, "  v{id} -- v{nb} [label=\"{}\"];", names[s]);
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Every element of W_T, as words in the ambient generators. Requires T
/// spherical.
pub fn parabolic_elements(matrix: &CoxeterMatrix, t: GenSet) -> Result<Vec<Word>> {
    if !matrix.is_spherical(t) {
        return Err(CoxeterError::NonSphericalSubset(t.to_vec()));
    }
    let gens = t.to_vec();
    let sub = matrix.restrict(&gens);
    let ball = Ball::whole_group(&sub, DEFAULT_SIZE_BUDGET)?;
    Ok(ball
        .vertices
        .iter()
        .map(|v| Word::from_indices(v.word.letters().map(|k| gens[k])))
        .collect())
}

/// The coset W_T·w, sorted by length then ShortLex.
pub fn coset_elements(system: &CoxeterSystem, t: GenSet, w: &Element) -> Result<Vec<Element>> {
    system.check_genset(t)?;
    let mut out = parabolic_elements(system.matrix(), t)?
        .into_iter()
        .map(|x| system.reduce(&x.concat(w.canonical())))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// The longest element of W_T·w by exhaustive search. Fails with
/// [`CoxeterError::NonUniqueMaximum`] if the maximum length is attained twice.
pub fn longest_in_coset_oracle(system: &CoxeterSystem, t: GenSet, w: &Element) -> Result<Element> {
    let coset = coset_elements(system, t, w)?;
    let max = coset.iter().map(Element::length).max().unwrap_or(0);
    let mut top = coset.into_iter().filter(|v| v.length() == max);
    let first = top.next().expect("coset is non-empty");
    let rest = top.count();
    if rest > 0 {
        return Err(CoxeterError::NonUniqueMaximum { length: max, count: rest + 1 });
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Order;
    use crate::presets;

    fn w(letters: &[usize]) -> Word {
        Word::from_indices(letters.iter().copied())
    }

    fn set(s: &[usize]) -> GenSet {
        s.iter().copied().collect()
    }

    #[test]
    fn a2_ball_hand_enumeration() {
        let ball = Ball::new(&presets::a_matrix(2), 3).unwrap();
        assert_eq!(ball.len(), 6);
        assert_eq!(ball.level_sizes(), vec![1, 2, 2, 1]);
        let top = ball.vertex_of(&w(&[0, 1, 0])).unwrap();
        assert_eq!(ball.descents(top), set(&[0, 1]));
        // bab is the same vertex
        assert_eq!(ball.evaluate(&w(&[1, 0, 1])), Some(top));
    }

    #[test]
    fn radius_zero_is_identity() {
        let ball = Ball::new(&presets::g1_matrix(), 0).unwrap();
        assert_eq!(ball.len(), 1);
        assert_eq!(ball.canonical_word(0), &Word::empty());
    }

    #[test]
    fn infinite_dihedral_growth() {
        let ball = Ball::new(&presets::i2_matrix(Order::Infinite), 5).unwrap();
        assert_eq!(ball.len(), 11);
        assert_eq!(ball.level_sizes(), vec![1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn finite_groups_close_up() {
        let count = |m: &CoxeterMatrix| Ball::whole_group(m, 10_000).unwrap().len();
        assert_eq!(count(&presets::a_matrix(3)), 24);
        assert_eq!(count(&presets::b_matrix(3)), 48);
        assert_eq!(count(&presets::linear_matrix(&[5, 3])), 120);
        assert_eq!(count(&presets::i2_matrix(Order::Finite(7))), 14);
    }

    #[test]
    fn budget_is_an_error() {
        assert_eq!(
            Ball::whole_group(&presets::tilde_a2_matrix(), 50).unwrap_err(),
            CoxeterError::SizeBudgetExceeded { budget: 50 }
        );
    }

    #[test]
    fn cosets() {
        let g1 = presets::g1();
        let e = Element::identity();
        let s0 = g1.generator(0).unwrap();
        assert_eq!(coset_elements(&g1, GenSet::EMPTY, &s0).unwrap(), vec![s0.clone()]);

        let coset = coset_elements(&g1, set(&[1, 2]), &s0).unwrap();
        let words: Vec<Vec<usize>> = coset.iter().map(|x| x.canonical().to_vec()).collect();
        assert_eq!(words, vec![vec![0], vec![1, 0], vec![2, 0], vec![1, 2, 0]]);

        let a2 = presets::a2();
        let a = a2.generator(0).unwrap();
        assert_eq!(coset_elements(&a2, set(&[0]), &e).unwrap(), vec![e.clone(), a]);

        assert!(matches!(
            coset_elements(&g1, set(&[0, 1]), &e),
            Err(CoxeterError::NonSphericalSubset(_))
        ));
    }

    #[test]
    fn oracle_longest() {
        let g1 = presets::g1();
        let s0 = g1.generator(0).unwrap();
        assert_eq!(longest_in_coset_oracle(&g1, GenSet::EMPTY, &s0).unwrap(), s0);
        assert_eq!(
            longest_in_coset_oracle(&g1, set(&[1, 2]), &s0).unwrap().canonical(),
            &w(&[1, 2, 0])
        );
        let a2 = presets::a2();
        assert_eq!(
            longest_in_coset_oracle(&a2, set(&[0, 1]), &Element::identity()).unwrap().canonical(),
            &w(&[0, 1, 0])
        );
    }

    #[test]
    fn dot_export() {
        let ball = Ball::new(&presets::a_matrix(2), 1).unwrap();
        let dot = ball.to_dot(&["a".into(), "b".into()]);
        assert!(dot.contains("v0 -- v1 [label=\"a\"]"));
        assert!(dot.contains("v0 -- v2 [label=\"b\"]"));
    }
}
