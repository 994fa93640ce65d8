//! Exhaustive verification of the Coxeter-group lemmas over oracle balls.
//!
//! Each check walks every instance in a ball produced by [`Ball`] and compares
//! the fast path in [`CoxeterSystem`] with the oracle, or verifies a lemma's
//! statement directly. A correct build reports zero failures everywhere.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use serde::Serialize;

use crate::config::NamedSystem;
use crate::cosets::StepRelation;
use crate::error::Result;
use crate::finite_type::GroupOrder;
use crate::oracle::{coset_elements, Ball, DEFAULT_SIZE_BUDGET};
use crate::system::CoxeterSystem;
use crate::word::{Element, GenSet, Word};

/// Failure descriptions kept per check; the count is always exact.
const MAX_RECORDED_FAILURES: usize = 20;

/// Largest catalogue order for which finite parabolics are enumerated.
const ENUMERATED_ORDER_LIMIT: u64 = 200;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub instances: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub radius: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl LemmaReport {
    fn new(radius: usize) -> Self {
        LemmaReport { radius, ..Default::default() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(message);
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    pub name: String,
    pub ball_size: usize,
    pub level_sizes: Vec<usize>,
    pub lemmas: BTreeMap<String, LemmaReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub radius: usize,
    pub systems: Vec<SystemReport>,
    pub passed: bool,
}

/// Every word of length at most `max_len` over `rank` generators.
pub fn all_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * rank);
        for w in &frontier {
            for s in 0..rank {
                let mut longer = w.clone();
                longer.push(s);
                next.push(longer);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn spherical_subsets(system: &CoxeterSystem) -> Vec<GenSet> {
    let m = system.matrix();
    GenSet::full(m.rank()).subsets().filter(|&t| m.is_spherical(t)).collect()
}

/// `reduce` agrees with the oracle vertex for every word of length ≤ `max_len`.
/// The ball must have radius at least `max_len`.
pub fn check_word_problem(system: &CoxeterSystem, ball: &Ball, max_len: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(max_len);
    for word in all_words(system.rank(), max_len) {
        let reduced = system.reduce(&word)?;
        let vertex = ball.evaluate(&word);
        let expected = vertex.map(|v| ball.canonical_word(v));
        report.check(expected == Some(reduced.canonical()), || {
            format!("reduce({word}) = {reduced}, oracle gives {expected:?}")
        });
    }
    Ok(report)
}

/// One braid move or one cancellation never changes `reduce`.
pub fn check_braid_invariance(system: &CoxeterSystem, max_len: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(max_len);
    let m = system.matrix();
    for word in all_words(system.rank(), max_len) {
        let base = system.reduce(&word)?;
        let letters = word.to_vec();
        for i in 0..letters.len() {
            if i + 1 < letters.len() && letters[i] == letters[i + 1] {
                let shorter = word.without_pair(i, i + 1);
                let r = system.reduce(&shorter)?;
                report.check(r == base, || format!("cancelling at {i} in {word} changes the reduction"));
            }
            for s in 0..system.rank() {
                for t in 0..system.rank() {
                    if s == t {
                        continue;
                    }
                    let Some(order) = m.order(s, t).finite() else { continue };
                    let order = order as usize;
                    if i + order > letters.len() {
                        continue;
                    }
                    let alt = |k: usize, a: usize, b: usize| if k.is_multiple_of(2) { a } else { b };
                    if (0..order).all(|k| letters[i + k] == alt(k, s, t)) {
                        let mut moved = letters.clone();
                        for k in 0..order {
                            moved[i + k] = alt(k, t, s);
                        }
                        let r = system.reduce(&Word::from_indices(moved))?;
                        report.check(r == base, || format!("braid move at {i} in {word} changes the reduction"));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// A word that is not reduced admits a deletion of two letters that keeps the
/// element. Decided entirely inside the oracle.
pub fn check_deletion(ball: &Ball, max_len: usize) -> LemmaReport {
    let mut report = LemmaReport::new(max_len);
    for word in all_words(ball.rank(), max_len) {
        let Some(v) = ball.evaluate(&word) else { continue };
        if ball.depth(v) == word.len() {
            continue;
        }
        let found = (0..word.len())
            .any(|i| (i + 1..word.len()).any(|j| ball.evaluate(&word.without_pair(i, j)) == Some(v)));
        report.check(found, || format!("no deletion pair for non-reduced word {word}"));
    }
    report
}

/// ℓ(ws) and ℓ(sw) are ℓ(w) ± 1, both through `reduce` and along oracle edges.
pub fn check_length_parity(system: &CoxeterSystem, ball: &Ball, radius: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(radius);
    for w in ball.elements_within(radius) {
        let vertex = ball.vertex_of(w.canonical()).expect("element of the ball");
        for s in 0..system.rank() {
            let right = system.mul_gen(&w, s)?.length();
            let left = system.gen_mul(s, &w)?.length();
            let l = w.length();
            report.check(right.abs_diff(l) == 1 && left.abs_diff(l) == 1, || {
                format!("w = {w}, s = {s}: l(ws) = {right}, l(sw) = {left}, l(w) = {l}")
            });
            if let Some(nb) = ball.step(vertex, s) {
                report.check(ball.depth(nb).abs_diff(ball.depth(vertex)) == 1, || {
                    format!("oracle edge {w} -{s}-> keeps the same depth")
                });
            }
        }
    }
    Ok(report)
}

/// S(w) is spherical and matches the oracle's descent set.
pub fn check_descents_spherical(system: &CoxeterSystem, ball: &Ball, radius: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(radius);
    for w in ball.elements_within(radius) {
        let d = system.right_descents(&w)?;
        let oracle = ball.descents(ball.vertex_of(w.canonical()).expect("element of the ball"));
        report.check(d == oracle, || format!("S({w}) = {d:?}, oracle {oracle:?}"));
        report.check(system.matrix().is_spherical(d), || format!("S({w}) = {d:?} is not spherical"));
    }
    Ok(report)
}

/// Inverses preserve length and are involutive; right descents of w are left
/// descents of w⁻¹.
pub fn check_inverses(system: &CoxeterSystem, ball: &Ball, radius: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(radius);
    for w in ball.elements_within(radius) {
        let inv = system.inverse(&w)?;
        report.check(inv.length() == w.length(), || format!("l({w}^-1) != l({w})"));
        report.check(system.inverse(&inv)? == w, || format!("({w}^-1)^-1 != {w}"));
        let right = system.right_descents(&w)?;
        let left_of_inv = system.left_descents(&inv)?;
        report.check(right == left_of_inv, || format!("S({w}) = {right:?} but left descents of inverse {left_of_inv:?}"));
    }
    Ok(report)
}

/// `in_parabolic` agrees with membership in the oracle's copy of W_T, for
/// every T ⊆ S.
pub fn check_parabolic_membership(system: &CoxeterSystem, ball: &Ball, radius: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(radius);
    let m = system.matrix();
    for t in GenSet::full(m.rank()).subsets() {
        let gens = t.to_vec();
        let sub = Ball::with_budget(&m.restrict(&gens), radius, DEFAULT_SIZE_BUDGET)?;
        let members: HashSet<usize> = sub
            .elements()
            .map(|x| {
                let word = Word::from_indices(x.canonical().letters().map(|k| gens[k]));
                ball.evaluate(&word).expect("parabolic element lies in the ball")
            })
            .collect();
        for w in ball.elements_within(radius) {
            let vertex = ball.vertex_of(w.canonical()).expect("element of the ball");
            let fast = system.in_parabolic(&w, t);
            let oracle = members.contains(&vertex);
            report.check(fast == oracle, || format!("{w} in W_{t:?}: fast {fast}, oracle {oracle}"));
        }
    }
    Ok(report)
}

/// Longest coset elements: uniqueness, the left-descent characterization,
/// length additivity, and agreement of greedy ascent (in both generator
/// orders) with exhaustive search.
pub fn check_longest_coset(system: &CoxeterSystem, ball: &Ball, radius: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(radius);
    for t in spherical_subsets(system) {
        let order = t.to_vec();
        let reversed: Vec<usize> = order.iter().rev().copied().collect();
        for w in ball.elements_within(radius) {
            let coset = coset_elements(system, t, &w)?;
            report.check(coset.iter().collect::<HashSet<_>>().len() == coset.len(), || {
                format!("W_{t:?}·{w} has repeated elements")
            });
            let max = coset.iter().map(Element::length).max().unwrap_or(0);
            let top: Vec<&Element> = coset.iter().filter(|v| v.length() == max).collect();
            report.check(top.len() == 1, || format!("W_{t:?}·{w} has {} longest elements", top.len()));
            let longest = top[0];

            for v in &coset {
                let mut all_descend = true;
                for u in t.iter() {
                    all_descend &= system.gen_mul(u, v)?.length() < v.length();
                }
                report.check(all_descend == (v == longest), || {
                    format!("W_{t:?}·{w}: {v} characterization gives {all_descend}")
                });
            }
            let x = system.multiply(longest, &system.inverse(&w)?)?;
            report.check(longest.length() == x.length() + w.length(), || {
                format!("W_{t:?}·{w}: l(v) != l(vw^-1) + l(w)")
            });

            let greedy = system.longest_in_coset(t, &w)?;
            report.check(&greedy.v == longest && greedy.x == x, || {
                format!("greedy W_{t:?}·{w} gives {}, oracle {longest}", greedy.v)
            });
            let other = system.longest_in_coset_ordered(&reversed, &w)?;
            report.check(other == greedy, || format!("greedy W_{t:?}·{w} depends on generator order"));
            report.check(system.in_parabolic(&greedy.x, t), || format!("x for W_{t:?}·{w} is outside W_T"));
        }
    }
    Ok(report)
}

/// For every ascent s of w, the stepped representative for w·s equals the one
/// recomputed from scratch, and is x or x with one letter deleted.
pub fn check_coset_step(system: &CoxeterSystem, ball: &Ball, radius: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(radius);
    for t in spherical_subsets(system) {
        for w in ball.elements_within(radius) {
            let x = system.longest_in_coset(t, &w)?.x;
            for s in 0..system.rank() {
                let ws = system.mul_gen(&w, s)?;
                if ws.length() < w.length() {
                    continue;
                }
                let out = system.coset_step(t, &w, s, &x)?;
                let fresh = system.longest_in_coset(t, &ws)?.x;
                report.check(out.x_next == fresh, || {
                    format!("T = {t:?}, w = {w}, s = {s}: stepped {} vs fresh {fresh}", out.x_next)
                });
                let shape_ok = match out.relation {
                    StepRelation::Unchanged => out.x_next == x,
                    StepRelation::DeletedLetter(i) => {
                        i < x.length() && system.reduce(&x.canonical().without(i))? == out.x_next
                    }
                };
                report.check(shape_ok && out.x_next.length() <= x.length(), || {
                    format!("T = {t:?}, w = {w}, s = {s}: relation {:?} inconsistent", out.relation)
                });
            }
        }
    }
    Ok(report)
}

/// Whenever m(s0,t) ≥ 3 on S(w) with an infinite entry, w·s0 ∈ W^{s0}.
/// `instances` counts the pairs meeting the hypothesis.
pub fn check_ws0(system: &CoxeterSystem, ball: &Ball, radius: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(radius);
    for w in ball.elements_within(radius) {
        for s0 in 0..system.rank() {
            let verdict = system.ws0_check(&w, s0)?;
            if verdict.hypothesis_ok {
                report.check(verdict.conclusion_ok, || format!("w = {w}, s0 = {s0}: w·s0 not in W^{{s0}}"));
            }
        }
    }
    Ok(report)
}

/// The classes W^T partition the ball.
pub fn check_descent_partition(system: &CoxeterSystem, ball: &Ball, radius: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(radius);
    let subsets: Vec<GenSet> = GenSet::full(system.rank()).subsets().collect();
    for w in ball.elements_within(radius) {
        let mut hits = 0;
        for &t in &subsets {
            if system.in_descent_class(&w, t)? {
                hits += 1;
            }
        }
        report.check(hits == 1, || format!("{w} lies in {hits} descent classes"));
    }
    Ok(report)
}

/// Catalogue orders agree with enumeration for small spherical subsets;
/// non-spherical parabolics grow at every radius up to `radius`; sphericity
/// is inherited by subsets; maximal spherical subsets are maximal.
pub fn check_finite_type(system: &CoxeterSystem, radius: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(radius);
    let m = system.matrix();
    for t in GenSet::full(m.rank()).subsets() {
        let verdict = m.classify(t);
        let sub = m.restrict(&t.to_vec());
        match verdict.order {
            GroupOrder::Finite(_) => {
                let order = verdict.order.to_u64().unwrap_or(u64::MAX);
                if order <= ENUMERATED_ORDER_LIMIT {
                    let counted = Ball::whole_group(&sub, DEFAULT_SIZE_BUDGET)?.len() as u64;
                    report.check(counted == order, || format!("|W_{t:?}| = {counted}, catalogue {order}"));
                }
                for u in t.subsets() {
                    report.check(m.is_spherical(u), || format!("{t:?} spherical but subset {u:?} is not"));
                }
            }
            GroupOrder::Infinite => {
                let ball = Ball::with_budget(&sub, radius, DEFAULT_SIZE_BUDGET)?;
                let sizes = ball.level_sizes();
                report.check(sizes.iter().all(|&n| n > 0), || {
                    format!("non-spherical W_{t:?} stops growing: levels {sizes:?}")
                });
            }
        }
    }
    for t in m.maximal_spherical_subsets() {
        report.check(m.is_spherical(t), || format!("maximal {t:?} is not spherical"));
        for s in (0..m.rank()).filter(|&s| !t.contains(s)) {
            report.check(!m.is_spherical(t.with(s)), || format!("maximal {t:?} extends by {s}"));
        }
    }
    Ok(report)
}

/// Runs every check on one system over the ball of the given radius.
pub fn run_system(named: &NamedSystem, radius: usize, timing: bool) -> Result<SystemReport> {
    let system = &named.system;
    let ball = Ball::new(system.matrix(), radius)?;
    let mut lemmas = BTreeMap::new();
    let mut timed = |name: &str, f: &mut dyn FnMut() -> Result<LemmaReport>| -> Result<()> {
        let start = Instant::now();
        let mut report = f()?;
        if timing {
            report.wall_ms = Some(start.elapsed().as_millis() as u64);
        }
        lemmas.insert(name.to_string(), report);
        Ok(())
    };
    timed("word_problem", &mut || check_word_problem(system, &ball, radius))?;
    timed("braid_invariance", &mut || check_braid_invariance(system, radius))?;
    timed("deletion", &mut || Ok(check_deletion(&ball, radius)))?;
    timed("length_parity", &mut || check_length_parity(system, &ball, radius))?;
    timed("descents_spherical", &mut || check_descents_spherical(system, &ball, radius))?;
    timed("inverses", &mut || check_inverses(system, &ball, radius))?;
    timed("parabolic_membership", &mut || check_parabolic_membership(system, &ball, radius))?;
    timed("longest_coset", &mut || check_longest_coset(system, &ball, radius))?;
    timed("coset_step", &mut || check_coset_step(system, &ball, radius))?;
    timed("ws0", &mut || check_ws0(system, &ball, radius))?;
    timed("descent_partition", &mut || check_descent_partition(system, &ball, radius))?;
    timed("finite_type", &mut || check_finite_type(system, radius))?;
    Ok(SystemReport {
        name: named.name.clone(),
        ball_size: ball.len(),
        level_sizes: ball.level_sizes(),
        lemmas,
    })
}

/// Runs [`run_system`] for every system, one thread per system; the report
/// keeps the input order.
pub fn lemma_suite(systems: &[NamedSystem], radius: usize, timing: bool) -> Result<SuiteReport> {
    let results: Vec<Result<SystemReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = systems
            .iter()
            .map(|named| scope.spawn(move || run_system(named, radius, timing)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
    });
    let systems = results.into_iter().collect::<Result<Vec<_>>>()?;
    let passed = systems.iter().all(|s| s.lemmas.values().all(LemmaReport::passed));
    Ok(SuiteReport { radius, systems, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_enumeration_counts() {
        assert_eq!(all_words(2, 3).len(), 1 + 2 + 4 + 8);
        assert_eq!(all_words(3, 0), vec![Word::empty()]);
    }

    #[test]
    fn a2_suite_radius_three() {
        let a2 = NamedSystem::preset("A2").unwrap();
        let report = lemma_suite(&[a2], 3, false).unwrap();
        assert!(report.passed, "{report:#?}");
        assert_eq!(report.systems[0].ball_size, 6);
    }

    #[test]
    fn empty_suite_passes() {
        let report = lemma_suite(&[], 4, false).unwrap();
        assert!(report.passed);
        assert!(report.systems.is_empty());
    }

    #[test]
    fn failures_are_counted_past_the_cap() {
        let mut r = LemmaReport::new(1);
        for k in 0..30 {
            r.check(false, || format!("failure {k}"));
        }
        assert_eq!(r.failure_count, 30);
        assert_eq!(r.failures.len(), MAX_RECORDED_FAILURES);
        assert!(!r.passed());
    }
}
