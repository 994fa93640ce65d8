//! Worked examples, with every expected value first derived from the
//! Cayley-graph oracle and then frozen.

use coxeter_core::oracle::{coset_elements, longest_in_coset_oracle, Ball};
use coxeter_core::{presets, Certification, CoxeterError, Element, GenSet, StepRelation, Word};

const S0: usize = 0;
const T0: usize = 1;
const T1: usize = 2;

fn w(letters: &[usize]) -> Word {
    Word::from_indices(letters.iter().copied())
}

fn set(s: &[usize]) -> GenSet {
    s.iter().copied().collect()
}

#[test]
fn a2_reductions_match_oracle() {
    let a2 = presets::a2();
    let ball = Ball::new(a2.matrix(), 6).unwrap();
    let cases: [(&[usize], &[usize]); 4] = [
        (&[0, 1, 0, 1, 0, 1], &[]),
        (&[0, 1, 0, 1], &[1, 0]),
        (&[0, 0], &[]),
        (&[1, 0, 1], &[0, 1, 0]),
    ];
    for (input, expected) in cases {
        let oracle = ball.canonical_word(ball.evaluate(&w(input)).unwrap());
        assert_eq!(oracle, &w(expected), "oracle for {input:?}");
        assert_eq!(a2.reduce(&w(input)).unwrap().canonical(), &w(expected));
    }
}

#[test]
fn g1_commuting_generators() {
    let g1 = presets::g1();
    let ball = Ball::new(g1.matrix(), 3).unwrap();
    assert_eq!(ball.canonical_word(ball.evaluate(&w(&[T0, T1, T0])).unwrap()), &w(&[T1]));
    assert_eq!(g1.reduce(&w(&[T0, T1, T0])).unwrap().canonical(), &w(&[T1]));
}

#[test]
fn a2_products_match_oracle() {
    let a2 = presets::a2();
    let ball = Ball::new(a2.matrix(), 4).unwrap();
    let ab = a2.reduce(&w(&[0, 1])).unwrap();
    let product = a2.multiply(&ab, &ab).unwrap();
    let oracle = ball.canonical_word(ball.evaluate(&w(&[0, 1, 0, 1])).unwrap());
    assert_eq!(product.canonical(), oracle);
    assert_eq!(oracle, &w(&[1, 0]));
    // ab·ba = e
    let inv = a2.inverse(&ab).unwrap();
    assert!(a2.multiply(&ab, &inv).unwrap().is_identity());
}

#[test]
fn descents_match_oracle() {
    let g1 = presets::g1();
    let ball = Ball::new(g1.matrix(), 3).unwrap();
    let t0t1 = g1.reduce(&w(&[T0, T1])).unwrap();
    let v = ball.vertex_of(t0t1.canonical()).unwrap();
    assert_eq!(ball.descents(v), set(&[T0, T1]));
    assert_eq!(g1.right_descents(&t0t1).unwrap(), set(&[T0, T1]));

    // left descents of t1·s0 are the right descents of s0·t1
    let s0t1 = ball.vertex_of(&w(&[S0, T1])).unwrap();
    assert_eq!(ball.descents(s0t1), set(&[T1]));
    let t1s0 = g1.reduce(&w(&[T1, S0])).unwrap();
    assert_eq!(g1.left_descents(&t1s0).unwrap(), set(&[T1]));
}

#[test]
fn parabolic_membership_cross_checked() {
    // W_{t0,t1} = {e, t0, t1, t0t1}; s0·t1 is not among them
    let g1 = presets::g1();
    let members = coset_elements(&g1, set(&[T0, T1]), &Element::identity()).unwrap();
    assert_eq!(members.len(), 4);
    let s0t1 = g1.reduce(&w(&[S0, T1])).unwrap();
    assert!(!members.contains(&s0t1));
    assert!(!g1.in_parabolic(&s0t1, set(&[T0, T1])));
    assert!(members.iter().all(|x| g1.in_parabolic(x, set(&[T0, T1]))));
}

#[test]
fn classify_agrees_with_enumeration() {
    let g1 = presets::g1();
    let verdict = g1.matrix().classify(set(&[T0, T1]));
    let sub = g1.matrix().restrict(&[T0, T1]);
    assert_eq!(Ball::whole_group(&sub, 100).unwrap().len(), 4);
    assert_eq!(verdict.order.to_u64(), Some(4));

    let s0t1 = g1.matrix().restrict(&[S0, T1]);
    assert_eq!(Ball::whole_group(&s0t1, 100).unwrap().len(), 6);
    assert!(g1.matrix().is_spherical(set(&[S0, T1])));

    // affine triangle keeps growing
    let tri = presets::tilde_a2_matrix();
    let sizes = Ball::new(&tri, 12).unwrap().level_sizes();
    assert!(sizes.iter().all(|&n| n > 0));
    assert!(!tri.classify(GenSet::full(3)).spherical);
}

#[test]
fn maximal_spherical_by_exhaustion() {
    let g1 = presets::g1_matrix();
    let spherical: Vec<GenSet> = GenSet::full(3).subsets().filter(|&t| g1.is_spherical(t)).collect();
    let maximal: Vec<GenSet> = spherical
        .iter()
        .copied()
        .filter(|&t| !spherical.iter().any(|&u| u != t && t.is_subset(u)))
        .collect();
    let mut expected = g1.maximal_spherical_subsets();
    expected.sort();
    let mut got = maximal;
    got.sort();
    assert_eq!(got, expected);
    assert_eq!(expected.len(), 2);
}

#[test]
fn ball_level_counts() {
    let a2 = Ball::new(&presets::a_matrix(2), 3).unwrap();
    assert_eq!(a2.level_sizes(), vec![1, 2, 2, 1]);
    let dinf = Ball::new(&presets::i2_matrix(coxeter_core::Order::Infinite), 5).unwrap();
    assert_eq!(dinf.len(), 11);
}

#[test]
fn g1_coset_listing() {
    let g1 = presets::g1();
    let s0 = g1.generator(S0).unwrap();
    let coset = coset_elements(&g1, set(&[T0, T1]), &s0).unwrap();
    let lengths: Vec<usize> = coset.iter().map(Element::length).collect();
    assert_eq!(lengths, vec![1, 2, 2, 3]);
    let longest = longest_in_coset_oracle(&g1, set(&[T0, T1]), &s0).unwrap();
    assert_eq!(longest.canonical(), &w(&[T0, T1, S0]));
    let greedy = g1.longest_in_coset(set(&[T0, T1]), &s0).unwrap();
    assert_eq!(greedy.v, longest);
    assert_eq!(greedy.x.canonical(), &w(&[T0, T1]));
}

#[test]
fn coset_steps_match_recomputation() {
    let g1 = presets::g1();
    let t = set(&[T0, T1]);
    let x = g1.reduce(&w(&[T0, T1])).unwrap();

    let s0 = g1.generator(S0).unwrap();
    let out = g1.coset_step(t, &s0, T0, &x).unwrap();
    let s0t0 = g1.reduce(&w(&[S0, T0])).unwrap();
    let fresh = longest_in_coset_oracle(&g1, t, &s0t0).unwrap();
    assert_eq!(g1.multiply(&out.x_next, &s0t0).unwrap(), fresh);
    assert_eq!(out.relation, StepRelation::Unchanged);

    let out = g1.coset_step(t, &Element::identity(), T0, &x).unwrap();
    let t0 = g1.generator(T0).unwrap();
    let fresh = longest_in_coset_oracle(&g1, t, &t0).unwrap();
    assert_eq!(g1.multiply(&out.x_next, &t0).unwrap(), fresh);
    assert_eq!(out.relation, StepRelation::DeletedLetter(0));
    assert_eq!(out.x_next, g1.generator(T1).unwrap());
}

#[test]
fn ws0_conclusion_by_oracle_descents() {
    let g1 = presets::g1();
    let ball = Ball::new(g1.matrix(), 4).unwrap();
    let t0t1 = g1.reduce(&w(&[T0, T1])).unwrap();
    let verdict = g1.ws0_check(&t0t1, S0).unwrap();
    assert!(verdict.hypothesis_ok && verdict.conclusion_ok);
    let v = ball.evaluate(&w(&[T0, T1, S0])).unwrap();
    assert_eq!(ball.descents(v), set(&[S0]));
}

#[test]
fn rays() {
    let g1 = presets::g1();
    let ball = Ball::new(g1.matrix(), 12).unwrap();
    // oracle: every prefix of (t0 s0)^6 sits at depth equal to its length
    let mut v = 0;
    for k in 0..12 {
        v = ball.step(v, if k % 2 == 0 { T0 } else { S0 }).unwrap();
        assert_eq!(ball.depth(v), k + 1);
    }
    assert!(g1.make_ray(&Word::empty(), &w(&[T0, S0]), 50).is_ok());

    let a2 = presets::a2();
    let a2_ball = Ball::new(a2.matrix(), 4).unwrap();
    assert_eq!(a2_ball.depth(a2_ball.evaluate(&w(&[0, 1, 0, 1])).unwrap()), 2);
    assert_eq!(a2.make_ray(&Word::empty(), &w(&[0, 1]), 50), Err(CoxeterError::NotReducedAt(4)));
}

#[test]
fn g1_trace_against_per_step_oracle() {
    let g1 = presets::g1();
    let ray = g1.make_ray(&Word::empty(), &w(&[T0, S0]), 50).unwrap();
    for t in [set(&[T0, T1]), set(&[S0, T1])] {
        let report = g1.stabilize(t, &ray, 50).unwrap();
        for step in report.steps.iter().take(10) {
            let longest = longest_in_coset_oracle(&g1, t, &step.w).unwrap();
            assert_eq!(g1.multiply(&step.x, &step.w).unwrap(), longest, "T = {t:?}, i = {}", step.i);
        }
        assert!(report.steps.windows(2).all(|p| p[1].len_x <= p[0].len_x));
    }

    let report = g1.stabilize(set(&[T0, T1]), &ray, 50).unwrap();
    assert_eq!(report.x_limit, g1.generator(T1).unwrap());
    assert_eq!(report.stabilization.reason, Certification::PhaseRecurrence);

    // with T = {s0, t1} the correction settles too; its limit comes from the oracle
    let report = g1.stabilize(set(&[S0, T1]), &ray, 50).unwrap();
    let last = report.steps.last().unwrap();
    let longest = longest_in_coset_oracle(&g1, set(&[S0, T1]), &last.w).unwrap();
    assert_eq!(g1.multiply(&report.x_limit, &last.w).unwrap(), longest);
}

#[test]
fn theorem_trace_rejects_bad_hypotheses() {
    let g1 = presets::g1();
    let ray = g1.make_ray(&Word::empty(), &w(&[T0, S0]), 10).unwrap();
    assert!(matches!(
        g1.theorem_trace(&ray, set(&[S0, T1]), T0, T0, 10),
        Err(CoxeterError::HypothesisFailed(_))
    ));
    let bad = g1.make_ray(&w(&[T1]), &w(&[T1]), 10);
    assert_eq!(bad, Err(CoxeterError::NotReducedAt(2)));
}
