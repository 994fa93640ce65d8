//! Infinite reduced words and the stabilization of coset corrections along
//! them.
//!
//! For a spherical T and a ray s1 s2 s3 …, let w_i = s1⋯s_i and let x_i ∈ W_T
//! be the element with x_i·w_i longest in W_T·w_i. The lengths ℓ(x_i) never
//! increase, so x_i is eventually constant; [`CoxeterSystem::stabilize`]
//! computes the sequence and locates where it settles.

use std::collections::HashSet;

use serde::Serialize;

use crate::cosets::StepRelation;
use crate::error::{CoxeterError, Result};
use crate::system::CoxeterSystem;
use crate::word::{Element, GenSet, Word};

/// Default number of letters examined along a ray.
pub const DEFAULT_HORIZON: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RayLetters {
    /// `prefix · period · period · …`
    Periodic { prefix: Word, period: Word },
    /// Explicit letters, e.g. drawn from an aperiodic stream.
    Stream { letters: Word },
}

/// A word whose prefixes are reduced at least up to `certified_reduced_up_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaySpec {
    pub letters: RayLetters,
    pub certified_reduced_up_to: usize,
}

impl RaySpec {
    /// The `i`-th letter, counting from 1.
    pub fn letter(&self, i: usize) -> Option<usize> {
        assert!(i >= 1, "ray letters are numbered from 1");
        match &self.letters {
            RayLetters::Periodic { prefix, period } => {
                if i <= prefix.len() {
                    Some(prefix.letter(i - 1))
                } else {
                    Some(period.letter((i - 1 - prefix.len()) % period.len()))
                }
            }
            RayLetters::Stream { letters } => (i <= letters.len()).then(|| letters.letter(i - 1)),
        }
    }

    /// Prefix and period lengths of a periodic ray.
    pub fn periodic_shape(&self) -> Option<(usize, usize)> {
        match &self.letters {
            RayLetters::Periodic { prefix, period } => Some((prefix.len(), period.len())),
            RayLetters::Stream { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    /// x_i is constant from `candidate_n` through the horizon, nothing more.
    HorizonOnly,
    /// A (x_i, phase) state of a periodic ray repeated inside the constant tail.
    PhaseRecurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub candidate_n: usize,
    pub certified: bool,
    pub reason: Certification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub i: usize,
    pub w: Element,
    pub x: Element,
    pub len_x: usize,
    /// How x_i arose from x_{i-1}; `None` for i = 1.
    pub relation: Option<StepRelation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub i: usize,
    /// (s0·x·w_i)⁻¹ ∈ W^{s0}
    pub s0_check: bool,
    /// (t0·s0·x·w_i)⁻¹ ∈ W^{t0}
    pub t0_check: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub subset: GenSet,
    pub horizon: usize,
    pub steps: Vec<TraceStep>,
    pub stabilization: Stabilization,
    pub x_limit: Element,
    pub memberships: Vec<Membership>,
}

impl TraceReport {
    pub fn memberships_pass(&self) -> bool {
        self.memberships.iter().all(|m| m.s0_check && m.t0_check)
    }

    pub fn step(&self, i: usize) -> &TraceStep {
        &self.steps[i - 1]
    }
}

/// Descent data of x·w_i for one index of the stable tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationCheck {
    pub i: usize,
    /// T ⊆ left descents of x·w_i.
    pub contains_subset: bool,
    /// S((x·w_i)⁻¹) = T; only meaningful when T is maximal spherical.
    pub equals_subset: bool,
}

impl CoxeterSystem {
    /// Checks that `prefix · period^∞` is reduced through `horizon` letters.
    pub fn make_ray(&self, prefix: &Word, period: &Word, horizon: usize) -> Result<RaySpec> {
        if period.is_empty() {
            return Err(CoxeterError::EmptyPeriod);
        }
        self.word(&prefix.to_vec())?;
        self.word(&period.to_vec())?;
        let ray = RaySpec {
            letters: RayLetters::Periodic { prefix: prefix.clone(), period: period.clone() },
            certified_reduced_up_to: 0,
        };
        self.certify(ray, horizon)
    }

    /// A ray from explicit letters; the first `horizon` of them are checked.
    pub fn make_stream_ray<I: IntoIterator<Item = usize>>(&self, letters: I, horizon: usize) -> Result<RaySpec> {
        let letters: Vec<usize> = letters.into_iter().take(horizon).collect();
        let word = self.word(&letters)?;
        let ray = RaySpec {
            letters: RayLetters::Stream { letters: word },
            certified_reduced_up_to: 0,
        };
        self.certify(ray, horizon.min(letters.len()))
    }

    fn certify(&self, mut ray: RaySpec, horizon: usize) -> Result<RaySpec> {
        let mut w = Element::identity();
        for i in 1..=horizon {
            let s = ray.letter(i).expect("letter within horizon");
            let next = self.mul_gen(&w, s)?;
            if next.length() != w.length() + 1 {
                return Err(CoxeterError::NotReducedAt(i));
            }
            w = next;
        }
        ray.certified_reduced_up_to = horizon;
        Ok(ray)
    }

    /// Follows x_i along the ray for i = 1..=horizon: x_1 from the greedy
    /// longest coset element, then one [`coset_step`](Self::coset_step) per
    /// letter.
    pub fn stabilize(&self, t: GenSet, ray: &RaySpec, horizon: usize) -> Result<TraceReport> {
        self.check_genset(t)?;
        if !self.matrix().is_spherical(t) {
            return Err(CoxeterError::NonSphericalSubset(t.to_vec()));
        }
        if horizon == 0 || horizon > ray.certified_reduced_up_to {
            return Err(CoxeterError::HorizonOutOfRange {
                horizon,
                certified: ray.certified_reduced_up_to,
            });
        }
        let letter = |i: usize| ray.letter(i).expect("letter within certified range");

        let mut steps = Vec::with_capacity(horizon);
        let w1 = self.generator(letter(1))?;
        let x1 = self.longest_in_coset(t, &w1)?.x;
        steps.push(TraceStep { i: 1, len_x: x1.length(), w: w1, x: x1, relation: None });
        for i in 2..=horizon {
            let prev = steps.last().expect("at least one step");
            let s = letter(i);
            let out = self.coset_step(t, &prev.w, s, &prev.x)?;
            let w = self.mul_gen(&prev.w, s)?;
            steps.push(TraceStep {
                i,
                w,
                len_x: out.x_next.length(),
                x: out.x_next,
                relation: Some(out.relation),
            });
        }

        let x_limit = steps.last().expect("horizon >= 1").x.clone();
        let candidate_n = steps
            .iter()
            .rposition(|st| st.x != x_limit)
            .map_or(1, |last_differs| last_differs + 2);

        let recurred = ray.periodic_shape().is_some_and(|(prefix_len, period_len)| {
            let mut seen = HashSet::new();
            steps
                .get(candidate_n.max(prefix_len + 1) - 1..)
                .unwrap_or_default()
                .iter()
                .any(|st| !seen.insert((st.x.clone(), (st.i - prefix_len - 1) % period_len)))
        });
        let reason = if recurred { Certification::PhaseRecurrence } else { Certification::HorizonOnly };

        Ok(TraceReport {
            subset: t,
            horizon,
            steps,
            stabilization: Stabilization { candidate_n, certified: recurred, reason },
            x_limit,
            memberships: Vec::new(),
        })
    }

    /// Runs [`stabilize`](Self::stabilize) under the hypothesis of the
    /// minimality theorem and records, for each i ≥ n, whether
    /// (s0·x·w_i)⁻¹ ∈ W^{s0} and (t0·s0·x·w_i)⁻¹ ∈ W^{t0}.
    pub fn theorem_trace(
        &self,
        ray: &RaySpec,
        t: GenSet,
        s0: usize,
        t0: usize,
        horizon: usize,
    ) -> Result<TraceReport> {
        self.check_genset(t)?;
        self.check_generator(s0)?;
        self.check_generator(t0)?;
        let hyp = self.matrix().hypothesis_check(t, s0);
        if !hyp.ok {
            return Err(CoxeterError::HypothesisFailed(format!(
                "T = {:?} with s0 = {s0} is not a maximal spherical subset with m(s0,t) >= 3 on T and an infinite entry",
                t.to_vec()
            )));
        }
        if !hyp.witnesses.contains(&t0) {
            return Err(CoxeterError::HypothesisFailed(format!("m(s0,t0) is finite for t0 = {t0}")));
        }
        let mut report = self.stabilize(t, ray, horizon)?;
        let x = report.x_limit.clone();
        let s0_set = GenSet::singleton(s0);
        let t0_set = GenSet::singleton(t0);
        let mut memberships = Vec::new();
        for step in &report.steps[report.stabilization.candidate_n - 1..] {
            let xw = self.multiply(&x, &step.w)?;
            let s0xw = self.gen_mul(s0, &xw)?;
            let t0s0xw = self.gen_mul(t0, &s0xw)?;
            memberships.push(Membership {
                i: step.i,
                s0_check: self.in_descent_class(&self.inverse(&s0xw)?, s0_set)?,
                t0_check: self.in_descent_class(&self.inverse(&t0s0xw)?, t0_set)?,
            });
        }
        report.memberships = memberships;
        Ok(report)
    }

    /// Descent sets of x·w_i along the stable tail of a trace.
    pub fn descent_saturation(&self, report: &TraceReport) -> Result<Vec<SaturationCheck>> {
        let t = report.subset;
        report.steps[report.stabilization.candidate_n - 1..]
            .iter()
            .map(|step| {
                let xw = self.multiply(&report.x_limit, &step.w)?;
                let left = self.left_descents(&xw)?;
                let inverse_right = self.right_descents(&self.inverse(&xw)?)?;
                Ok(SaturationCheck {
                    i: step.i,
                    contains_subset: t.is_subset(left),
                    equals_subset: inverse_right == t,
                })
            })
            .collect()
    }
}
