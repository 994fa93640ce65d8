//! Longest parabolic-coset representatives and their evolution along a word.

use serde::Serialize;

use crate::error::{CoxeterError, Result};
use crate::system::CoxeterSystem;
use crate::word::{Element, GenSet};

/// The longest element `v = x·w` of the coset W_T·w, split as `x ∈ W_T` and
/// the base `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetLongest {
    pub x: Element,
    pub v: Element,
    pub base: Element,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepRelation {
    Unchanged,
    /// Position of the removed letter in the canonical word of the previous x.
    DeletedLetter(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepOutcome {
    pub x_next: Element,
    pub relation: StepRelation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ws0Verdict {
    pub hypothesis_ok: bool,
    pub conclusion_ok: bool,
}

impl CoxeterSystem {
    fn require_spherical(&self, t: GenSet) -> Result<()> {
        self.check_genset(t)?;
        if self.matrix().is_spherical(t) {
            Ok(())
        } else {
            Err(CoxeterError::NonSphericalSubset(t.to_vec()))
        }
    }

    /// Longest element of W_T·w by greedy ascent: multiply on the left by
    /// the first t ∈ T (in index order) that lengthens v, and start over.
    pub fn longest_in_coset(&self, t: GenSet, w: &Element) -> Result<CosetLongest> {
        self.longest_in_coset_ordered(&t.to_vec(), w)
    }

    /// Greedy ascent trying the generators of T in the given order.
    pub fn longest_in_coset_ordered(&self, order: &[usize], w: &Element) -> Result<CosetLongest> {
        let t: GenSet = order.iter().copied().collect();
        self.require_spherical(t)?;
        let mut v = w.clone();
        'ascend: loop {
            for &u in order {
                let longer = self.gen_mul(u, &v)?;
                if longer.length() > v.length() {
                    v = longer;
                    continue 'ascend;
                }
            }
            break;
        }
        let x = self.multiply(&v, &self.inverse(w)?)?;
        Ok(CosetLongest { x, v, base: w.clone() })
    }

    /// Whether `x·w` is the longest element of W_T·w.
    pub fn is_longest_representative(&self, t: GenSet, w: &Element, x: &Element) -> Result<bool> {
        if !self.in_parabolic(x, t) {
            return Ok(false);
        }
        let v = self.multiply(x, w)?;
        if v.length() != x.length() + w.length() {
            return Ok(false);
        }
        for u in t.iter() {
            if self.gen_mul(u, &v)?.length() > v.length() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Given the representative `x` for (T, w) and an ascent `s` of `w`,
    /// returns the representative for (T, w·s). It is either `x` itself or
    /// `x` with one letter of its canonical word removed.
    pub fn coset_step(&self, t: GenSet, w: &Element, s: usize, x: &Element) -> Result<StepOutcome> {
        self.require_spherical(t)?;
        let ws = self.mul_gen(w, s)?;
        if ws.length() < w.length() {
            return Err(CoxeterError::LengthDecreases(s));
        }
        if !self.is_longest_representative(t, w, x)? {
            return Err(CoxeterError::StaleRepresentative);
        }
        let xw = self.multiply(x, w)?;
        let xws = self.mul_gen(&xw, s)?;
        if xws.length() > xw.length() {
            return Ok(StepOutcome { x_next: x.clone(), relation: StepRelation::Unchanged });
        }
        // x·w·s = x̂·w for x̂ = x with one letter deleted
        for i in 0..x.length() {
            let candidate = self.reduce(&x.canonical().without(i))?;
            if self.multiply(&candidate, w)? == xws {
                return Ok(StepOutcome { x_next: candidate, relation: StepRelation::DeletedLetter(i) });
            }
        }
        Err(CoxeterError::NoDeletionFound)
    }

    /// Membership in W^T = { w : S(w) = T }.
    pub fn in_descent_class(&self, w: &Element, t: GenSet) -> Result<bool> {
        Ok(self.right_descents(w)? == t)
    }

    /// Checks that `w·s0 ∈ W^{s0}` whenever m(s0,t) ≥ 3 for all t ∈ S(w) and
    /// m(s0,t0) = ∞ for some t0 ∈ S(w). The membership is reported even when
    /// the hypothesis fails.
    pub fn ws0_check(&self, w: &Element, s0: usize) -> Result<Ws0Verdict> {
        self.check_generator(s0)?;
        let descents = self.right_descents(w)?;
        let m = self.matrix();
        let hypothesis_ok = descents.iter().all(|t| m.order(s0, t).at_least(3))
            && descents.iter().any(|t| m.order(s0, t).is_infinite());
        let conclusion_ok = self.in_descent_class(&self.mul_gen(w, s0)?, GenSet::singleton(s0))?;
        Ok(Ws0Verdict { hypothesis_ok, conclusion_ok })
    }
}
