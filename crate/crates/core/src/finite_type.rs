//! Sphericity of generator subsets via the finite Coxeter diagram catalogue.

use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::matrix::{CoxeterMatrix, Order};
use crate::word::GenSet;

/// Type of a connected Coxeter diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeLabel {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
    /// Matches no entry of the finite catalogue.
    Infinite,
}

impl TypeLabel {
    /// Group order of the finite type, `None` for [`TypeLabel::Infinite`].
    pub fn group_order(self) -> Option<BigUint> {
        let factorial = |k: usize| (1..=k as u64).map(BigUint::from).product::<BigUint>();
        let pow2 = |k: usize| BigUint::from(1u8) << k;
        Some(match self {
            TypeLabel::A(k) => factorial(k + 1),
            TypeLabel::B(k) => pow2(k) * factorial(k),
            TypeLabel::D(k) => pow2(k - 1) * factorial(k),
            TypeLabel::E6 => BigUint::from(51_840u32),
            TypeLabel::E7 => BigUint::from(2_903_040u32),
            TypeLabel::E8 => BigUint::from(696_729_600u32),
            TypeLabel::F4 => BigUint::from(1_152u32),
            TypeLabel::H3 => BigUint::from(120u32),
            TypeLabel::H4 => BigUint::from(14_400u32),
            TypeLabel::I2(m) => BigUint::from(2 * u64::from(m)),
            TypeLabel::Infinite => return None,
        })
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::A(k) => write!(f, "A{k}"),
            TypeLabel::B(k) => write!(f, "B{k}"),
            TypeLabel::D(k) => write!(f, "D{k}"),
            TypeLabel::E6 => f.write_str("E6"),
            TypeLabel::E7 => f.write_str("E7"),
            TypeLabel::E8 => f.write_str("E8"),
            TypeLabel::F4 => f.write_str("F4"),
            TypeLabel::H3 => f.write_str("H3"),
            TypeLabel::H4 => f.write_str("H4"),
            TypeLabel::I2(m) => write!(f, "I2({m})"),
            TypeLabel::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Order of a group: a positive integer or infinity. Serialized as a JSON
/// number when it fits in 64 bits, a decimal string otherwise, and `"inf"`
/// for infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(BigUint),
    Infinite,
}

impl GroupOrder {
    pub fn to_u64(&self) -> Option<u64> {
        match self {
            GroupOrder::Finite(n) => u64::try_from(n).ok(),
            GroupOrder::Infinite => None,
        }
    }
}

impl Serialize for GroupOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            GroupOrder::Finite(n) => match u64::try_from(n) {
                Ok(small) => serializer.serialize_u64(small),
                Err(_) => serializer.collect_str(n),
            },
            GroupOrder::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub members: GenSet,
    pub label: TypeLabel,
}

/// Outcome of [`CoxeterMatrix::classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalVerdict {
    pub spherical: bool,
    pub components: Vec<Component>,
    pub order: GroupOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub ok: bool,
    /// Every t0 ∈ T with m(s0,t0) = ∞.
    pub witnesses: Vec<usize>,
}

impl CoxeterMatrix {
    /// Decomposes the diagram on `t` into connected components (edges are
    /// pairs with m ≥ 3) and labels each against the finite-type catalogue.
    pub fn classify(&self, t: GenSet) -> SphericalVerdict {
        let components: Vec<Component> = self
            .diagram_components(t)
            .into_iter()
            .map(|members| Component { members, label: self.label_component(members) })
            .collect();
        let spherical = components.iter().all(|c| c.label != TypeLabel::Infinite);
        let order = if spherical {
            GroupOrder::Finite(
                components
                    .iter()
                    .filter_map(|c| c.label.group_order())
                    .product(),
            )
        } else {
            GroupOrder::Infinite
        };
        SphericalVerdict { spherical, components, order }
    }

    pub fn is_spherical(&self, t: GenSet) -> bool {
        self.diagram_components(t)
            .into_iter()
            .all(|c| self.label_component(c) != TypeLabel::Infinite)
    }

    /// All spherical subsets with no spherical strict superset, sorted by
    /// their member lists.
    pub fn maximal_spherical_subsets(&self) -> Vec<GenSet> {
        let mut spherical = Vec::new();
        self.collect_spherical(GenSet::EMPTY, 0, &mut spherical);
        let mut maximal: Vec<GenSet> = spherical
            .into_iter()
            .filter(|&t| {
                (0..self.rank())
                    .filter(|&s| !t.contains(s))
                    .all(|s| !self.is_spherical(t.with(s)))
            })
            .collect();
        maximal.sort_by_key(|t| t.to_vec());
        maximal
    }

    // Spherical subsets are closed under taking subsets, so extending in
    // index order and pruning at the first non-spherical set visits them all.
    fn collect_spherical(&self, base: GenSet, from: usize, out: &mut Vec<GenSet>) {
        out.push(base);
        for s in from..self.rank() {
            let next = base.with(s);
            if self.is_spherical(next) {
                self.collect_spherical(next, s + 1, out);
            }
        }
    }

    /// Checks the hypothesis of the minimality theorem for (T, s0).
    pub fn hypothesis_check(&self, t: GenSet, s0: usize) -> HypothesisCheck {
        if s0 >= self.rank() || !t.is_subset(GenSet::full(self.rank())) {
            return HypothesisCheck { ok: false, witnesses: Vec::new() };
        }
        let witnesses: Vec<usize> = t.iter().filter(|&u| self.order(s0, u).is_infinite()).collect();
        let ok = !witnesses.is_empty()
            && t.iter().all(|u| self.order(s0, u).at_least(3))
            && self.is_spherical(t)
            && self.maximal_spherical_subsets().contains(&t);
        HypothesisCheck { ok, witnesses }
    }

    fn is_edge(&self, s: usize, t: usize) -> bool {
        s != t && self.order(s, t).at_least(3)
    }

    fn diagram_components(&self, t: GenSet) -> Vec<GenSet> {
        let mut remaining = t;
        let mut out = Vec::new();
        while let Some(root) = remaining.iter().next() {
            let mut component = GenSet::singleton(root);
            let mut stack = vec![root];
            while let Some(s) = stack.pop() {
                for u in remaining.iter() {
                    if !component.contains(u) && self.is_edge(s, u) {
                        component.insert(u);
                        stack.push(u);
                    }
                }
            }
            remaining = GenSet::from_bits(remaining.bits() & !component.bits());
            out.push(component);
        }
        out
    }

    fn label_component(&self, members: GenSet) -> TypeLabel {
        let verts = members.to_vec();
        let k = verts.len();
        if k == 1 {
            return TypeLabel::A(1);
        }
        let mut edges = Vec::new();
        for (i, &s) in verts.iter().enumerate() {
            for &u in &verts[i + 1..] {
                if self.is_edge(s, u) {
                    edges.push((s, u, self.order(s, u)));
                }
            }
        }
        if edges.iter().any(|e| e.2.is_infinite()) || edges.len() != k - 1 {
            return TypeLabel::Infinite;
        }
        let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
        if verts.iter().any(|&v| degree(v) > 3) {
            return TypeLabel::Infinite;
        }
        if k == 2 {
            return match edges[0].2 {
                Order::Finite(3) => TypeLabel::A(2),
                Order::Finite(4) => TypeLabel::B(2),
                Order::Finite(m) => TypeLabel::I2(m),
                Order::Infinite => TypeLabel::Infinite,
            };
        }
        let heavy: Vec<_> = edges.iter().filter(|e| e.2 != Order::Finite(3)).collect();
        let branches: Vec<usize> = verts.iter().copied().filter(|&v| degree(v) == 3).collect();
        match (heavy.as_slice(), branches.as_slice()) {
            ([], []) => TypeLabel::A(k),
            ([], &[center]) => {
                let mut arms: Vec<usize> = verts
                    .iter()
                    .copied()
                    .filter(|&v| v != center && self.is_edge(center, v))
                    .map(|first| self.arm_length(center, first, members))
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => TypeLabel::D(k),
                    [1, 2, 2] => TypeLabel::E6,
                    [1, 2, 3] => TypeLabel::E7,
                    [1, 2, 4] => TypeLabel::E8,
                    _ => TypeLabel::Infinite,
                }
            }
            ([&(s, u, label)], []) => {
                let at_end = degree(s) == 1 || degree(u) == 1;
                match (label, at_end, k) {
                    (Order::Finite(4), true, _) => TypeLabel::B(k),
                    (Order::Finite(4), false, 4) => TypeLabel::F4,
                    (Order::Finite(5), true, 3) => TypeLabel::H3,
                    (Order::Finite(5), true, 4) => TypeLabel::H4,
                    _ => TypeLabel::Infinite,
                }
            }
            _ => TypeLabel::Infinite,
        }
    }

    /// Number of vertices on the arm leaving `center` through `first`.
    fn arm_length(&self, center: usize, first: usize, members: GenSet) -> usize {
        let (mut prev, mut cur, mut len) = (center, first, 1);
        loop {
            let next = members
                .iter()
                .find(|&v| v != prev && v != cur && self.is_edge(cur, v));
            match next {
                Some(v) => {
                    prev = cur;
                    cur = v;
                    len += 1;
                }
                None => return len,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{self, linear_matrix};

    fn set(s: &[usize]) -> GenSet {
        s.iter().copied().collect()
    }

    fn label_of(m: &CoxeterMatrix) -> TypeLabel {
        let v = m.classify(GenSet::full(m.rank()));
        assert_eq!(v.components.len(), 1);
        v.components[0].label
    }

    /// Matrix from an edge list over `n` vertices; unlisted pairs commute.
    fn diagram(n: usize, edges: &[(usize, usize, u32)]) -> CoxeterMatrix {
        let mut rows = vec![vec![Order::Finite(2); n]; n];
        for (s, row) in rows.iter_mut().enumerate() {
            row[s] = Order::Finite(1);
        }
        for &(s, t, m) in edges {
            let o = if m == 0 { Order::Infinite } else { Order::Finite(m) };
            rows[s][t] = o;
            rows[t][s] = o;
        }
        CoxeterMatrix::new(rows).unwrap()
    }

    #[test]
    fn empty_subset_is_trivial() {
        let v = presets::g1_matrix().classify(GenSet::EMPTY);
        assert!(v.spherical);
        assert!(v.components.is_empty());
        assert_eq!(v.order.to_u64(), Some(1));
    }

    #[test]
    fn g1_commuting_pair() {
        let v = presets::g1_matrix().classify(set(&[1, 2]));
        assert!(v.spherical);
        assert_eq!(
            v.components,
            vec![
                Component { members: set(&[1]), label: TypeLabel::A(1) },
                Component { members: set(&[2]), label: TypeLabel::A(1) },
            ]
        );
        assert_eq!(v.order.to_u64(), Some(4));
    }

    #[test]
    fn affine_triangle_is_infinite() {
        let v = presets::tilde_a2_matrix().classify(set(&[0, 1, 2]));
        assert!(!v.spherical);
        assert_eq!(v.order, GroupOrder::Infinite);
    }

    #[test]
    fn is_spherical_examples() {
        let g1 = presets::g1_matrix();
        assert!(g1.is_spherical(set(&[0])));
        assert!(!g1.is_spherical(set(&[0, 1])));
        assert!(g1.is_spherical(set(&[0, 2])));
    }

    #[test]
    fn catalogue_labels() {
        assert_eq!(label_of(&presets::a_matrix(5)), TypeLabel::A(5));
        assert_eq!(label_of(&presets::b_matrix(4)), TypeLabel::B(4));
        assert_eq!(label_of(&linear_matrix(&[3, 4])), TypeLabel::B(3));
        assert_eq!(label_of(&linear_matrix(&[3, 4, 3])), TypeLabel::F4);
        assert_eq!(label_of(&linear_matrix(&[5, 3])), TypeLabel::H3);
        assert_eq!(label_of(&linear_matrix(&[3, 5])), TypeLabel::H3);
        assert_eq!(label_of(&linear_matrix(&[5, 3, 3])), TypeLabel::H4);
        assert_eq!(label_of(&linear_matrix(&[4])), TypeLabel::B(2));
        assert_eq!(label_of(&linear_matrix(&[5])), TypeLabel::I2(5));
        assert_eq!(label_of(&linear_matrix(&[6])), TypeLabel::I2(6));
        assert_eq!(label_of(&linear_matrix(&[0])), TypeLabel::Infinite);
        // D4: star with three arms of length 1
        assert_eq!(label_of(&diagram(4, &[(0, 1, 3), (0, 2, 3), (0, 3, 3)])), TypeLabel::D(4));
        let d5 = diagram(5, &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (2, 4, 3)]);
        assert_eq!(label_of(&d5), TypeLabel::D(5));
        let e6 = diagram(6, &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (2, 5, 3)]);
        assert_eq!(label_of(&e6), TypeLabel::E6);
        let e7 = diagram(7, &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (2, 6, 3)]);
        assert_eq!(label_of(&e7), TypeLabel::E7);
        let e8 = diagram(
            8,
            &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (2, 7, 3)],
        );
        assert_eq!(label_of(&e8), TypeLabel::E8);
    }

    #[test]
    fn non_catalogue_diagrams() {
        // affine types and beyond
        assert_eq!(label_of(&linear_matrix(&[4, 3, 4])), TypeLabel::Infinite); // C~3
        assert_eq!(label_of(&linear_matrix(&[4, 4])), TypeLabel::Infinite);
        assert_eq!(label_of(&linear_matrix(&[5, 3, 3, 3])), TypeLabel::Infinite);
        assert_eq!(label_of(&linear_matrix(&[3, 5, 3])), TypeLabel::Infinite);
        assert_eq!(label_of(&linear_matrix(&[6, 3])), TypeLabel::Infinite); // G~2
        assert_eq!(label_of(&linear_matrix(&[3, 4, 3, 3])), TypeLabel::Infinite); // F~4
        let d4_tilde = diagram(5, &[(0, 1, 3), (0, 2, 3), (0, 3, 3), (0, 4, 3)]);
        assert_eq!(label_of(&d4_tilde), TypeLabel::Infinite);
        let e6_tilde = diagram(7, &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (2, 5, 3), (5, 6, 3)]);
        assert_eq!(label_of(&e6_tilde), TypeLabel::Infinite);
        let two_branches = diagram(6, &[(0, 1, 3), (1, 2, 3), (1, 3, 3), (3, 4, 3), (3, 5, 3)]);
        assert_eq!(label_of(&two_branches), TypeLabel::Infinite);
        let branched_b = diagram(4, &[(0, 1, 4), (1, 2, 3), (1, 3, 3)]);
        assert_eq!(label_of(&branched_b), TypeLabel::Infinite);
    }

    #[test]
    fn catalogue_orders() {
        let order = |l: TypeLabel| l.group_order().map(|n| u64::try_from(n).unwrap());
        assert_eq!(order(TypeLabel::A(1)), Some(2));
        assert_eq!(order(TypeLabel::A(3)), Some(24));
        assert_eq!(order(TypeLabel::B(3)), Some(48));
        assert_eq!(order(TypeLabel::D(4)), Some(192));
        assert_eq!(order(TypeLabel::I2(7)), Some(14));
        assert_eq!(order(TypeLabel::E8), Some(696_729_600));
        assert_eq!(order(TypeLabel::Infinite), None);
    }

    #[test]
    fn maximal_spherical() {
        assert_eq!(presets::a_matrix(2).maximal_spherical_subsets(), vec![set(&[0, 1])]);
        assert_eq!(
            presets::g1_matrix().maximal_spherical_subsets(),
            vec![set(&[0, 2]), set(&[1, 2])]
        );
        assert_eq!(
            presets::i2_matrix(Order::Infinite).maximal_spherical_subsets(),
            vec![set(&[0]), set(&[1])]
        );
        let empty = CoxeterMatrix::new(vec![]).unwrap();
        assert_eq!(empty.maximal_spherical_subsets(), vec![GenSet::EMPTY]);
    }

    #[test]
    fn hypothesis() {
        let g1 = presets::g1_matrix();
        assert_eq!(
            g1.hypothesis_check(set(&[1, 2]), 0),
            HypothesisCheck { ok: true, witnesses: vec![1] }
        );
        assert!(!g1.hypothesis_check(set(&[0, 2]), 1).ok);
        let a2 = presets::a_matrix(2);
        for s0 in 0..2 {
            assert!(!a2.hypothesis_check(set(&[0, 1]), s0).ok);
        }
    }

    #[test]
    fn verdict_json() {
        let v = presets::g1_matrix().classify(set(&[1, 2]));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["order"], 4);
        assert_eq!(json["spherical"], true);
        assert_eq!(json["components"][0]["label"], "A1");
        let inf = presets::tilde_a2_matrix().classify(GenSet::full(3));
        assert_eq!(serde_json::to_value(&inf).unwrap()["order"], "inf");
    }
}
