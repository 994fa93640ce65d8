//! Named Coxeter systems used throughout the tests and the CLI.

use crate::matrix::{CoxeterMatrix, Order};
use crate::system::CoxeterSystem;

/// Linear diagram with the given edge labels (0 for ∞); unlisted pairs commute.
pub fn linear_matrix(edges: &[u32]) -> CoxeterMatrix {
    let n = edges.len() + 1;
    let mut rows = vec![vec![Order::Finite(2); n]; n];
    for (s, row) in rows.iter_mut().enumerate() {
        row[s] = Order::Finite(1);
    }
    for (i, &m) in edges.iter().enumerate() {
        let order = if m == 0 { Order::Infinite } else { Order::Finite(m) };
        rows[i][i + 1] = order;
        rows[i + 1][i] = order;
    }
    CoxeterMatrix::new(rows).expect("linear diagram is a valid Coxeter matrix")
}

/// Type A_n.
pub fn a_matrix(n: usize) -> CoxeterMatrix {
    assert!(n >= 1);
    linear_matrix(&vec![3; n - 1])
}

/// Type B_n, with the label 4 on the first edge.
pub fn b_matrix(n: usize) -> CoxeterMatrix {
    assert!(n >= 2);
    let mut edges = vec![3; n - 1];
    edges[0] = 4;
    linear_matrix(&edges)
}

/// Dihedral system of order 2m; `Order::Infinite` gives the infinite dihedral group.
pub fn i2_matrix(m: Order) -> CoxeterMatrix {
    CoxeterMatrix::new(vec![vec![Order::Finite(1), m], vec![m, Order::Finite(1)]])
        .expect("dihedral matrix is valid")
}

/// Affine Ã2: the triangle with every label 3.
pub fn tilde_a2_matrix() -> CoxeterMatrix {
    CoxeterMatrix::from_ints(&[&[1, 3, 3], &[3, 1, 3], &[3, 3, 1]]).expect("valid")
}

/// Generators s0, t0, t1 with m(s0,t0) = ∞, m(s0,t1) = 3, m(t0,t1) = 2.
pub fn g1_matrix() -> CoxeterMatrix {
    CoxeterMatrix::from_ints(&[&[1, 0, 3], &[0, 1, 2], &[3, 2, 1]]).expect("valid")
}

pub fn a2() -> CoxeterSystem {
    CoxeterSystem::new(a_matrix(2))
}

pub fn a3() -> CoxeterSystem {
    CoxeterSystem::new(a_matrix(3))
}

pub fn b3() -> CoxeterSystem {
    CoxeterSystem::new(b_matrix(3))
}

pub fn h3() -> CoxeterSystem {
    CoxeterSystem::new(linear_matrix(&[5, 3]))
}

pub fn i2(m: u32) -> CoxeterSystem {
    CoxeterSystem::new(i2_matrix(Order::Finite(m)))
}

pub fn infinite_dihedral() -> CoxeterSystem {
    CoxeterSystem::new(i2_matrix(Order::Infinite))
}

pub fn tilde_a2() -> CoxeterSystem {
    CoxeterSystem::new(tilde_a2_matrix())
}

pub fn g1() -> CoxeterSystem {
    CoxeterSystem::new(g1_matrix())
}
