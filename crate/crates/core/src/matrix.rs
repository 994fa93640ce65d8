//! Coxeter matrices.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::MatrixError;
use crate::word::MAX_RANK;

/// Order m(s,t) of a product of two generators.
///
/// Serialized as an integer, or as the string `"inf"` for [`Order::Infinite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Order::Infinite
    }

    /// `m >= k`, with infinity above every integer.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Order::Finite(m) => m >= k,
            Order::Infinite => true,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(m) => serializer.serialize_u32(*m),
            Order::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct OrderVisitor;

        impl Visitor<'_> for OrderVisitor {
            type Value = Order;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Order, E> {
                u32::try_from(v)
                    .map(Order::Finite)
                    .map_err(|_| E::custom(format!("order {v} is too large")))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Order, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom(format!("order {v} is negative")))
                    .and_then(|v| self.visit_u64(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Order, E> {
                match v {
                    "inf" => Ok(Order::Infinite),
                    other => Err(E::custom(format!("expected \"inf\", got {other:?}"))),
                }
            }
        }

        deserializer.deserialize_any(OrderVisitor)
    }
}

/// The function m: S×S → {1, 2, …, ∞} defining a Coxeter system.
///
/// Construction goes through [`CoxeterMatrix::new`], which enforces symmetry,
/// ones on the diagonal, and off-diagonal entries of at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    orders: Vec<Order>,
}

impl CoxeterMatrix {
    pub fn new(raw: Vec<Vec<Order>>) -> Result<Self, MatrixError> {
        let rank = raw.len();
        if rank > MAX_RANK {
            return Err(MatrixError::TooManyGenerators(rank));
        }
        for (row, entries) in raw.iter().enumerate() {
            if entries.len() != rank {
                return Err(MatrixError::NotSquare {
                    row,
                    len: entries.len(),
                    expected: rank,
                });
            }
        }
        for (s, row) in raw.iter().enumerate() {
            if row[s] != Order::Finite(1) {
                return Err(MatrixError::DiagonalNotOne(s));
            }
        }
        #[allow(clippy::needless_range_loop)]
        for s in 0..rank {
            for t in s + 1..rank {
                if raw[s][t] != raw[t][s] {
                    return Err(MatrixError::AsymmetricEntry(s, t));
                }
                if !raw[s][t].at_least(2) {
                    return Err(MatrixError::OffDiagonalBelowTwo(s, t));
                }
            }
        }
        Ok(CoxeterMatrix {
            rank,
            orders: raw.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from integers, with 0 standing for ∞.
    pub fn from_ints(raw: &[&[u32]]) -> Result<Self, MatrixError> {
        Self::new(
            raw.iter()
                .map(|row| {
                    row.iter()
                        .map(|&m| if m == 0 { Order::Infinite } else { Order::Finite(m) })
                        .collect()
                })
                .collect(),
        )
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self, s: usize, t: usize) -> Order {
        self.orders[s * self.rank + t]
    }

    pub fn rows(&self) -> Vec<Vec<Order>> {
        self.orders.chunks(self.rank.max(1)).take(self.rank).map(<[Order]>::to_vec).collect()
    }

    /// The Coxeter matrix of the parabolic subgroup on `gens`, reindexed
    /// `0..gens.len()` in the given order.
    pub fn restrict(&self, gens: &[usize]) -> CoxeterMatrix {
        CoxeterMatrix {
            rank: gens.len(),
            orders: gens
                .iter()
                .flat_map(|&s| gens.iter().map(move |&t| (s, t)))
                .map(|(s, t)| self.order(s, t))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator() {
        let m = CoxeterMatrix::from_ints(&[&[1]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn dihedral_six() {
        let m = CoxeterMatrix::from_ints(&[&[1, 3], &[3, 1]]).unwrap();
        assert_eq!(m.order(0, 1), Order::Finite(3));
    }

    #[test]
    fn rejects_asymmetry() {
        assert_eq!(
            CoxeterMatrix::from_ints(&[&[1, 2], &[3, 1]]),
            Err(MatrixError::AsymmetricEntry(0, 1))
        );
    }

    #[test]
    fn rejects_bad_diagonal_and_small_entries() {
        assert_eq!(
            CoxeterMatrix::from_ints(&[&[1, 2], &[2, 2]]),
            Err(MatrixError::DiagonalNotOne(1))
        );
        assert_eq!(
            CoxeterMatrix::from_ints(&[&[1, 1], &[1, 1]]),
            Err(MatrixError::OffDiagonalBelowTwo(0, 1))
        );
        assert!(matches!(
            CoxeterMatrix::from_ints(&[&[1, 2], &[2]]),
            Err(MatrixError::NotSquare { row: 1, .. })
        ));
    }

    #[test]
    fn order_json() {
        let raw: Vec<Vec<Order>> = serde_json::from_str(r#"[[1,"inf"],["inf",1]]"#).unwrap();
        assert_eq!(raw[0][1], Order::Infinite);
        assert_eq!(serde_json::to_string(&raw).unwrap(), r#"[[1,"inf"],["inf",1]]"#);
        assert!(serde_json::from_str::<Order>(r#""infinity""#).is_err());
        assert!(serde_json::from_str::<Order>("-3").is_err());
    }

    #[test]
    fn restrict_reindexes() {
        let m = CoxeterMatrix::from_ints(&[&[1, 0, 3], &[0, 1, 2], &[3, 2, 1]]).unwrap();
        let sub = m.restrict(&[2, 0]);
        assert_eq!(sub.rank(), 2);
        assert_eq!(sub.order(0, 1), Order::Finite(3));
        assert_eq!(sub.order(1, 1), Order::Finite(1));
    }
}
