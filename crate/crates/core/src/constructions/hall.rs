//! Hall relations on `{1,…,n}` as Boolean matrices.

use std::collections::HashMap;

use serde_json::json;

use super::{ConstructionError, DEFAULT_MAX_CARRIER};
use crate::algebra::FiniteAlgebra;

/// An `n×n` Boolean matrix packed row-major into an integer whose most
/// significant used bit is entry `(0,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolMatrix {
    n: usize,
    bits: u32,
}

impl BoolMatrix {
    pub fn from_bits(n: usize, bits: u32) -> BoolMatrix {
        assert!(n * n <= 32 && (n * n == 32 || bits >> (n * n) == 0));
        BoolMatrix { n, bits }
    }

    pub fn from_rows(rows: &[&[u8]]) -> BoolMatrix {
        let n = rows.len();
        let mut m = BoolMatrix { n, bits: 0 };
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn shift(&self, i: usize, j: usize) -> usize {
        self.n * self.n - 1 - (i * self.n + j)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits >> self.shift(i, j) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize, v: bool) {
        let s = self.shift(i, j);
        self.bits = (self.bits & !(1 << s)) | (u32::from(v) << s);
    }

    pub fn union(&self, other: &BoolMatrix) -> BoolMatrix {
        BoolMatrix {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    /// Relational composition: first `self`, then `other`.
    pub fn product(&self, other: &BoolMatrix) -> BoolMatrix {
        let mut out = BoolMatrix { n: self.n, bits: 0 };
        for i in 0..self.n {
            for j in 0..self.n {
                let v = (0..self.n).any(|k| self.get(i, k) && other.get(k, j));
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut out = BoolMatrix { n: self.n, bits: 0 };
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Boolean permanent: whether some permutation matrix lies below `self`.
    pub fn permanent(&self) -> bool {
        fn go(m: &BoolMatrix, row: usize, used: u32) -> bool {
            row == m.n
                || (0..m.n).any(|j| used >> j & 1 == 0 && m.get(row, j) && go(m, row + 1, used | 1 << j))
        }
        go(self, 0, 0)
    }

    /// Rows separated by `;`, e.g. `[10;01]`.
    pub fn label(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect();
        format!("[{}]", rows.join(";"))
    }
}

/// `(H(X_n), ∪, ·)`, plus transposition when `with_star`.
pub fn hall_semiring(n: usize, with_star: bool) -> Result<FiniteAlgebra, ConstructionError> {
    hall_semiring_with_budget(n, with_star, DEFAULT_MAX_CARRIER)
}

pub fn hall_semiring_with_budget(
    n: usize,
    with_star: bool,
    max_carrier: usize,
) -> Result<FiniteAlgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::BadParameter("n must be at least 1".into()));
    }
    if n > 4 {
        return Err(ConstructionError::CarrierTooLarge {
            what: format!("H(X_{n})"),
            size: 1u128 << (n * n).min(127),
            budget: max_carrier as u128,
        });
    }
    let carrier: Vec<BoolMatrix> = (0..1u32 << (n * n))
        .map(|bits| BoolMatrix::from_bits(n, bits))
        .filter(BoolMatrix::permanent)
        .collect();
    if carrier.len() > max_carrier {
        return Err(ConstructionError::CarrierTooLarge {
            what: format!("H(X_{n})"),
            size: carrier.len() as u128,
            budget: max_carrier as u128,
        });
    }
    let index: HashMap<BoolMatrix, u32> = carrier
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i as u32))
        .collect();
    let lookup = |m: BoolMatrix, op: &str| {
        index
            .get(&m)
            .copied()
            .ok_or_else(|| ConstructionError::NotClosed(format!("{op} gives {}", m.label())))
    };
    let size = carrier.len();
    let mut mul = Vec::with_capacity(size * size);
    let mut add = Vec::with_capacity(size * size);
    for a in &carrier {
        for b in &carrier {
            mul.push(lookup(a.product(b), "product")?);
            add.push(lookup(a.union(b), "union")?);
        }
    }
    let star = if with_star {
        Some(
            carrier
                .iter()
                .map(|m| lookup(m.transpose(), "transpose"))
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };
    let labels = carrier.iter().map(BoolMatrix::label).collect();
    Ok(FiniteAlgebra::new(labels, mul, Some(add), star)?
        .with_meta(json!({"construction": "hall", "n": n, "star": with_star})))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;

    fn brute_count(n: usize) -> usize {
        // Oracle: a matrix is Hall iff it dominates one of the n! permutation matrices.
        let perms: Vec<Vec<usize>> = match n {
            1 => vec![vec![0]],
            2 => vec![vec![0, 1], vec![1, 0]],
            3 => vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ],
            _ => unreachable!(),
        };
        (0..1u32 << (n * n))
            .filter(|&bits| {
                perms.iter().any(|p| {
                    (0..n).all(|i| bits >> (n * n - 1 - (i * n + p[i])) & 1 == 1)
                })
            })
            .count()
    }

    #[test]
    fn sizes_match_oracle() {
        assert_eq!(hall_semiring(1, false).unwrap().size(), 1);
        assert_eq!(brute_count(2), 7);
        assert_eq!(hall_semiring(2, false).unwrap().size(), brute_count(2));
        assert_eq!(hall_semiring(3, false).unwrap().size(), brute_count(3));
    }

    #[test]
    fn order_is_ascending_bits() {
        let h = hall_semiring(2, true).unwrap();
        let expected = ["[01;10]", "[01;11]", "[10;01]", "[10;11]", "[11;01]", "[11;10]", "[11;11]"];
        assert_eq!(h.labels(), expected);
        assert_eq!(validate(&h), Ok(()));
    }

    #[test]
    fn validators_pass() {
        for n in 1..=3 {
            assert_eq!(validate(&hall_semiring(n, true).unwrap()), Ok(()));
        }
    }

    #[test]
    fn four_exceeds_default_budget() {
        assert!(matches!(
            hall_semiring(4, false),
            Err(ConstructionError::CarrierTooLarge { .. })
        ));
    }

    #[test]
    fn matrix_ops() {
        let a = BoolMatrix::from_rows(&[&[0, 1], &[1, 1]]);
        let b = BoolMatrix::from_rows(&[&[1, 1], &[1, 0]]);
        assert_eq!(a.product(&b), BoolMatrix::from_rows(&[&[1, 0], &[1, 1]]));
        assert_eq!(a.transpose(), a);
        assert_eq!(b.bits(), 0b1110);
        assert!(!BoolMatrix::from_rows(&[&[1, 1], &[0, 0]]).permanent());
    }
}
