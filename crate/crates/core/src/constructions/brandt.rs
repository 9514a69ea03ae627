use serde_json::json;

use super::{ConstructionError, Group};
use crate::algebra::FiniteAlgebra;

/// An element of `B_{G,I}` with `I = {0,…,n−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BrandtElement {
    Zero,
    Triple { l: usize, g: usize, r: usize },
}

impl BrandtElement {
    /// Index in the table produced by [`brandt_semigroup`].
    pub fn index(self, group_order: usize, n: usize) -> usize {
        match self {
            BrandtElement::Zero => 0,
            BrandtElement::Triple { l, g, r } => 1 + (l * group_order + g) * n + r,
        }
    }

    pub fn from_index(index: usize, group_order: usize, n: usize) -> BrandtElement {
        if index == 0 {
            return BrandtElement::Zero;
        }
        let i = index - 1;
        BrandtElement::Triple {
            l: i / (group_order * n),
            g: (i / n) % group_order,
            r: i % n,
        }
    }

    pub fn mul(self, other: BrandtElement, group: &Group) -> BrandtElement {
        match (self, other) {
            (
                BrandtElement::Triple { l, g: g1, r: r1 },
                BrandtElement::Triple { l: l2, g: g2, r },
            ) if r1 == l2 => BrandtElement::Triple {
                l,
                g: group.mul(g1, g2),
                r,
            },
            _ => BrandtElement::Zero,
        }
    }
}

/// Convenience for `BrandtElement::Triple(l, g, r).index(..)` with 0-based `l`, `r`.
pub fn brandt_element(group: &Group, n: usize, l: usize, g: usize, r: usize) -> usize {
    BrandtElement::Triple { l, g, r }.index(group.order(), n)
}

/// `B_{G,I}` for `|I| = n`: zero at index 0, then triples `(ℓ,g,r)` in
/// lexicographic order. Labels are 1-based, e.g. `(1,e,2)`.
pub fn brandt_semigroup(group: &Group, n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::BadParameter("index set must be non-empty".into()));
    }
    let order = group.order();
    let size = n * n * order + 1;
    let labels = (0..size)
        .map(|i| match BrandtElement::from_index(i, order, n) {
            BrandtElement::Zero => "0".to_string(),
            BrandtElement::Triple { l, g, r } => {
                format!("({},{},{})", l + 1, group.label(g), r + 1)
            }
        })
        .collect();
    let alg = FiniteAlgebra::from_fn(labels, |a, b| {
        let x = BrandtElement::from_index(a, order, n);
        let y = BrandtElement::from_index(b, order, n);
        x.mul(y, group).index(order, n)
    })?;
    let group_meta = group.algebra().meta().get("group").cloned();
    Ok(alg.with_meta(json!({
        "construction": "brandt",
        "group": group_meta,
        "index_count": n,
    })))
}

/// Element indices of the 6-element Brandt monoid.
pub struct B21;

impl B21 {
    pub const ZERO: usize = 0;
    pub const ONE: usize = 1;
    pub const A: usize = 2;
    pub const B: usize = 3;
    pub const E: usize = 4;
    pub const F: usize = 5;

    /// The 2×2 zero-one matrices, in element order.
    pub const MATRICES: [[[u8; 2]; 2]; 6] = [
        [[0, 0], [0, 0]],
        [[1, 0], [0, 1]],
        [[0, 1], [0, 0]],
        [[0, 0], [1, 0]],
        [[1, 0], [0, 0]],
        [[0, 0], [0, 1]],
    ];
}

fn b21_index(m: [[u8; 2]; 2]) -> usize {
    B21::MATRICES
        .iter()
        .position(|&x| x == m)
        .expect("B21 is closed")
}

/// `B₂¹` with matrix product, Hadamard addition and transposition.
pub fn brandt_monoid_b21() -> FiniteAlgebra {
    let labels: Vec<String> = ["0", "1", "a", "b", "e", "f"].iter().map(|s| s.to_string()).collect();
    let m = |a: usize, b: usize| {
        let (x, y) = (B21::MATRICES[a], B21::MATRICES[b]);
        let mut z = [[0u8; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                z[i][j] = (0..2).map(|k| x[i][k] & y[k][j]).max().unwrap();
            }
        }
        b21_index(z)
    };
    let hadamard = |a: usize, b: usize| {
        let (x, y) = (B21::MATRICES[a], B21::MATRICES[b]);
        b21_index([
            [x[0][0] & y[0][0], x[0][1] & y[0][1]],
            [x[1][0] & y[1][0], x[1][1] & y[1][1]],
        ])
    };
    let transpose = |a: usize| {
        let x = B21::MATRICES[a];
        b21_index([[x[0][0], x[1][0]], [x[0][1], x[1][1]]])
    };
    let add = (0..36).map(|i| hadamard(i / 6, i % 6) as u32).collect();
    let star = (0..6).map(|a| transpose(a) as u32).collect();
    FiniteAlgebra::from_fn(labels, m)
        .and_then(|a| a.with_add(add))
        .and_then(|a| a.with_star(star))
        .expect("B21 tables are well formed")
        .with_meta(json!({"construction": "b21"}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate, Kind};
    use crate::constructions::GroupSpec;

    #[test]
    fn b21_products() {
        let b = brandt_monoid_b21();
        assert_eq!(b.kind(), Kind::InvolutionAiSemiring);
        assert_eq!(b.mul(B21::A, B21::B), B21::E);
        assert_eq!(b.mul(B21::B, B21::A), B21::F);
        assert_eq!(b.mul(B21::A, B21::A), B21::ZERO);
        assert_eq!(b.add(B21::ONE, B21::E), Some(B21::E));
        assert_eq!(b.add(B21::A, B21::B), Some(B21::ZERO));
        for x in 0..6 {
            assert_eq!(b.add(x, x), Some(x));
        }
        assert_eq!(b.star(B21::A), Some(B21::B));
        assert_eq!(b.star(B21::E), Some(B21::E));
        assert_eq!(validate(&b), Ok(()));
    }

    #[test]
    fn brandt_sizes_and_products() {
        let trivial = Group::from_spec(GroupSpec::Cyclic(1)).unwrap();
        let b2 = brandt_semigroup(&trivial, 2).unwrap();
        assert_eq!(b2.size(), 5);
        assert_eq!(validate(&b2), Ok(()));
        let z2 = Group::from_spec(GroupSpec::Cyclic(2)).unwrap();
        let b = brandt_semigroup(&z2, 2).unwrap();
        assert_eq!(b.size(), 9);
        assert_eq!(validate(&b), Ok(()));
        for g in 0..2 {
            for h in 0..2 {
                let x = brandt_element(&z2, 2, 0, g, 1);
                let y = brandt_element(&z2, 2, 0, h, 1);
                assert_eq!(b.mul(x, y), 0);
            }
        }
        let x = brandt_element(&z2, 2, 0, 1, 1);
        let y = brandt_element(&z2, 2, 1, 1, 0);
        assert_eq!(b.mul(x, y), brandt_element(&z2, 2, 0, 0, 0));
        assert_eq!(b.label(x), "(1,g,2)");
    }

    #[test]
    fn diagonal_blocks_are_subgroups() {
        let s3 = Group::from_spec(GroupSpec::Symmetric(3)).unwrap();
        let n = 3;
        let b = brandt_semigroup(&s3, n).unwrap();
        for l in 0..n {
            for r in 0..n {
                let block: Vec<usize> = (0..6).map(|g| brandt_element(&s3, n, l, g, r)).collect();
                for &x in &block {
                    for &y in &block {
                        let p = b.mul(x, y);
                        if l == r {
                            assert!(block.contains(&p));
                        } else {
                            assert_eq!(p, 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn index_round_trip() {
        for i in 0..(3 * 3 * 4 + 1) {
            assert_eq!(BrandtElement::from_index(i, 4, 3).index(4, 3), i);
        }
    }

    #[test]
    fn alternative_stars_on_b21() {
        use crate::algebra::{validate_involution, AxiomViolation, Law, ValidationError};
        let b = brandt_monoid_b21();
        let reduct = b.without_star();
        // Swapping e and f while fixing a and b is X ↦ P·Xᵀ·P, still an involution.
        let star = vec![0, 1, 2, 3, 5, 4];
        assert_eq!(validate_involution(&reduct.clone().with_star(star).unwrap()), Ok(()));
        // Swapping a↔b and e↔f is conjugation by P, an automorphism: (ab)* = f but b*a* = e.
        let star = vec![0, 1, 3, 2, 5, 4];
        assert_eq!(
            validate_involution(&reduct.with_star(star).unwrap()),
            Err(ValidationError::Violation(AxiomViolation {
                law: Law::StarAntiMultiplicative,
                witness: vec![B21::A, B21::B],
            }))
        );
    }
}
