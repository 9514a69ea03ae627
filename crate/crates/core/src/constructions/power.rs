//! Power semirings `(P(G), ∪, ·)` and their involution variants.
//!
//! A subset `A ⊆ G` is the bitmask with bit `i` set iff group element `i`
//! belongs to `A`. In `P(G)` the element index equals the mask; in `P'(G)`
//! (non-empty subsets only) it is `mask − 1`.

use serde_json::json;

use super::{ConstructionError, Group, DEFAULT_POWER_BITS};
use crate::algebra::FiniteAlgebra;

/// A subset of a group as a bitmask over the group's element order.
pub type SubsetElement = u64;

/// Precomputed left translates `a·B` for every element `a` and mask `B`.
struct SubsetOps {
    n: usize,
    left: Vec<u64>,
    inverse_bit: Vec<usize>,
}

impl SubsetOps {
    fn new(group: &Group) -> SubsetOps {
        let n = group.order();
        let full = 1usize << n;
        let mut left = vec![0u64; n * full];
        for a in 0..n {
            let row = &mut left[a * full..(a + 1) * full];
            for mask in 1..full {
                let low = mask.trailing_zeros() as usize;
                row[mask] = row[mask & (mask - 1)] | (1u64 << group.mul(a, low));
            }
        }
        SubsetOps {
            n,
            left,
            inverse_bit: (0..n).map(|a| group.inv(a)).collect(),
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let full = 1usize << self.n;
        let mut out = 0;
        let mut rest = a;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= self.left[i * full + b as usize];
            rest &= rest - 1;
        }
        out
    }

    fn inverse(&self, a: u64) -> u64 {
        let mut out = 0;
        let mut rest = a;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= 1u64 << self.inverse_bit[i];
            rest &= rest - 1;
        }
        out
    }
}

/// Label such as `{e,(12)}` listing members in group order; `∅` for the empty set.
pub fn mask_label(group: &Group, mask: u64) -> String {
    if mask == 0 {
        return "∅".to_string();
    }
    let members: Vec<&str> = (0..group.order())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| group.label(i))
        .collect();
    format!("{{{}}}", members.join(","))
}

fn check_bits(group: &Group, bits: usize) -> Result<(), ConstructionError> {
    let n = group.order();
    if n > bits || n > 20 {
        return Err(ConstructionError::CarrierTooLarge {
            what: format!("P(G) with |G| = {n}"),
            size: 1u128 << n,
            budget: 1u128 << bits.min(127),
        });
    }
    Ok(())
}

fn build(
    group: &Group,
    nonempty_only: bool,
    with_add: bool,
    with_star: bool,
    bits: usize,
    construction: &str,
) -> Result<FiniteAlgebra, ConstructionError> {
    check_bits(group, bits)?;
    let ops = SubsetOps::new(group);
    let offset = u64::from(nonempty_only);
    let size = (1usize << group.order()) - offset as usize;
    let mask = |i: usize| i as u64 + offset;
    let index = |m: u64| (m - offset) as u32;
    let labels = (0..size).map(|i| mask_label(group, mask(i))).collect();
    let mut mul = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            mul.push(index(ops.mul(mask(a), mask(b))));
        }
    }
    let add = with_add.then(|| {
        (0..size * size)
            .map(|i| index(mask(i / size) | mask(i % size)))
            .collect()
    });
    let star = with_star.then(|| (0..size).map(|a| index(ops.inverse(mask(a)))).collect());
    let group_meta = group.algebra().meta().get("group").cloned();
    let mut meta = json!({"construction": construction, "group": group_meta});
    if with_add {
        meta["nonempty_only"] = json!(nonempty_only);
    }
    Ok(FiniteAlgebra::new(labels, mul, add, star)?.with_meta(meta))
}

/// `(P(G), ∪, ·)`, or `(P'(G), ∪, ·)` when `nonempty_only`.
pub fn power_semiring(group: &Group, nonempty_only: bool) -> Result<FiniteAlgebra, ConstructionError> {
    power_semiring_with_budget(group, nonempty_only, DEFAULT_POWER_BITS)
}

pub fn power_semiring_with_budget(
    group: &Group,
    nonempty_only: bool,
    bits: usize,
) -> Result<FiniteAlgebra, ConstructionError> {
    build(group, nonempty_only, true, false, bits, "power-semiring")
}

/// `(P(G), ·, ⁻¹)` with element-wise inversion.
pub fn involution_power(group: &Group) -> Result<FiniteAlgebra, ConstructionError> {
    build(group, false, false, true, DEFAULT_POWER_BITS, "involution-power")
}

/// `(P(G), ∪, ·, ⁻¹)`.
pub fn involution_power_semiring(group: &Group) -> Result<FiniteAlgebra, ConstructionError> {
    build(group, false, true, true, DEFAULT_POWER_BITS, "involution-power-semiring")
}

/// The subsemiring `B = {E, H, g⁻¹H, Hg, g⁻¹Hg} ∪ J` of `P(G)` where
/// `J = {A : |A| > |H|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetB {
    /// Members as masks, ascending (hence also ascending `P(G)` indices).
    pub carrier: Vec<SubsetElement>,
    pub e: SubsetElement,
    pub h: SubsetElement,
    pub g_inv_h: SubsetElement,
    pub h_g: SubsetElement,
    pub g_inv_h_g: SubsetElement,
    pub h_size: u32,
    pub g: usize,
}

impl SubsetB {
    /// Image in `B₂¹`: `J→0, E→1, Hg→a, g⁻¹H→b, H→e, g⁻¹Hg→f`.
    pub fn to_b21(&self, mask: SubsetElement) -> Option<usize> {
        use super::B21;
        if mask.count_ones() > self.h_size {
            Some(B21::ZERO)
        } else if mask == self.e {
            Some(B21::ONE)
        } else if mask == self.h_g {
            Some(B21::A)
        } else if mask == self.g_inv_h {
            Some(B21::B)
        } else if mask == self.h {
            Some(B21::E)
        } else if mask == self.g_inv_h_g {
            Some(B21::F)
        } else {
            None
        }
    }

    /// The `B₂¹` image of each carrier position.
    pub fn projection(&self) -> Vec<usize> {
        self.carrier
            .iter()
            .map(|&m| self.to_b21(m).expect("carrier element"))
            .collect()
    }

    /// `B` as an induced subalgebra of `(P(G), ∪, ·, ⁻¹)`; position `i` is `carrier[i]`.
    pub fn algebra(&self, group: &Group) -> Result<FiniteAlgebra, ConstructionError> {
        let power = involution_power_semiring(group)?;
        let elements: Vec<usize> = self.carrier.iter().map(|&m| m as usize).collect();
        let h: Vec<&str> = (0..group.order())
            .filter(|&i| self.h >> i & 1 == 1)
            .map(|i| group.label(i))
            .collect();
        Ok(power.induced(&elements)?.with_meta(json!({
            "construction": "subset-b",
            "group": group.algebra().meta().get("group").cloned(),
            "h": h,
            "g": group.label(self.g),
        })))
    }
}

/// Builds `B` for a non-normal subgroup `H` and an element `g` with `g⁻¹Hg ≠ H`.
pub fn subset_b(group: &Group, h: SubsetElement, g: usize) -> Result<SubsetB, ConstructionError> {
    check_bits(group, DEFAULT_POWER_BITS)?;
    let n = group.order();
    if g >= n || h >> n != 0 {
        return Err(ConstructionError::BadParameter("element or mask out of range".into()));
    }
    let member: Vec<bool> = (0..n).map(|i| h >> i & 1 == 1).collect();
    if !group.is_subgroup(&member) {
        return Err(ConstructionError::NotASubgroup);
    }
    let ops = SubsetOps::new(group);
    let single = |x: usize| 1u64 << x;
    let g_inv = single(group.inv(g));
    let e = single(group.identity());
    let g_inv_h = ops.mul(g_inv, h);
    let h_g = ops.mul(h, single(g));
    let g_inv_h_g = ops.mul(g_inv_h, single(g));
    if g_inv_h_g == h {
        return Err(ConstructionError::NormalSubgroup);
    }
    if g_inv_h == h_g {
        return Err(ConstructionError::NotClosed("g⁻¹H = Hg".into()));
    }
    let h_size = h.count_ones();
    let mut carrier: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() > h_size).collect();
    carrier.extend([e, h, g_inv_h, h_g, g_inv_h_g]);
    carrier.sort_unstable();
    carrier.dedup();
    let contains = |m: u64| carrier.binary_search(&m).is_ok();
    for &x in &carrier {
        for &y in &carrier {
            if !contains(x | y) {
                return Err(ConstructionError::NotClosed(format!("union of {x:#b} and {y:#b}")));
            }
            if !contains(ops.mul(x, y)) {
                return Err(ConstructionError::NotClosed(format!("product of {x:#b} and {y:#b}")));
            }
        }
    }
    Ok(SubsetB {
        carrier,
        e,
        h,
        g_inv_h,
        h_g,
        g_inv_h_g,
        h_size,
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate, Kind};
    use crate::constructions::GroupSpec;

    fn s3() -> Group {
        Group::from_spec(GroupSpec::Symmetric(3)).unwrap()
    }

    fn mask_of(group: &Group, labels: &[&str]) -> u64 {
        labels.iter().map(|l| 1u64 << group.element(l).unwrap()).sum()
    }

    #[test]
    fn power_semiring_of_s3() {
        let g = s3();
        let p = power_semiring(&g, false).unwrap();
        assert_eq!(p.size(), 64);
        assert_eq!(p.kind(), Kind::AiSemiring);
        assert_eq!(validate(&p), Ok(()));
        let h = mask_of(&g, &["e", "(12)"]) as usize;
        assert_eq!(p.mul(h, h), h);
        assert_eq!(p.label(h), "{e,(12)}");
        for a in 0..64 {
            assert_eq!(p.mul(0, a), 0);
            assert_eq!(p.mul(a, 0), 0);
            assert_eq!(p.add(0, a), Some(a));
        }
    }

    #[test]
    fn product_matches_direct_set_product() {
        let g = s3();
        let p = power_semiring(&g, false).unwrap();
        for a in 0..64usize {
            for b in 0..64usize {
                let mut expected = 0usize;
                for x in 0..6 {
                    for y in 0..6 {
                        if a >> x & 1 == 1 && b >> y & 1 == 1 {
                            expected |= 1 << g.mul(x, y);
                        }
                    }
                }
                assert_eq!(p.mul(a, b), expected);
            }
        }
    }

    #[test]
    fn nonempty_variant_embeds() {
        let g = s3();
        let p = power_semiring(&g, false).unwrap();
        let q = power_semiring(&g, true).unwrap();
        assert_eq!(q.size(), 63);
        assert_eq!(validate(&q), Ok(()));
        for a in 0..63 {
            for b in 0..63 {
                assert_eq!(q.mul(a, b) + 1, p.mul(a + 1, b + 1));
                assert_eq!(q.add(a, b).unwrap() + 1, p.add(a + 1, b + 1).unwrap());
            }
        }
    }

    #[test]
    fn involution_power_of_s3() {
        let g = s3();
        let p = involution_power(&g).unwrap();
        assert_eq!(p.kind(), Kind::InvolutionSemigroup);
        assert_eq!(validate(&p), Ok(()));
        let c = mask_of(&g, &["(123)"]) as usize;
        let c_inv = mask_of(&g, &["(132)"]) as usize;
        assert_eq!(p.star(c), Some(c_inv));
        assert_eq!(p.star(0), Some(0));
        let a3 = mask_of(&g, &["e", "(123)", "(132)"]) as usize;
        assert_eq!(p.star(a3), Some(a3));
        let full = involution_power_semiring(&g).unwrap();
        assert_eq!(full.kind(), Kind::InvolutionAiSemiring);
        assert_eq!(validate(&full), Ok(()));
    }

    #[test]
    fn bit_budget() {
        let s4 = Group::from_spec(GroupSpec::Symmetric(4)).unwrap();
        assert!(matches!(
            power_semiring(&s4, false),
            Err(ConstructionError::CarrierTooLarge { .. })
        ));
    }

    #[test]
    fn subset_b_of_s3() {
        let g = s3();
        let h = mask_of(&g, &["e", "(12)"]);
        let b = subset_b(&g, h, g.element("(13)").unwrap()).unwrap();
        // Oracle: 5 named sets plus every subset with more than 2 elements.
        let big = (0..64u64).filter(|m| m.count_ones() > 2).count();
        assert_eq!(big, 42);
        assert_eq!(b.carrier.len(), 5 + big);
        assert_ne!(b.g_inv_h, b.h_g);
        let alg = b.algebra(&g).unwrap();
        assert_eq!(validate(&alg), Ok(()));
        let a3 = mask_of(&g, &["e", "(123)", "(132)"]);
        assert!(matches!(subset_b(&g, a3, 1), Err(ConstructionError::NormalSubgroup)));
        let not_sub = mask_of(&g, &["e", "(123)"]);
        assert!(matches!(subset_b(&g, not_sub, 1), Err(ConstructionError::NotASubgroup)));
    }
}
