//! The shipped group families and a validated group view over any table.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use super::ConstructionError;
use crate::algebra::{validate_semigroup, FiniteAlgebra};

/// Symmetric groups are capped at this degree.
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
    Quaternion8,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = ConstructionError;

    /// Accepts `C<n>`/`Z<n>`, `S<n>`, `D<n>` (dihedral of order 2n) and `Q8`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConstructionError::BadGroupSpec(s.to_string());
        if s.eq_ignore_ascii_case("q8") {
            return Ok(GroupSpec::Quaternion8);
        }
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match family {
            'C' | 'Z' => Ok(GroupSpec::Cyclic(n)),
            'S' => Ok(GroupSpec::Symmetric(n)),
            'D' => Ok(GroupSpec::Dihedral(n)),
            _ => Err(bad()),
        }
    }
}

/// Builds the group table; the identity is always element 0.
pub fn make_group(spec: GroupSpec) -> Result<FiniteAlgebra, ConstructionError> {
    let alg = match spec {
        GroupSpec::Cyclic(n) => {
            if n == 0 {
                return Err(ConstructionError::UnsupportedSize(spec.to_string()));
            }
            let labels = (0..n).map(power_label("g")).collect();
            FiniteAlgebra::from_fn(labels, |a, b| (a + b) % n)?
        }
        GroupSpec::Symmetric(n) => symmetric(n)?,
        GroupSpec::Dihedral(n) => dihedral(n)?,
        GroupSpec::Quaternion8 => quaternion8()?,
    };
    Ok(alg.with_meta(json!({"construction": "group", "group": spec.to_string()})))
}

fn power_label(symbol: &'static str) -> impl Fn(usize) -> String {
    move |i| match i {
        0 => "e".to_string(),
        1 => symbol.to_string(),
        _ => format!("{symbol}^{i}"),
    }
}

/// Permutations of `0..n` in lexicographic order of their image tuples.
/// The product `p·q` applies `p` first, then `q`.
fn symmetric(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(ConstructionError::UnsupportedSize(format!("S{n}")));
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        perms.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    let table: Vec<usize> = perms
        .iter()
        .flat_map(|p| {
            perms.iter().map(|q| {
                let composed: Vec<usize> = p.iter().map(|&i| q[i]).collect();
                index(&composed)
            })
        })
        .collect();
    let size = perms.len();
    FiniteAlgebra::from_fn(labels, |a, b| table[a * size + b]).map_err(Into::into)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Cycle notation on points `1..=n`, e.g. `(123)` or `(12)(34)`; identity is `e`.
fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// Dihedral group of order `2n`: rotations `r^i` first, then reflections `s r^i`.
fn dihedral(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::UnsupportedSize(format!("D{n}")));
    }
    let mut labels: Vec<String> = (0..n).map(power_label("r")).collect();
    labels.extend((0..n).map(|i| match i {
        0 => "s".to_string(),
        1 => "sr".to_string(),
        _ => format!("sr^{i}"),
    }));
    if n == 1 {
        labels = vec!["e".into(), "s".into()];
    }
    // s r^i s = r^{-i}
    let mul = |a: usize, b: usize| {
        let (fa, ia) = (a >= n, a % n);
        let (fb, ib) = (b >= n, b % n);
        match (fa, fb) {
            (false, false) => (ia + ib) % n,
            (false, true) => n + (ib + n - ia) % n,
            (true, false) => n + (ia + ib) % n,
            (true, true) => (ib + n - ia) % n,
        }
    };
    FiniteAlgebra::from_fn(labels, mul).map_err(Into::into)
}

/// Quaternion group from its multiplication rules `i² = j² = k² = ijk = −1`.
fn quaternion8() -> Result<FiniteAlgebra, ConstructionError> {
    // Element 2u + s is (−1)^s · unit[u], units 1, i, j, k.
    const UNITS: [&str; 4] = ["1", "i", "j", "k"];
    // (sign, unit) of unit[a]·unit[b].
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let labels = (0..8)
        .map(|x| {
            let (u, s) = (x / 2, x % 2);
            if s == 0 {
                UNITS[u].to_string()
            } else {
                format!("-{}", UNITS[u])
            }
        })
        .collect();
    let mul = |a: usize, b: usize| {
        let (sign, unit) = UNIT_MUL[a / 2][b / 2];
        2 * unit + (sign + a % 2 + b % 2) % 2
    };
    FiniteAlgebra::from_fn(labels, mul).map_err(Into::into)
}

/// A group table with its identity and inverses resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct Group {
    alg: FiniteAlgebra,
    identity: usize,
    inverse: Vec<usize>,
}

impl Group {
    /// Checks the group axioms on a multiplication table.
    pub fn from_algebra(alg: FiniteAlgebra) -> Result<Group, ConstructionError> {
        let n = alg.size();
        validate_semigroup(&alg).map_err(|e| ConstructionError::NotAGroup(e.to_string()))?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| alg.mul(e, x) == x && alg.mul(x, e) == x))
            .ok_or_else(|| ConstructionError::NotAGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| alg.mul(a, b) == identity && alg.mul(b, a) == identity)
                .ok_or_else(|| {
                    ConstructionError::NotAGroup(format!("{} has no inverse", alg.label(a)))
                })?;
            inverse.push(inv);
        }
        Ok(Group {
            alg,
            identity,
            inverse,
        })
    }

    pub fn from_spec(spec: GroupSpec) -> Result<Group, ConstructionError> {
        Group::from_algebra(make_group(spec)?)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    pub fn order(&self) -> usize {
        self.alg.size()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.alg.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        self.alg.label(a)
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.alg.index_of(label)
    }

    /// `a⁻¹b⁻¹ab`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let left = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(left, a), b)
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Smallest subgroup containing `gens` (the trivial subgroup when empty).
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let n = self.order();
        let mut member = vec![false; n];
        member[self.identity] = true;
        let mut frontier = vec![self.identity];
        let gens: Vec<usize> = gens.into_iter().collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    frontier.push(y);
                }
            }
        }
        member
    }

    /// Whether `set` (as a membership vector) is a subgroup.
    pub fn is_subgroup(&self, set: &[bool]) -> bool {
        set.len() == self.order()
            && set[self.identity]
            && (0..self.order()).filter(|&a| set[a]).all(|a| {
                set[self.inv(a)] && (0..self.order()).filter(|&b| set[b]).all(|b| set[self.mul(a, b)])
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("S3".parse::<GroupSpec>().unwrap(), GroupSpec::Symmetric(3));
        assert_eq!("Z4".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(4));
        assert_eq!("c4".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(4));
        assert_eq!("Q8".parse::<GroupSpec>().unwrap(), GroupSpec::Quaternion8);
        assert_eq!("D4".parse::<GroupSpec>().unwrap(), GroupSpec::Dihedral(4));
        assert!("X3".parse::<GroupSpec>().is_err());
        assert!("S".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn trivial_group() {
        let g = Group::from_spec(GroupSpec::Cyclic(1)).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn symmetric_three_is_nonabelian_of_order_six() {
        let g = Group::from_spec(GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        // Oracle: compose permutations directly (apply left factor first).
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let c = [q[p[0]], q[p[1]], q[p[2]]];
                let idx = perms.iter().position(|r| *r == c).unwrap();
                assert_eq!(g.mul(a, b), idx);
            }
        }
        let abelian = (0..6).all(|a| (0..6).all(|b| g.mul(a, b) == g.mul(b, a)));
        assert!(!abelian);
        assert_eq!(g.label(2), "(12)");
        assert!(g.element("(123)").is_some());
        assert!(g.element("(13)").is_some());
    }

    #[test]
    fn symmetric_degree_capped() {
        assert!(matches!(
            make_group(GroupSpec::Symmetric(6)),
            Err(ConstructionError::UnsupportedSize(_))
        ));
        assert_eq!(make_group(GroupSpec::Symmetric(5)).unwrap().size(), 120);
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let g = Group::from_spec(GroupSpec::Quaternion8).unwrap();
        let involutions: Vec<usize> = (0..8).filter(|&a| g.element_order(a) == 2).collect();
        assert_eq!(involutions, vec![g.element("-1").unwrap()]);
        let i = g.element("i").unwrap();
        let j = g.element("j").unwrap();
        let k = g.element("k").unwrap();
        let minus_one = g.element("-1").unwrap();
        assert_eq!(g.mul(i, i), minus_one);
        assert_eq!(g.mul(j, j), minus_one);
        assert_eq!(g.mul(k, k), minus_one);
        assert_eq!(g.mul(g.mul(i, j), k), minus_one);
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(j, i), g.element("-k").unwrap());
    }

    #[test]
    fn dihedral_relations() {
        for n in 1..7 {
            let g = Group::from_spec(GroupSpec::Dihedral(n)).unwrap();
            assert_eq!(g.order(), 2 * n);
            let r = if n > 1 { 1 } else { 0 };
            let s = n;
            assert_eq!(g.element_order(s), 2);
            // s r s = r^{-1}
            assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
        }
    }

    #[test]
    fn cycle_labels() {
        assert_eq!(cycle_label(&[0, 1, 2]), "e");
        assert_eq!(cycle_label(&[1, 2, 0]), "(123)");
        assert_eq!(cycle_label(&[1, 0, 3, 2]), "(12)(34)");
    }
}
