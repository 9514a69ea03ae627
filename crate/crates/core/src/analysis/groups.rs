use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::AnalysisError;
use crate::constructions::Group;

/// Largest group order for which subgroups are enumerated.
pub const SUBGROUP_ENUMERATION_LIMIT: usize = 128;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Least common multiple of element orders.
pub fn exponent(group: &Group) -> u64 {
    (0..group.order()).fold(1, |acc, a| lcm(acc, group.element_order(a) as u64))
}

fn members(set: &[bool]) -> Vec<usize> {
    (0..set.len()).filter(|&i| set[i]).collect()
}

/// `G ⊵ G' ⊵ G'' ⊵ …` until it stabilizes; the first entry is `G`.
pub fn derived_series(group: &Group) -> Vec<Vec<bool>> {
    let mut series = vec![vec![true; group.order()]];
    loop {
        let current = members(series.last().unwrap());
        let commutators: Vec<usize> = current
            .iter()
            .flat_map(|&a| current.iter().map(move |&b| (a, b)))
            .map(|(a, b)| group.commutator(a, b))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        let next = group.closure(commutators);
        if next == *series.last().unwrap() {
            return series;
        }
        series.push(next);
    }
}

/// Length of the derived series down to the trivial group, or `None` if it stalls.
pub fn derived_length(group: &Group) -> Option<usize> {
    let series = derived_series(group);
    let last = series.last().unwrap();
    (members(last).len() == 1).then(|| series.len() - 1)
}

/// Every subgroup, found by closing existing subgroups under one more element.
/// Ordered by discovery: the trivial subgroup first.
pub fn subgroups(group: &Group) -> Result<Vec<FixedBitSet>, AnalysisError> {
    let n = group.order();
    if n > SUBGROUP_ENUMERATION_LIMIT {
        return Err(AnalysisError::SubgroupEnumerationBudget { order: n });
    }
    let to_bits = |set: &[bool]| {
        let mut b = FixedBitSet::with_capacity(n);
        for i in members(set) {
            b.insert(i);
        }
        b
    };
    let trivial = to_bits(&group.closure([]));
    let mut found: Vec<FixedBitSet> = vec![trivial.clone()];
    let mut seen: HashSet<FixedBitSet> = HashSet::from([trivial]);
    let mut next = 0;
    while next < found.len() {
        let h = found[next].clone();
        next += 1;
        for g in 0..n {
            if h.contains(g) {
                continue;
            }
            let gens = h.ones().chain(std::iter::once(g));
            let k = to_bits(&group.closure(gens));
            if seen.insert(k.clone()) {
                found.push(k);
            }
        }
    }
    Ok(found)
}

fn check_subgroup(group: &Group, h: &[bool]) -> Result<(), AnalysisError> {
    if group.is_subgroup(h) {
        Ok(())
    } else {
        Err(AnalysisError::NotASubgroup)
    }
}

/// `N_G(H) = {g : gH = Hg}`.
pub fn normalizer(group: &Group, h: &[bool]) -> Result<Vec<bool>, AnalysisError> {
    check_subgroup(group, h)?;
    let n = group.order();
    let hs = members(h);
    let coset = |left: bool, g: usize| {
        let mut set = vec![false; n];
        for &x in &hs {
            set[if left { group.mul(g, x) } else { group.mul(x, g) }] = true;
        }
        set
    };
    let norm: Vec<bool> = (0..n).map(|g| coset(true, g) == coset(false, g)).collect();
    debug_assert!(group.is_subgroup(&norm) && (0..n).all(|i| !h[i] || norm[i]));
    Ok(norm)
}

pub fn is_normal(group: &Group, h: &[bool]) -> Result<bool, AnalysisError> {
    Ok(normalizer(group, h)?.iter().all(|&x| x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupAnalytics {
    pub order: usize,
    pub exponent: u64,
    pub derived_length: Option<usize>,
    pub solvable: bool,
    pub dedekind: bool,
    pub has_quaternion_subgroup: bool,
    pub subgroup_count: usize,
}

fn is_quaternion(group: &Group, h: &FixedBitSet) -> bool {
    let elems: Vec<usize> = h.ones().collect();
    if elems.len() != 8 {
        return false;
    }
    let abelian = elems
        .iter()
        .all(|&a| elems.iter().all(|&b| group.mul(a, b) == group.mul(b, a)));
    let involutions = elems.iter().filter(|&&a| group.element_order(a) == 2).count();
    !abelian && involutions == 1
}

pub fn group_analytics(group: &Group) -> Result<GroupAnalytics, AnalysisError> {
    let subs = subgroups(group)?;
    let n = group.order();
    let mut dedekind = true;
    for s in &subs {
        let member: Vec<bool> = (0..n).map(|i| s.contains(i)).collect();
        if !is_normal(group, &member)? {
            dedekind = false;
            break;
        }
    }
    let derived = derived_length(group);
    Ok(GroupAnalytics {
        order: n,
        exponent: exponent(group),
        derived_length: derived,
        solvable: derived.is_some(),
        dedekind,
        has_quaternion_subgroup: subs.iter().any(|s| is_quaternion(group, s)),
        subgroup_count: subs.len(),
    })
}
