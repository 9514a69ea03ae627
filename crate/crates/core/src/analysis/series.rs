use std::cmp::Reverse;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::basic::{idempotents, is_block_group, j_classes, zero_element};
use super::groups::{derived_length, exponent, lcm};
use super::AnalysisError;
use crate::algebra::FiniteAlgebra;
use crate::constructions::{brandt_semigroup, rees_quotient, BrandtElement, Group};

/// A maximal subgroup `H_e` of a finite semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalSubgroup {
    pub idempotent: usize,
    /// Members, ascending.
    pub elements: Vec<usize>,
    pub exponent: u64,
    pub derived_length: Option<usize>,
}

impl MaximalSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn group(&self, alg: &FiniteAlgebra) -> Group {
        let table = alg.mul_reduct().induced(&self.elements).expect("H_e is closed");
        Group::from_algebra(table).expect("H_e is a group")
    }
}

/// `H_e = {a : ea = a = ae, e ∈ aS, e ∈ Sa}` for every idempotent `e`.
pub fn maximal_subgroups(alg: &FiniteAlgebra) -> Vec<MaximalSubgroup> {
    let n = alg.size();
    let es = idempotents(alg);
    let mut slot = vec![usize::MAX; n];
    for (i, &e) in es.iter().enumerate() {
        slot[e] = i;
    }
    // in_row[i][a]: e_i ∈ aS; in_col[i][a]: e_i ∈ Sa.
    let mut in_row = vec![FixedBitSet::with_capacity(n); es.len()];
    let mut in_col = vec![FixedBitSet::with_capacity(n); es.len()];
    for a in 0..n {
        for x in 0..n {
            let p = alg.mul(a, x);
            if slot[p] != usize::MAX {
                in_row[slot[p]].insert(a);
            }
            let q = alg.mul(x, a);
            if slot[q] != usize::MAX {
                in_col[slot[q]].insert(a);
            }
        }
    }
    es.iter()
        .enumerate()
        .map(|(i, &e)| {
            let elements: Vec<usize> = (0..n)
                .filter(|&a| {
                    alg.mul(e, a) == a && alg.mul(a, e) == a && in_row[i].contains(a) && in_col[i].contains(a)
                })
                .collect();
            let mut sub = MaximalSubgroup {
                idempotent: e,
                elements,
                exponent: 1,
                derived_length: Some(0),
            };
            let g = sub.group(alg);
            sub.exponent = exponent(&g);
            sub.derived_length = derived_length(&g);
            sub
        })
        .collect()
}

/// An explicit isomorphism onto `B_{G,I}`.
#[derive(Clone, Debug)]
pub struct BrandtStructure {
    pub group: Group,
    pub index_count: usize,
    pub zero: usize,
    /// The nonzero idempotents `e₁ < e₂ < …`, one per index.
    pub idempotents: Vec<usize>,
    /// Image of each element; group coordinates index into `group`.
    pub coordinates: Vec<BrandtElement>,
}

impl BrandtStructure {
    /// Index of the image of each element in `brandt_semigroup(group, index_count)`.
    pub fn isomorphism(&self) -> Vec<usize> {
        self.coordinates
            .iter()
            .map(|c| c.index(self.group.order(), self.index_count))
            .collect()
    }
}

/// Recognizes `B_{G,I}` up to isomorphism and returns the isomorphism.
pub fn is_brandt(alg: &FiniteAlgebra) -> Option<BrandtStructure> {
    let n = alg.size();
    let zero = zero_element(alg)?;
    if n < 2 {
        return None;
    }
    // 0-simple: exactly the classes {0} and S∖{0}, and S² ≠ 0.
    if j_classes(alg).len() != 2 || alg.mul_table().iter().all(|&p| p as usize == zero) {
        return None;
    }
    let mut inverse = vec![0usize; n];
    for a in 0..n {
        let invs: Vec<usize> = (0..n)
            .filter(|&b| alg.mul(alg.mul(a, b), a) == a && alg.mul(alg.mul(b, a), b) == b)
            .collect();
        if invs.len() != 1 {
            return None;
        }
        inverse[a] = invs[0];
    }
    let es: Vec<usize> = idempotents(alg).into_iter().filter(|&e| e != zero).collect();
    let e1 = es[0];
    let h: Vec<usize> = (0..n)
        .filter(|&a| a != zero && alg.mul(a, inverse[a]) == e1 && alg.mul(inverse[a], a) == e1)
        .collect();
    let group = Group::from_algebra(alg.mul_reduct().induced(&h).ok()?).ok()?;
    let index_of = |e: usize| es.iter().position(|&x| x == e);
    let p: Vec<usize> = es
        .iter()
        .map(|&ei| {
            (0..n).find(|&x| alg.mul(x, inverse[x]) == e1 && alg.mul(inverse[x], x) == ei)
        })
        .collect::<Option<_>>()?;
    let mut coordinates = Vec::with_capacity(n);
    for a in 0..n {
        if a == zero {
            coordinates.push(BrandtElement::Zero);
            continue;
        }
        let l = index_of(alg.mul(a, inverse[a]))?;
        let r = index_of(alg.mul(inverse[a], a))?;
        let g = alg.mul(alg.mul(p[l], a), inverse[p[r]]);
        let g = h.binary_search(&g).ok()?;
        coordinates.push(BrandtElement::Triple { l, g, r });
    }
    let structure = BrandtStructure {
        index_count: es.len(),
        group,
        zero,
        idempotents: es,
        coordinates,
    };
    let target = brandt_semigroup(&structure.group, structure.index_count).ok()?;
    let iso = structure.isomorphism();
    if target.size() != n {
        return None;
    }
    let mut hit = vec![false; n];
    for &i in &iso {
        if std::mem::replace(&mut hit[i], true) {
            return None;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if iso[alg.mul(a, b)] != target.mul(iso[a], iso[b]) {
                return None;
            }
        }
    }
    Some(structure)
}

/// Classification of one factor of a principal series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorKind {
    Group { order: usize },
    Brandt { group_order: usize, index_count: usize },
    Zero,
    Other,
}

impl FactorKind {
    pub fn is_group_brandt_or_zero(&self) -> bool {
        !matches!(self, FactorKind::Other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesStep {
    /// `S_j`, ascending.
    pub ideal: Vec<usize>,
    /// The 𝒥-class added at this step.
    pub added: Vec<usize>,
    #[serde(flatten)]
    pub kind: FactorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub chain: Vec<SeriesStep>,
    pub h: usize,
    pub m: u64,
    /// Maximum derived length of subgroups, at least 1; `None` if some subgroup is not solvable.
    pub k: Option<usize>,
    /// Whether `k` was raised to 1 because every subgroup is abelian of length 0.
    pub k_floored: bool,
    pub q: Option<u64>,
    pub r: Option<u64>,
}

impl SeriesReport {
    pub fn kinds(&self) -> Vec<FactorKind> {
        self.chain.iter().map(|s| s.kind).collect()
    }

    /// Whether the bottom is a group and every other factor is Brandt or null.
    pub fn is_brandt_series(&self) -> bool {
        matches!(self.chain[0].kind, FactorKind::Group { .. })
            && self.chain[1..]
                .iter()
                .all(|s| matches!(s.kind, FactorKind::Brandt { .. } | FactorKind::Zero))
    }
}

/// `q = 2^h·m`, or `None` on overflow.
pub fn q_param(h: usize, m: u64) -> Option<u64> {
    1u64.checked_shl(h as u32).filter(|_| h < 64)?.checked_mul(m)
}

/// `r = kh + h + k`.
pub fn r_param(h: usize, k: usize) -> u64 {
    (k * h + h + k) as u64
}

fn classify_kernel(alg: &FiniteAlgebra, kernel: &[usize]) -> FactorKind {
    let sub = alg.mul_reduct().induced(kernel).expect("kernel is an ideal");
    match Group::from_algebra(sub) {
        Ok(g) => FactorKind::Group { order: g.order() },
        Err(_) => FactorKind::Other,
    }
}

fn classify_factor(alg: &FiniteAlgebra, upper: &[usize], lower: &[usize]) -> FactorKind {
    let upper_alg = alg.mul_reduct().induced(upper).expect("ideal is closed");
    let lower_local: Vec<usize> = lower
        .iter()
        .map(|x| upper.binary_search(x).expect("lower ⊂ upper"))
        .collect();
    let quotient = rees_quotient(&upper_alg, &lower_local).expect("lower is an ideal");
    if quotient.mul_table().iter().all(|&p| p == 0) {
        return FactorKind::Zero;
    }
    match is_brandt(&quotient) {
        Some(b) => FactorKind::Brandt {
            group_order: b.group.order(),
            index_count: b.index_count,
        },
        None => FactorKind::Other,
    }
}

/// A maximal chain of ideals, adding one 𝒥-class at a time in a linear
/// extension of the 𝒥-order (ties broken by least element).
pub fn principal_series(alg: &FiniteAlgebra) -> SeriesReport {
    let j = j_classes(alg);
    let c = j.len();
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); c];
    let mut pending_below: Vec<usize> = vec![0; c];
    for x in 0..c {
        pending_below[x] = j.below[x].len();
        for &y in &j.below[x] {
            above[y].push(x);
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..c).filter(|&x| pending_below[x] == 0).map(Reverse).collect();
    let mut ideal: Vec<usize> = Vec::new();
    let mut chain: Vec<SeriesStep> = Vec::with_capacity(c);
    while let Some(Reverse(x)) = ready.pop() {
        let lower = ideal.clone();
        ideal.extend_from_slice(&j.classes[x]);
        ideal.sort_unstable();
        let kind = if chain.is_empty() {
            classify_kernel(alg, &ideal)
        } else {
            classify_factor(alg, &ideal, &lower)
        };
        chain.push(SeriesStep {
            ideal: ideal.clone(),
            added: j.classes[x].clone(),
            kind,
        });
        for &y in &above[x] {
            pending_below[y] -= 1;
            if pending_below[y] == 0 {
                ready.push(Reverse(y));
            }
        }
    }
    let subs = maximal_subgroups(alg);
    let h = chain.len() - 1;
    let m = subs.iter().fold(1, |acc, s| lcm(acc, s.exponent));
    let k_raw: Option<usize> = subs
        .iter()
        .map(|s| s.derived_length)
        .try_fold(0, |acc, d| d.map(|d| acc.max(d)));
    let k = k_raw.map(|k| k.max(1));
    SeriesReport {
        chain,
        h,
        m,
        k,
        k_floored: k_raw == Some(0),
        q: q_param(h, m),
        r: k.map(|k| r_param(h, k)),
    }
}

/// Result of [`fd_property`]: `None` when it holds, else the first `(f, b)`
/// with `fb ∉ {b, 0}` or `bf ∉ {b, 0}`.
pub type FdVerdict = Option<(usize, usize)>;

/// For a Brandt ideal `B` of a block-group: `fb, bf ∈ {b, 0}` for every
/// idempotent `f` and `b ∈ B`.
pub fn fd_property(alg: &FiniteAlgebra, ideal: &[usize]) -> Result<FdVerdict, AnalysisError> {
    let n = alg.size();
    let mut member = vec![false; n];
    for &b in ideal {
        if b >= n {
            return Err(AnalysisError::Precondition(format!("element {b} out of range")));
        }
        member[b] = true;
    }
    let closed = ideal
        .iter()
        .all(|&b| (0..n).all(|s| member[alg.mul(b, s)] && member[alg.mul(s, b)]));
    if ideal.is_empty() || !closed {
        return Err(AnalysisError::Precondition("not an ideal".into()));
    }
    let mut sorted = ideal.to_vec();
    sorted.sort_unstable();
    let sub = alg.mul_reduct().induced(&sorted)?;
    let brandt = is_brandt(&sub)
        .ok_or_else(|| AnalysisError::Precondition("ideal is not a Brandt semigroup".into()))?;
    if !is_block_group(alg).holds {
        return Err(AnalysisError::Precondition("not a block-group".into()));
    }
    let zero = sorted[brandt.zero];
    for f in idempotents(alg) {
        for &b in &sorted {
            let (fb, bf) = (alg.mul(f, b), alg.mul(b, f));
            if (fb != b && fb != zero) || (bf != b && bf != zero) {
                return Ok(Some((f, b)));
            }
        }
    }
    Ok(None)
}
