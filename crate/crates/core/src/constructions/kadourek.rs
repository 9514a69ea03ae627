//! Inverse semigroups of partial injections generated by the letters of `w_n^{(h)}`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde_json::json;

use super::{ConstructionError, DEFAULT_MAX_CARRIER};
use crate::algebra::FiniteAlgebra;
use crate::terms::{w_word, Variable};

const UNDEFINED: u16 = u16::MAX;

/// A partial one-to-one map on `{0,…,N}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    image: Vec<u16>,
}

impl PartialInjection {
    pub fn empty(points: usize) -> PartialInjection {
        PartialInjection {
            image: vec![UNDEFINED; points],
        }
    }

    pub fn points(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, p: usize) -> Option<usize> {
        match self.image.get(p) {
            Some(&q) if q != UNDEFINED => Some(q as usize),
            _ => None,
        }
    }

    fn set(&mut self, p: usize, q: usize) {
        self.image[p] = q as u16;
    }

    /// Defined pairs `(p, q)` in increasing `p`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.points()).filter_map(|p| self.apply(p).map(|q| (p, q))).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.points()];
        self.pairs().into_iter().all(|(_, q)| !std::mem::replace(&mut seen[q], true))
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &PartialInjection) -> PartialInjection {
        PartialInjection {
            image: self
                .image
                .iter()
                .map(|&q| if q == UNDEFINED { UNDEFINED } else { other.image[q as usize] })
                .collect(),
        }
    }

    pub fn inverse(&self) -> PartialInjection {
        let mut out = PartialInjection::empty(self.points());
        for (p, q) in self.pairs() {
            out.set(q, p);
        }
        out
    }
}

impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = pairs.iter().map(|(p, q)| format!("{p}→{q}")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `S_n^{(h)}` with its generators.
#[derive(Clone, Debug)]
pub struct Kadourek {
    pub algebra: FiniteAlgebra,
    /// `χ_{i₁…i_h}` and its element index, variables in lexicographic order.
    pub generators: Vec<(Variable, usize)>,
    /// The partial map of each element.
    pub maps: Vec<PartialInjection>,
}

impl Kadourek {
    pub fn generator(&self, var: &Variable) -> Option<usize> {
        self.generators.iter().find(|(v, _)| v == var).map(|&(_, i)| i)
    }
}

pub fn kadourek_semigroup(n: usize, h: usize) -> Result<Kadourek, ConstructionError> {
    kadourek_semigroup_with_budget(n, h, DEFAULT_MAX_CARRIER)
}

/// Element 0 is the empty map, then the generators, their inverses, and the
/// rest of the closure in breadth-first order.
pub fn kadourek_semigroup_with_budget(
    n: usize,
    h: usize,
    max_carrier: usize,
) -> Result<Kadourek, ConstructionError> {
    if n < 2 || h == 0 {
        return Err(ConstructionError::BadParameter(format!(
            "Kaďourek semigroups need n ≥ 2 and h ≥ 1 (got {n}, {h})"
        )));
    }
    let w = w_word(n, h)?;
    let points = w.len() + 1;
    if points >= UNDEFINED as usize {
        return Err(ConstructionError::CarrierTooLarge {
            what: "point set".into(),
            size: points as u128,
            budget: UNDEFINED as u128,
        });
    }
    let alphabet = w.alphabet();
    let mut chi: Vec<PartialInjection> = vec![PartialInjection::empty(points); alphabet.len()];
    for (pos, letter) in w.letters().iter().enumerate() {
        let p = pos + 1;
        let g = alphabet.binary_search(&letter.var).expect("letter in alphabet");
        if letter.inverse {
            chi[g].set(p, p - 1);
        } else {
            chi[g].set(p - 1, p);
        }
    }
    debug_assert!(chi.iter().all(PartialInjection::is_injective));

    let mut maps: Vec<PartialInjection> = vec![PartialInjection::empty(points)];
    let mut index: HashMap<PartialInjection, u32> = HashMap::new();
    index.insert(maps[0].clone(), 0);
    let mut queue = VecDeque::new();
    let mut push = |m: PartialInjection, maps: &mut Vec<PartialInjection>, queue: &mut VecDeque<usize>| {
        if let Some(&i) = index.get(&m) {
            return Ok(i as usize);
        }
        if maps.len() >= max_carrier {
            return Err(ConstructionError::ClosureBudgetExceeded(max_carrier));
        }
        let i = maps.len();
        index.insert(m.clone(), i as u32);
        maps.push(m);
        queue.push_back(i);
        Ok(i)
    };
    let mut generators = Vec::with_capacity(alphabet.len());
    for (v, c) in alphabet.iter().zip(&chi) {
        generators.push((v.clone(), push(c.clone(), &mut maps, &mut queue)?));
    }
    let mut gens: Vec<PartialInjection> = chi.clone();
    for c in &chi {
        push(c.inverse(), &mut maps, &mut queue)?;
        gens.push(c.inverse());
    }
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let product = maps[i].then(g);
            push(product, &mut maps, &mut queue)?;
        }
    }

    let size = maps.len();
    let mut mul = Vec::with_capacity(size * size);
    for a in &maps {
        for b in &maps {
            mul.push(index[&a.then(b)]);
        }
    }
    let star = maps.iter().map(|m| index[&m.inverse()]).collect();
    let labels = maps.iter().map(|m| m.to_string()).collect();
    let algebra = FiniteAlgebra::new(labels, mul, None, Some(star))?
        .with_meta(json!({"construction": "kadourek", "n": n, "h": h}));
    Ok(Kadourek {
        algebra,
        generators,
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;

    fn var(indices: &[u32]) -> Variable {
        Variable(indices.to_vec())
    }

    #[test]
    fn generators_for_two_one() {
        let k = kadourek_semigroup(2, 1).unwrap();
        let chi1 = &k.maps[k.generator(&var(&[1])).unwrap()];
        let chi2 = &k.maps[k.generator(&var(&[2])).unwrap()];
        assert_eq!(chi1.pairs(), vec![(0, 1), (3, 2)]);
        assert_eq!(chi2.pairs(), vec![(1, 2), (4, 3)]);
        assert_eq!(validate(&k.algebra), Ok(()));
        assert_eq!(k.algebra.label(0), "∅");
    }

    #[test]
    fn unique_inverses() {
        let k = kadourek_semigroup(2, 1).unwrap();
        let s = &k.algebra;
        let n = s.size();
        for a in 0..n {
            let inverses: Vec<usize> = (0..n)
                .filter(|&b| s.mul(s.mul(a, b), a) == a && s.mul(s.mul(b, a), b) == b)
                .collect();
            assert_eq!(inverses, vec![s.star(a).unwrap()]);
        }
    }

    #[test]
    fn composition_order() {
        let mut a = PartialInjection::empty(3);
        a.set(0, 1);
        let mut b = PartialInjection::empty(3);
        b.set(1, 2);
        assert_eq!(a.then(&b).pairs(), vec![(0, 2)]);
        assert!(b.then(&a).pairs().is_empty());
        assert_eq!(a.then(&b).to_string(), "[0→2]");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(kadourek_semigroup(1, 1).is_err());
        assert!(kadourek_semigroup(2, 0).is_err());
    }
}
