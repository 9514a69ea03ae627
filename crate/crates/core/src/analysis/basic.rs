use serde::Serialize;

use crate::algebra::FiniteAlgebra;

/// `E(S)`, ascending.
pub fn idempotents(alg: &FiniteAlgebra) -> Vec<usize> {
    (0..alg.size()).filter(|&a| alg.mul(a, a) == a).collect()
}

/// Least subset containing `seeds` and closed under multiplication, ascending.
pub fn mul_closure(alg: &FiniteAlgebra, seeds: &[usize]) -> Vec<usize> {
    let mut member = vec![false; alg.size()];
    let mut elements = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    for &s in seeds {
        if !std::mem::replace(&mut member[s], true) {
            pending.push(s);
        }
    }
    while let Some(x) = pending.pop() {
        elements.push(x);
        for i in 0..elements.len() {
            let y = elements[i];
            for p in [alg.mul(x, y), alg.mul(y, x)] {
                if !std::mem::replace(&mut member[p], true) {
                    pending.push(p);
                }
            }
        }
    }
    elements.sort_unstable();
    elements
}

/// `⟨E(S)⟩`, ascending.
pub fn idempotent_generated(alg: &FiniteAlgebra) -> Vec<usize> {
    mul_closure(alg, &idempotents(alg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockGroupVerdict {
    pub holds: bool,
    /// First pair of distinct idempotents `(e, f)` with `ef = e, fe = f` or `ef = f, fe = e`.
    pub witness: Option<(usize, usize)>,
}

pub fn is_block_group(alg: &FiniteAlgebra) -> BlockGroupVerdict {
    let es = idempotents(alg);
    for &e in &es {
        for &f in &es {
            if e == f {
                continue;
            }
            let (ef, fe) = (alg.mul(e, f), alg.mul(f, e));
            if (ef == e && fe == f) || (ef == f && fe == e) {
                return BlockGroupVerdict {
                    holds: false,
                    witness: Some((e, f)),
                };
            }
        }
    }
    BlockGroupVerdict {
        holds: true,
        witness: None,
    }
}

/// All `b` with `aba = a` and `bab = b`, ascending.
pub fn inverses_of(alg: &FiniteAlgebra, a: usize) -> Vec<usize> {
    (0..alg.size())
        .filter(|&b| {
            let ab = alg.mul(a, b);
            alg.mul(ab, a) == a && alg.mul(alg.mul(b, a), b) == b
        })
        .collect()
}

/// The inverses of every element.
pub fn inverse_report(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    (0..alg.size()).map(|a| inverses_of(alg, a)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InverseVerdict {
    pub holds: bool,
    /// First element with two or more inverses.
    pub witness: Option<usize>,
}

/// Whether every element has at most one inverse.
pub fn unique_inverse_check(alg: &FiniteAlgebra) -> InverseVerdict {
    let n = alg.size();
    for a in 0..n {
        let mut found = 0;
        for b in 0..n {
            if alg.mul(alg.mul(a, b), a) == a && alg.mul(alg.mul(b, a), b) == b {
                found += 1;
                if found > 1 {
                    return InverseVerdict {
                        holds: false,
                        witness: Some(a),
                    };
                }
            }
        }
    }
    InverseVerdict {
        holds: true,
        witness: None,
    }
}

/// Green's 𝒥-classes with their partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JClasses {
    /// Classes ordered by least element; each class ascending.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `below[c]`: classes `d ≠ c` with `J_d` reachable in one step from `J_c`.
    pub below: Vec<Vec<usize>>,
}

impl JClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether `J_d ≤ J_c`.
    pub fn is_below(&self, d: usize, c: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            if x == d {
                return true;
            }
            for &y in &self.below[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        false
    }
}

/// Strongly connected components of `a → a·t`, `a → t·a`; reachability
/// from `a` is exactly `S¹aS¹`.
pub fn j_classes(alg: &FiniteAlgebra) -> JClasses {
    let n = alg.size();
    let succ = |a: usize, k: usize| if k < n { alg.mul(a, k) } else { alg.mul(k - n, a) };
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < 2 * n {
                let w = succ(v, top.1);
                top.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = comps.len();
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(members);
                }
            }
        }
    }
    for c in &mut comps {
        c.sort_unstable();
    }
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&c| comps[c][0]);
    let mut rank = vec![0; comps.len()];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r;
    }
    let classes: Vec<Vec<usize>> = order.iter().map(|&c| comps[c].clone()).collect();
    let class_of: Vec<usize> = comp.iter().map(|&c| rank[c]).collect();
    let mut below = vec![Vec::new(); classes.len()];
    for a in 0..n {
        let c = class_of[a];
        for k in 0..2 * n {
            let d = class_of[succ(a, k)];
            if d != c {
                below[c].push(d);
            }
        }
    }
    for b in &mut below {
        b.sort_unstable();
        b.dedup();
    }
    JClasses {
        classes,
        class_of,
        below,
    }
}

/// Whether distinct elements generate distinct principal ideals.
pub fn j_trivial(alg: &FiniteAlgebra) -> bool {
    j_classes(alg).classes.iter().all(|c| c.len() == 1)
}

/// [`j_trivial`] for the subsemigroup on `subset`, which must be closed.
pub fn j_trivial_subset(alg: &FiniteAlgebra, subset: &[usize]) -> bool {
    let sub = alg.mul_reduct().induced(subset).expect("subset is closed under multiplication");
    j_trivial(&sub)
}

/// A multiplicative zero, if any.
pub fn zero_element(alg: &FiniteAlgebra) -> Option<usize> {
    let n = alg.size();
    (0..n).find(|&z| (0..n).all(|x| alg.mul(z, x) == z && alg.mul(x, z) == z))
}

/// A multiplicative identity, if any.
pub fn identity_element(alg: &FiniteAlgebra) -> Option<usize> {
    let n = alg.size();
    (0..n).find(|&e| (0..n).all(|x| alg.mul(e, x) == x && alg.mul(x, e) == x))
}
