//! The block-image method: the value of `v^{(h)}` depends only on the values
//! of its `2n` level-`h−1` blocks, so the set of values a level can take is
//! computed from the level below without touching the flat word.

use std::sync::Arc;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::identity::Identity;
use super::search::Domains;
use super::{CheckError, CheckVerdict, Status, Witness};
use crate::algebra::FiniteAlgebra;
use crate::analysis::identity_element;
use crate::terms::{BlockWord, Substitution, TermError};

/// Block words with at most this many leaves are sampled leaf by leaf.
pub(crate) const DIRECT_LEAF_LIMIT: u128 = 4096;

/// Largest carrier for which pair states `(X, X')` are tabulated densely.
const MAX_PAIR_STATES: usize = 1 << 24;

const NONE: u32 = u32::MAX;

/// Images `Img_0 = D`, `Img_{j+1} = {combine(c) : c ∈ Img_j^{2n}}` with one
/// realizing child tuple per value, and optionally the exact distribution of
/// each level under independent uniform leaves from `D`.
#[derive(Debug)]
pub struct BlockImages {
    word: BlockWord,
    levels: Vec<Vec<usize>>,
    /// `choices[j][s·2n .. s·2n+2n]` realizes `s` at level `j ≥ 1`.
    choices: Vec<Vec<u32>>,
    dist: Option<Vec<Vec<f64>>>,
    evaluations: u128,
}

/// Chains of partial products with a back pointer per state.
struct Chain {
    /// Reached states per step, ascending.
    states: Vec<Vec<u32>>,
    /// Per step, dense: `(previous state, appended element)`.
    parent: Vec<Vec<(u32, u32)>>,
    prob: Vec<f64>,
}

impl BlockImages {
    /// Levels `0..=depth`. Returns `Err(evaluations)` if `budget` runs out.
    pub fn compute(
        alg: &FiniteAlgebra,
        word: BlockWord,
        domain: &[usize],
        depth: usize,
        budget: u128,
        with_dist: bool,
    ) -> Result<BlockImages, u128> {
        let size = alg.size();
        if size.saturating_mul(size) > MAX_PAIR_STATES {
            return Err((size as u128).pow(3));
        }
        let mut domain = domain.to_vec();
        domain.sort_unstable();
        domain.dedup();
        let uniform = 1.0 / domain.len() as f64;
        let mut p0 = vec![0.0; size];
        for &d in &domain {
            p0[d] = uniform;
        }
        let mut images = BlockImages {
            word,
            levels: vec![domain],
            choices: vec![Vec::new()],
            dist: with_dist.then(|| vec![p0]),
            evaluations: 0,
        };
        let exp = 2 * word.m - 1;
        let powtab: Vec<usize> = (0..size).map(|a| alg.pow(a, exp)).collect();
        for _ in 0..depth {
            images.next_level(alg, &powtab, budget)?;
        }
        Ok(images)
    }

    fn spend(&mut self, amount: usize, budget: u128) -> Result<(), u128> {
        self.evaluations += amount as u128;
        if self.evaluations > budget {
            Err(self.evaluations)
        } else {
            Ok(())
        }
    }

    fn next_level(&mut self, alg: &FiniteAlgebra, powtab: &[usize], budget: u128) -> Result<(), u128> {
        let size = alg.size();
        let n = self.word.n;
        let img = self.levels.last().unwrap().clone();
        let p: Option<Vec<f64>> = self.dist.as_ref().map(|d| d.last().unwrap().clone());
        let pr = |c: usize| p.as_ref().map_or(0.0, |p| p[c]);

        let pairs = self.chain(n, size * size, &img, &pr, budget, |code, c| {
            let (x, xr) = (code / size, code % size);
            alg.mul(x, c) * size + alg.mul(c, xr)
        }, |c| c * size + c)?;
        let ys = self.chain(n, size, &img, &pr, budget, |y, c| alg.mul(y, c), |c| c)?;

        let pair_states = pairs.states.last().unwrap();
        let y_states = ys.states.last().unwrap();
        self.spend(pair_states.len() * y_states.len(), budget)?;
        let mut reached = vec![false; size];
        let mut choice = vec![NONE; size * 2 * n];
        let mut dist = vec![0.0; size];
        for &pc in pair_states {
            let (x, xr) = (pc as usize / size, pc as usize % size);
            for &y in y_states {
                let y = y as usize;
                let s = alg.mul(alg.mul(x, y), powtab[alg.mul(xr, y)]);
                if p.is_some() {
                    dist[s] += pairs.prob[pc as usize] * ys.prob[y];
                }
                if !reached[s] {
                    reached[s] = true;
                    let slot = &mut choice[s * 2 * n..(s + 1) * 2 * n];
                    slot[..n].copy_from_slice(&unwind(&pairs, pc));
                    slot[n..].copy_from_slice(&unwind(&ys, y as u32));
                }
            }
        }
        self.levels.push((0..size).filter(|&s| reached[s]).collect());
        self.choices.push(choice);
        if let Some(d) = self.dist.as_mut() {
            d.push(dist);
        }
        Ok(())
    }

    /// Runs `n` steps of `state ← step(state, c)` for `c ∈ img`, starting from `start(c)`.
    #[allow(clippy::too_many_arguments)]
    fn chain(
        &mut self,
        n: usize,
        states: usize,
        img: &[usize],
        pr: &dyn Fn(usize) -> f64,
        budget: u128,
        step: impl Fn(usize, usize) -> usize,
        start: impl Fn(usize) -> usize,
    ) -> Result<Chain, u128> {
        let with_dist = self.dist.is_some();
        let mut chain = Chain {
            states: Vec::with_capacity(n),
            parent: Vec::with_capacity(n),
            prob: if with_dist { vec![0.0; states] } else { Vec::new() },
        };
        let mut parent = vec![(NONE, NONE); states];
        let mut reached = Vec::new();
        for &c in img {
            let s = start(c);
            if with_dist {
                chain.prob[s] += pr(c);
            }
            if parent[s].1 == NONE {
                parent[s] = (NONE, c as u32);
                reached.push(s as u32);
            }
        }
        reached.sort_unstable();
        chain.states.push(reached);
        chain.parent.push(parent);
        for _ in 1..n {
            let prev = chain.states.last().unwrap();
            self.spend(prev.len() * img.len(), budget)?;
            let mut parent = vec![(NONE, NONE); states];
            let mut reached = Vec::new();
            let mut prob = if with_dist { vec![0.0; states] } else { Vec::new() };
            for &st in prev {
                for &c in img {
                    let s = step(st as usize, c);
                    if with_dist {
                        prob[s] += chain.prob[st as usize] * pr(c);
                    }
                    if parent[s].1 == NONE {
                        parent[s] = (st, c as u32);
                        reached.push(s as u32);
                    }
                }
            }
            reached.sort_unstable();
            chain.states.push(reached);
            chain.parent.push(parent);
            chain.prob = prob;
        }
        Ok(chain)
    }

    pub fn word(&self) -> BlockWord {
        self.word
    }

    /// Number of computed levels above the leaves.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// `Img_j`, ascending.
    pub fn image(&self, level: usize) -> &[usize] {
        &self.levels[level]
    }

    /// Probability of each element at `level`, if distributions were computed.
    pub fn distribution(&self, level: usize) -> Option<&[f64]> {
        self.dist.as_ref().map(|d| d[level].as_slice())
    }

    /// Child values realizing `value` at `level ≥ 1`.
    pub fn children(&self, level: usize, value: usize) -> Option<&[u32]> {
        let w = 2 * self.word.n;
        let c = self.choices.get(level)?.get(value * w..(value + 1) * w)?;
        (c[0] != NONE).then_some(c)
    }

    pub fn evaluations(&self) -> u128 {
        self.evaluations
    }
}

fn unwind(chain: &Chain, mut state: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(chain.parent.len());
    for step in chain.parent.iter().rev() {
        let (prev, c) = step[state as usize];
        out.push(c);
        state = prev;
    }
    out.reverse();
    out
}

/// A value of `v^{(h)}` refuting an identity, with the child values that
/// produce it. Expands to a full substitution on demand.
#[derive(Clone, Debug)]
pub struct BlockWitness {
    pub word: BlockWord,
    pub value: usize,
    /// Values of the `2n` top-level blocks.
    pub children: Vec<usize>,
    images: Arc<BlockImages>,
}

impl BlockWitness {
    /// Leaf values realizing the witness, in leaf order.
    pub fn leaves(&self, budget: u128) -> Result<Vec<usize>, TermError> {
        let count = self.word.leaf_count().unwrap_or(u128::MAX);
        if count > budget {
            return Err(TermError::LengthBudgetExceeded { length: count, budget });
        }
        let mut level = self.children.clone();
        for j in (1..self.word.h).rev() {
            level = level
                .iter()
                .flat_map(|&v| {
                    self.images
                        .children(j, v)
                        .expect("every image value has a realization")
                        .iter()
                        .map(|&c| c as usize)
                })
                .collect();
        }
        Ok(level)
    }

    pub fn substitution(&self, budget: u128) -> Result<Substitution, TermError> {
        let leaves = self.leaves(budget)?;
        Ok(Substitution::from_pairs(
            leaves.into_iter().enumerate().map(|(k, v)| (self.word.leaf_variable(k as u128), v)),
        ))
    }
}

/// Resolves the two sides as functions of the block value `s`.
fn side_fns(alg: &FiniteAlgebra, i: u64, j: u64) -> Result<impl Fn(usize) -> (usize, usize) + Sync + '_, CheckError> {
    let one = if i == 0 || j == 0 {
        Some(identity_element(alg).ok_or(CheckError::NoIdentityElement)?)
    } else {
        None
    };
    let side = move |s: usize, k: u64| if k == 0 { one.unwrap() } else { alg.pow(s, k) };
    Ok(move |s| (side(s, i), side(s, j)))
}

/// Exact check of an identity whose sides are `v`, its powers or `1`, over
/// every substitution with leaves in a single domain.
pub fn check_identity_block(
    alg: &FiniteAlgebra,
    identity: &Identity,
    domains: &Domains,
    budget: u128,
) -> Result<CheckVerdict, CheckError> {
    let (word, i, j) = identity.block_form()?;
    let domain = domains.uniform_set(alg)?;
    let sides = side_fns(alg, i, j)?;
    if i == j {
        return Ok(CheckVerdict::new(Status::Holds, 0));
    }
    let images = match BlockImages::compute(alg, word, &domain, word.h, budget, false) {
        Ok(im) => im,
        Err(attempted) => return Ok(CheckVerdict::budget(attempted)),
    };
    let top = images.image(word.h);
    let evaluations = images.evaluations() + top.len() as u128;
    let bad = top.iter().copied().find(|&s| {
        let (l, r) = sides(s);
        l != r
    });
    Ok(match bad {
        None => CheckVerdict::new(Status::Holds, evaluations),
        Some(s) => {
            let children = images.children(word.h, s).unwrap().iter().map(|&c| c as usize).collect();
            CheckVerdict {
                witness: Some(Witness::Block(BlockWitness {
                    word,
                    value: s,
                    children,
                    images: Arc::new(images),
                })),
                ..CheckVerdict::new(Status::Counterexample, evaluations)
            }
        }
    })
}

/// Sampling for block identities with too many leaves to draw directly:
/// the `2n` top-level block values are drawn from their exact distribution
/// under uniform leaves, which has the same law as drawing every leaf.
pub(crate) fn sample_block(
    alg: &FiniteAlgebra,
    identity: &Identity,
    domains: &Domains,
    samples: u64,
    seed: u64,
) -> Result<CheckVerdict, CheckError> {
    let (word, i, j) = identity.block_form()?;
    let domain = domains.uniform_set(alg)?;
    let sides = side_fns(alg, i, j)?;
    let images = BlockImages::compute(alg, word, &domain, word.h - 1, u128::MAX, true)
        .map_err(|_| CheckError::BadDomain("carrier too large for block distributions".into()))?;
    let support = images.image(word.h - 1).to_vec();
    let p = images.distribution(word.h - 1).unwrap();
    let weights: Vec<f64> = support.iter().map(|&s| p[s]).collect();
    let law = WeightedIndex::new(&weights).map_err(|e| CheckError::BadDomain(e.to_string()))?;
    let w = word.width();
    const CHUNK: u64 = 1024;
    let hit = (0..samples.div_ceil(CHUNK)).into_par_iter().find_map_first(|c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        let mut children = vec![0usize; w];
        for k in c * CHUNK..((c + 1) * CHUNK).min(samples) {
            for slot in children.iter_mut() {
                *slot = support[law.sample(&mut rng)];
            }
            let s = word.combine(alg, &children);
            let (l, r) = sides(s);
            if l != r {
                return Some((k, s, children));
            }
        }
        None
    });
    Ok(match hit {
        None => CheckVerdict {
            seed: Some(seed),
            ..CheckVerdict::new(Status::NoCounterexampleFound, samples as u128)
        },
        Some((k, value, children)) => CheckVerdict {
            witness: Some(Witness::Block(BlockWitness {
                word,
                value,
                children,
                images: Arc::new(images),
            })),
            seed: Some(seed),
            ..CheckVerdict::new(Status::Counterexample, k as u128 + 1)
        },
    })
}
