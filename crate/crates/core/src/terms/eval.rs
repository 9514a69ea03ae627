use super::{BlockWord, Substitution, Term, TermError, Variable, DEFAULT_LENGTH_BUDGET};
use crate::algebra::FiniteAlgebra;

/// Left-to-right product of the term's letters under `sub`; inverse letters use the involution.
pub fn evaluate(term: &Term, sub: &Substitution, alg: &FiniteAlgebra) -> Result<usize, TermError> {
    if term.has_inverse() && !alg.has_star() {
        return Err(TermError::MissingStar);
    }
    let mut acc: Option<usize> = None;
    for l in term.letters() {
        let v = sub.get(&l.var).ok_or_else(|| TermError::UnboundVariable(l.var.clone()))?;
        if v >= alg.size() {
            return Err(TermError::ElementOutOfRange(v));
        }
        let v = if l.inverse { alg.star(v).unwrap() } else { v };
        acc = Some(match acc {
            None => v,
            Some(a) => alg.mul(a, v),
        });
    }
    Ok(acc.expect("terms are non-empty"))
}

/// A term compiled against a fixed variable order; values are passed by slot.
#[derive(Clone, Debug)]
pub struct TermPlan {
    letters: Vec<(u32, bool)>,
}

fn slot_of(alphabet: &[Variable], var: &Variable) -> Result<u32, TermError> {
    alphabet
        .binary_search(var)
        .map(|i| i as u32)
        .map_err(|_| TermError::UnboundVariable(var.clone()))
}

impl TermPlan {
    /// `alphabet` must be sorted.
    pub fn compile(term: &Term, alphabet: &[Variable], alg: &FiniteAlgebra) -> Result<TermPlan, TermError> {
        if term.has_inverse() && !alg.has_star() {
            return Err(TermError::MissingStar);
        }
        let letters = term
            .letters()
            .iter()
            .map(|l| Ok((slot_of(alphabet, &l.var)?, l.inverse)))
            .collect::<Result<_, TermError>>()?;
        Ok(TermPlan { letters })
    }

    #[inline]
    pub fn eval(&self, alg: &FiniteAlgebra, values: &[usize]) -> usize {
        let get = |&(slot, inv): &(u32, bool)| {
            let v = values[slot as usize];
            if inv {
                alg.star(v).unwrap()
            } else {
                v
            }
        };
        let mut it = self.letters.iter();
        let first = get(it.next().unwrap());
        it.fold(first, |acc, l| alg.mul(acc, get(l)))
    }
}

/// A block word compiled against a fixed variable order.
#[derive(Clone, Debug)]
pub struct BlockPlan {
    word: BlockWord,
    leaf_slots: Vec<u32>,
}

impl BlockPlan {
    pub fn compile(word: BlockWord, alphabet: &[Variable]) -> Result<BlockPlan, TermError> {
        let count = word.leaf_count().unwrap_or(u128::MAX);
        super::check_length(count, DEFAULT_LENGTH_BUDGET)?;
        let leaf_slots = (0..count)
            .map(|k| slot_of(alphabet, &word.leaf_variable(k)))
            .collect::<Result<_, _>>()?;
        Ok(BlockPlan { word, leaf_slots })
    }

    pub fn word(&self) -> BlockWord {
        self.word
    }

    pub fn eval(&self, alg: &FiniteAlgebra, values: &[usize]) -> usize {
        let leaves: Vec<usize> = self.leaf_slots.iter().map(|&s| values[s as usize]).collect();
        self.eval_leaves(alg, leaves)
    }

    /// Evaluates from values listed in leaf order.
    pub fn eval_leaves(&self, alg: &FiniteAlgebra, mut level: Vec<usize>) -> usize {
        let w = self.word.width();
        while level.len() > 1 {
            level = level.chunks(w).map(|c| self.word.combine(alg, c)).collect();
        }
        level[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{brandt_element, brandt_monoid_b21, brandt_semigroup, Group, GroupSpec};
    use crate::terms::{parse_term, u_word, v_word};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn u_word_in_b2() {
        let g = Group::from_spec(GroupSpec::Cyclic(1)).unwrap();
        let b2 = brandt_semigroup(&g, 2).unwrap();
        let t = |l, r| brandt_element(&g, 2, l, 0, r);
        let sub = Substitution::from_pairs([
            (Variable::single(1), t(0, 1)),
            (Variable::single(2), t(1, 0)),
            (Variable::single(3), t(0, 0)),
        ]);
        let u = u_word(2, 1, 1).unwrap();
        // Oracle, composing x1x2x3x2x1x3 by hand:
        // (1,2)(2,1) = (1,1); ·(1,1) = (1,1); ·(2,1): r=1 ≠ ℓ=2 gives 0.
        let value = evaluate(&u, &sub, &b2).unwrap();
        assert_eq!(value, 0);
        assert_eq!(b2.mul(value, value), value);
    }

    #[test]
    fn group_identity_substitution() {
        let s3 = Group::from_spec(GroupSpec::Symmetric(3)).unwrap();
        let v = v_word(2, 3, 1).unwrap().flatten().unwrap();
        let sub = Substitution::from_pairs(v.alphabet().into_iter().map(|x| (x, 0)));
        assert_eq!(evaluate(&v, &sub, s3.algebra()).unwrap(), 0);
    }

    #[test]
    fn block_matches_flat() {
        let b21 = brandt_monoid_b21();
        let bw = v_word(2, 2, 2).unwrap();
        let flat = bw.flatten().unwrap();
        let alphabet = flat.alphabet();
        let plan = BlockPlan::compile(bw, &alphabet).unwrap();
        let flat_plan = TermPlan::compile(&flat, &alphabet, &b21).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let values: Vec<usize> = alphabet.iter().map(|_| rng.gen_range(0..6)).collect();
            let sub = Substitution::from_pairs(alphabet.iter().cloned().zip(values.iter().copied()));
            let expected = evaluate(&flat, &sub, &b21).unwrap();
            assert_eq!(plan.eval(&b21, &values), expected);
            assert_eq!(flat_plan.eval(&b21, &values), expected);
            assert_eq!(bw.evaluate(&b21, &sub).unwrap(), expected);
        }
    }

    #[test]
    fn missing_star_and_unbound() {
        let b2 = brandt_semigroup(&Group::from_spec(GroupSpec::Cyclic(1)).unwrap(), 2).unwrap();
        let t = parse_term("x1 x1'").unwrap();
        let sub = Substitution::from_pairs([(Variable::single(1), 0)]);
        assert_eq!(evaluate(&t, &sub, &b2), Err(TermError::MissingStar));
        let t = parse_term("x1 x2").unwrap();
        assert!(matches!(evaluate(&t, &sub, &b2), Err(TermError::UnboundVariable(_))));
    }

    #[test]
    fn star_letters() {
        let b21 = brandt_monoid_b21();
        let t = parse_term("x1 x1'").unwrap();
        let sub = Substitution::from_pairs([(Variable::single(1), 2)]);
        // a·a* = a·b = e
        assert_eq!(evaluate(&t, &sub, &b21).unwrap(), 4);
    }
}
