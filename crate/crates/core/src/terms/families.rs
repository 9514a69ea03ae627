use serde::{Deserialize, Serialize};

use super::{check_length, Letter, Substitution, Term, TermError, Variable, DEFAULT_LENGTH_BUDGET};
use crate::algebra::FiniteAlgebra;

/// Index pattern of the first-level word over `1..=2n`:
/// `1 … 2n (n … 1 · n+1 … 2n)^{2m−1}`.
fn v_pattern(n: usize, m: u64) -> impl Iterator<Item = usize> + Clone {
    let head = 1..=2 * n;
    let body = (1..=n).rev().chain(n + 1..=2 * n);
    head.chain(std::iter::repeat_n(body, (2 * m - 1) as usize).flatten())
}

/// `σ_{width,j}`: appends `j` to the indices of `var`.
pub fn sigma_apply(width: u32, j: u32, var: &Variable) -> Result<Variable, TermError> {
    if j == 0 || j > width {
        return Err(TermError::BadParameter(format!("σ index {j} outside 1..={width}")));
    }
    if var.indices().iter().any(|&i| i > width) {
        return Err(TermError::BadParameter(format!("{var} exceeds width {width}")));
    }
    Ok(var.extended(&[j]))
}

/// The word `v_{n,m}^{(h)}` kept in its recursive form. Level `h` is the
/// first-level pattern applied to `2n` copies of level `h−1`, copy `j`
/// having `j` appended to every index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockWord {
    pub n: usize,
    pub m: u64,
    pub h: usize,
}

impl std::fmt::Display for BlockWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "v[{},{},{}]", self.n, self.m, self.h)
    }
}

/// `v_{n,m}^{(h)}` for `n, m, h ≥ 1`.
pub fn v_word(n: usize, m: u64, h: usize) -> Result<BlockWord, TermError> {
    if n == 0 || m == 0 || h == 0 {
        return Err(TermError::BadParameter(format!(
            "v requires n, m, h ≥ 1 (got {n}, {m}, {h})"
        )));
    }
    Ok(BlockWord { n, m, h })
}

impl BlockWord {
    /// Number of blocks per node, `2n`.
    pub fn width(&self) -> usize {
        2 * self.n
    }

    /// Number of distinct variables, `(2n)^h`.
    pub fn leaf_count(&self) -> Option<u128> {
        (self.width() as u128).checked_pow(self.h as u32)
    }

    /// Length of the flat word, `(4nm)^h`.
    pub fn flat_len(&self) -> Option<u128> {
        (4 * self.n as u128).checked_mul(self.m as u128)?.checked_pow(self.h as u32)
    }

    /// Variable of leaf `k`, where `i₁` is the least significant base-`2n` digit.
    /// Leaves `k·2n … k·2n+2n−1` are the children of node `k` one level up.
    pub fn leaf_variable(&self, mut k: u128) -> Variable {
        let w = self.width() as u128;
        let indices = (0..self.h)
            .map(|_| {
                let d = (k % w) as u32 + 1;
                k /= w;
                d
            })
            .collect();
        Variable(indices)
    }

    /// Inverse of [`BlockWord::leaf_variable`].
    pub fn leaf_index(&self, var: &Variable) -> Option<u128> {
        let w = self.width() as u128;
        if var.depth() != self.h || var.indices().iter().any(|&i| i == 0 || i as u128 > w) {
            return None;
        }
        Some(
            var.indices()
                .iter()
                .rev()
                .fold(0u128, |acc, &i| acc * w + (i as u128 - 1)),
        )
    }

    /// All variables in lexicographic order.
    pub fn alphabet(&self, budget: u128) -> Result<Vec<Variable>, TermError> {
        let count = self.leaf_count().unwrap_or(u128::MAX);
        check_length(count, budget)?;
        let mut vars: Vec<Variable> = (0..count).map(|k| self.leaf_variable(k)).collect();
        vars.sort();
        Ok(vars)
    }

    pub fn flatten(&self) -> Result<Term, TermError> {
        self.flatten_with_budget(DEFAULT_LENGTH_BUDGET)
    }

    pub fn flatten_with_budget(&self, budget: u128) -> Result<Term, TermError> {
        check_length(self.flat_len().unwrap_or(u128::MAX), budget)?;
        let base: Vec<Variable> = v_pattern(self.n, self.m)
            .map(|i| Variable::single(i as u32))
            .collect();
        let mut word = base.clone();
        for _ in 1..self.h {
            word = base
                .iter()
                .flat_map(|top| {
                    let j = top.indices()[0];
                    word.iter().map(move |v| v.extended(&[j]))
                })
                .collect();
        }
        Term::word(word)
    }

    /// Value of a node from its `2n` child values:
    /// `X·Y·(X'·Y)^{2m−1}` with `X = b₁…b_n`, `X' = b_n…b₁`, `Y = b_{n+1}…b_{2n}`.
    pub fn combine(&self, alg: &FiniteAlgebra, children: &[usize]) -> usize {
        let n = self.n;
        debug_assert_eq!(children.len(), 2 * n);
        let x = alg.product(children[..n].iter().copied()).unwrap();
        let xr = alg.product(children[..n].iter().rev().copied()).unwrap();
        let y = alg.product(children[n..].iter().copied()).unwrap();
        let tail = alg.pow(alg.mul(xr, y), 2 * self.m - 1);
        alg.mul(alg.mul(x, y), tail)
    }

    /// Compositional evaluation; never materializes the flat word.
    pub fn evaluate_with(&self, alg: &FiniteAlgebra, value: &dyn Fn(&Variable) -> usize) -> usize {
        fn go(
            bw: &BlockWord,
            alg: &FiniteAlgebra,
            value: &dyn Fn(&Variable) -> usize,
            level: usize,
            suffix: &mut Vec<u32>,
        ) -> usize {
            if level == 0 {
                let mut indices = suffix.clone();
                indices.reverse();
                return value(&Variable(indices));
            }
            let children: Vec<usize> = (1..=bw.width() as u32)
                .map(|j| {
                    suffix.push(j);
                    let v = go(bw, alg, value, level - 1, suffix);
                    suffix.pop();
                    v
                })
                .collect();
            bw.combine(alg, &children)
        }
        go(self, alg, value, self.h, &mut Vec::with_capacity(self.h))
    }

    pub fn evaluate(&self, alg: &FiniteAlgebra, sub: &Substitution) -> Result<usize, TermError> {
        let count = self.leaf_count().unwrap_or(u128::MAX);
        check_length(count, DEFAULT_LENGTH_BUDGET)?;
        for k in 0..count {
            let v = self.leaf_variable(k);
            match sub.get(&v) {
                None => return Err(TermError::UnboundVariable(v)),
                Some(e) if e >= alg.size() => return Err(TermError::ElementOutOfRange(e)),
                Some(_) => {}
            }
        }
        Ok(self.evaluate_with(alg, &|v| sub.get(v).unwrap()))
    }
}

/// `u_{n,k,m} = x₁…x_{n+k} (x_n…x₁ · x_{n+1}…x_{n+k})^{2m−1}`.
pub fn u_word(n: usize, k: usize, m: u64) -> Result<Term, TermError> {
    if n + k == 0 || m == 0 {
        return Err(TermError::BadParameter(format!(
            "u requires n + k > 0 and m ≥ 1 (got {n}, {k}, {m})"
        )));
    }
    let len = (n + k) as u128 * 2 * m as u128;
    check_length(len, DEFAULT_LENGTH_BUDGET)?;
    let head = 1..=n + k;
    let body = (1..=n).rev().chain(n + 1..=n + k);
    let indices: Vec<u32> = head
        .chain(std::iter::repeat_n(body, (2 * m - 1) as usize).flatten())
        .map(|i| i as u32)
        .collect();
    Term::from_indices(&indices)
}

/// `w_n^{(h)}`, with block inverses expanded letter by letter.
pub fn w_word(n: usize, h: usize) -> Result<Term, TermError> {
    if n == 0 || h == 0 {
        return Err(TermError::BadParameter(format!("w requires n, h ≥ 1 (got {n}, {h})")));
    }
    let len = (2 * n as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    check_length(len, DEFAULT_LENGTH_BUDGET)?;
    let vars: Vec<Variable> = (1..=n as u32).map(Variable::single).collect();
    let mut letters: Vec<Letter> = vars.iter().cloned().map(Letter::plain).collect();
    letters.extend(vars.into_iter().map(Letter::inverted));
    let mut term = Term::new(letters)?;
    for _ in 1..h {
        let copies: Vec<Term> = (1..=n as u32)
            .map(|j| term.map_vars(|v| v.extended(&[j])))
            .collect();
        let mut next = copies[0].clone();
        for c in &copies[1..] {
            next = next.concat(c);
        }
        for c in &copies {
            next = next.concat(&c.inverse());
        }
        term = next;
    }
    Ok(term)
}

/// Image of `v_{n,m}^{(h)}` under `ζ`, which sends `x_{i₁…i_h}` to
/// `v_{n,m}^{(r)}` with `i₁…i_h` appended to all its indices.
pub fn zeta_expand(n: usize, m: u64, h: usize, r: usize) -> Result<Term, TermError> {
    let outer = v_word(n, m, h)?;
    let total = outer.flat_len().and_then(|l| {
        let inner = (4 * n as u128).checked_mul(m as u128)?.checked_pow(r as u32)?;
        l.checked_mul(inner)
    });
    check_length(total.unwrap_or(u128::MAX), DEFAULT_LENGTH_BUDGET)?;
    let flat = outer.flatten()?;
    if r == 0 {
        return Ok(flat);
    }
    let inner = v_word(n, m, r)?.flatten()?;
    let mut letters = Vec::new();
    for l in flat.letters() {
        letters.extend(
            inner
                .letters()
                .iter()
                .map(|x| Letter::plain(x.var.extended(l.var.indices()))),
        );
    }
    Term::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn flat(n: usize, m: u64, h: usize) -> Term {
        v_word(n, m, h).unwrap().flatten().unwrap()
    }

    #[test]
    fn small_v_words() {
        assert_eq!(flat(1, 1, 1), parse_term("x1 x2 x1 x2").unwrap());
        assert_eq!(flat(2, 1, 1), parse_term("x1 x2 x3 x4 x2 x1 x3 x4").unwrap());
        let expected = parse_term(
            "x1_1 x2_1 x1_1 x2_1 x1_2 x2_2 x1_2 x2_2 x1_1 x2_1 x1_1 x2_1 x1_2 x2_2 x1_2 x2_2",
        )
        .unwrap();
        assert_eq!(flat(1, 1, 2), expected);
        assert!(v_word(1, 1, 0).is_err());
    }

    #[test]
    fn u_words() {
        assert_eq!(u_word(0, 2, 1).unwrap(), parse_term("x1 x2 x1 x2").unwrap());
        assert_eq!(u_word(2, 1, 1).unwrap(), parse_term("x1 x2 x3 x2 x1 x3").unwrap());
        for (n, m) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            assert_eq!(u_word(n, n, m).unwrap(), flat(n, m, 1));
        }
        assert!(u_word(0, 0, 1).is_err());
    }

    #[test]
    fn sigma() {
        let x3 = Variable::single(3);
        assert_eq!(sigma_apply(4, 2, &x3).unwrap(), Variable(vec![3, 2]));
        assert!(sigma_apply(4, 5, &x3).is_err());
        // Copy j of level h−1 is the j-th block of level h.
        for (n, m) in [(1, 1), (2, 1), (1, 2)] {
            let lower = flat(n, m, 1);
            let upper = flat(n, m, 2);
            let len = lower.len();
            for j in 1..=2 * n as u32 {
                let copy = lower.map_vars(|v| sigma_apply(2 * n as u32, j, v).unwrap());
                let start = (j as usize - 1) * len;
                assert_eq!(&upper.letters()[start..start + len], copy.letters());
            }
        }
    }

    #[test]
    fn w_words() {
        assert_eq!(w_word(2, 1).unwrap(), parse_term("x1 x2 x1' x2'").unwrap());
        assert_eq!(w_word(1, 1).unwrap(), parse_term("x1 x1'").unwrap());
        let expected = parse_term(
            "x1_1 x2_1 x1_1' x2_1' x1_2 x2_2 x1_2' x2_2' \
             x2_1 x1_1 x2_1' x1_1' x2_2 x1_2 x2_2' x1_2'",
        )
        .unwrap();
        assert_eq!(w_word(2, 2).unwrap(), expected);
    }

    #[test]
    fn lengths() {
        for n in 1..=3 {
            for m in 1..=3u64 {
                for h in 1..=3 {
                    let bw = v_word(n, m, h).unwrap();
                    let expected = (4 * n as u128 * m as u128).pow(h as u32);
                    assert_eq!(bw.flat_len(), Some(expected));
                    if expected <= 100_000 {
                        assert_eq!(bw.flatten().unwrap().len() as u128, expected);
                    }
                }
            }
        }
        for n in 1..=3 {
            for h in 1..=4 {
                assert_eq!(w_word(n, h).unwrap().len(), (2 * n).pow(h as u32));
            }
        }
    }

    #[test]
    fn zeta_matches_higher_level() {
        assert_eq!(zeta_expand(1, 1, 1, 1).unwrap(), flat(1, 1, 2));
        assert_eq!(zeta_expand(2, 1, 1, 1).unwrap(), flat(2, 1, 2));
        assert_eq!(zeta_expand(2, 1, 1, 0).unwrap(), flat(2, 1, 1));
        for (n, m, h, r) in [(1, 1, 2, 1), (1, 2, 1, 2), (2, 1, 2, 1), (1, 1, 1, 3)] {
            assert_eq!(zeta_expand(n, m, h, r).unwrap(), flat(n, m, h + r));
        }
    }

    #[test]
    fn leaf_numbering() {
        let bw = v_word(2, 1, 3).unwrap();
        for k in 0..64 {
            assert_eq!(bw.leaf_index(&bw.leaf_variable(k)), Some(k));
        }
        assert_eq!(bw.leaf_variable(1), Variable(vec![2, 1, 1]));
        let alphabet = bw.alphabet(1000).unwrap();
        assert_eq!(alphabet.len(), 64);
        assert_eq!(alphabet, flat(2, 1, 3).alphabet());
    }

    #[test]
    fn budget() {
        let bw = v_word(2, 4, 5).unwrap();
        assert!(matches!(
            bw.flatten(),
            Err(TermError::LengthBudgetExceeded { .. })
        ));
    }
}
