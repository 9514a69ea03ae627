//! Words and involution terms, the `v`, `u` and `w` families, a small
//! text syntax, and evaluation into finite algebras.

mod eval;
mod families;
mod parse;

pub use eval::{evaluate, BlockPlan, TermPlan};
pub use families::{sigma_apply, u_word, v_word, w_word, zeta_expand, BlockWord};
pub use parse::{format_term, parse_term};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of letters in a materialized term.
pub const DEFAULT_LENGTH_BUDGET: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("terms must contain at least one letter")]
    Empty,
    #[error("term would have {length} letters, budget is {budget}")]
    LengthBudgetExceeded { length: u128, budget: u128 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("term uses inverses but the algebra has no involution")]
    MissingStar,
    #[error("substitution does not assign {0}")]
    UnboundVariable(Variable),
    #[error("element {0} is outside the carrier")]
    ElementOutOfRange(usize),
}

/// A variable `x_{i₁…i_h}`; indices start at 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variable(pub Vec<u32>);

impl Variable {
    pub fn new(indices: Vec<u32>) -> Variable {
        debug_assert!(!indices.is_empty() && indices.iter().all(|&i| i >= 1));
        Variable(indices)
    }

    pub fn single(i: u32) -> Variable {
        Variable(vec![i])
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// The variable with `suffix` appended to its indices.
    pub fn extended(&self, suffix: &[u32]) -> Variable {
        let mut v = self.0.clone();
        v.extend_from_slice(suffix);
        Variable(v)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "_")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A variable or its formal inverse `x'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub var: Variable,
    pub inverse: bool,
}

impl Letter {
    pub fn plain(var: Variable) -> Letter {
        Letter { var, inverse: false }
    }

    pub fn inverted(var: Variable) -> Letter {
        Letter { var, inverse: true }
    }

    pub fn flip(&self) -> Letter {
        Letter {
            var: self.var.clone(),
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.var, if self.inverse { "'" } else { "" })
    }
}

/// A non-empty product of letters. Without inverse letters this is a plain
/// semigroup word; otherwise an involution term in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    letters: Vec<Letter>,
}

impl Term {
    pub fn new(letters: Vec<Letter>) -> Result<Term, TermError> {
        if letters.is_empty() {
            return Err(TermError::Empty);
        }
        Ok(Term { letters })
    }

    /// A plain word from variables.
    pub fn word(vars: impl IntoIterator<Item = Variable>) -> Result<Term, TermError> {
        Term::new(vars.into_iter().map(Letter::plain).collect())
    }

    /// A plain word over single-index variables, e.g. `[1, 2, 1]` is `x1 x2 x1`.
    pub fn from_indices(indices: &[u32]) -> Result<Term, TermError> {
        Term::word(indices.iter().map(|&i| Variable::single(i)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_inverse(&self) -> bool {
        self.letters.iter().any(|l| l.inverse)
    }

    /// Distinct variables in lexicographic order of index tuples.
    pub fn alphabet(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = self.letters.iter().map(|l| l.var.clone()).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// `(uv)' = v'u'` applied letter by letter.
    pub fn inverse(&self) -> Term {
        Term {
            letters: self.letters.iter().rev().map(Letter::flip).collect(),
        }
    }

    pub fn concat(&self, other: &Term) -> Term {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Term { letters }
    }

    pub fn pow(&self, k: usize, budget: u128) -> Result<Term, TermError> {
        if k == 0 {
            return Err(TermError::BadParameter("exponent must be positive".into()));
        }
        check_length(self.len() as u128 * k as u128, budget)?;
        Ok(Term {
            letters: std::iter::repeat_n(self.letters.iter().cloned(), k).flatten().collect(),
        })
    }

    /// Renames every variable.
    pub fn map_vars(&self, f: impl Fn(&Variable) -> Variable) -> Term {
        Term {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    var: f(&l.var),
                    inverse: l.inverse,
                })
                .collect(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_length(length: u128, budget: u128) -> Result<(), TermError> {
    if length > budget {
        Err(TermError::LengthBudgetExceeded { length, budget })
    } else {
        Ok(())
    }
}

/// An assignment of carrier elements to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution(pub BTreeMap<Variable, usize>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, usize)>) -> Substitution {
        Substitution(pairs.into_iter().collect())
    }

    pub fn insert(&mut self, var: Variable, value: usize) {
        self.0.insert(var, value);
    }

    pub fn get(&self, var: &Variable) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &usize)> {
        self.0.iter()
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, e)| format!("{v}↦{e}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
