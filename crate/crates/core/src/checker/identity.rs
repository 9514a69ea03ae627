use std::fmt;
use std::str::FromStr;

use super::CheckError;
use crate::algebra::FiniteAlgebra;
use crate::analysis::identity_element;
use crate::terms::{
    parse_term, v_word, BlockPlan, BlockWord, Term, TermError, TermPlan, Variable, DEFAULT_LENGTH_BUDGET,
};

/// One side of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Term(Term),
    /// A `v` word kept in block form.
    Block(BlockWord),
    Pow(Box<Expr>, u64),
    /// The identity element of the algebra.
    One,
}

impl Expr {
    pub fn pow(self, k: u64) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn square(self) -> Expr {
        self.pow(2)
    }

    fn collect_alphabet(&self, budget: u128, out: &mut Vec<Variable>) -> Result<(), TermError> {
        match self {
            Expr::Term(t) => out.extend(t.alphabet()),
            Expr::Block(b) => out.extend(b.alphabet(budget)?),
            Expr::Pow(e, _) => e.collect_alphabet(budget, out)?,
            Expr::One => {}
        }
        Ok(())
    }

    /// The underlying block word when this side is `v`, `v^k` or `1`.
    pub(crate) fn block_form(&self) -> Option<(Option<BlockWord>, u64)> {
        match self {
            Expr::Block(b) => Some((Some(*b), 1)),
            Expr::One => Some((None, 0)),
            Expr::Pow(e, k) => {
                let (b, j) = e.block_form()?;
                Some((b, j * k))
            }
            Expr::Term(_) => None,
        }
    }

    fn parse(text: &str) -> Result<Expr, CheckError> {
        let s = text.trim();
        if s == "1" {
            return Ok(Expr::One);
        }
        if let Some(e) = parse_block(s)? {
            return Ok(e);
        }
        Ok(Expr::Term(parse_term(s)?))
    }
}

/// `v[n,m,h]` optionally followed by `^k`, and nothing else.
fn parse_block(s: &str) -> Result<Option<Expr>, CheckError> {
    let Some(rest) = s.strip_prefix("v[") else {
        return Ok(None);
    };
    let Some(close) = rest.find(']') else {
        return Ok(None);
    };
    let params: Vec<&str> = rest[..close].split(',').map(str::trim).collect();
    let tail = rest[close + 1..].trim();
    let exp = if tail.is_empty() {
        None
    } else if let Some(k) = tail.strip_prefix('^') {
        match k.trim().parse::<u64>() {
            Ok(k) => Some(k),
            Err(_) => return Ok(None),
        }
    } else {
        return Ok(None);
    };
    let nums: Vec<u64> = match params.iter().map(|p| p.parse::<u64>()).collect() {
        Ok(v) => v,
        Err(_) => return Ok(None),
    };
    let [n, m, h] = nums[..] else {
        return Ok(None);
    };
    let block = Expr::Block(v_word(n as usize, m, h as usize)?);
    Ok(Some(match exp {
        Some(0) => return Err(CheckError::BadIdentity("exponent must be positive".into())),
        Some(k) => block.pow(k),
        None => block,
    }))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Term(t) => write!(f, "{t}"),
            Expr::Block(b) => write!(f, "{b}"),
            Expr::Pow(e, k) => match &**e {
                Expr::Term(t) if t.len() > 1 => write!(f, "({t})^{k}"),
                Expr::Pow(..) => write!(f, "({e})^{k}"),
                _ => write!(f, "{e}^{k}"),
            },
            Expr::One => f.write_str("1"),
        }
    }
}

/// `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Identity {
    pub fn new(lhs: Expr, rhs: Expr) -> Identity {
        Identity { lhs, rhs }
    }

    /// `e = e²`.
    pub fn idempotent(e: Expr) -> Identity {
        Identity::new(e.clone(), e.square())
    }

    /// Every variable on either side, sorted.
    pub fn alphabet(&self, budget: u128) -> Result<Vec<Variable>, TermError> {
        let mut vars = Vec::new();
        self.lhs.collect_alphabet(budget, &mut vars)?;
        self.rhs.collect_alphabet(budget, &mut vars)?;
        vars.sort();
        vars.dedup();
        Ok(vars)
    }

    /// The shared block word and the exponents of both sides (0 for `1`).
    pub(crate) fn block_form(&self) -> Result<(BlockWord, u64, u64), CheckError> {
        let err = || CheckError::NotBlockIdentity(self.to_string());
        let (a, i) = self.lhs.block_form().ok_or_else(err)?;
        let (b, j) = self.rhs.block_form().ok_or_else(err)?;
        let word = match (a, b) {
            (Some(x), Some(y)) if x == y => x,
            (Some(x), None) | (None, Some(x)) => x,
            _ => return Err(err()),
        };
        Ok((word, i, j))
    }
}

impl FromStr for Identity {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Identity, CheckError> {
        let parts: Vec<&str> = s.split('=').collect();
        let [lhs, rhs] = parts[..] else {
            return Err(CheckError::BadIdentity(format!("expected exactly one '=' in {s:?}")));
        };
        Ok(Identity::new(Expr::parse(lhs)?, Expr::parse(rhs)?))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// An [`Expr`] compiled against a sorted alphabet.
#[derive(Clone, Debug)]
pub(crate) enum Compiled {
    Term(TermPlan),
    Block(BlockPlan),
    Pow(Box<Compiled>, u64),
    Const(usize),
}

impl Compiled {
    pub(crate) fn new(expr: &Expr, alphabet: &[Variable], alg: &FiniteAlgebra) -> Result<Compiled, CheckError> {
        Ok(match expr {
            Expr::Term(t) => Compiled::Term(TermPlan::compile(t, alphabet, alg)?),
            Expr::Block(b) => Compiled::Block(BlockPlan::compile(*b, alphabet)?),
            Expr::Pow(e, k) => Compiled::Pow(Box::new(Compiled::new(e, alphabet, alg)?), *k),
            Expr::One => Compiled::Const(identity_element(alg).ok_or(CheckError::NoIdentityElement)?),
        })
    }

    #[inline]
    pub(crate) fn eval(&self, alg: &FiniteAlgebra, values: &[usize]) -> usize {
        match self {
            Compiled::Term(p) => p.eval(alg, values),
            Compiled::Block(p) => p.eval(alg, values),
            Compiled::Pow(e, k) => alg.pow(e.eval(alg, values), *k),
            Compiled::Const(c) => *c,
        }
    }
}

pub(crate) fn compile_pair(
    identity: &Identity,
    alg: &FiniteAlgebra,
) -> Result<(Vec<Variable>, Compiled, Compiled), CheckError> {
    let alphabet = identity.alphabet(DEFAULT_LENGTH_BUDGET)?;
    let lhs = Compiled::new(&identity.lhs, &alphabet, alg)?;
    let rhs = Compiled::new(&identity.rhs, &alphabet, alg)?;
    Ok((alphabet, lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sides() {
        let id: Identity = "v[2,4,5] = v[2,4,5]^2".parse().unwrap();
        let v = v_word(2, 4, 5).unwrap();
        assert_eq!(id, Identity::idempotent(Expr::Block(v)));
        assert_eq!(id.to_string(), "v[2,4,5] = v[2,4,5]^2");
        let id: Identity = "x1 x2 = x2 x1".parse().unwrap();
        assert_eq!(id.alphabet(10).unwrap(), vec![Variable::single(1), Variable::single(2)]);
        let id: Identity = "v[1,6,2] = 1".parse().unwrap();
        assert_eq!(id.rhs, Expr::One);
        assert_eq!(id.block_form().unwrap(), (v_word(1, 6, 2).unwrap(), 1, 0));
        // A v macro inside a larger term is flattened.
        let id: Identity = "v[1,1,1] x1 = x1".parse().unwrap();
        assert!(matches!(id.lhs, Expr::Term(_)));
        assert!(id.block_form().is_err());
        assert!("x1 = x2 = x3".parse::<Identity>().is_err());
        assert!("x1".parse::<Identity>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["x1^2 = x1^4", "(x1 x2)^3 = x2", "v[2,2,3]^4 = 1"] {
            let id: Identity = s.parse().unwrap();
            let again: Identity = id.to_string().parse().unwrap();
            assert_eq!(id, again, "{s}");
        }
    }
}
