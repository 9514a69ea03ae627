//! Identity checking by exhaustive enumeration, seeded sampling and block
//! images, plus homomorphism verification and counterexample search.

mod block;
mod identity;
mod morphism;
mod search;

pub use block::{check_identity_block, BlockImages, BlockWitness};
pub use identity::{Expr, Identity};
pub use morphism::{verify_morphism, MorphismReport, MorphismSpec, MorphismViolation, Op, Signature};
pub use search::{
    check_identity_exhaustive, check_identity_sampled, check_membership_exhaustive, find_identity_violation,
    Domains, Strategy,
};

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::terms::{Substitution, TermError};

/// Default cap on evaluations for exhaustive and block checks.
pub const DEFAULT_EVALUATION_BUDGET: u128 = 100_000_000;

/// Environment variable overriding [`DEFAULT_EVALUATION_BUDGET`].
pub const BUDGET_ENV: &str = "BGLAB_BUDGET";

pub const DEFAULT_SEED: u64 = 1;

/// The evaluation budget, honouring `BGLAB_BUDGET` when it parses.
pub fn default_budget() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().replace('_', "").parse().ok())
        .unwrap_or(DEFAULT_EVALUATION_BUDGET)
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("cannot parse identity: {0}")]
    BadIdentity(String),
    #[error("the constant 1 needs an identity element, and the algebra has none")]
    NoIdentityElement,
    #[error("block mode needs both sides built from the same v word: {0}")]
    NotBlockIdentity(String),
    #[error("map is not total: {0}")]
    MapNotTotal(String),
    #[error("operation {0} is missing")]
    MissingOperation(&'static str),
    #[error("bad domain: {0}")]
    BadDomain(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Counterexample,
    NoCounterexampleFound,
    BudgetExceeded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Counterexample => "counterexample",
            Status::NoCounterexampleFound => "no_counterexample_found",
            Status::BudgetExceeded => "budget_exceeded",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub enum Witness {
    Substitution(Substitution),
    Block(BlockWitness),
}

impl Witness {
    /// A concrete substitution, when it fits in `budget` variables.
    pub fn substitution(&self, budget: u128) -> Option<Substitution> {
        match self {
            Witness::Substitution(s) => Some(s.clone()),
            Witness::Block(b) => b.substitution(budget).ok(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub evaluations: u128,
    pub seed: Option<u64>,
    /// Size of the search space when the budget was exceeded.
    pub attempted: Option<u128>,
}

impl CheckVerdict {
    pub(crate) fn new(status: Status, evaluations: u128) -> CheckVerdict {
        CheckVerdict {
            status,
            witness: None,
            evaluations,
            seed: None,
            attempted: None,
        }
    }

    pub(crate) fn budget(attempted: u128) -> CheckVerdict {
        CheckVerdict {
            attempted: Some(attempted),
            ..CheckVerdict::new(Status::BudgetExceeded, 0)
        }
    }

    pub fn is_counterexample(&self) -> bool {
        self.status == Status::Counterexample
    }

    /// `holds` or `no_counterexample_found`.
    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Holds | Status::NoCounterexampleFound)
    }

    /// JSON with element labels from `alg`.
    pub fn to_json(&self, alg: &FiniteAlgebra) -> Value {
        let witness = self.witness.as_ref().map(|w| match w {
            Witness::Substitution(s) => substitution_json(s, alg),
            Witness::Block(b) => {
                let mut v = json!({
                    "word": b.word.to_string(),
                    "value": alg.label(b.value),
                    "children": b.children.iter().map(|&c| alg.label(c)).collect::<Vec<_>>(),
                });
                if let Ok(s) = b.substitution(4096) {
                    v["substitution"] = substitution_json(&s, alg);
                }
                v
            }
        });
        json!({
            "status": self.status,
            "witness": witness,
            "evaluations": self.evaluations.to_string(),
            "seed": self.seed,
            "attempted": self.attempted.map(|a| a.to_string()),
        })
    }
}

fn substitution_json(s: &Substitution, alg: &FiniteAlgebra) -> Value {
    Value::Object(
        s.iter()
            .map(|(v, &e)| (v.to_string(), Value::String(alg.label(e).to_string())))
            .collect(),
    )
}
