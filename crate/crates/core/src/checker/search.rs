use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::block::{check_identity_block, sample_block, DIRECT_LEAF_LIMIT};
use super::identity::{compile_pair, Compiled, Expr, Identity};
use super::{CheckError, CheckVerdict, Status, Witness};
use crate::algebra::FiniteAlgebra;
use crate::terms::{Substitution, Variable, DEFAULT_LENGTH_BUDGET};

const CHUNK: u128 = 4096;
const SAMPLE_CHUNK: u64 = 1024;

/// Element sets for the variables of a check. Variables without an entry
/// range over `default`, or over the whole carrier.
#[derive(Clone, Debug, Default)]
pub struct Domains {
    pub default: Option<Vec<usize>>,
    pub vars: BTreeMap<Variable, Vec<usize>>,
}

impl Domains {
    pub fn all() -> Domains {
        Domains::default()
    }

    pub fn uniform(set: Vec<usize>) -> Domains {
        Domains {
            default: Some(set),
            vars: BTreeMap::new(),
        }
    }

    pub fn with(mut self, var: Variable, set: Vec<usize>) -> Domains {
        self.vars.insert(var, set);
        self
    }

    pub(crate) fn resolve(&self, alg: &FiniteAlgebra, vars: &[Variable]) -> Result<Vec<Vec<usize>>, CheckError> {
        let full: Vec<usize> = (0..alg.size()).collect();
        vars.iter()
            .map(|v| {
                let set = self.vars.get(v).or(self.default.as_ref()).unwrap_or(&full);
                if set.is_empty() {
                    return Err(CheckError::BadDomain(format!("empty domain for {v}")));
                }
                if let Some(&bad) = set.iter().find(|&&e| e >= alg.size()) {
                    return Err(CheckError::BadDomain(format!("element {bad} out of range for {v}")));
                }
                Ok(set.clone())
            })
            .collect()
    }

    pub(crate) fn uniform_set(&self, alg: &FiniteAlgebra) -> Result<Vec<usize>, CheckError> {
        if !self.vars.is_empty() {
            return Err(CheckError::BadDomain("block mode takes one domain for every variable".into()));
        }
        let set = self.default.clone().unwrap_or_else(|| (0..alg.size()).collect());
        if set.is_empty() || set.iter().any(|&e| e >= alg.size()) {
            return Err(CheckError::BadDomain("domain must be a non-empty set of elements".into()));
        }
        let mut set = set;
        set.sort_unstable();
        set.dedup();
        Ok(set)
    }
}

fn space_size(domains: &[Vec<usize>]) -> u128 {
    domains
        .iter()
        .try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128))
        .unwrap_or(u128::MAX)
}

/// Least rank in odometer order (first variable most significant) at which
/// `bad` holds, scanning in parallel.
fn odometer_first(domains: &[Vec<usize>], total: u128, bad: &(dyn Fn(&[usize]) -> bool + Sync)) -> Option<u128> {
    let chunks = total.div_ceil(CHUNK);
    let k = domains.len();
    (0..chunks as u64).into_par_iter().find_map_first(|c| {
        let start = c as u128 * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut digits = vec![0usize; k];
        let mut r = start;
        for i in (0..k).rev() {
            let base = domains[i].len() as u128;
            digits[i] = (r % base) as usize;
            r /= base;
        }
        let mut values: Vec<usize> = (0..k).map(|i| domains[i][digits[i]]).collect();
        for rank in start..end {
            if bad(&values) {
                return Some(rank);
            }
            for i in (0..k).rev() {
                digits[i] += 1;
                if digits[i] < domains[i].len() {
                    values[i] = domains[i][digits[i]];
                    break;
                }
                digits[i] = 0;
                values[i] = domains[i][0];
            }
        }
        None
    })
}

fn decode(domains: &[Vec<usize>], mut rank: u128) -> Vec<usize> {
    let mut values = vec![0; domains.len()];
    for i in (0..domains.len()).rev() {
        let base = domains[i].len() as u128;
        values[i] = domains[i][(rank % base) as usize];
        rank /= base;
    }
    values
}

fn substitution(vars: &[Variable], values: &[usize]) -> Substitution {
    Substitution::from_pairs(vars.iter().cloned().zip(values.iter().copied()))
}

fn exhaustive(
    vars: &[Variable],
    domains: &[Vec<usize>],
    budget: u128,
    bad: &(dyn Fn(&[usize]) -> bool + Sync),
) -> CheckVerdict {
    let total = space_size(domains);
    if total > budget {
        return CheckVerdict::budget(total);
    }
    match odometer_first(domains, total, bad) {
        Some(rank) => CheckVerdict {
            witness: Some(Witness::Substitution(substitution(vars, &decode(domains, rank)))),
            ..CheckVerdict::new(Status::Counterexample, rank + 1)
        },
        None => CheckVerdict::new(Status::Holds, total),
    }
}

/// Every substitution in odometer order; the first failure is returned.
pub fn check_identity_exhaustive(
    alg: &FiniteAlgebra,
    identity: &Identity,
    domains: &Domains,
    budget: u128,
) -> Result<CheckVerdict, CheckError> {
    let (vars, lhs, rhs) = compile_pair(identity, alg)?;
    let domains = domains.resolve(alg, &vars)?;
    if identity.lhs == identity.rhs {
        return Ok(CheckVerdict::new(Status::Holds, 0));
    }
    Ok(exhaustive(&vars, &domains, budget, &|v| lhs.eval(alg, v) != rhs.eval(alg, v)))
}

/// Checks that `expr` always evaluates into `set`. A counterexample is a
/// substitution sending it outside.
pub fn check_membership_exhaustive(
    alg: &FiniteAlgebra,
    expr: &Expr,
    set: &[bool],
    domains: &Domains,
    budget: u128,
) -> Result<CheckVerdict, CheckError> {
    let id = Identity::new(expr.clone(), expr.clone());
    let vars = id.alphabet(DEFAULT_LENGTH_BUDGET)?;
    let plan = Compiled::new(expr, &vars, alg)?;
    let domains = domains.resolve(alg, &vars)?;
    if set.len() != alg.size() {
        return Err(CheckError::BadDomain("membership set must cover the carrier".into()));
    }
    Ok(exhaustive(&vars, &domains, budget, &|v| !set[plan.eval(alg, v)]))
}

/// `samples` seeded random substitutions. Never reports `holds`.
pub fn check_identity_sampled(
    alg: &FiniteAlgebra,
    identity: &Identity,
    domains: &Domains,
    samples: u64,
    seed: u64,
) -> Result<CheckVerdict, CheckError> {
    if let Ok((word, _, _)) = identity.block_form() {
        if word.leaf_count().is_none_or(|c| c > DIRECT_LEAF_LIMIT) {
            return sample_block(alg, identity, domains, samples, seed);
        }
    }
    let (vars, lhs, rhs) = compile_pair(identity, alg)?;
    let domains = domains.resolve(alg, &vars)?;
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let hit = (0..chunks).into_par_iter().find_map_first(|c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        let mut values = vec![0usize; vars.len()];
        for i in c * SAMPLE_CHUNK..((c + 1) * SAMPLE_CHUNK).min(samples) {
            for (slot, d) in values.iter_mut().zip(&domains) {
                *slot = d[rng.gen_range(0..d.len())];
            }
            if lhs.eval(alg, &values) != rhs.eval(alg, &values) {
                return Some((i, values));
            }
        }
        None
    });
    Ok(match hit {
        Some((i, values)) => CheckVerdict {
            witness: Some(Witness::Substitution(substitution(&vars, &values))),
            seed: Some(seed),
            ..CheckVerdict::new(Status::Counterexample, i as u128 + 1)
        },
        None => CheckVerdict {
            seed: Some(seed),
            ..CheckVerdict::new(Status::NoCounterexampleFound, samples as u128)
        },
    })
}

#[derive(Clone, Debug)]
pub enum Strategy {
    Exhaustive { budget: u128 },
    /// Exhaustive over `generators` first, then over the whole carrier.
    GeneratorBiased { generators: Vec<usize>, budget: u128 },
    Sampled { samples: u64, seed: u64 },
    /// The block-image method for `v` identities.
    Block { budget: u128 },
}

/// Searches for a counterexample. Block identities are tried by the block
/// method inside the other strategies when their flat alphabet is too large.
pub fn find_identity_violation(
    alg: &FiniteAlgebra,
    identity: &Identity,
    strategy: &Strategy,
) -> Result<CheckVerdict, CheckError> {
    match strategy {
        Strategy::Exhaustive { budget } => check_identity_exhaustive(alg, identity, &Domains::all(), *budget),
        Strategy::Sampled { samples, seed } => check_identity_sampled(alg, identity, &Domains::all(), *samples, *seed),
        Strategy::Block { budget } => check_identity_block(alg, identity, &Domains::all(), *budget),
        Strategy::GeneratorBiased { generators, budget } => {
            let mut gens = generators.clone();
            gens.sort_unstable();
            gens.dedup();
            let first = check_identity_exhaustive(alg, identity, &Domains::uniform(gens), *budget)?;
            if first.is_counterexample() {
                return Ok(first);
            }
            let mut second = check_identity_exhaustive(alg, identity, &Domains::all(), *budget)?;
            second.evaluations += first.evaluations;
            Ok(second)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{brandt_monoid_b21, Group, GroupSpec, B21};
    use crate::terms::evaluate;

    fn id(s: &str) -> Identity {
        s.parse().unwrap()
    }

    #[test]
    fn b21_squares() {
        let b = brandt_monoid_b21();
        let v = check_identity_exhaustive(&b, &id("x1^2 = x1^4"), &Domains::all(), 100).unwrap();
        assert_eq!((v.status, v.evaluations), (Status::Holds, 6));
    }

    #[test]
    fn b21_commutativity_witness() {
        let b = brandt_monoid_b21();
        let identity = id("x1 x2 = x2 x1");
        let v = check_identity_exhaustive(&b, &identity, &Domains::all(), 100).unwrap();
        assert_eq!(v.status, Status::Counterexample);
        let Some(Witness::Substitution(s)) = v.witness else { panic!() };
        assert_eq!(s.get(&Variable::single(1)), Some(B21::A));
        assert_eq!(s.get(&Variable::single(2)), Some(B21::B));
        // Rank of (a, b) in odometer order over 6 × 6.
        assert_eq!(v.evaluations, (B21::A * 6 + B21::B + 1) as u128);
        let Expr::Term(l) = &identity.lhs else { panic!() };
        let Expr::Term(r) = &identity.rhs else { panic!() };
        assert_ne!(evaluate(l, &s, &b).unwrap(), evaluate(r, &s, &b).unwrap());
    }

    #[test]
    fn trivial_and_budget() {
        let b = brandt_monoid_b21();
        let v = check_identity_exhaustive(&b, &id("x1 x2 x3 = x1 x2 x3"), &Domains::all(), 1).unwrap();
        assert_eq!(v.status, Status::Holds);
        let v = check_identity_exhaustive(&b, &id("x1 x2 x3 = x3 x2 x1"), &Domains::all(), 100).unwrap();
        assert_eq!((v.status, v.attempted), (Status::BudgetExceeded, Some(216)));
    }

    #[test]
    fn sampling_is_deterministic() {
        let b = brandt_monoid_b21();
        let identity = id("x1 x2 x3 = x3 x2 x1");
        let a = check_identity_sampled(&b, &identity, &Domains::all(), 5000, 7).unwrap();
        let c = check_identity_sampled(&b, &identity, &Domains::all(), 5000, 7).unwrap();
        assert_eq!(a.status, Status::Counterexample);
        assert_eq!(a.evaluations, c.evaluations);
        let good = check_identity_sampled(&b, &id("x1^2 = x1^4"), &Domains::all(), 3000, 1).unwrap();
        assert_eq!((good.status, good.seed), (Status::NoCounterexampleFound, Some(1)));
    }

    #[test]
    fn groups_and_null_semigroups() {
        let z4 = Group::from_spec(GroupSpec::Cyclic(4)).unwrap();
        let v = find_identity_violation(z4.algebra(), &id("v[1,4,1] = 1"), &Strategy::Exhaustive { budget: 1000 })
            .unwrap();
        assert_eq!(v.status, Status::Holds);
        let null = FiniteAlgebra::from_fn(vec!["0".into(), "1".into()], |_, _| 0).unwrap();
        let v = find_identity_violation(&null, &id("x1 = x2"), &Strategy::Exhaustive { budget: 10 }).unwrap();
        let Some(Witness::Substitution(s)) = v.witness else { panic!() };
        assert_eq!((s.get(&Variable::single(1)), s.get(&Variable::single(2))), (Some(0), Some(1)));
    }

    #[test]
    fn domains_restrict() {
        let b = brandt_monoid_b21();
        let es = vec![B21::ZERO, B21::ONE, B21::E, B21::F];
        let v = check_identity_exhaustive(&b, &id("x1 x2 = x2 x1"), &Domains::uniform(es.clone()), 100).unwrap();
        assert_eq!((v.status, v.evaluations), (Status::Holds, 16));
        let d = Domains::uniform(es).with(Variable::single(1), vec![B21::A]);
        let v = check_identity_exhaustive(&b, &id("x1 x2 = x2 x1"), &d, 100).unwrap();
        assert_eq!(v.status, Status::Counterexample);
        let mut set = vec![false; 6];
        set[B21::ZERO] = true;
        set[B21::A] = true;
        let v = check_membership_exhaustive(&b, &Expr::Term(crate::terms::parse_term("x1 x2").unwrap()), &set, &Domains::uniform(vec![B21::ZERO, B21::A]), 100).unwrap();
        assert_eq!(v.status, Status::Holds);
    }
}
