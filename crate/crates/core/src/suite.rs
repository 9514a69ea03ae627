//! The verification suite: every structural claim the library is built to
//! exhibit, as a list of named checks grouped by criterion.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{validate, validate_ai_semiring, validate_involution, FiniteAlgebra};
use crate::analysis::{
    derived_series, group_analytics, idempotent_generated, idempotents, is_block_group, j_trivial_subset,
    maximal_subgroups, normalizer, principal_series, subgroups, unique_inverse_check, FactorKind,
};
use crate::checker::{
    check_identity_block, check_identity_exhaustive, check_identity_sampled, check_membership_exhaustive,
    default_budget, find_identity_violation, verify_morphism, Domains, Expr, Identity, MorphismReport, MorphismSpec, Signature,
    Status, Strategy, Witness,
};
use crate::constructions::{
    brandt_monoid_b21, brandt_semigroup, hall_semiring, involution_power, kadourek_semigroup, power_semiring,
    subset_b, BoolMatrix, Group, GroupSpec,
};
use crate::corpus::{shipped_constructions, small_semigroups};
use crate::terms::{parse_term, u_word, v_word, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl std::str::FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Profile, String> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(format!("unknown profile {s:?}, expected quick or full")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub id: String,
    pub criterion: u8,
    /// The claim being checked, in words.
    pub anchor: String,
    pub passed: bool,
    /// Failures of non-mandatory checks do not fail the suite.
    pub mandatory: bool,
    pub evaluations: u64,
    pub wall_ms: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub profile: Profile,
    pub checks: Vec<SuiteCheck>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn criterion(&self, c: u8) -> impl Iterator<Item = &SuiteCheck> {
        self.checks.iter().filter(move |x| x.criterion == c)
    }
}

pub const CRITERIA: std::ops::RangeInclusive<u8> = 1..=10;

/// What a check body returns: pass flag, evaluation count and a note.
struct Outcome {
    passed: bool,
    evaluations: u64,
    detail: String,
}

fn outcome(passed: bool, evaluations: u64, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        evaluations,
        detail: detail.into(),
    }
}

fn run(criterion: u8, id: &str, anchor: &str, mandatory: bool, body: impl FnOnce() -> Outcome) -> SuiteCheck {
    let start = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body))
        .unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            outcome(false, 0, format!("error: {msg}"))
        });
    SuiteCheck {
        id: format!("ac{criterion:02}.{id}"),
        criterion,
        anchor: anchor.into(),
        passed: result.passed,
        mandatory,
        evaluations: result.evaluations,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        detail: result.detail,
    }
}

fn group(spec: GroupSpec) -> Group {
    Group::from_spec(spec).expect("shipped group")
}

fn s3() -> Group {
    group(GroupSpec::Symmetric(3))
}

fn b2() -> FiniteAlgebra {
    brandt_semigroup(&group(GroupSpec::Cyclic(1)), 2).expect("B2")
}

fn mask(g: &Group, labels: &[&str]) -> u64 {
    labels.iter().map(|l| 1u64 << g.element(l).expect("label")).sum()
}

fn evals(v: &crate::checker::CheckVerdict) -> u64 {
    v.evaluations.min(u64::MAX as u128) as u64
}

/// Runs every check of the suite.
pub fn run_suite(profile: Profile) -> SuiteReport {
    let mut checks: Vec<SuiteCheck> = CRITERIA.flat_map(|c| criterion_checks(c, profile)).collect();
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let pass = checks.iter().all(|c| c.passed || !c.mandatory);
    SuiteReport { profile, checks, pass }
}

/// The checks of one criterion.
pub fn criterion_checks(criterion: u8, profile: Profile) -> Vec<SuiteCheck> {
    match criterion {
        1 => axioms(),
        2 => block_group_equivalences(profile),
        3 => brandt_subgroup_words(),
        4 => periodicity(),
        5 => group_words(),
        6 => proposition_identities(profile),
        7 => kadourek(),
        8 => morphisms(),
        9 => structure(),
        10 => hall(),
        _ => Vec::new(),
    }
}

fn axioms() -> Vec<SuiteCheck> {
    let a = "the shipped constructions satisfy their axioms";
    let mut out = vec![run(1, "b21", a, true, || {
        let b = brandt_monoid_b21();
        let ok = validate_ai_semiring(&b).is_ok() && validate_involution(&b).is_ok();
        outcome(ok, 2, "ai-semiring and involution laws, with (x+y)* = x*+y*")
    })];
    let cases: Vec<(&str, Box<dyn Fn() -> FiniteAlgebra>)> = vec![
        ("power-S3", Box::new(|| power_semiring(&s3(), false).unwrap())),
        ("involution-power-S3", Box::new(|| involution_power(&s3()).unwrap())),
        ("hall-2", Box::new(|| hall_semiring(2, true).unwrap())),
        ("hall-3", Box::new(|| hall_semiring(3, true).unwrap())),
    ];
    for (name, build) in cases {
        out.push(run(1, name, a, true, || {
            let alg = build();
            match validate(&alg) {
                Ok(()) => outcome(true, 1, format!("{} elements, kind {}", alg.size(), alg.kind())),
                Err(e) => outcome(false, 1, e.to_string()),
            }
        }));
    }
    out
}

struct Verdicts {
    block_group: bool,
    unique_inverses: bool,
    es_j_trivial: bool,
    regular_es_idempotent: bool,
    series_ok: bool,
}

fn verdicts(alg: &FiniteAlgebra) -> Verdicts {
    let es = idempotent_generated(alg);
    let regular_es_idempotent = es.iter().all(|&a| {
        let regular = es.iter().any(|&x| alg.mul(alg.mul(a, x), a) == a);
        !regular || alg.mul(a, a) == a
    });
    let series = principal_series(alg);
    let series_ok = matches!(series.chain[0].kind, FactorKind::Group { .. })
        && series.chain.iter().all(|s| s.kind.is_group_brandt_or_zero());
    Verdicts {
        block_group: is_block_group(alg).holds,
        unique_inverses: unique_inverse_check(alg).holds,
        es_j_trivial: j_trivial_subset(alg, &es),
        regular_es_idempotent,
        series_ok,
    }
}

fn block_group_equivalences(profile: Profile) -> Vec<SuiteCheck> {
    let max_order = match profile {
        Profile::Quick => 4,
        Profile::Full => 5,
    };
    let mut corpus: Vec<(String, FiniteAlgebra)> = shipped_constructions();
    corpus.extend(
        small_semigroups(max_order)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (format!("table {i} of order {}", s.size()), s)),
    );
    let results: Vec<(String, Verdicts)> = corpus.par_iter().map(|(n, a)| (n.clone(), verdicts(a))).collect();
    let total = results.len() as u64;
    let blocks = results.iter().filter(|r| r.1.block_group).count();
    let first = |f: &dyn Fn(&Verdicts) -> bool| results.iter().find(|r| !f(&r.1)).map(|r| r.0.clone());
    let report = |bad: Option<String>| match bad {
        None => outcome(true, total, format!("{total} semigroups up to order {max_order}, {blocks} block-groups")),
        Some(name) => outcome(false, total, format!("first discrepancy: {name}")),
    };
    vec![
        run(2, "unique-inverses", "block-group iff every element has at most one inverse", true, || {
            report(first(&|v| v.block_group == v.unique_inverses))
        }),
        run(2, "es-j-trivial", "block-group iff the subsemigroup generated by idempotents is J-trivial", true, || {
            report(first(&|v| v.block_group == v.es_j_trivial))
        }),
        run(2, "regular-es-idempotent", "in a block-group every regular element of <E(S)> is idempotent", true, || {
            report(first(&|v| !v.block_group || v.regular_es_idempotent))
        }),
        run(2, "brandt-series", "a finite semigroup is a block-group iff its principal series is a Brandt series", true, || {
            report(first(&|v| v.block_group == v.series_ok))
        }),
    ]
}

fn brandt_subgroup_words() -> Vec<SuiteCheck> {
    let cases = [("B(C1,2)", GroupSpec::Cyclic(1), 2), ("B(C1,3)", GroupSpec::Cyclic(1), 3), ("B(C2,2)", GroupSpec::Cyclic(2), 2)];
    cases
        .iter()
        .map(|&(name, spec, i)| {
            run(3, name, "every value of u[n,k,m] in a Brandt semigroup lies in a subgroup", true, move || {
                let alg = brandt_semigroup(&group(spec), i).unwrap();
                let mut in_subgroup = vec![false; alg.size()];
                for s in maximal_subgroups(&alg) {
                    for x in s.elements {
                        in_subgroup[x] = true;
                    }
                }
                let mut total = 0u64;
                let mut largest = 0u64;
                for n in 0..=3usize {
                    for k in 0..=3 - n {
                        if n + k == 0 {
                            continue;
                        }
                        for m in 1..=2 {
                            let expr = Expr::Term(u_word(n, k, m).unwrap());
                            let v = check_membership_exhaustive(&alg, &expr, &in_subgroup, &Domains::all(), default_budget()).unwrap();
                            total += evals(&v);
                            largest = largest.max(evals(&v));
                            if v.status != Status::Holds {
                                return outcome(false, total, format!("u[{n},{k},{m}]: {}", v.status));
                            }
                        }
                    }
                }
                outcome(true, total, format!("{} elements, largest case {largest} substitutions", alg.size()))
            })
        })
        .collect()
}

fn periodicity() -> Vec<SuiteCheck> {
    let cases: Vec<(&str, FiniteAlgebra, Option<(usize, u64)>)> = vec![
        ("B21", brandt_monoid_b21(), Some((2, 1))),
        ("B(C2,2)", brandt_semigroup(&group(GroupSpec::Cyclic(2)), 2).unwrap(), Some((1, 2))),
        ("P(S3)", power_semiring(&s3(), false).unwrap().mul_reduct(), None),
    ];
    cases
        .into_iter()
        .map(|(name, alg, expected)| {
            run(4, name, "x^(2^h m) = x^(2^(h+1) m) with (h, m) from the principal series", true, move || {
                let s = principal_series(&alg);
                if let Some(hm) = expected {
                    if (s.h, s.m) != hm {
                        return outcome(false, 0, format!("series gives (h, m) = ({}, {})", s.h, s.m));
                    }
                }
                let q = s.q.expect("small q");
                let x = Expr::Term(Term::from_indices(&[1]).unwrap());
                let id = Identity::new(x.clone().pow(q), x.pow(2 * q));
                let v = check_identity_exhaustive(&alg, &id, &Domains::all(), default_budget()).unwrap();
                outcome(v.status == Status::Holds, evals(&v), format!("h={} m={} q={q}: {}", s.h, s.m, v.status))
            })
        })
        .collect()
}

/// `a₁…aₙ·a₁⁻¹…aₙ⁻¹` and its product-of-commutators form over all of `Gⁿ`.
fn commutator_factorization(g: &Group, n: usize) -> (bool, u64) {
    let order = g.order();
    let total = order.pow(n as u32);
    let ok = (0..total).into_par_iter().all(|mut r| {
        let a: Vec<usize> = (0..n)
            .map(|_| {
                let x = r % order;
                r /= order;
                x
            })
            .collect();
        let prod = |it: &mut dyn Iterator<Item = usize>| it.fold(g.identity(), |acc, x| g.mul(acc, x));
        let lhs = g.mul(prod(&mut a.iter().copied()), prod(&mut a.iter().map(|&x| g.inv(x))));
        let rhs = (1..n).fold(g.identity(), |acc, j| {
            let prefix = prod(&mut a[..j].iter().rev().copied());
            g.mul(acc, g.commutator(g.inv(prefix), g.inv(a[j])))
        });
        lhs == rhs
    });
    (ok, total as u64)
}

fn group_words() -> Vec<SuiteCheck> {
    vec![
        run(5, "v-1-6-2", "S3 satisfies v[1,6,2] = 1", true, || {
            let g = s3();
            let v = check_identity_exhaustive(g.algebra(), &"v[1,6,2] = 1".parse().unwrap(), &Domains::all(), default_budget()).unwrap();
            outcome(v.status == Status::Holds && v.evaluations == 1296, evals(&v), v.status.to_string())
        }),
        run(5, "v-1-6-1-in-A3", "every value of v[1,6,1] in S3 lies in the derived subgroup A3", true, || {
            let g = s3();
            let a3 = derived_series(&g)[1].clone();
            let v = check_membership_exhaustive(g.algebra(), &Expr::Block(v_word(1, 6, 1).unwrap()), &a3, &Domains::all(), 1000).unwrap();
            let size = a3.iter().filter(|&&x| x).count();
            outcome(v.status == Status::Holds && v.evaluations == 36 && size == 3, evals(&v), v.status.to_string())
        }),
        run(5, "first-level-value", "in a group of exponent m, v[n,m,1] = a1…an·a1⁻¹…an⁻¹", true, || {
            let g = s3();
            let mut total = 0;
            for n in 1..=3usize {
                let word = v_word(n, 6, 1).unwrap();
                let count = 6usize.pow(2 * n as u32);
                let ok = (0..count).into_par_iter().all(|mut r| {
                    let a: Vec<usize> = (0..2 * n)
                        .map(|_| {
                            let x = r % 6;
                            r /= 6;
                            x
                        })
                        .collect();
                    let lhs = word.combine(g.algebra(), &a);
                    let head = a[..n].iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
                    let rhs = a[..n].iter().fold(head, |acc, &x| g.mul(acc, g.inv(x)));
                    lhs == rhs
                });
                total += count as u64;
                if !ok {
                    return outcome(false, total, format!("fails for n = {n}"));
                }
            }
            outcome(true, total, "n ≤ 3 over S3")
        }),
        run(5, "commutator-product", "a1…an·a1⁻¹…an⁻¹ is a product of commutators", true, || {
            let g = s3();
            let mut total = 0;
            for n in 1..=3 {
                let (ok, count) = commutator_factorization(&g, n);
                total += count;
                if !ok {
                    return outcome(false, total, format!("fails for n = {n}"));
                }
            }
            outcome(true, total, "all tuples in S3^n, n ≤ 3")
        }),
    ]
}

const PROPOSITION_SAMPLES: u64 = 100_000;

fn proposition_identities(profile: Profile) -> Vec<SuiteCheck> {
    let anchor = "v[2,q,r] = v[2,q,r]^2 at the computed (q, r)";
    let mut out = vec![run(6, "B2-exact", "B2 satisfies v[2,2,3] = v[2,2,3]^2 (block images)", true, || {
        let alg = b2();
        let s = principal_series(&alg);
        if (s.h, s.m, s.k) != (1, 1, Some(1)) {
            return outcome(false, 0, format!("unexpected series (h={}, m={}, k={:?})", s.h, s.m, s.k));
        }
        let id = Identity::idempotent(Expr::Block(v_word(2, 2, 3).unwrap()));
        let v = check_identity_block(&alg, &id, &Domains::all(), default_budget()).unwrap();
        outcome(v.status == Status::Holds, evals(&v), v.status.to_string())
    })];
    let cases: Vec<(&str, fn() -> FiniteAlgebra)> = vec![
        ("B21", || brandt_monoid_b21().mul_reduct()),
        ("P(S3)", || power_semiring(&s3(), false).unwrap().mul_reduct()),
    ];
    for (name, build) in cases {
        out.push(run(6, &format!("{name}-sampled"), anchor, true, move || {
            let alg = build();
            let s = principal_series(&alg);
            let (q, r) = (s.q.unwrap(), s.r.unwrap() as usize);
            let id = Identity::idempotent(Expr::Block(v_word(2, q, r).unwrap()));
            let v = check_identity_sampled(&alg, &id, &Domains::all(), PROPOSITION_SAMPLES, 1).unwrap();
            outcome(
                v.status == Status::NoCounterexampleFound,
                evals(&v),
                format!("q={q} r={r}, {PROPOSITION_SAMPLES} samples, seed 1: {}", v.status),
            )
        }));
        out.push(run(6, &format!("{name}-exact"), anchor, profile == Profile::Full || name == "B21", move || {
            let alg = build();
            let s = principal_series(&alg);
            let (q, r) = (s.q.unwrap(), s.r.unwrap() as usize);
            let id = Identity::idempotent(Expr::Block(v_word(2, q, r).unwrap()));
            let v = check_identity_block(&alg, &id, &Domains::all(), default_budget()).unwrap();
            outcome(v.status == Status::Holds, evals(&v), format!("q={q} r={r}, block images: {}", v.status))
        }));
    }
    out
}

/// Arrows of the generators of the Kaďourek semigroup for n = h = 2.
pub const KADOUREK_2_2_ARROWS: [(&str, [(usize, usize); 4]); 4] = [
    ("x1_1", [(0, 1), (3, 2), (9, 10), (12, 11)]),
    ("x2_1", [(1, 2), (4, 3), (8, 9), (11, 10)]),
    ("x1_2", [(4, 5), (7, 6), (13, 14), (16, 15)]),
    ("x2_2", [(5, 6), (8, 7), (12, 13), (15, 14)]),
];

fn kadourek() -> Vec<SuiteCheck> {
    vec![
        run(7, "violation-2-1", "the Kaďourek semigroup S(2,1) violates v[2,1,1] = v[2,1,1]^2", true, || {
            let k = kadourek_semigroup(2, 1).unwrap();
            let alg = &k.algebra;
            let mut gens: Vec<usize> = k.generators.iter().map(|&(_, g)| g).collect();
            gens.extend(k.generators.iter().map(|&(_, g)| alg.star(g).unwrap()));
            let word = v_word(2, 1, 1).unwrap();
            let id = Identity::idempotent(Expr::Block(word));
            let v = find_identity_violation(alg, &id, &Strategy::GeneratorBiased { generators: gens, budget: default_budget() }).unwrap();
            let Some(Witness::Substitution(sub)) = &v.witness else {
                return outcome(false, evals(&v), format!("no witness: {}", v.status));
            };
            let value = word.evaluate(alg, sub).unwrap();
            let refutes = value != alg.mul(value, value);
            let shown: Vec<String> = sub.iter().map(|(x, &e)| format!("{x}↦{}", alg.label(e))).collect();
            outcome(refutes, evals(&v), format!("{} elements; witness {}", alg.size(), shown.join(", ")))
        }),
        run(7, "generators-2-2", "the generators of S(2,2) act as the 16 arrows of the picture", true, || {
            let k = kadourek_semigroup(2, 2).unwrap();
            for (name, arrows) in KADOUREK_2_2_ARROWS {
                let var = parse_term(name).unwrap().letters()[0].var.clone();
                let Some(g) = k.generator(&var) else {
                    return outcome(false, 0, format!("missing generator {name}"));
                };
                let mut pairs = k.maps[g].pairs();
                pairs.sort_unstable();
                let mut want = arrows.to_vec();
                want.sort_unstable();
                if pairs != want {
                    return outcome(false, 0, format!("{name} acts as {pairs:?}"));
                }
            }
            outcome(true, 16, format!("{} elements on 17 points", k.algebra.size()))
        }),
    ]
}

/// Element of `hall_semiring(2)` for each element of B₂¹.
pub const HALL_EMBEDDING: [&str; 6] = ["[11;11]", "[10;01]", "[01;11]", "[11;10]", "[10;11]", "[11;01]"];

/// All injective maps from `source` into `target` respecting `+` and `·`.
pub fn semiring_embeddings(source: &FiniteAlgebra, target: &FiniteAlgebra) -> Vec<Vec<usize>> {
    fn go(src: &FiniteAlgebra, dst: &FiniteAlgebra, map: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let i = map.len();
        if i == src.size() {
            let f = map.clone();
            let ok = (0..i).all(|x| {
                (0..i).all(|y| f[src.mul(x, y)] == dst.mul(f[x], f[y]) && f[src.add(x, y).unwrap()] == dst.add(f[x], f[y]).unwrap())
            });
            if ok {
                out.push(f);
            }
            return;
        }
        for t in 0..dst.size() {
            if !used[t] {
                used[t] = true;
                map.push(t);
                go(src, dst, map, used, out);
                map.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(source, target, &mut Vec::new(), &mut vec![false; target.size()], &mut out);
    out
}

fn morphisms() -> Vec<SuiteCheck> {
    let subset = || {
        let g = s3();
        let b = subset_b(&g, mask(&g, &["e", "(12)"]), g.element("(13)").unwrap()).unwrap();
        let alg = b.algebra(&g).unwrap();
        (alg, b.projection())
    };
    let hall_map = |hall: &FiniteAlgebra| -> Vec<usize> { HALL_EMBEDDING.iter().map(|l| hall.index_of(l).unwrap()).collect() };
    vec![
        run(8, "subset-b-semiring", "the subset B of P(S3) maps onto B21 preserving ∪ and ·", true, || {
            let (alg, map) = subset();
            let b21 = brandt_monoid_b21();
            let r = verify_morphism(&MorphismSpec { source: &alg, target: &b21, map: &map, signature: Signature::SEMIRING }).unwrap();
            outcome(r.is_homomorphism() && r.surjective, (alg.size() * alg.size() * 2) as u64, format!("{} elements, {}", alg.size(), morphism_detail(&r)))
        }),
        run(8, "subset-b-involution", "the same map preserves · and inversion", true, || {
            let (alg, map) = subset();
            let b21 = brandt_monoid_b21();
            let r = verify_morphism(&MorphismSpec { source: &alg, target: &b21, map: &map, signature: Signature::INVOLUTION }).unwrap();
            outcome(r.is_homomorphism() && r.surjective, (alg.size() * alg.size() + alg.size()) as u64, morphism_detail(&r))
        }),
        run(8, "hall-embedding", "B21 embeds into the Hall semiring H(X2) preserving + and ·", true, || {
            let b21 = brandt_monoid_b21();
            let hall = hall_semiring(2, true).unwrap();
            let map = hall_map(&hall);
            let r = verify_morphism(&MorphismSpec { source: &b21, target: &hall, map: &map, signature: Signature::SEMIRING }).unwrap();
            outcome(r.is_homomorphism() && r.injective, 72, morphism_detail(&r))
        }),
        run(8, "hall-embedding-transpose", "the embedding also sends transposition to transposition", false, || {
            let b21 = brandt_monoid_b21();
            let hall = hall_semiring(2, true).unwrap();
            let map = hall_map(&hall);
            let r = verify_morphism(&MorphismSpec { source: &b21, target: &hall, map: &map, signature: Signature::ALL }).unwrap();
            let all = semiring_embeddings(&b21, &hall);
            let with_star = all.iter().filter(|f| (0..6).all(|x| f[b21.star(x).unwrap()] == hall.star(f[x]).unwrap())).count();
            let v = r.violation.as_ref().map(|v| {
                let labels: Vec<&str> = v.witness.iter().map(|&x| b21.label(x)).collect();
                format!("{:?} at {labels:?}", v.op)
            });
            outcome(
                r.is_homomorphism(),
                5040,
                format!(
                    "violation {}; {} semiring embeddings of B21 into H(X2) exist, {with_star} of them preserve transposition",
                    v.unwrap_or_else(|| "none".into()),
                    all.len()
                ),
            )
        }),
    ]
}

fn structure() -> Vec<SuiteCheck> {
    vec![
        run(9, "b21-series", "principal series of B21", true, || {
            let s = principal_series(&brandt_monoid_b21());
            let ideals: Vec<Vec<usize>> = s.chain.iter().map(|x| x.ideal.clone()).collect();
            let kinds = s.kinds();
            let ok = ideals == vec![vec![0], vec![0, 2, 3, 4, 5], (0..6).collect::<Vec<_>>()]
                && matches!(kinds[..], [FactorKind::Group { order: 1 }, FactorKind::Brandt { group_order: 1, index_count: 2 }, FactorKind::Brandt { group_order: 1, index_count: 1 }])
                && (s.h, s.m, s.k, s.q, s.r) == (2, 1, Some(1), Some(4), Some(5));
            outcome(ok, 1, format!("h={} m={} k={:?} q={:?} r={:?}", s.h, s.m, s.k, s.q, s.r))
        }),
        run(9, "power-subgroups", "maximal subgroups of P(S3) at H are N(H)/H", true, || {
            let g = s3();
            let p = power_semiring(&g, false).unwrap().mul_reduct();
            let subs = maximal_subgroups(&p);
            let at = |m: u64| subs.iter().find(|s| s.idempotent == m as usize).map(|s| s.order());
            let named = at(mask(&g, &["e", "(12)"])) == Some(1) && at(mask(&g, &["e"])) == Some(6);
            let mut all = true;
            for h in subgroups(&g).unwrap() {
                let member: Vec<bool> = (0..6).map(|i| h.contains(i)).collect();
                let norm = normalizer(&g, &member).unwrap().iter().filter(|&&x| x).count();
                let m: u64 = h.ones().map(|i| 1u64 << i).sum();
                all &= at(m) == Some(norm / h.count_ones(..));
            }
            outcome(named && all, 6, "orders 1 at {e,(12)} and 6 at {e}; |N(H)/H| for all six subgroups")
        }),
        run(9, "group-analytics", "S3 is solvable and not Dedekind; Q8 is Dedekind with a quaternion subgroup", true, || {
            let a = group_analytics(&s3()).unwrap();
            let q = group_analytics(&group(GroupSpec::Quaternion8)).unwrap();
            let ok = a.solvable && !a.dedekind && q.dedekind && q.has_quaternion_subgroup && q.solvable;
            outcome(ok, 2, format!("S3 {a:?}; Q8 {q:?}"))
        }),
    ]
}

fn hall() -> Vec<SuiteCheck> {
    vec![
        run(10, "sizes", "|H(X1)| = 1 and |H(X2)| = 7", true, || {
            let brute = (0u32..16).filter(|&b| BoolMatrix::from_bits(2, b).permanent()).count();
            let (h1, h2) = (hall_semiring(1, true).unwrap().size(), hall_semiring(2, true).unwrap().size());
            outcome(h1 == 1 && h2 == 7 && brute == 7, 16, format!("{h1}, {h2}; permanent oracle {brute}"))
        }),
        run(10, "closure", "Hall relations are closed under ∪ and ·", true, || {
            let mut evaluations = 0;
            for n in 1..=3 {
                let alg = hall_semiring(n, true).unwrap();
                let mats: Vec<BoolMatrix> = alg.labels().iter().map(|l| parse_matrix(n, l)).collect();
                for x in 0..alg.size() {
                    for y in 0..alg.size() {
                        evaluations += 2;
                        let (u, p) = (mats[x].union(&mats[y]), mats[x].product(&mats[y]));
                        if !u.permanent() || !p.permanent() || mats[alg.mul(x, y)] != p || mats[alg.add(x, y).unwrap()] != u {
                            return outcome(false, evaluations, format!("n={n} at ({x},{y})"));
                        }
                    }
                }
            }
            outcome(true, evaluations, "n ≤ 3")
        }),
        run(10, "block-group", "the multiplicative reduct of H(X2) is a block-group", true, || {
            let v = is_block_group(&hall_semiring(2, false).unwrap());
            outcome(v.holds, 49, match v.witness {
                None => "no pair of idempotents e ≠ f with ef = e, fe = f".to_string(),
                Some((e, f)) => format!("idempotents {e} and {f}"),
            })
        }),
    ]
}

fn parse_matrix(n: usize, label: &str) -> BoolMatrix {
    let bits: Vec<u8> = label.chars().filter(|c| *c == '0' || *c == '1').map(|c| (c == '1') as u8).collect();
    let rows: Vec<&[u8]> = bits.chunks(n).collect();
    BoolMatrix::from_rows(&rows)
}

/// The idempotents of `alg` as a membership vector.
fn morphism_detail(r: &MorphismReport) -> String {
    let kind = match (r.injective, r.surjective) {
        (true, true) => "bijective",
        (true, false) => "injective",
        (false, true) => "surjective",
        (false, false) => "neither injective nor surjective",
    };
    match &r.violation {
        None => format!("homomorphism, {kind}"),
        Some(v) => format!("{:?} fails at {:?}", v.op, v.witness),
    }
}

pub fn idempotent_set(alg: &FiniteAlgebra) -> Vec<bool> {
    let mut set = vec![false; alg.size()];
    for e in idempotents(alg) {
        set[e] = true;
    }
    set
}
