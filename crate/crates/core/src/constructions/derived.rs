//! Generic constructions on existing algebras.

use serde_json::json;

use super::ConstructionError;
use crate::algebra::FiniteAlgebra;

/// Least subset containing `seeds` and closed under every operation present.
/// Returned in ascending order.
pub fn subalgebra_generate(alg: &FiniteAlgebra, seeds: &[usize]) -> Vec<usize> {
    let n = alg.size();
    let mut member = vec![false; n];
    let mut elements: Vec<usize> = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    let add = |x: usize, member: &mut Vec<bool>, pending: &mut Vec<usize>| {
        if !member[x] {
            member[x] = true;
            pending.push(x);
        }
    };
    for &s in seeds {
        add(s, &mut member, &mut pending);
    }
    while let Some(x) = pending.pop() {
        elements.push(x);
        if let Some(s) = alg.star(x) {
            add(s, &mut member, &mut pending);
        }
        for i in 0..elements.len() {
            let y = elements[i];
            add(alg.mul(x, y), &mut member, &mut pending);
            add(alg.mul(y, x), &mut member, &mut pending);
            if let Some(z) = alg.add(x, y) {
                add(z, &mut member, &mut pending);
                add(alg.add(y, x).unwrap(), &mut member, &mut pending);
            }
        }
    }
    elements.sort_unstable();
    elements
}

/// `S/I`: the ideal collapses to a new zero at index 0; the other elements
/// follow in their original order. Only the multiplication is kept.
pub fn rees_quotient(alg: &FiniteAlgebra, ideal: &[usize]) -> Result<FiniteAlgebra, ConstructionError> {
    let n = alg.size();
    if ideal.is_empty() {
        return Err(ConstructionError::BadParameter("ideal must be non-empty".into()));
    }
    let mut in_ideal = vec![false; n];
    for &a in ideal {
        if a >= n {
            return Err(ConstructionError::BadParameter(format!("element {a} out of range")));
        }
        in_ideal[a] = true;
    }
    for a in (0..n).filter(|&a| in_ideal[a]) {
        for s in 0..n {
            for product in [alg.mul(a, s), alg.mul(s, a)] {
                if !in_ideal[product] {
                    return Err(ConstructionError::NotAnIdeal { a, s, product });
                }
            }
        }
    }
    let rest: Vec<usize> = (0..n).filter(|&a| !in_ideal[a]).collect();
    let mut position = vec![0usize; n];
    for (i, &a) in rest.iter().enumerate() {
        position[a] = i + 1;
    }
    let zero_label = if rest.iter().any(|&a| alg.label(a) == "0") {
        "0̄"
    } else {
        "0"
    };
    let mut labels = vec![zero_label.to_string()];
    labels.extend(rest.iter().map(|&a| alg.label(a).to_string()));
    let rep = |i: usize| if i == 0 { None } else { Some(rest[i - 1]) };
    let quotient = FiniteAlgebra::from_fn(labels, |i, j| match (rep(i), rep(j)) {
        (Some(a), Some(b)) => position[alg.mul(a, b)],
        _ => 0,
    })?;
    Ok(quotient.with_meta(json!({"construction": "rees-quotient", "ideal": ideal})))
}

fn adjoin(alg: &FiniteAlgebra, label: &str, zero: bool) -> Result<FiniteAlgebra, ConstructionError> {
    let mut labels = vec![label.to_string()];
    labels.extend(alg.labels().iter().cloned());
    let out = FiniteAlgebra::from_fn(labels, |i, j| match (i, j) {
        (0, _) if zero => 0,
        (_, 0) if zero => 0,
        (0, j) => j,
        (i, 0) => i,
        (i, j) => alg.mul(i - 1, j - 1) + 1,
    })?;
    Ok(out)
}

/// Prepends a multiplicative zero labelled `label` at index 0.
pub fn adjoin_zero(alg: &FiniteAlgebra, label: &str) -> Result<FiniteAlgebra, ConstructionError> {
    adjoin(alg, label, true)
}

/// Prepends an identity labelled `label` at index 0.
pub fn adjoin_identity(alg: &FiniteAlgebra, label: &str) -> Result<FiniteAlgebra, ConstructionError> {
    adjoin(alg, label, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_semigroup;
    use crate::constructions::{brandt_monoid_b21, brandt_semigroup, power_semiring, Group, GroupSpec, B21};

    #[test]
    fn generate() {
        let g = Group::from_spec(GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(subalgebra_generate(g.algebra(), &[0]), vec![0]);
        let b = brandt_monoid_b21().mul_reduct();
        let sub = subalgebra_generate(&b, &[B21::A, B21::B]);
        assert_eq!(sub, vec![B21::ZERO, B21::A, B21::B, B21::E, B21::F]);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(subalgebra_generate(&b, &all), all);
        // With + and * present, {a} already generates b = a* and 0 = a + b.
        let full = brandt_monoid_b21();
        assert_eq!(subalgebra_generate(&full, &[B21::A]).len(), 5);
    }

    #[test]
    fn quotients() {
        let b = brandt_monoid_b21();
        let b2: Vec<usize> = vec![B21::ZERO, B21::A, B21::B, B21::E, B21::F];
        let q = rees_quotient(&b, &b2).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(q.mul(1, 1), 1);
        assert_eq!(q.mul(0, 1), 0);
        assert_eq!(q.labels(), ["0", "1"]);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(rees_quotient(&b, &all).unwrap().size(), 1);
    }

    #[test]
    fn non_ideal_witness() {
        let b = brandt_monoid_b21();
        let err = rees_quotient(&b, &[B21::A]).unwrap_err();
        let ConstructionError::NotAnIdeal { a, s, product } = err else {
            panic!("expected NotAnIdeal");
        };
        assert_eq!(a, B21::A);
        assert!(product == b.mul(a, s) || product == b.mul(s, a));
        assert_ne!(product, B21::A);
        // (a, b) also witnesses the failure: a·b = e.
        assert_eq!(b.mul(B21::A, B21::B), B21::E);
    }

    #[test]
    fn adjoining() {
        let g = Group::from_spec(GroupSpec::Symmetric(3)).unwrap();
        let full = power_semiring(&g, false).unwrap().mul_reduct();
        let nonempty = power_semiring(&g, true).unwrap().mul_reduct();
        let extended = adjoin_zero(&nonempty, "∅").unwrap();
        assert_eq!(extended.mul_table(), full.mul_table());
        assert_eq!(extended.labels(), full.labels());

        let trivial = Group::from_spec(GroupSpec::Cyclic(1)).unwrap();
        let b2 = brandt_semigroup(&trivial, 2).unwrap();
        let monoid = adjoin_identity(&b2, "1").unwrap();
        assert_eq!(monoid.size(), 6);
        // B₂ order is 0, E11, E12, E21, E22; B₂¹ order is 0, 1, a=E12, b=E21, e=E11, f=E22.
        let to_b21 = [B21::ONE, B21::ZERO, B21::E, B21::A, B21::B, B21::F];
        let b21 = brandt_monoid_b21();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(to_b21[monoid.mul(x, y)], b21.mul(to_b21[x], to_b21[y]));
            }
        }

        let one = FiniteAlgebra::from_fn(vec!["z".into()], |_, _| 0).unwrap();
        let two = adjoin_zero(&one, "0").unwrap();
        assert_eq!(two.size(), 2);
        assert_eq!(validate_semigroup(&two), Ok(()));
        assert_eq!(two.mul(1, 1), 1);
        assert_eq!(two.mul(0, 1), 0);
    }
}
