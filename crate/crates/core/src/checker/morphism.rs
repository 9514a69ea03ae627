use serde::Serialize;

use super::CheckError;
use crate::algebra::FiniteAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Mul,
    Add,
    Star,
}

/// Which operations the map must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub mul: bool,
    pub add: bool,
    pub star: bool,
}

impl Signature {
    pub const MUL: Signature = Signature { mul: true, add: false, star: false };
    pub const SEMIRING: Signature = Signature { mul: true, add: true, star: false };
    pub const INVOLUTION: Signature = Signature { mul: true, add: false, star: true };
    pub const ALL: Signature = Signature { mul: true, add: true, star: true };
}

pub struct MorphismSpec<'a> {
    pub source: &'a FiniteAlgebra,
    pub target: &'a FiniteAlgebra,
    pub map: &'a [usize],
    pub signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismViolation {
    pub op: Op,
    /// `(x, y)` for binary operations, `(x)` for the involution.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub violation: Option<MorphismViolation>,
    pub surjective: bool,
    pub injective: bool,
}

impl MorphismReport {
    pub fn is_homomorphism(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `f(x∘y) = f(x)∘f(y)` per operation in the signature, pairs in
/// lexicographic order, then `f(x*) = f(x)*`.
pub fn verify_morphism(spec: &MorphismSpec) -> Result<MorphismReport, CheckError> {
    let (src, dst, f) = (spec.source, spec.target, spec.map);
    if f.len() != src.size() {
        return Err(CheckError::MapNotTotal(format!(
            "map has {} entries for {} elements",
            f.len(),
            src.size()
        )));
    }
    if let Some(i) = f.iter().position(|&y| y >= dst.size()) {
        return Err(CheckError::MapNotTotal(format!("image of {i} is outside the target")));
    }
    let sig = spec.signature;
    if sig.add && !(src.has_add() && dst.has_add()) {
        return Err(CheckError::MissingOperation("+"));
    }
    if sig.star && !(src.has_star() && dst.has_star()) {
        return Err(CheckError::MissingOperation("*"));
    }
    let n = src.size();
    let binary = |op: Op, s: &dyn Fn(usize, usize) -> usize, t: &dyn Fn(usize, usize) -> usize| {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| f[s(x, y)] != t(f[x], f[y]))
            .map(|(x, y)| MorphismViolation { op, witness: vec![x, y] })
    };
    let mut violation = None;
    if sig.mul {
        violation = binary(Op::Mul, &|x, y| src.mul(x, y), &|x, y| dst.mul(x, y));
    }
    if violation.is_none() && sig.add {
        violation = binary(Op::Add, &|x, y| src.add(x, y).unwrap(), &|x, y| dst.add(x, y).unwrap());
    }
    if violation.is_none() && sig.star {
        violation = (0..n)
            .find(|&x| f[src.star(x).unwrap()] != dst.star(f[x]).unwrap())
            .map(|x| MorphismViolation { op: Op::Star, witness: vec![x] });
    }
    let mut hit = vec![false; dst.size()];
    let mut injective = true;
    for &y in f {
        injective &= !std::mem::replace(&mut hit[y], true);
    }
    Ok(MorphismReport {
        violation,
        surjective: hit.iter().all(|&h| h),
        injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{brandt_monoid_b21, B21};

    #[test]
    fn swapping_e_and_f_breaks_mul() {
        let b = brandt_monoid_b21();
        let mut map: Vec<usize> = (0..6).collect();
        map.swap(B21::E, B21::F);
        let spec = MorphismSpec { source: &b, target: &b, map: &map, signature: Signature::MUL };
        let r = verify_morphism(&spec).unwrap();
        assert_eq!(
            r.violation,
            Some(MorphismViolation { op: Op::Mul, witness: vec![B21::A, B21::B] })
        );
        assert!(r.injective && r.surjective);
    }

    #[test]
    fn identity_map_and_errors() {
        let b = brandt_monoid_b21();
        let map: Vec<usize> = (0..6).collect();
        let spec = MorphismSpec { source: &b, target: &b, map: &map, signature: Signature::ALL };
        assert!(verify_morphism(&spec).unwrap().is_homomorphism());
        let short = [0usize; 5];
        let spec = MorphismSpec { source: &b, target: &b, map: &short, signature: Signature::MUL };
        assert!(matches!(verify_morphism(&spec), Err(CheckError::MapNotTotal(_))));
        let reduct = b.mul_reduct();
        let spec = MorphismSpec { source: &reduct, target: &b, map: &map, signature: Signature::SEMIRING };
        assert!(matches!(verify_morphism(&spec), Err(CheckError::MissingOperation("+"))));
        // Constant map onto 0 respects · and + but is neither injective nor surjective.
        let zero = [B21::ZERO; 6];
        let spec = MorphismSpec { source: &b, target: &b, map: &zero, signature: Signature::ALL };
        let r = verify_morphism(&spec).unwrap();
        assert!(r.is_homomorphism() && !r.injective && !r.surjective);
    }
}
