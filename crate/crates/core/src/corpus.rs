//! Every associative multiplication table on `{0,…,n−1}` (raw tables, not
//! up to isomorphism), plus the shipped constructions as named algebras.

use crate::algebra::FiniteAlgebra;
use crate::constructions::{
    brandt_monoid_b21, brandt_semigroup, hall_semiring, involution_power_semiring, kadourek_semigroup,
    power_semiring, subset_b, Group, GroupSpec,
};

const UNSET: u8 = u8::MAX;

struct Search<'a, F: FnMut(&[u32])> {
    n: usize,
    t: Vec<u8>,
    visit: &'a mut F,
}

impl<F: FnMut(&[u32])> Search<'_, F> {
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.t[x * self.n + y];
        (v != UNSET).then_some(v as usize)
    }

    fn assoc(&self, x: usize, y: usize, z: usize) -> bool {
        let l = self.get(x, y).and_then(|xy| self.get(xy, z));
        let r = self.get(y, z).and_then(|yz| self.get(x, yz));
        match (l, r) {
            (Some(l), Some(r)) => l == r,
            _ => true,
        }
    }

    /// Triples whose associativity can depend on cell `(a, b)`.
    fn consistent(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        for w in 0..n {
            if !self.assoc(a, b, w) || !self.assoc(w, a, b) {
                return false;
            }
            for y in 0..n {
                if self.get(w, y) == Some(a) && !self.assoc(w, y, b) {
                    return false;
                }
                if self.get(w, y) == Some(b) && !self.assoc(a, w, y) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, cell: usize) {
        let n = self.n;
        if cell == n * n {
            let table: Vec<u32> = self.t.iter().map(|&v| v as u32).collect();
            (self.visit)(&table);
            return;
        }
        let (a, b) = (cell / n, cell % n);
        for v in 0..n as u8 {
            self.t[cell] = v;
            if self.consistent(a, b) {
                self.run(cell + 1);
            }
        }
        self.t[cell] = UNSET;
    }
}

/// Calls `visit` with every associative table of order `n`, in lexicographic
/// order of the row-major table.
pub fn for_each_semigroup_table(n: usize, mut visit: impl FnMut(&[u32])) {
    assert!((1..=8).contains(&n), "order must be between 1 and 8");
    let mut s = Search {
        n,
        t: vec![UNSET; n * n],
        visit: &mut visit,
    };
    s.run(0);
}

pub fn count_semigroups(n: usize) -> usize {
    let mut count = 0;
    for_each_semigroup_table(n, |_| count += 1);
    count
}

fn table_algebra(n: usize, table: &[u32]) -> FiniteAlgebra {
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteAlgebra::new(labels, table.to_vec(), None, None).expect("enumerated tables are well formed")
}

/// All semigroups of order `n` as algebras labelled `0…n−1`.
pub fn semigroups_of_order(n: usize) -> Vec<FiniteAlgebra> {
    let mut out = Vec::new();
    for_each_semigroup_table(n, |t| out.push(table_algebra(n, t)));
    out
}

/// All semigroups of order `1..=max_order`.
pub fn small_semigroups(max_order: usize) -> Vec<FiniteAlgebra> {
    (1..=max_order).flat_map(semigroups_of_order).collect()
}

/// The constructions shipped by the library, at small parameters.
pub fn shipped_constructions() -> Vec<(String, FiniteAlgebra)> {
    let group = |s: GroupSpec| Group::from_spec(s).expect("supported group");
    let trivial = group(GroupSpec::Cyclic(1));
    let z2 = group(GroupSpec::Cyclic(2));
    let s3 = group(GroupSpec::Symmetric(3));
    let mut out: Vec<(String, FiniteAlgebra)> = Vec::new();
    for spec in [
        GroupSpec::Cyclic(1),
        GroupSpec::Cyclic(4),
        GroupSpec::Cyclic(6),
        GroupSpec::Symmetric(3),
        GroupSpec::Dihedral(4),
        GroupSpec::Quaternion8,
    ] {
        out.push((format!("group {spec}"), group(spec).algebra().clone()));
    }
    out.push(("B21".into(), brandt_monoid_b21()));
    for (g, name, i) in [(&trivial, "C1", 2), (&trivial, "C1", 3), (&z2, "C2", 2), (&s3, "S3", 2)] {
        out.push((format!("brandt {name} {i}"), brandt_semigroup(g, i).expect("small Brandt semigroup")));
    }
    for (g, name) in [(&z2, "C2"), (&s3, "S3")] {
        out.push((format!("power {name}"), power_semiring(g, false).expect("small power semiring")));
        out.push((format!("power-nonempty {name}"), power_semiring(g, true).expect("small power semiring")));
        out.push((format!("involution-power {name}"), involution_power_semiring(g).expect("small power semiring")));
    }
    let h = (1u64 << s3.element("e").unwrap()) | (1u64 << s3.element("(12)").unwrap());
    let b = subset_b(&s3, h, s3.element("(13)").unwrap()).expect("the standard subset B");
    out.push(("subset-b S3".into(), b.algebra(&s3).expect("subset B closes")));
    for n in 1..=3 {
        out.push((format!("hall {n}"), hall_semiring(n, true).expect("small Hall semiring")));
    }
    for (n, h) in [(2, 1), (2, 2)] {
        let k = kadourek_semigroup(n, h).expect("small Kaďourek semigroup");
        out.push((format!("kadourek {n} {h}"), k.algebra));
    }
    out
}
