//! Table-based finite algebras and the axiom systems they are checked against.
//!
//! Elements are dense indices `0..size`. Every operation is a lookup table;
//! whatever the elements "are" (subsets, matrices, partial maps) lives in the
//! labels and in the `meta` object written by the constructor.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which signature an algebra carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Semigroup,
    AiSemiring,
    InvolutionSemigroup,
    InvolutionAiSemiring,
}

impl Kind {
    pub fn from_tables(has_add: bool, has_star: bool) -> Kind {
        match (has_add, has_star) {
            (false, false) => Kind::Semigroup,
            (true, false) => Kind::AiSemiring,
            (false, true) => Kind::InvolutionSemigroup,
            (true, true) => Kind::InvolutionAiSemiring,
        }
    }

    pub fn has_add(self) -> bool {
        matches!(self, Kind::AiSemiring | Kind::InvolutionAiSemiring)
    }

    pub fn has_star(self) -> bool {
        matches!(self, Kind::InvolutionSemigroup | Kind::InvolutionAiSemiring)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Semigroup => "semigroup",
            Kind::AiSemiring => "ai-semiring",
            Kind::InvolutionSemigroup => "involution-semigroup",
            Kind::InvolutionAiSemiring => "involution-ai-semiring",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,
    #[error("{table} table has {found} entries, expected {expected}")]
    TableShape {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table} table entry {value} at position {position} is not below size {size}")]
    EntryOutOfRange {
        table: &'static str,
        position: usize,
        value: usize,
        size: usize,
    },
    #[error("label {0:?} appears more than once")]
    DuplicateLabel(String),
    #[error("kind {declared} does not match the tables present (expected {actual})")]
    KindMismatch { declared: Kind, actual: Kind },
    #[error("subset is not closed under {op}: ({a}, {b}) leaves it")]
    NotClosed { op: &'static str, a: usize, b: usize },
    #[error("element index {0} is out of range")]
    BadElement(usize),
    #[error("malformed algebra file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A finite algebra given by operation tables. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    size: usize,
    mul: Vec<u32>,
    add: Option<Vec<u32>>,
    star: Option<Vec<u32>>,
    labels: Vec<String>,
    kind: Kind,
    meta: serde_json::Value,
}

impl FiniteAlgebra {
    /// Builds an algebra from flat row-major tables; `mul[a * size + b]` is `a·b`.
    pub fn new(
        labels: Vec<String>,
        mul: Vec<u32>,
        add: Option<Vec<u32>>,
        star: Option<Vec<u32>>,
    ) -> Result<Self, AlgebraError> {
        let size = labels.len();
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        check_table("mul", &mul, size * size, size)?;
        if let Some(add) = &add {
            check_table("add", add, size * size, size)?;
        }
        if let Some(star) = &star {
            check_table("star", star, size, size)?;
        }
        let mut seen = std::collections::HashSet::with_capacity(size);
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(AlgebraError::DuplicateLabel(label.clone()));
            }
        }
        let kind = Kind::from_tables(add.is_some(), star.is_some());
        Ok(FiniteAlgebra {
            size,
            mul,
            add,
            star,
            labels,
            kind,
            meta: serde_json::Value::Object(Default::default()),
        })
    }

    /// Builds an algebra whose multiplication is given by a closure.
    pub fn from_fn(
        labels: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let table = (0..n * n).map(|i| mul(i / n, i % n) as u32).collect();
        FiniteAlgebra::new(labels, table, None, None)
    }

    pub fn with_meta(mut self, meta: serde_json::Value) -> Self {
        self.meta = meta;
        self
    }

    pub fn with_add(self, add: Vec<u32>) -> Result<Self, AlgebraError> {
        let meta = self.meta.clone();
        Ok(FiniteAlgebra::new(self.labels, self.mul, Some(add), self.star)?.with_meta(meta))
    }

    pub fn with_star(self, star: Vec<u32>) -> Result<Self, AlgebraError> {
        let meta = self.meta.clone();
        Ok(FiniteAlgebra::new(self.labels, self.mul, self.add, Some(star))?.with_meta(meta))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn meta(&self) -> &serde_json::Value {
        &self.meta
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    /// Raw multiplication table, row-major.
    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        self.add.as_ref().map(|t| t[a * self.size + b] as usize)
    }

    pub fn add_table(&self) -> Option<&[u32]> {
        self.add.as_deref()
    }

    #[inline]
    pub fn star(&self, a: usize) -> Option<usize> {
        self.star.as_ref().map(|t| t[a] as usize)
    }

    pub fn star_table(&self) -> Option<&[u32]> {
        self.star.as_deref()
    }

    pub fn has_add(&self) -> bool {
        self.add.is_some()
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    /// `a^exp` for `exp >= 1` by repeated squaring.
    pub fn pow(&self, a: usize, exp: u64) -> usize {
        assert!(exp >= 1, "semigroup powers start at 1");
        let mut result: Option<usize> = None;
        let mut base = a;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base,
                    Some(r) => self.mul(r, base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        result.expect("exp >= 1")
    }

    /// Left-to-right product of a non-empty sequence.
    pub fn product(&self, elems: impl IntoIterator<Item = usize>) -> Option<usize> {
        elems.into_iter().reduce(|acc, x| self.mul(acc, x))
    }

    /// The multiplicative reduct `(S, ·)`.
    pub fn mul_reduct(&self) -> FiniteAlgebra {
        FiniteAlgebra {
            size: self.size,
            mul: self.mul.clone(),
            add: None,
            star: None,
            labels: self.labels.clone(),
            kind: Kind::Semigroup,
            meta: self.meta.clone(),
        }
    }

    /// Drops the involution, keeping `+` if present.
    pub fn without_star(&self) -> FiniteAlgebra {
        FiniteAlgebra {
            star: None,
            kind: Kind::from_tables(self.add.is_some(), false),
            ..self.clone()
        }
    }

    /// Drops the addition, keeping `*` if present.
    pub fn without_add(&self) -> FiniteAlgebra {
        FiniteAlgebra {
            add: None,
            kind: Kind::from_tables(false, self.star.is_some()),
            ..self.clone()
        }
    }

    /// Restricts every present operation to `elements`, which must be closed.
    /// Index `i` of the result corresponds to `elements[i]`.
    pub fn induced(&self, elements: &[usize]) -> Result<FiniteAlgebra, AlgebraError> {
        let mut position = vec![u32::MAX; self.size];
        for (i, &e) in elements.iter().enumerate() {
            if e >= self.size {
                return Err(AlgebraError::BadElement(e));
            }
            position[e] = i as u32;
        }
        let k = elements.len();
        let restrict = |op: &'static str, table: &[u32]| -> Result<Vec<u32>, AlgebraError> {
            let mut out = Vec::with_capacity(k * k);
            for &a in elements {
                for &b in elements {
                    let p = position[table[a * self.size + b] as usize];
                    if p == u32::MAX {
                        return Err(AlgebraError::NotClosed { op, a, b });
                    }
                    out.push(p);
                }
            }
            Ok(out)
        };
        let mul = restrict("mul", &self.mul)?;
        let add = self.add.as_deref().map(|t| restrict("add", t)).transpose()?;
        let star = match &self.star {
            Some(t) => {
                let mut out = Vec::with_capacity(k);
                for &a in elements {
                    let p = position[t[a] as usize];
                    if p == u32::MAX {
                        return Err(AlgebraError::NotClosed { op: "star", a, b: a });
                    }
                    out.push(p);
                }
                Some(out)
            }
            None => None,
        };
        let labels = elements.iter().map(|&e| self.labels[e].clone()).collect();
        FiniteAlgebra::new(labels, mul, add, star)
    }

    pub fn to_file_repr(&self) -> AlgebraFile {
        let rows = |t: &[u32]| -> Vec<Vec<usize>> {
            t.chunks(self.size)
                .map(|r| r.iter().map(|&x| x as usize).collect())
                .collect()
        };
        AlgebraFile {
            kind: self.kind,
            size: self.size,
            labels: self.labels.clone(),
            mul: rows(&self.mul),
            add: self.add.as_deref().map(rows),
            star: self
                .star
                .as_ref()
                .map(|t| t.iter().map(|&x| x as usize).collect()),
            meta: self.meta.clone(),
        }
    }

    pub fn from_file_repr(file: AlgebraFile) -> Result<Self, AlgebraError> {
        let size = file.size;
        if file.labels.len() != size {
            return Err(AlgebraError::TableShape {
                table: "labels",
                expected: size,
                found: file.labels.len(),
            });
        }
        let flatten = |table: &'static str, rows: Vec<Vec<usize>>| -> Result<Vec<u32>, AlgebraError> {
            if rows.len() != size {
                return Err(AlgebraError::TableShape {
                    table,
                    expected: size,
                    found: rows.len(),
                });
            }
            let mut out = Vec::with_capacity(size * size);
            for row in rows {
                if row.len() != size {
                    return Err(AlgebraError::TableShape {
                        table,
                        expected: size,
                        found: row.len(),
                    });
                }
                out.extend(row.into_iter().map(|x| x.min(u32::MAX as usize) as u32));
            }
            Ok(out)
        };
        let mul = flatten("mul", file.mul)?;
        let add = file.add.map(|rows| flatten("add", rows)).transpose()?;
        let star = file
            .star
            .map(|s| s.into_iter().map(|x| x.min(u32::MAX as usize) as u32).collect());
        let alg = FiniteAlgebra::new(file.labels, mul, add, star)?;
        if alg.kind != file.kind {
            return Err(AlgebraError::KindMismatch {
                declared: file.kind,
                actual: alg.kind,
            });
        }
        Ok(alg.with_meta(file.meta))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file_repr()).expect("algebra serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        FiniteAlgebra::from_file_repr(serde_json::from_str(text)?)
    }

    /// Reads an algebra file; names ending in `.gz` are gunzipped.
    pub fn read_file(path: impl AsRef<Path>) -> Result<Self, AlgebraError> {
        let path = path.as_ref();
        let mut text = String::new();
        let file = BufReader::new(File::open(path)?);
        if is_gz(path) {
            GzDecoder::new(file).read_to_string(&mut text)?;
        } else {
            let mut file = file;
            file.read_to_string(&mut text)?;
        }
        FiniteAlgebra::from_json(&text)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<(), AlgebraError> {
        let path = path.as_ref();
        let mut json = self.to_json();
        json.push('\n');
        let file = BufWriter::new(File::create(path)?);
        if is_gz(path) {
            let mut enc = GzEncoder::new(file, Compression::default());
            enc.write_all(json.as_bytes())?;
            enc.finish()?.flush()?;
        } else {
            let mut file = file;
            file.write_all(json.as_bytes())?;
            file.flush()?;
        }
        Ok(())
    }
}

fn is_gz(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gz")
}

fn check_table(
    table: &'static str,
    values: &[u32],
    expected: usize,
    size: usize,
) -> Result<(), AlgebraError> {
    if values.len() != expected {
        return Err(AlgebraError::TableShape {
            table,
            expected,
            found: values.len(),
        });
    }
    if let Some((position, &value)) = values.iter().enumerate().find(|(_, &v)| v as usize >= size) {
        return Err(AlgebraError::EntryOutOfRange {
            table,
            position,
            value: value as usize,
            size,
        });
    }
    Ok(())
}

/// On-disk JSON layout of an algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub kind: Kind,
    pub size: usize,
    pub labels: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<usize>>,
    #[serde(default = "empty_meta")]
    pub meta: serde_json::Value,
}

fn empty_meta() -> serde_json::Value {
    serde_json::Value::Object(Default::default())
}

/// Identifier of a law checked by the validators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// `(xy)z = x(yz)`, witness `(x, y, z)`.
    MulAssociative,
    /// `(x+y)+z = x+(y+z)`, witness `(x, y, z)`.
    AddAssociative,
    /// `x+y = y+x`, witness `(x, y)`.
    AddCommutative,
    /// `x+x = x`, witness `(x)`.
    AddIdempotent,
    /// `x(y+z) = xy+xz`, witness `(x, y, z)`.
    LeftDistributive,
    /// `(y+z)x = yx+zx`, witness `(x, y, z)`.
    RightDistributive,
    /// `(x*)* = x`, witness `(x)`.
    StarInvolutive,
    /// `(xy)* = y*x*`, witness `(x, y)`.
    StarAntiMultiplicative,
    /// `(x+y)* = x*+y*`, witness `(x, y)`.
    StarAdditive,
}

/// A failed law together with the elements that break it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub law: Law,
    pub witness: Vec<usize>,
}

impl AxiomViolation {
    /// Evaluates both sides of the law at the witness.
    pub fn sides(&self, alg: &FiniteAlgebra) -> Option<(usize, usize)> {
        let w = &self.witness;
        let m = |a, b| alg.mul(a, b);
        let p = |a, b| alg.add(a, b);
        let s = |a| alg.star(a);
        Some(match self.law {
            Law::MulAssociative => (m(m(w[0], w[1]), w[2]), m(w[0], m(w[1], w[2]))),
            Law::AddAssociative => (p(p(w[0], w[1])?, w[2])?, p(w[0], p(w[1], w[2])?)?),
            Law::AddCommutative => (p(w[0], w[1])?, p(w[1], w[0])?),
            Law::AddIdempotent => (p(w[0], w[0])?, w[0]),
            Law::LeftDistributive => (m(w[0], p(w[1], w[2])?), p(m(w[0], w[1]), m(w[0], w[2]))?),
            Law::RightDistributive => (m(p(w[1], w[2])?, w[0]), p(m(w[1], w[0]), m(w[2], w[0]))?),
            Law::StarInvolutive => (s(s(w[0])?)?, w[0]),
            Law::StarAntiMultiplicative => (s(m(w[0], w[1]))?, m(s(w[1])?, s(w[0])?)),
            Law::StarAdditive => (s(p(w[0], w[1])?)?, p(s(w[0])?, s(w[1])?)?),
        })
    }

    /// True when replaying the witness reproduces the inequality.
    pub fn reproduces(&self, alg: &FiniteAlgebra) -> bool {
        matches!(self.sides(alg), Some((l, r)) if l != r)
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at {:?}", self.law, self.witness)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("missing {0} table")]
    MissingTable(&'static str),
    #[error("{0}")]
    Violation(AxiomViolation),
}

fn first_pair(n: usize, bad: impl Fn(usize, usize) -> bool + Sync) -> Option<(usize, usize)> {
    (0..n)
        .into_par_iter()
        .find_map_first(|x| (0..n).find(|&y| bad(x, y)).map(|y| (x, y)))
}

fn first_triple(
    n: usize,
    bad: impl Fn(usize, usize, usize) -> bool + Sync,
) -> Option<(usize, usize, usize)> {
    (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
        None
    })
}

fn violation(law: Law, witness: Vec<usize>) -> ValidationError {
    ValidationError::Violation(AxiomViolation { law, witness })
}

/// Checks associativity of `·`, reporting the lexicographically first failing triple.
pub fn validate_semigroup(alg: &FiniteAlgebra) -> Result<(), ValidationError> {
    let n = alg.size();
    match first_triple(n, |x, y, z| alg.mul(alg.mul(x, y), z) != alg.mul(x, alg.mul(y, z))) {
        Some((x, y, z)) => Err(violation(Law::MulAssociative, vec![x, y, z])),
        None => Ok(()),
    }
}

/// Checks the additively idempotent semiring axioms. Laws are tried in the
/// order of [`Law`]; within a law the first witness in index order is reported.
pub fn validate_ai_semiring(alg: &FiniteAlgebra) -> Result<(), ValidationError> {
    let add = alg.add_table().ok_or(ValidationError::MissingTable("add"))?;
    let n = alg.size();
    let p = |a: usize, b: usize| add[a * n + b] as usize;
    let m = |a: usize, b: usize| alg.mul(a, b);
    validate_semigroup(alg)?;
    if let Some((x, y, z)) = first_triple(n, |x, y, z| p(p(x, y), z) != p(x, p(y, z))) {
        return Err(violation(Law::AddAssociative, vec![x, y, z]));
    }
    if let Some((x, y)) = first_pair(n, |x, y| p(x, y) != p(y, x)) {
        return Err(violation(Law::AddCommutative, vec![x, y]));
    }
    if let Some(x) = (0..n).find(|&x| p(x, x) != x) {
        return Err(violation(Law::AddIdempotent, vec![x]));
    }
    if let Some((x, y, z)) = first_triple(n, |x, y, z| m(x, p(y, z)) != p(m(x, y), m(x, z))) {
        return Err(violation(Law::LeftDistributive, vec![x, y, z]));
    }
    if let Some((x, y, z)) = first_triple(n, |x, y, z| m(p(y, z), x) != p(m(y, x), m(z, x))) {
        return Err(violation(Law::RightDistributive, vec![x, y, z]));
    }
    Ok(())
}

/// Checks `(x*)* = x` and `(xy)* = y*x*`; for involution ai-semirings also
/// `(x+y)* = x*+y*`.
pub fn validate_involution(alg: &FiniteAlgebra) -> Result<(), ValidationError> {
    let star = alg.star_table().ok_or(ValidationError::MissingTable("star"))?;
    let n = alg.size();
    let s = |a: usize| star[a] as usize;
    if let Some(x) = (0..n).find(|&x| s(s(x)) != x) {
        return Err(violation(Law::StarInvolutive, vec![x]));
    }
    if let Some((x, y)) = first_pair(n, |x, y| s(alg.mul(x, y)) != alg.mul(s(y), s(x))) {
        return Err(violation(Law::StarAntiMultiplicative, vec![x, y]));
    }
    if alg.kind() == Kind::InvolutionAiSemiring {
        let add = alg.add_table().ok_or(ValidationError::MissingTable("add"))?;
        let p = |a: usize, b: usize| add[a * n + b] as usize;
        if let Some((x, y)) = first_pair(n, |x, y| s(p(x, y)) != p(s(x), s(y))) {
            return Err(violation(Law::StarAdditive, vec![x, y]));
        }
    }
    Ok(())
}

/// Runs every validator that applies to the algebra's kind.
pub fn validate(alg: &FiniteAlgebra) -> Result<(), ValidationError> {
    if alg.kind().has_add() {
        validate_ai_semiring(alg)?;
    } else {
        validate_semigroup(alg)?;
    }
    if alg.kind().has_star() {
        validate_involution(alg)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn one_element_is_a_semigroup() {
        let alg = FiniteAlgebra::from_fn(labels(1), |_, _| 0).unwrap();
        assert_eq!(validate_semigroup(&alg), Ok(()));
    }

    #[test]
    fn non_associative_table_reports_first_triple() {
        // 0·0 = 1, everything else 0.
        let table = |a: usize, b: usize| if a == 0 && b == 0 { 1 } else { 0 };
        let alg = FiniteAlgebra::from_fn(labels(2), table).unwrap();
        // Oracle: direct triple scan in lexicographic order.
        let mut expected = None;
        'outer: for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    if table(table(x, y), z) != table(x, table(y, z)) {
                        expected = Some(vec![x, y, z]);
                        break 'outer;
                    }
                }
            }
        }
        let err = validate_semigroup(&alg).unwrap_err();
        let ValidationError::Violation(v) = err else { panic!() };
        assert_eq!(Some(v.witness.clone()), expected);
        // (0·0)·0 = 0 = 0·(0·0); the first failure is (0·0)·1 = 0 vs 0·(0·1) = 1.
        assert_eq!(v.witness, vec![0, 0, 1]);
        assert!(v.reproduces(&alg));
    }

    #[test]
    fn xor_addition_is_not_idempotent() {
        let alg = FiniteAlgebra::from_fn(labels(2), |a, b| a & b)
            .unwrap()
            .with_add(vec![0, 1, 1, 0])
            .unwrap();
        let err = validate_ai_semiring(&alg).unwrap_err();
        assert_eq!(
            err,
            ValidationError::Violation(AxiomViolation {
                law: Law::AddIdempotent,
                witness: vec![1]
            })
        );
    }

    #[test]
    fn semilattice_with_mul_equal_add_is_ai_semiring() {
        // Three-element chain under max.
        let t: Vec<u32> = (0..9).map(|i| (i / 3).max(i % 3) as u32).collect();
        let alg = FiniteAlgebra::new(labels(3), t.clone(), Some(t), None).unwrap();
        assert_eq!(validate_ai_semiring(&alg), Ok(()));
    }

    #[test]
    fn identity_star_on_commutative_semigroup() {
        let alg = FiniteAlgebra::from_fn(labels(4), |a, b| (a + b) % 4)
            .unwrap()
            .with_star(vec![0, 1, 2, 3])
            .unwrap();
        assert_eq!(validate_involution(&alg), Ok(()));
    }

    #[test]
    fn missing_tables_are_reported() {
        let alg = FiniteAlgebra::from_fn(labels(2), |a, _| a).unwrap();
        assert_eq!(validate_ai_semiring(&alg), Err(ValidationError::MissingTable("add")));
        assert_eq!(validate_involution(&alg), Err(ValidationError::MissingTable("star")));
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(
            FiniteAlgebra::new(labels(2), vec![0, 1, 2, 0], None, None),
            Err(AlgebraError::EntryOutOfRange { value: 2, .. })
        ));
        assert!(matches!(
            FiniteAlgebra::new(vec!["a".into(), "a".into()], vec![0; 4], None, None),
            Err(AlgebraError::DuplicateLabel(_))
        ));
        assert!(matches!(
            FiniteAlgebra::new(labels(2), vec![0; 3], None, None),
            Err(AlgebraError::TableShape { .. })
        ));
    }

    #[test]
    fn kind_must_match_tables_in_files() {
        let alg = FiniteAlgebra::from_fn(labels(2), |a, _| a).unwrap();
        let mut file = alg.to_file_repr();
        file.kind = Kind::AiSemiring;
        assert!(matches!(
            FiniteAlgebra::from_file_repr(file),
            Err(AlgebraError::KindMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip_and_gzip() {
        let alg = FiniteAlgebra::from_fn(labels(3), |a, b| (a * b) % 3)
            .unwrap()
            .with_add((0..9).map(|i| ((i / 3).max(i % 3)) as u32).collect())
            .unwrap()
            .with_meta(serde_json::json!({"construction": "test"}));
        let back = FiniteAlgebra::from_json(&alg.to_json()).unwrap();
        assert_eq!(back, alg);
        let dir = std::env::temp_dir().join(format!("bglab-alg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("a.json.gz");
        alg.write_file(&path).unwrap();
        assert_eq!(FiniteAlgebra::read_file(&path).unwrap(), alg);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn induced_requires_closure() {
        let alg = FiniteAlgebra::from_fn(labels(4), |a, b| (a + b) % 4).unwrap();
        let sub = alg.induced(&[0, 2]).unwrap();
        assert_eq!(sub.size(), 2);
        assert_eq!(sub.mul(1, 1), 0);
        assert!(matches!(alg.induced(&[0, 1]), Err(AlgebraError::NotClosed { .. })));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let alg = FiniteAlgebra::from_fn(labels(7), |a, b| (a + b) % 7).unwrap();
        for a in 0..7 {
            for e in 1..20u64 {
                let naive = (1..e).fold(a, |acc, _| alg.mul(acc, a));
                assert_eq!(alg.pow(a, e), naive);
            }
        }
    }
}
