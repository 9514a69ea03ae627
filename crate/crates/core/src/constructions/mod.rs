//! Builders for the concrete algebras: groups, Brandt semigroups, power
//! semirings, Hall relations, Kaďourek semigroups and derived algebras.

mod brandt;
mod derived;
mod groups;
mod hall;
mod kadourek;
mod power;

pub use brandt::{brandt_element, brandt_monoid_b21, brandt_semigroup, BrandtElement, B21};
pub use derived::{adjoin_identity, adjoin_zero, rees_quotient, subalgebra_generate};
pub use groups::{make_group, Group, GroupSpec, MAX_SYMMETRIC_DEGREE};
pub use hall::{hall_semiring, hall_semiring_with_budget, BoolMatrix};
pub use kadourek::{kadourek_semigroup, kadourek_semigroup_with_budget, Kadourek, PartialInjection};
pub use power::{
    involution_power, involution_power_semiring, mask_label, power_semiring,
    power_semiring_with_budget, subset_b, SubsetB, SubsetElement,
};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::terms::TermError;

/// Default limit on `|G|` for power-set constructions.
pub const DEFAULT_POWER_BITS: usize = 12;

/// Default limit on enumerated carriers (Hall relations, closures).
pub const DEFAULT_MAX_CARRIER: usize = 8192;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("unrecognized group {0:?}; expected C<n>, Z<n>, S<n>, D<n> or Q8")]
    BadGroupSpec(String),
    #[error("unsupported size for {0}")]
    UnsupportedSize(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("carrier of {what} would have {size} elements, budget is {budget}")]
    CarrierTooLarge {
        what: String,
        size: u128,
        budget: u128,
    },
    #[error("the given set is not a subgroup")]
    NotASubgroup,
    #[error("g⁻¹Hg = H, so H is normalized by the chosen element")]
    NormalSubgroup,
    #[error("closure exceeded {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("not an ideal: {product} = {a}·{s} or {s}·{a} leaves the set")]
    NotAnIdeal { a: usize, s: usize, product: usize },
    #[error("subset is not closed: {0}")]
    NotClosed(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Term(#[from] TermError),
}
