//! Structural analytics of finite semigroups and groups.

mod basic;
mod groups;
mod report;
mod series;

pub use basic::{
    identity_element, idempotent_generated, idempotents, inverse_report, inverses_of, is_block_group,
    j_classes, j_trivial, j_trivial_subset, mul_closure, unique_inverse_check, zero_element,
    BlockGroupVerdict, InverseVerdict, JClasses,
};
pub use groups::{
    derived_length, derived_series, exponent, group_analytics, is_normal, lcm, normalizer, subgroups,
    GroupAnalytics, SUBGROUP_ENUMERATION_LIMIT,
};
pub use report::{analyze, AnalysisReport};
pub use series::{
    fd_property, is_brandt, maximal_subgroups, principal_series, q_param, r_param, BrandtStructure,
    FactorKind, FdVerdict, MaximalSubgroup, SeriesReport, SeriesStep,
};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("the given set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup enumeration is limited to groups of order at most {limit}, got {order}", limit = SUBGROUP_ENUMERATION_LIMIT)]
    SubgroupEnumerationBudget { order: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
