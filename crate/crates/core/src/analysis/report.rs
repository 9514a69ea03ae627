use serde::Serialize;

use super::basic::{idempotent_generated, is_block_group, j_trivial_subset};
use super::groups::{group_analytics, GroupAnalytics, SUBGROUP_ENUMERATION_LIMIT};
use super::series::{maximal_subgroups, principal_series, FactorKind, MaximalSubgroup, SeriesStep};
use crate::algebra::FiniteAlgebra;
use crate::constructions::Group;

/// Everything `analyze` reports about one algebra.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub size: usize,
    pub block_group: bool,
    #[serde(rename = "j_trivial_ES")]
    pub j_trivial_es: bool,
    pub series: Vec<SeriesStep>,
    pub h: usize,
    pub m: u64,
    pub k: Option<usize>,
    pub k_floored: bool,
    pub q: Option<u64>,
    pub r: Option<u64>,
    pub brandt_series: bool,
    pub subgroups: Vec<MaximalSubgroup>,
    /// Present when the algebra itself is a group small enough to enumerate.
    #[serde(flatten)]
    pub group: Option<GroupAnalytics>,
}

pub fn analyze(alg: &FiniteAlgebra) -> AnalysisReport {
    let series = principal_series(alg);
    let es = idempotent_generated(alg);
    let group = Group::from_algebra(alg.mul_reduct())
        .ok()
        .filter(|g| g.order() <= SUBGROUP_ENUMERATION_LIMIT)
        .and_then(|g| group_analytics(&g).ok());
    AnalysisReport {
        size: alg.size(),
        block_group: is_block_group(alg).holds,
        j_trivial_es: j_trivial_subset(alg, &es),
        brandt_series: series.is_brandt_series()
            && series.chain.iter().all(|s| s.kind != FactorKind::Other),
        h: series.h,
        m: series.m,
        k: series.k,
        k_floored: series.k_floored,
        q: series.q,
        r: series.r,
        series: series.chain,
        subgroups: maximal_subgroups(alg),
        group,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{brandt_monoid_b21, GroupSpec};

    #[test]
    fn b21_report() {
        let r = analyze(&brandt_monoid_b21());
        assert!(r.block_group && r.j_trivial_es && r.brandt_series);
        assert_eq!((r.h, r.m, r.k, r.q, r.r), (2, 1, Some(1), Some(4), Some(5)));
        assert!(r.group.is_none());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["series"][1]["kind"], "brandt");
        assert_eq!(v["series"][0]["ideal"], serde_json::json!([0]));
        assert_eq!(v["j_trivial_ES"], true);
    }

    #[test]
    fn group_report() {
        let g = Group::from_spec(GroupSpec::Symmetric(3)).unwrap();
        let v = serde_json::to_value(analyze(g.algebra())).unwrap();
        assert_eq!(v["solvable"], true);
        assert_eq!(v["derived_length"], 2);
        assert_eq!(v["dedekind"], false);
        assert_eq!(v["h"], 0);
    }
}
