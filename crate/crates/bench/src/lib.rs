//! Shared inputs for the benchmarks.

use pi1_core::group::catalog::Catalog;
use pi1_core::oracle::nodal_line;
use pi1_core::{CurveConfiguration, PermutationGroup};

pub fn group(name: &str) -> PermutationGroup {
    Catalog::embedded().group(name).expect("catalog group")
}

/// Catalog groups of order at most `max_order`.
pub fn groups(max_order: u64) -> Vec<PermutationGroup> {
    Catalog::embedded().up_to_order(max_order).map(|e| e.group().expect("catalog group")).collect()
}

/// A line with `k` nodes.
pub fn nodes(k: usize) -> CurveConfiguration {
    nodal_line(k)
}
