use std::fmt::Write;

use serde::Serialize;

use super::enumerate::enumerate_connected_covers_with;
use crate::curve::CurveConfiguration;
use crate::error::Result;
use crate::group::catalog::Catalog;
use crate::group::Permutation;

#[derive(Debug, Clone, Serialize)]
pub struct CensusEntry {
    pub name: String,
    pub order: u64,
    pub d: usize,
    /// Connected gluing tuples.
    pub count: u128,
    /// The first connected tuple.
    pub witness: Vec<Permutation>,
}

/// Catalog groups of order at most `max_order` that occur as Galois groups
/// of connected étale covers of a genus-0 configuration, each with the
/// number of gluing tuples realizing it and one witness.
pub fn quotient_census(catalog: &Catalog, config: &CurveConfiguration, max_order: u64) -> Result<Vec<CensusEntry>> {
    let mut out = Vec::new();
    for entry in catalog.up_to_order(max_order) {
        let group = entry.group()?;
        let e = enumerate_connected_covers_with(&group, config, 1)?;
        if let Some(witness) = e.witnesses.into_iter().next() {
            out.push(CensusEntry {
                name: entry.name.clone(),
                order: entry.order,
                d: group.min_generators()?,
                count: e.count,
                witness,
            });
        }
    }
    Ok(out)
}

/// One line per entry: name, order, d, count.
pub fn census_text(entries: &[CensusEntry]) -> String {
    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(4).max(4);
    let mut out = format!("{:<width$}  order  d  count\n", "name");
    for e in entries {
        writeln!(out, "{:<width$}  {:>5}  {}  {}", e.name, e.order, e.d, e.count).expect("string write");
    }
    out
}
