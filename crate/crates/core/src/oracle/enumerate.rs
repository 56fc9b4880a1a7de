use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::CoverDescriptor;
use crate::curve::CurveConfiguration;
use crate::error::{Error, Result};
use crate::group::{CayleyTable, Permutation, PermutationGroup};
use crate::union_find::UnionFind;

/// Largest tuple space `|G|^δ` that is enumerated.
pub const ENUMERATION_BOUND: u128 = 10_000_000;
const DEFAULT_WITNESS_LIMIT: usize = 16;
pub(super) const CHUNK: u128 = 4096;

#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    /// `|G|^δ`.
    pub tuples: u128,
    /// Tuples giving a connected cover.
    pub count: u128,
    /// The first connected tuples in lexicographic order of element
    /// indices, one constant per non-tree edge.
    pub witnesses: Vec<Vec<Permutation>>,
}

/// Dual-graph edges of a genus-0 configuration; non-tree edges carry the
/// slot of their free constant.
pub(super) struct Template {
    /// `(component of base branch, component of branch, free slot)`
    pub(super) edges: Vec<(usize, usize, Option<usize>)>,
    pub(super) components: usize,
    pub(super) free: Vec<usize>,
}

pub(super) fn template(group: &PermutationGroup, config: &CurveConfiguration) -> Result<Template> {
    config.delta()?;
    if let Some(c) = config.components.iter().find(|c| c.genus > 0) {
        return Err(Error::GenusNonzero(c.id.clone()));
    }
    let cover = CoverDescriptor::identity_gluings(config.clone(), group.clone(), BTreeMap::new(), BTreeMap::new())?;
    let tree = cover.spanning_tree()?;
    let index = config.component_index();
    let mut edges = Vec::new();
    let mut free = Vec::new();
    let mut position = 0;
    for (k, (class, branches)) in config.identifications.iter().zip(cover.gluings()).enumerate() {
        let i = index[class.base().component.as_str()];
        for (j, b) in branches.iter().enumerate() {
            let on_tree = tree.iter().any(|e| e.class == k && e.branch == j);
            let slot = if on_tree {
                None
            } else {
                free.push(position);
                Some(free.len() - 1)
            };
            edges.push((i, index[b.branch.component.as_str()], slot));
            position += 1;
        }
    }
    Ok(Template {
        components: config.n(),
        edges,
        free,
    })
}

/// Constants in dual-graph edge order: `e` on the tree, the tuple elsewhere.
pub(super) fn full_constants(t: &Template, group: &PermutationGroup, tuple: &[Permutation]) -> Vec<Permutation> {
    let mut out = vec![group.identity(); t.edges.len()];
    for (slot, &pos) in t.free.iter().enumerate() {
        out[pos] = tuple[slot].clone();
    }
    out
}

/// The tree-normalized descriptor with the given free constants.
pub fn witness_cover(group: &PermutationGroup, config: &CurveConfiguration, tuple: &[Permutation]) -> Result<CoverDescriptor> {
    let t = template(group, config)?;
    if tuple.len() != t.free.len() {
        return Err(Error::InvalidCover(format!("{} constants for {} free edges", tuple.len(), t.free.len())));
    }
    let constants = full_constants(&t, group, tuple);
    CoverDescriptor::with_constants(config.clone(), group.clone(), BTreeMap::new(), &constants, BTreeMap::new())
}

fn connected(t: &Template, table: &CayleyTable, digits: &[usize]) -> bool {
    let n = table.len();
    let mut uf = UnionFind::new(t.components * n);
    for &(i, j, slot) in &t.edges {
        let c = slot.map_or(0, |s| digits[s]);
        for lambda in 0..n {
            uf.union(i * n + lambda, j * n + table.mul(c, lambda));
        }
    }
    uf.classes() == 1
}

pub(super) fn digits_of(mut index: u128, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for d in out.iter_mut().rev() {
        *d = (index % base as u128) as usize;
        index /= base as u128;
    }
    out
}

pub fn enumerate_connected_covers(group: &PermutationGroup, config: &CurveConfiguration) -> Result<Enumeration> {
    enumerate_connected_covers_with(group, config, DEFAULT_WITNESS_LIMIT)
}

/// Tries every tree-normalized gluing tuple on a genus-0 configuration. The
/// tuple space is split into fixed chunks whose results are merged in
/// order, so the output does not depend on the thread count.
pub fn enumerate_connected_covers_with(group: &PermutationGroup, config: &CurveConfiguration, witness_limit: usize) -> Result<Enumeration> {
    let t = template(group, config)?;
    let order = group.order();
    let delta = t.free.len() as u32;
    let tuples = order
        .checked_pow(delta)
        .filter(|&x| x <= ENUMERATION_BOUND)
        .ok_or_else(|| Error::TooLarge(format!("|G|^δ = {order}^{delta} exceeds {ENUMERATION_BOUND}")))?;
    let table = CayleyTable::new(group)?;
    let n = table.len();
    let chunks = tuples.div_ceil(CHUNK);
    let parts: Vec<(u128, Vec<Vec<usize>>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut count = 0u128;
            let mut found = Vec::new();
            for index in c * CHUNK..((c + 1) * CHUNK).min(tuples) {
                let digits = digits_of(index, n, delta as usize);
                if connected(&t, &table, &digits) {
                    count += 1;
                    if found.len() < witness_limit {
                        found.push(digits);
                    }
                }
            }
            (count, found)
        })
        .collect();
    let mut count = 0;
    let mut witnesses = Vec::new();
    for (c, found) in parts {
        count += c;
        for digits in found {
            if witnesses.len() < witness_limit {
                witnesses.push(digits.iter().map(|&x| table.elements().get(x).clone()).collect());
            }
        }
    }
    Ok(Enumeration { tuples, count, witnesses })
}

/// Number of `k`-tuples of elements generating `G`, by trying them all.
pub fn count_generating_tuples(group: &PermutationGroup, k: u32) -> Result<u128> {
    let table = CayleyTable::new(group)?;
    let n = table.len();
    let tuples = (n as u128)
        .checked_pow(k)
        .filter(|&x| x <= ENUMERATION_BOUND)
        .ok_or_else(|| Error::TooLarge(format!("{n}^{k} tuples")))?;
    let chunks = tuples.div_ceil(CHUNK);
    let counts: Vec<u128> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            (c * CHUNK..((c + 1) * CHUNK).min(tuples))
                .filter(|&index| table.is_full(&table.closure(&digits_of(index, n, k as usize))))
                .count() as u128
        })
        .collect();
    Ok(counts.into_iter().sum())
}
