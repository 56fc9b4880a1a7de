//! Isomorphism testing for small groups through their multiplication tables.

use super::generators::{minimal_generating_tuple, GeneratorSearch};
use super::table::CayleyTable;
use super::PermutationGroup;
use crate::error::Result;

/// Per-element `(order, centralizer size)`, sorted. Equal for isomorphic
/// groups.
pub fn fingerprint(table: &CayleyTable) -> Vec<(usize, usize)> {
    let n = table.len();
    let mut out: Vec<(usize, usize)> = (0..n)
        .map(|a| {
            let c = (0..n).filter(|&b| table.mul(a, b) == table.mul(b, a)).count();
            (table.element_order(a), c)
        })
        .collect();
    out.sort_unstable();
    out
}

pub fn is_isomorphic(a: &PermutationGroup, b: &PermutationGroup) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let ta = CayleyTable::new(a)?;
    let tb = CayleyTable::new(b)?;
    Ok(find_isomorphism(&ta, &tb).is_some())
}

/// An isomorphism as a map from element indices of `a` to those of `b`.
pub fn find_isomorphism(a: &CayleyTable, b: &CayleyTable) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let fa = fingerprint(a);
    if fa != fingerprint(b) {
        return None;
    }
    let gens = minimal_generating_tuple(a, &GeneratorSearch::default());
    if gens.is_empty() {
        return Some(vec![0]);
    }
    let centralizer = |t: &CayleyTable, x: usize| (0..n).filter(|&y| t.mul(x, y) == t.mul(y, x)).count();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let key = (a.element_order(g), centralizer(a, g));
            (0..n)
                .filter(|&y| (b.element_order(y), centralizer(b, y)) == key)
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        if let Some(map) = extend_to_isomorphism(a, b, &gens, &images) {
            return Some(map);
        }
        // odometer over candidate tuples
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Every automorphism, as a permutation of element indices. Sorted, so the
/// identity comes first.
pub fn automorphisms(table: &CayleyTable) -> Vec<Vec<usize>> {
    let n = table.len();
    let gens = table.minimal_generating_tuple();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&y| table.element_order(y) == table.element_order(g)).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        if let Some(map) = extend_to_isomorphism(table, table, &gens, &images) {
            out.push(map);
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                out.sort();
                return out;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Extends `gens[i] ↦ images[i]` along the Cayley graph. Consistency on
/// every edge makes the map a homomorphism; bijectivity is checked last.
fn extend_to_isomorphism(a: &CayleyTable, b: &CayleyTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = a.len();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &m in &map {
        if m == usize::MAX || std::mem::replace(&mut hit[m], true) {
            return None;
        }
    }
    Some(map)
}
