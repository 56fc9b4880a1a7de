use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{digits_of, full_constants, template, CHUNK, ENUMERATION_BOUND};
use crate::cover::{descend, CoverDescriptor, CoverPoint};
use crate::curve::{CurveConfiguration, PointRef};
use crate::error::{Error, Result};
use crate::group::{Permutation, PermutationGroup};

#[derive(Debug, Clone, Serialize)]
pub struct NegativeControl {
    pub name: &'static str,
    pub expected: &'static str,
    pub observed: String,
    pub rejected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentReport {
    pub group_order: u64,
    pub delta: u64,
    pub tuples: u128,
    pub connected: u128,
    pub mismatches: u128,
    pub controls: Vec<NegativeControl>,
}

impl DescentReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.controls.iter().all(|c| c.rejected)
    }
}

/// Classes as `(base branch, [(branch, constant)])` in configuration order.
type Gluing = Vec<(PointRef, Vec<(PointRef, Permutation)>)>;

fn gluing_of(config: &CurveConfiguration, constants: &[Permutation]) -> Gluing {
    let mut it = constants.iter();
    config
        .identifications
        .iter()
        .map(|class| {
            let sorted = class.sorted();
            let branches = sorted[1..].iter().map(|b| (b.clone(), it.next().expect("one per edge").clone())).collect();
            (sorted[0].clone(), branches)
        })
        .collect()
}

/// `∼` and the `∼′` induced by the constants: `(b0, λ) ∼′ (b, c_b λ)`.
fn induced_relations(group: &PermutationGroup, gluing: &Gluing) -> Result<(Vec<Vec<PointRef>>, Vec<Vec<CoverPoint>>)> {
    let elements = group.elements()?;
    let mut relation = Vec::new();
    let mut cover_relation = Vec::new();
    for (b0, branches) in gluing {
        let mut set = vec![b0.clone()];
        set.extend(branches.iter().map(|(b, _)| b.clone()));
        relation.push(set);
        for lambda in elements.iter() {
            let mut block = vec![CoverPoint::new(b0.clone(), lambda.clone())];
            block.extend(branches.iter().map(|(b, c)| CoverPoint::new(b.clone(), c.compose(lambda))));
            cover_relation.push(block);
        }
    }
    Ok((relation, cover_relation))
}

/// Trivial-monodromy cover of the normalization with every class point
/// still marked.
fn upstairs(group: &PermutationGroup, config: &CurveConfiguration) -> Result<CoverDescriptor> {
    CoverDescriptor::identity_gluings(config.normalization(), group.clone(), BTreeMap::new(), BTreeMap::new())
}

/// Glues one pair at a time with the single-identification rule.
fn glue_path(start: &CoverDescriptor, gluing: &Gluing) -> Result<CoverDescriptor> {
    let mut cur = start.clone();
    for (b0, branches) in gluing {
        for (b, c) in branches {
            cur = crate::cover::add_identification(&cur, b0, b, c)?;
        }
    }
    Ok(cur)
}

fn check_tuple(group: &PermutationGroup, config: &CurveConfiguration, start: &CoverDescriptor, constants: &[Permutation]) -> Result<(bool, bool)> {
    let gluing = gluing_of(config, constants);
    let glued = glue_path(start, &gluing)?;
    let (relation, cover_relation) = induced_relations(group, &gluing)?;
    let descended = descend(start, &relation, &cover_relation)?;
    let direct = CoverDescriptor::with_constants(config.clone(), group.clone(), BTreeMap::new(), constants, BTreeMap::new())?;
    let connected = glued.is_connected()?;
    let agree = glued.same_as(&descended)?
        && glued.same_as(&direct)?
        && connected == descended.is_connected()?
        && glued.is_galois()?
        && descended.is_galois()?;
    Ok((connected, !agree))
}

fn code_of(r: Result<CoverDescriptor>, reference: &CoverDescriptor) -> String {
    match r {
        Ok(c) => match c.same_as(reference) {
            Ok(true) => "ACCEPTED".into(),
            Ok(false) => "MISMATCH".into(),
            Err(e) => e.code().into(),
        },
        Err(e) => e.code().into(),
    }
}

fn controls(group: &PermutationGroup, config: &CurveConfiguration, start: &CoverDescriptor, constants: &[Permutation]) -> Result<Vec<NegativeControl>> {
    let mut out = Vec::new();
    let gluing = gluing_of(config, constants);
    if gluing.is_empty() {
        return Ok(out);
    }
    let reference = glue_path(start, &gluing)?;
    let (relation, good) = induced_relations(group, &gluing)?;
    let mut push = |name, expected, r: Result<CoverDescriptor>| {
        let observed = code_of(r, &reference);
        out.push(NegativeControl {
            name,
            expected,
            rejected: observed == expected,
            observed,
        });
    };

    let singletons: Vec<Vec<CoverPoint>> = good.iter().flatten().map(|q| vec![q.clone()]).collect();
    push("equality-relation", "EMPTY_RELATION", descend(start, &relation, &singletons));

    let n = group.order() as usize;
    if n >= 2 {
        let mut dup = good.clone();
        dup[0][1] = CoverPoint::new(dup[0][0].point.clone(), group.identity());
        if dup[0][0].label.is_identity() {
            dup[0][1].label = group.elements()?.get(n - 1).clone();
        }
        push("point-twice", "BAD_PARTITION", descend(start, &relation, &dup));
        push("missing-block", "BAD_PARTITION", descend(start, &relation, &good[1..]));
    }
    if relation.len() > 1 {
        let mut cross = good.clone();
        let foreign = cross[n][0].clone();
        cross[0].push(foreign);
        push("spans-two-classes", "RELATION_NOT_PRESERVED", descend(start, &relation, &cross));
    }
    if n >= 3 {
        // swap the partners of two labels: a bijection that is no translation
        let mut swapped = good.clone();
        let (a, b) = (swapped[0][1].clone(), swapped[1][1].clone());
        swapped[0][1] = b;
        swapped[1][1] = a;
        push("not-equivariant", "ACTION_NOT_EQUIVARIANT", descend(start, &relation, &swapped));
    }
    if n >= 2 {
        // a valid relation for a different constant must not reproduce the cover
        let g = group.generators().iter().find(|g| !g.is_identity()).expect("nontrivial").clone();
        let mut shifted = gluing.clone();
        shifted[0].1[0].1 = shifted[0].1[0].1.compose(&g);
        let (rel, cover_rel) = induced_relations(group, &shifted)?;
        push("wrong-constant", "MISMATCH", descend(start, &rel, &cover_rel));
    }
    Ok(out)
}

/// Builds every tree-normalized gluing of a genus-0 configuration twice,
/// by successive single identifications and by one descent along the
/// induced relations, and counts disagreements. Corrupted relations are run
/// as negative controls.
pub fn cross_check_descent(group: &PermutationGroup, config: &CurveConfiguration) -> Result<DescentReport> {
    let delta = config.delta()?;
    let t = template(group, config)?;
    let order = group.order();
    let k = t.free.len() as u32;
    let tuples = order
        .checked_pow(k)
        .filter(|&x| x <= ENUMERATION_BOUND)
        .ok_or_else(|| Error::TooLarge(format!("|G|^δ = {order}^{k} exceeds {ENUMERATION_BOUND}")))?;
    let elements = group.elements()?;
    let start = upstairs(group, config)?;
    let n = elements.len();
    let chunks = tuples.div_ceil(CHUNK);
    let parts: Vec<Result<(u128, u128)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut connected = 0;
            let mut mismatches = 0;
            for index in c * CHUNK..((c + 1) * CHUNK).min(tuples) {
                let tuple: Vec<Permutation> = digits_of(index, n, k as usize).into_iter().map(|x| elements.get(x).clone()).collect();
                let constants = full_constants(&t, group, &tuple);
                let (conn, bad) = check_tuple(group, config, &start, &constants)?;
                connected += conn as u128;
                mismatches += bad as u128;
            }
            Ok((connected, mismatches))
        })
        .collect();
    let mut connected = 0;
    let mut mismatches = 0;
    for p in parts {
        let (c, m) = p?;
        connected += c;
        mismatches += m;
    }
    let identity = full_constants(&t, group, &vec![group.identity(); k as usize]);
    Ok(DescentReport {
        group_order: order as u64,
        delta,
        tuples,
        connected,
        mismatches,
        controls: controls(group, config, &start, &identity)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::fixtures::{config, cycle3, nodal_p1, p1s};
    use crate::group::construct::{cyclic, symmetric};

    #[test]
    fn nodal_line_c2() {
        let r = cross_check_descent(&cyclic(2), &nodal_p1(0)).unwrap();
        assert_eq!((r.tuples, r.connected, r.mismatches), (2, 1, 0));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn s3_on_one_and_two_nodes() {
        let r = cross_check_descent(&symmetric(3), &nodal_p1(0)).unwrap();
        assert_eq!((r.tuples, r.connected, r.mismatches), (6, 0, 0));
        assert!(r.passed(), "{r:?}");
        let two = config(0, p1s(1), &[&[("C1", "0"), ("C1", "1")], &[("C1", "2"), ("C1", "3")]], &[]);
        let r = cross_check_descent(&symmetric(3), &two).unwrap();
        assert_eq!((r.tuples, r.connected, r.mismatches), (36, 18, 0));
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.controls.len(), 6);
    }

    #[test]
    fn triple_points_and_cycles() {
        let triple = config(0, p1s(2), &[&[("C1", "0"), ("C2", "0"), ("C1", "1")]], &[]);
        let r = cross_check_descent(&cyclic(4), &triple).unwrap();
        assert_eq!((r.connected, r.mismatches), (2, 0));
        assert!(r.passed(), "{r:?}");
        let r = cross_check_descent(&symmetric(3), &cycle3(0)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn controls_catch_corruption() {
        let r = cross_check_descent(&cyclic(3), &nodal_p1(0)).unwrap();
        let names: Vec<&str> = r.controls.iter().map(|c| c.name).collect();
        assert_eq!(names, vec!["equality-relation", "point-twice", "missing-block", "not-equivariant", "wrong-constant"]);
        assert!(r.controls.iter().all(|c| c.rejected), "{:?}", r.controls);
    }
}
