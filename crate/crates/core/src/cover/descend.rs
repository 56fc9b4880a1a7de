use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{BranchGluing, CoverDescriptor, GluingMap};
use crate::curve::PointRef;
use crate::error::{Error, Result};
use crate::group::Permutation;

/// The point with label `label` in the fiber over `point`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoverPoint {
    pub point: PointRef,
    pub label: Permutation,
}

impl CoverPoint {
    pub fn new(point: PointRef, label: Permutation) -> Self {
        CoverPoint { point, label }
    }
}

/// Descends a cover along a relation `∼` on base points and a relation `∼′`
/// on cover points lying over them.
///
/// `∼′` must map into `∼` (each class lies over one `∼`-class) and
/// partition the fibers over every `∼`-class into sets meeting each fiber
/// exactly once. For the quotient to be Galois, `z ∼′ z′` must imply
/// `zg ∼′ z′g`. Each `∼′` class over `{b0 < b1 < ..}` then glues the label
/// over `b0` to the labels over the other branches.
pub fn descend(cover: &CoverDescriptor, relation: &[Vec<PointRef>], cover_relation: &[Vec<CoverPoint>]) -> Result<CoverDescriptor> {
    let relation: Vec<Vec<PointRef>> = relation
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort();
            s.dedup();
            s
        })
        .filter(|s| s.len() > 1)
        .collect();
    let cover_relation: Vec<Vec<CoverPoint>> = cover_relation
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort();
            s.dedup();
            s
        })
        .filter(|s| s.len() > 1)
        .collect();
    if relation.is_empty() || cover_relation.is_empty() {
        return Err(Error::EmptyRelation);
    }

    let mut class_of: HashMap<&PointRef, usize> = HashMap::new();
    for (k, set) in relation.iter().enumerate() {
        for p in set {
            cover.check_torsor_fiber(p)?;
            if cover.base.class_of(p).is_some() {
                return Err(Error::FiberNotTorsor(format!("{p} is already singular")));
            }
            if class_of.insert(p, k).is_some() {
                return Err(Error::BadPartition(format!("{p} lies in two classes")));
            }
        }
    }

    let elements = cover.group.elements()?;
    let n = elements.len();
    // (point, label index) -> ∼′ class
    let mut block: HashMap<(&PointRef, usize), usize> = HashMap::new();
    let mut per_class = vec![0usize; relation.len()];
    for (z, set) in cover_relation.iter().enumerate() {
        let k = class_of
            .get(&set[0].point)
            .copied()
            .ok_or_else(|| Error::RelationNotPreserved(format!("{} is over no related point", set[0].point)))?;
        if set.iter().any(|q| class_of.get(&q.point) != Some(&k)) {
            return Err(Error::RelationNotPreserved(format!("class {z} spans several base classes")));
        }
        let points: HashSet<&PointRef> = set.iter().map(|q| &q.point).collect();
        if set.len() != relation[k].len() || points.len() != relation[k].len() {
            return Err(Error::BadPartition(format!(
                "class {z} has {} points over a class of {} branches",
                set.len(),
                relation[k].len()
            )));
        }
        for q in set {
            let i = elements
                .index_of(&q.label)
                .ok_or_else(|| Error::NotAMember(q.label.to_string()))?;
            if block.insert((&q.point, i), z).is_some() {
                return Err(Error::BadPartition(format!("{}:{} lies in two classes", q.point, q.label)));
            }
        }
        per_class[k] += 1;
    }
    if let Some(k) = per_class.iter().position(|&c| c != n) {
        return Err(Error::BadPartition(format!("the fibers over class {k} are not covered")));
    }

    let rights: Vec<Vec<u32>> = cover.group.generators().iter().map(|g| elements.right_translation(g)).collect();
    for set in &cover_relation {
        for r in &rights {
            let image: HashSet<usize> = set
                .iter()
                .map(|q| block[&(&q.point, r[elements.index_of(&q.label).expect("checked")] as usize)])
                .collect();
            if image.len() != 1 {
                return Err(Error::ActionNotEquivariant(format!("class over {} is not carried to a class", set[0].point)));
            }
        }
    }

    // gluing from the smallest branch to the others, read off the blocks
    let mut new_gluings: Vec<Vec<BranchGluing>> = Vec::with_capacity(relation.len());
    for set in &relation {
        let b0 = &set[0];
        let mut branches = Vec::new();
        for b in &set[1..] {
            let mut f = vec![0u32; n];
            let over_b: HashMap<usize, usize> = (0..n).map(|i| (block[&(b, i)], i)).collect();
            for (lambda, slot) in f.iter_mut().enumerate() {
                *slot = over_b[&block[&(b0, lambda)]] as u32;
            }
            let c = elements.get(f[0] as usize).clone();
            let map = if elements.left_translation(&c) == f {
                GluingMap::Translation(c)
            } else {
                GluingMap::Table(f)
            };
            branches.push(BranchGluing { branch: b.clone(), map });
        }
        new_gluings.push(branches);
    }

    let base = cover.base.identify(&relation)?;
    let by_base: BTreeMap<&PointRef, usize> = relation.iter().enumerate().map(|(k, s)| (&s[0], k)).collect();
    let gluings = base
        .identifications
        .iter()
        .map(|class| match cover.base.class_of(class.base()) {
            Some(old) => cover.gluings[old].clone(),
            None => new_gluings[by_base[class.base()]].clone(),
        })
        .collect();
    CoverDescriptor::new(base, cover.group.clone(), cover.monodromy.clone(), gluings, cover.ramification.clone())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::super::construct::{add_identification, induce};
    use super::super::fixtures::*;
    use super::super::Inertia;
    use super::*;
    use crate::group::catalog::Catalog;
    use crate::group::construct::cyclic;
    use crate::group::PermutationGroup;

    /// `∼′` induced by the constant `γ`: `(y1, λ) ∼′ (y2, γλ)`.
    fn induced_relation(group: &PermutationGroup, y1: &PointRef, y2: &PointRef, gamma: &Permutation) -> Vec<Vec<CoverPoint>> {
        group
            .elements()
            .unwrap()
            .iter()
            .map(|l| vec![CoverPoint::new(y1.clone(), l.clone()), CoverPoint::new(y2.clone(), gamma.compose(l))])
            .collect()
    }

    #[test]
    fn matches_gluing_on_small_catalog_groups() {
        let cat = Catalog::embedded();
        for entry in cat.up_to_order(12) {
            let g = entry.group().unwrap();
            let mut base = line("C1", &["a", "b", "inf"]);
            base.removed.push(pr("C1", "inf"));
            let ram = BTreeMap::from([(pr("C1", "inf"), Inertia { generators: g.generators().to_vec() })]);
            let mono = BTreeMap::from([("C1".to_string(), g.clone())]);
            let cover = CoverDescriptor::identity_gluings(base, g.clone(), mono, ram).unwrap();
            let induced = induce(&cover, &g, None).unwrap().cover;
            for gamma in g.elements().unwrap().iter() {
                for (y1, y2) in [(pr("C1", "a"), pr("C1", "b")), (pr("C1", "b"), pr("C1", "a"))] {
                    let glued = add_identification(&induced, &y1, &y2, gamma).unwrap();
                    let rel = induced_relation(&g, &y1, &y2, gamma);
                    let down = descend(&induced, &[vec![y1.clone(), y2.clone()]], &rel).unwrap();
                    assert!(down.same_as(&glued).unwrap(), "{} {gamma}", entry.name);
                    assert!(down.constants().is_some());
                }
            }
        }
    }

    #[test]
    fn rejections() {
        let g = cyclic(3);
        let r = cyclic_perm(3);
        let base = line("C1", &["0", "1", "2"]);
        let cover = CoverDescriptor::identity_gluings(base, g.clone(), BTreeMap::new(), BTreeMap::new()).unwrap();
        let (a, b, c) = (pr("C1", "0"), pr("C1", "1"), pr("C1", "2"));
        let good = induced_relation(&g, &a, &b, &r);
        assert!(descend(&cover, &[vec![a.clone(), b.clone()]], &good).is_ok());

        // equality relation
        let eq: Vec<Vec<CoverPoint>> = g.elements().unwrap().iter().map(|l| vec![CoverPoint::new(a.clone(), l.clone())]).collect();
        assert!(matches!(descend(&cover, &[vec![a.clone(), b.clone()]], &eq), Err(Error::EmptyRelation)));
        assert!(matches!(descend(&cover, &[vec![a.clone()]], &good), Err(Error::EmptyRelation)));

        // a class over two base classes
        let mut bad = good.clone();
        bad[0][1].point = c.clone();
        assert!(matches!(descend(&cover, &[vec![a.clone(), b.clone()]], &bad), Err(Error::RelationNotPreserved(_))));

        // mismatched sizes: three points over a two-branch class
        let mut bad = good.clone();
        bad[0].push(CoverPoint::new(b.clone(), r.compose(&r)));
        assert!(matches!(descend(&cover, &[vec![a.clone(), b.clone()]], &bad), Err(Error::BadPartition(_))));

        // missing fibers
        assert!(matches!(descend(&cover, &[vec![a.clone(), b.clone()]], &good[..2]), Err(Error::BadPartition(_))));

        // a bijection that is not a left translation in S3 breaks equivariance
        let s3 = crate::group::construct::symmetric(3);
        let cover = CoverDescriptor::identity_gluings(line("C1", &["0", "1"]), s3.clone(), BTreeMap::new(), BTreeMap::new()).unwrap();
        let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let rel: Vec<Vec<CoverPoint>> = s3
            .elements()
            .unwrap()
            .iter()
            .map(|l| vec![CoverPoint::new(a.clone(), l.clone()), CoverPoint::new(b.clone(), l.compose(&t))])
            .collect();
        assert!(matches!(descend(&cover, &[vec![a.clone(), b.clone()]], &rel), Err(Error::ActionNotEquivariant(_))));
    }

    #[test]
    fn ramified_points_cannot_descend() {
        let g = cyclic(2);
        let cover = ramified_line("C1", &g, &g);
        let (a, inf) = (pr("C1", "0"), pr("C1", "inf"));
        let rel = induced_relation(&g, &a, &inf, &g.identity());
        assert!(matches!(descend(&cover, &[vec![a, inf]], &rel), Err(Error::FiberNotTorsor(_))));
    }
}
