//! G-Galois covers of configurations as finite torsor data.
//!
//! Labels are elements of `G`. The Galois action is right multiplication on
//! labels, gluing maps are left multiplications by constants, so the two
//! commute. Over a component with monodromy `M` the sheets are the right
//! cosets `Mλ`. For a class with base branch `b0` (its smallest member) and
//! another branch `b` with constant `c`, the label `λ` over `b0` is glued to
//! the label `cλ` over `b`.

mod construct;
mod descend;
mod dot;
mod file;
mod sheets;
mod torsor;
mod tree;

use std::collections::{BTreeMap, HashSet};

pub(crate) use construct::add_identification;
pub use construct::{default_transversal, glue_same_component, glue_two_components, induce, InducedCover};
pub use descend::{descend, CoverPoint};
pub use file::{ConfigRef, CoverFile, GluingEntry, GroupRef, RamificationEntry};
pub use sheets::Sheets;
pub use torsor::TorsorLabeling;
pub use tree::TreeEdge;

use crate::curve::{CurveConfiguration, PointRef};
use crate::error::{Error, Result};
use crate::group::{Permutation, PermutationGroup};

/// How the fiber over the base branch of a class maps to the fiber over
/// another branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GluingMap {
    /// `λ ↦ cλ`.
    Translation(Permutation),
    /// Arbitrary bijection on label indices (element-table order). Only
    /// left translations give Galois covers.
    Table(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchGluing {
    pub branch: PointRef,
    pub map: GluingMap,
}

impl BranchGluing {
    pub fn translation(branch: PointRef, c: Permutation) -> Self {
        BranchGluing {
            branch,
            map: GluingMap::Translation(c),
        }
    }
}

/// Inertia annotation: generators of one subgroup in the conjugacy class.
/// Bookkeeping only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inertia {
    pub generators: Vec<Permutation>,
}

#[derive(Debug, Clone)]
pub struct CoverDescriptor {
    base: CurveConfiguration,
    group: PermutationGroup,
    /// One entry per component, trivial when not given.
    monodromy: BTreeMap<String, PermutationGroup>,
    /// Per class, the non-base branches in point order.
    gluings: Vec<Vec<BranchGluing>>,
    ramification: BTreeMap<PointRef, Inertia>,
}

impl CoverDescriptor {
    /// Validates and assembles a descriptor. Components missing from
    /// `monodromy` get the trivial subgroup.
    pub fn new(
        base: CurveConfiguration,
        group: PermutationGroup,
        mut monodromy: BTreeMap<String, PermutationGroup>,
        gluings: Vec<Vec<BranchGluing>>,
        ramification: BTreeMap<PointRef, Inertia>,
    ) -> Result<Self> {
        base.ensure_valid()?;
        let ids: HashSet<&str> = base.components.iter().map(|c| c.id.as_str()).collect();
        for (id, m) in &monodromy {
            if !ids.contains(id.as_str()) {
                return Err(Error::InvalidCover(format!("monodromy for unknown component {id:?}")));
            }
            if m.degree() != group.degree() {
                return Err(Error::DegreeMismatch {
                    expected: group.degree(),
                    found: m.degree(),
                });
            }
            if !m.is_subgroup_of(&group)? {
                return Err(Error::NotASubgroup);
            }
        }
        for c in &base.components {
            monodromy
                .entry(c.id.clone())
                .or_insert_with(|| PermutationGroup::trivial(group.degree()));
        }

        if gluings.len() != base.identifications.len() {
            return Err(Error::InvalidCover(format!(
                "{} gluing lists for {} classes",
                gluings.len(),
                base.identifications.len()
            )));
        }
        let n = group.order() as usize;
        for (k, (class, branches)) in base.identifications.iter().zip(&gluings).enumerate() {
            let expected: Vec<PointRef> = class.sorted().into_iter().skip(1).collect();
            let given: Vec<PointRef> = branches.iter().map(|b| b.branch.clone()).collect();
            if expected != given {
                return Err(Error::InvalidCover(format!(
                    "class {k}: gluings must list exactly the non-base branches in point order"
                )));
            }
            for b in branches {
                match &b.map {
                    GluingMap::Translation(c) => group.check_member(c)?,
                    GluingMap::Table(t) => {
                        let mut seen = vec![false; n];
                        if t.len() != n || t.iter().any(|&x| x as usize >= n || std::mem::replace(&mut seen[x as usize], true)) {
                            return Err(Error::InvalidCover(format!("class {k}: gluing table is not a bijection of labels")));
                        }
                    }
                }
            }
        }

        for (p, inertia) in &ramification {
            if !base.has_point(p) {
                return Err(Error::PointNotFound(p.to_string()));
            }
            if base.class_of(p).is_some() {
                return Err(Error::FiberNotTorsor(p.to_string()));
            }
            for g in &inertia.generators {
                group.check_member(g)?;
            }
        }
        for c in &base.components {
            let licensed = ramification.keys().any(|p| p.component == c.id);
            if c.genus == 0 && monodromy[&c.id].order() > 1 && !licensed {
                return Err(Error::EtaleGenusZero(c.id.clone()));
            }
        }
        Ok(CoverDescriptor {
            base,
            group,
            monodromy,
            gluings,
            ramification,
        })
    }

    /// Translation gluings with the given constants, listed class by class
    /// and branch by branch (the order of the dual-graph edges).
    pub fn with_constants(
        base: CurveConfiguration,
        group: PermutationGroup,
        monodromy: BTreeMap<String, PermutationGroup>,
        constants: &[Permutation],
        ramification: BTreeMap<PointRef, Inertia>,
    ) -> Result<Self> {
        let mut it = constants.iter();
        let mut gluings = Vec::new();
        for class in &base.identifications {
            let mut branches = Vec::new();
            for b in class.sorted().into_iter().skip(1) {
                let c = it
                    .next()
                    .ok_or_else(|| Error::InvalidCover("too few gluing constants".into()))?;
                branches.push(BranchGluing::translation(b, c.clone()));
            }
            gluings.push(branches);
        }
        if it.next().is_some() {
            return Err(Error::InvalidCover("too many gluing constants".into()));
        }
        CoverDescriptor::new(base, group, monodromy, gluings, ramification)
    }

    /// All gluing constants the identity.
    pub fn identity_gluings(
        base: CurveConfiguration,
        group: PermutationGroup,
        monodromy: BTreeMap<String, PermutationGroup>,
        ramification: BTreeMap<PointRef, Inertia>,
    ) -> Result<Self> {
        let e = group.identity();
        let count = base.class_excess() as usize;
        CoverDescriptor::with_constants(base, group, monodromy, &vec![e; count], ramification)
    }

    pub fn base(&self) -> &CurveConfiguration {
        &self.base
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn monodromy(&self) -> &BTreeMap<String, PermutationGroup> {
        &self.monodromy
    }

    pub fn monodromy_of(&self, component: &str) -> Option<&PermutationGroup> {
        self.monodromy.get(component)
    }

    pub fn gluings(&self) -> &[Vec<BranchGluing>] {
        &self.gluings
    }

    pub fn ramification(&self) -> &BTreeMap<PointRef, Inertia> {
        &self.ramification
    }

    /// Translation constants in dual-graph edge order; `None` if some gluing
    /// is a table.
    pub fn constants(&self) -> Option<Vec<Permutation>> {
        self.gluings
            .iter()
            .flatten()
            .map(|b| match &b.map {
                GluingMap::Translation(c) => Some(c.clone()),
                GluingMap::Table(_) => None,
            })
            .collect()
    }

    /// Gluing map as a label-index permutation.
    pub(crate) fn map_indices(&self, map: &GluingMap) -> Result<Vec<u32>> {
        match map {
            GluingMap::Translation(c) => Ok(self.group.elements()?.left_translation(c)),
            GluingMap::Table(t) => Ok(t.clone()),
        }
    }

    /// Rejects points whose fiber is not a full torsor: unknown, removed or
    /// carrying a ramification annotation.
    pub(crate) fn check_torsor_fiber(&self, p: &PointRef) -> Result<()> {
        if !self.base.has_point(p) {
            return Err(Error::PointNotFound(p.to_string()));
        }
        if self.base.removed.contains(p) || self.ramification.contains_key(p) {
            return Err(Error::FiberNotTorsor(p.to_string()));
        }
        Ok(())
    }

    /// Same base curve, group elements, monodromy subgroups, gluing maps and
    /// annotations.
    pub fn same_as(&self, other: &CoverDescriptor) -> Result<bool> {
        if self.base.components != other.base.components
            || self.base.canonical_classes() != other.base.canonical_classes()
            || self.base.removed.iter().collect::<HashSet<_>>() != other.base.removed.iter().collect::<HashSet<_>>()
            || self.base.characteristic != other.base.characteristic
            || !self.group.same_elements(&other.group)
            || self.ramification != other.ramification
        {
            return Ok(false);
        }
        for (id, m) in &self.monodromy {
            if !m.same_elements(&other.monodromy[id]) {
                return Ok(false);
            }
        }
        // compare gluing maps branch by branch, matching classes by members
        for (class, branches) in self.base.identifications.iter().zip(&self.gluings) {
            let j = other
                .base
                .class_of(class.base())
                .expect("canonical classes agree");
            for b in branches {
                let ob = other.gluings[j]
                    .iter()
                    .find(|x| x.branch == b.branch)
                    .expect("same members");
                if self.map_indices(&b.map)? != other.map_indices(&ob.map)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Right multiplication by every generator commutes with every gluing
    /// map. Label fibers are full right-regular torsors by construction, so
    /// this is the whole Galois condition on the finite data.
    pub fn is_galois(&self) -> Result<bool> {
        let elements = self.group.elements()?;
        let rights: Vec<Vec<u32>> = self
            .group
            .generators()
            .iter()
            .map(|g| elements.right_translation(g))
            .collect();
        for b in self.gluings.iter().flatten() {
            if let GluingMap::Table(f) = &b.map {
                for r in &rights {
                    if (0..f.len()).any(|x| f[r[x] as usize] != r[f[x] as usize]) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::group::construct::{cyclic, symmetric};

    #[test]
    fn descriptor_validation() {
        let g = cyclic(4);
        let base = nodal_line(1);
        let c = CoverDescriptor::with_constants(base.clone(), g.clone(), BTreeMap::new(), &[cyclic_perm(4)], BTreeMap::new()).unwrap();
        assert_eq!(c.constants().unwrap(), vec![cyclic_perm(4)]);
        let err = CoverDescriptor::with_constants(base.clone(), g.clone(), BTreeMap::new(), &[], BTreeMap::new());
        assert!(matches!(err, Err(Error::InvalidCover(_))));
        let outside = Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
        let err = CoverDescriptor::with_constants(base.clone(), g.clone(), BTreeMap::new(), &[outside], BTreeMap::new());
        assert!(matches!(err, Err(Error::NotAMember(_))));
    }

    #[test]
    fn genus_zero_monodromy_needs_ramification() {
        let g = symmetric(3);
        let base = nodal_line(1);
        let mono = BTreeMap::from([("C1".to_string(), g.clone())]);
        let err = CoverDescriptor::identity_gluings(base.clone(), g.clone(), mono.clone(), BTreeMap::new());
        assert!(matches!(err, Err(Error::EtaleGenusZero(_))));
        let ram = BTreeMap::from([(pr("C1", "m"), Inertia { generators: vec![] })]);
        assert!(CoverDescriptor::identity_gluings(base.clone(), g.clone(), mono, ram).is_ok());
        // annotations on singular points are not allowed
        let ram = BTreeMap::from([(pr("C1", "0"), Inertia { generators: vec![] })]);
        let err = CoverDescriptor::identity_gluings(base, g, BTreeMap::new(), ram);
        assert!(matches!(err, Err(Error::FiberNotTorsor(_))));
    }

    #[test]
    fn non_translation_gluing_is_not_galois() {
        let g = symmetric(3);
        let base = nodal_line(1);
        let el = g.elements().unwrap();
        let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // right multiplication by a non-central element
        let table = el.right_translation(&t);
        let gl = vec![vec![BranchGluing { branch: pr("C1", "1"), map: GluingMap::Table(table) }]];
        let c = CoverDescriptor::new(base.clone(), g.clone(), BTreeMap::new(), gl, BTreeMap::new()).unwrap();
        assert!(!c.is_galois().unwrap());
        // a left translation written as a table is fine
        let gl = vec![vec![BranchGluing { branch: pr("C1", "1"), map: GluingMap::Table(el.left_translation(&t)) }]];
        let c = CoverDescriptor::new(base.clone(), g.clone(), BTreeMap::new(), gl, BTreeMap::new()).unwrap();
        assert!(c.is_galois().unwrap());
        let triv = CoverDescriptor::identity_gluings(base, PermutationGroup::trivial(3), BTreeMap::new(), BTreeMap::new()).unwrap();
        assert!(triv.is_galois().unwrap());
    }
}
