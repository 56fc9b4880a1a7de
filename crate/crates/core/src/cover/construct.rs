use std::collections::BTreeMap;

use super::{BranchGluing, CoverDescriptor, GluingMap};
use crate::curve::{CurveConfiguration, PointRef};
use crate::error::{Error, Result};
use crate::group::{ElementTable, Permutation, PermutationGroup};
use crate::union_find::UnionFind;

/// A cover induced from `H` to `Γ` together with the right transversal
/// `Γ = ⊔ H h_i` used for the labels.
#[derive(Debug, Clone)]
pub struct InducedCover {
    pub cover: CoverDescriptor,
    pub transversal: Vec<Permutation>,
}

impl InducedCover {
    /// Label in `Γ` of the point labelled `λ ∈ H` in the `i`-th copy.
    pub fn label(&self, lambda: &Permutation, i: usize) -> Permutation {
        lambda.compose(&self.transversal[i])
    }
}

/// Right coset `H x` of every element of `Γ`, numbered by first appearance
/// in element-table order.
fn right_coset_labels(ambient: &ElementTable, sub: &PermutationGroup) -> Vec<usize> {
    let mut uf = UnionFind::new(ambient.len());
    for g in sub.generators() {
        for (x, &y) in ambient.left_translation(g).iter().enumerate() {
            uf.union(x, y as usize);
        }
    }
    uf.labels()
}

/// Representatives of `H \ Γ` as the shortlex-least words in the generators
/// of `Γ`, identity first. Breadth-first search on the coset graph with
/// letters tried in generator order visits cosets in shortlex order of their
/// least words.
pub fn default_transversal(ambient: &PermutationGroup, sub: &PermutationGroup) -> Result<Vec<Permutation>> {
    if !sub.is_subgroup_of(ambient)? {
        return Err(Error::NotASubgroup);
    }
    let elements = ambient.elements()?;
    let coset = right_coset_labels(&elements, sub);
    let index = (ambient.order() / sub.order()) as usize;
    let mut seen = vec![false; index];
    let e = ambient.identity();
    seen[coset[0]] = true;
    let mut reps = vec![e];
    let mut head = 0;
    while head < reps.len() && reps.len() < index {
        let x = reps[head].clone();
        head += 1;
        for g in ambient.generators() {
            let y = x.compose(g);
            let c = coset[elements.index_of(&y).expect("closed under generators")];
            if !std::mem::replace(&mut seen[c], true) {
                reps.push(y);
            }
        }
    }
    Ok(reps)
}

fn check_transversal(ambient: &PermutationGroup, sub: &PermutationGroup, reps: &[Permutation]) -> Result<()> {
    let index = (ambient.order() / sub.order()) as usize;
    if reps.len() != index {
        return Err(Error::NotATransversal(format!("{} representatives for index {index}", reps.len())));
    }
    if !reps.first().is_some_and(Permutation::is_identity) {
        return Err(Error::NotATransversal("the first representative must be the identity".into()));
    }
    let elements = ambient.elements()?;
    let coset = right_coset_labels(&elements, sub);
    let mut seen = vec![false; index];
    for h in reps {
        let i = elements
            .index_of(h)
            .ok_or_else(|| Error::NotATransversal(format!("{h} is not in the ambient group")))?;
        if std::mem::replace(&mut seen[coset[i]], true) {
            return Err(Error::NotATransversal(format!("{h} repeats a coset")));
        }
    }
    Ok(())
}

/// Induces an `H`-cover to `Γ ≥ H`. The `i`-th copy carries the labels
/// `λ h_i`; translation constants and monodromy subgroups are unchanged, and
/// a table gluing `f` becomes `λ h_i ↦ f(λ) h_i`.
pub fn induce(cover: &CoverDescriptor, ambient: &PermutationGroup, coset_reps: Option<&[Permutation]>) -> Result<InducedCover> {
    let sub = &cover.group;
    if sub.degree() != ambient.degree() {
        return Err(Error::DegreeMismatch {
            expected: ambient.degree(),
            found: sub.degree(),
        });
    }
    if !sub.is_subgroup_of(ambient)? {
        return Err(Error::NotASubgroup);
    }
    let transversal = match coset_reps {
        Some(reps) => {
            check_transversal(ambient, sub, reps)?;
            reps.to_vec()
        }
        None => default_transversal(ambient, sub)?,
    };
    let small = sub.elements()?;
    let big = ambient.elements()?;
    let mut gluings = cover.gluings.clone();
    for b in gluings.iter_mut().flatten() {
        if let GluingMap::Table(f) = &b.map {
            let mut g = vec![0u32; big.len()];
            for h in &transversal {
                for (x, &fx) in f.iter().enumerate() {
                    let from = big.index_of(&small.get(x).compose(h)).expect("member");
                    let to = big.index_of(&small.get(fx as usize).compose(h)).expect("member");
                    g[from] = to as u32;
                }
            }
            b.map = GluingMap::Table(g);
        }
    }
    let monodromy = cover.monodromy.clone();
    let descriptor = CoverDescriptor::new(cover.base.clone(), ambient.clone(), monodromy, gluings, cover.ramification.clone())?;
    Ok(InducedCover {
        cover: descriptor,
        transversal,
    })
}

/// Converts a gluing to its translation constant.
fn as_translation(cover: &CoverDescriptor, map: &GluingMap, class: usize) -> Result<Permutation> {
    match map {
        GluingMap::Translation(c) => Ok(c.clone()),
        GluingMap::Table(f) => {
            let elements = cover.group.elements()?;
            let c = elements.get(f[0] as usize).clone();
            if elements.left_translation(&c) == *f {
                Ok(c)
            } else {
                Err(Error::GluingNotTranslation(class))
            }
        }
    }
}

/// Offsets `o_b` of a class: the label `λ` over the base branch is glued to
/// `o_b λ` over branch `b`.
fn class_offsets(cover: &CoverDescriptor, class: usize) -> Result<BTreeMap<PointRef, Permutation>> {
    let mut out = BTreeMap::new();
    out.insert(cover.base.identifications[class].base().clone(), cover.group.identity());
    for b in &cover.gluings[class] {
        out.insert(b.branch.clone(), as_translation(cover, &b.map, class)?);
    }
    Ok(out)
}

/// Adds `y1 ∼ y2` to the base and glues the label `λ` over `y1` to `γλ` over
/// `y2`. Classes already containing `y1` or `y2` are merged through their
/// offsets and rebased so that the smallest member has offset `e`.
pub(crate) fn add_identification(cover: &CoverDescriptor, y1: &PointRef, y2: &PointRef, gamma: &Permutation) -> Result<CoverDescriptor> {
    cover.group.check_member(gamma)?;
    let base = cover.base.identify(&[vec![y1.clone(), y2.clone()]])?;
    let (a, b) = (cover.base.class_of(y1), cover.base.class_of(y2));
    if a.is_some() && a == b {
        return Err(Error::InvalidCover(format!("{y1} and {y2} are already identified")));
    }
    let e = cover.group.identity();
    let side = |class: Option<usize>, p: &PointRef| -> Result<BTreeMap<PointRef, Permutation>> {
        match class {
            Some(k) => class_offsets(cover, k),
            None => Ok(BTreeMap::from([(p.clone(), e.clone())])),
        }
    };
    let oa = side(a, y1)?;
    let ob = side(b, y2)?;
    // o'_b = o^B_b (o^B_{y2})^{-1} γ o^A_{y1}
    let shift = ob[y2].inverse().compose(gamma).compose(&oa[y1]);
    let mut merged = oa;
    for (p, o) in ob {
        merged.insert(p, o.compose(&shift));
    }
    let (_, first) = merged.iter().next().expect("nonempty");
    let rebase = first.inverse();
    let merged: BTreeMap<PointRef, Permutation> = merged.into_iter().map(|(p, o)| (p, o.compose(&rebase))).collect();

    let mut gluings = Vec::with_capacity(base.identifications.len());
    for class in &base.identifications {
        if class.members.contains(y1) {
            gluings.push(
                merged
                    .iter()
                    .skip(1)
                    .map(|(p, o)| BranchGluing::translation(p.clone(), o.clone()))
                    .collect(),
            );
        } else {
            let old = cover.base.class_of(class.base()).expect("untouched class");
            gluings.push(cover.gluings[old].clone());
        }
    }
    CoverDescriptor::new(base, cover.group.clone(), cover.monodromy.clone(), gluings, cover.ramification.clone())
}

fn ensure_connected_base(cover: &CoverDescriptor) -> Result<()> {
    if !cover.base.is_connected()? || !cover.is_connected()? {
        return Err(Error::BaseNotConnected);
    }
    Ok(())
}

/// Glues the fibers over two points of one connected curve. The `G`-cover is
/// induced to `Γ = ⟨G, γ⟩` and the label `λ` over `y1` is glued to `γλ` over
/// `y2`; the result is a connected `Γ`-Galois cover of `Y/(y1 ∼ y2)`.
pub fn glue_same_component(
    ambient: &PermutationGroup,
    sub: &PermutationGroup,
    gamma: &Permutation,
    cover: &CoverDescriptor,
    y1: &PointRef,
    y2: &PointRef,
) -> Result<CoverDescriptor> {
    ambient.check_degree(gamma)?;
    if !cover.group.same_elements(sub) {
        return Err(Error::InvalidCover("the cover's group differs from G".into()));
    }
    if !sub.is_subgroup_of(ambient)? {
        return Err(Error::NotASubgroup);
    }
    ambient.check_member(gamma)?;
    if sub.join(std::slice::from_ref(gamma))?.order() != ambient.order() {
        return Err(Error::NotGenerating);
    }
    ensure_connected_base(cover)?;
    cover.check_torsor_fiber(y1)?;
    cover.check_torsor_fiber(y2)?;
    let induced = induce(cover, ambient, None)?;
    add_identification(&induced.cover, y1, y2, gamma)
}

/// Disjoint union of two configurations with disjoint component ids.
fn disjoint_union(a: &CurveConfiguration, b: &CurveConfiguration) -> Result<CurveConfiguration> {
    if a.characteristic != b.characteristic {
        return Err(Error::CharacteristicMismatch(a.characteristic, b.characteristic));
    }
    let ids: Vec<&str> = a.components.iter().map(|c| c.id.as_str()).collect();
    if let Some(c) = b.components.iter().find(|c| ids.contains(&c.id.as_str())) {
        return Err(Error::ComponentOverlap(c.id.clone()));
    }
    let mut out = a.clone();
    out.components.extend(b.components.iter().cloned());
    out.points.extend(b.points.clone());
    out.identifications.extend(b.identifications.iter().cloned());
    out.removed.extend(b.removed.iter().cloned());
    Ok(out)
}

/// Glues a `G1`-cover of `Y1` and a `G2`-cover of `Y2` at `y1 ∈ Y1` and
/// `y2 ∈ Y2`: both are induced to `G = ⟨G1, G2⟩` and matching labels are
/// identified.
#[allow(clippy::too_many_arguments)]
pub fn glue_two_components(
    group: &PermutationGroup,
    g1: &PermutationGroup,
    g2: &PermutationGroup,
    cover1: &CoverDescriptor,
    cover2: &CoverDescriptor,
    y1: &PointRef,
    y2: &PointRef,
) -> Result<CoverDescriptor> {
    let base = disjoint_union(&cover1.base, &cover2.base)?;
    if !cover1.group.same_elements(g1) || !cover2.group.same_elements(g2) {
        return Err(Error::InvalidCover("a cover's group differs from its declared subgroup".into()));
    }
    if !g1.is_subgroup_of(group)? || !g2.is_subgroup_of(group)? {
        return Err(Error::NotASubgroup);
    }
    if g1.join(g2.generators())?.order() != group.order() {
        return Err(Error::NotGenerating);
    }
    ensure_connected_base(cover1)?;
    ensure_connected_base(cover2)?;
    cover1.check_torsor_fiber(y1)?;
    cover2.check_torsor_fiber(y2)?;
    let i1 = induce(cover1, group, None)?.cover;
    let i2 = induce(cover2, group, None)?.cover;
    let mut monodromy = i1.monodromy.clone();
    monodromy.extend(i2.monodromy.clone());
    let mut gluings = i1.gluings.clone();
    gluings.extend(i2.gluings.iter().cloned());
    let mut ramification = i1.ramification.clone();
    ramification.extend(i2.ramification.clone());
    let union = CoverDescriptor::new(base, group.clone(), monodromy, gluings, ramification)?;
    add_identification(&union, y1, y2, &group.identity())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::super::fixtures::*;
    use super::*;
    use crate::group::catalog::Catalog;
    use crate::group::construct::{alternating, cyclic, symmetric};

    fn cyc(n: usize, cycle: &[u32]) -> Permutation {
        Permutation::from_cycles(n, &[cycle]).unwrap()
    }

    #[test]
    fn default_transversal_is_shortlex() {
        let s3 = symmetric(3);
        let a3 = alternating(3);
        let t = default_transversal(&s3, &a3).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t[0].is_identity());
        assert_eq!(t[1], s3.generators()[0]);
        let triv = PermutationGroup::trivial(3);
        let t = default_transversal(&s3, &triv).unwrap();
        assert_eq!(t.len(), 6);
        let distinct: std::collections::HashSet<_> = t.iter().collect();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn induce_trivial_to_c2() {
        let c2 = cyclic(2);
        let base = line("L", &["0"]);
        let triv = CoverDescriptor::identity_gluings(base, PermutationGroup::trivial(2), BTreeMap::new(), BTreeMap::new()).unwrap();
        let ind = induce(&triv, &c2, None).unwrap();
        assert_eq!(ind.cover.connected_components().unwrap(), 2);
        assert!(ind.cover.monodromy_of("L").unwrap().is_trivial());
    }

    #[test]
    fn induce_a3_to_s3() {
        let s3 = symmetric(3);
        let a3 = alternating(3);
        let cover = ramified_line("X", &a3, &a3);
        assert_eq!(cover.sheets().unwrap().count(0), 1);
        let ind = induce(&cover, &s3, None).unwrap();
        assert_eq!(ind.cover.sheets().unwrap().count(0), 2);
        assert_eq!(ind.cover.connected_components().unwrap(), 2);
    }

    #[test]
    fn identity_induction_is_a_no_op() {
        let g = cyclic(4);
        let c = CoverDescriptor::with_constants(nodal_line(1), g.clone(), BTreeMap::new(), &[cyclic_perm(4)], BTreeMap::new()).unwrap();
        let ind = induce(&c, &g, None).unwrap();
        assert!(ind.cover.same_as(&c).unwrap());
        assert_eq!(ind.transversal, vec![g.identity()]);
    }

    #[test]
    fn bad_transversals() {
        let s3 = symmetric(3);
        let a3 = alternating(3);
        let cover = ramified_line("X", &a3, &a3);
        let t = s3.generators()[0].clone();
        let e = s3.identity();
        let r = cyc(3, &[1, 2, 3]);
        for reps in [vec![t.clone(), e.clone()], vec![e.clone(), r.clone()], vec![e.clone()], vec![e.clone(), cyc(4, &[1, 4])]] {
            assert!(matches!(induce(&cover, &s3, Some(&reps)), Err(Error::NotATransversal(_)) | Err(Error::DegreeMismatch { .. })));
        }
        assert!(induce(&cover, &s3, Some(&[e, t])).is_ok());
    }

    #[test]
    fn table_gluings_extend_along_the_transversal() {
        let s3 = symmetric(3);
        let c3 = alternating(3);
        let el = c3.elements().unwrap();
        let r = cyc(3, &[1, 2, 3]);
        let gl = vec![vec![BranchGluing {
            branch: pr("C1", "1"),
            map: GluingMap::Table(el.left_translation(&r)),
        }]];
        let c = CoverDescriptor::new(nodal_line(1), c3.clone(), BTreeMap::new(), gl, BTreeMap::new()).unwrap();
        let ind = induce(&c, &s3, None).unwrap();
        let big = s3.elements().unwrap();
        match &ind.cover.gluings()[0][0].map {
            GluingMap::Table(f) => assert_eq!(*f, big.left_translation(&r)),
            _ => panic!("table expected"),
        }
    }

    #[test]
    fn nodal_line_from_trivial_cover() {
        for n in 1..=8 {
            let cn = cyclic(n);
            let base = line("C1", &["0", "1"]);
            let triv = CoverDescriptor::identity_gluings(base, PermutationGroup::trivial(n), BTreeMap::new(), BTreeMap::new()).unwrap();
            let gamma = cyclic_perm(n);
            let out = glue_same_component(&cn, &PermutationGroup::trivial(n), &gamma, &triv, &pr("C1", "0"), &pr("C1", "1")).unwrap();
            assert!(out.is_connected().unwrap());
            assert!(out.is_galois().unwrap());
            assert_eq!(out.constants().unwrap(), vec![gamma.clone()]);
            // following the gluing from the identity sheet cycles through all n sheets
            let mut x = out.group().identity();
            let mut steps = 0;
            loop {
                x = gamma.compose(&x);
                steps += 1;
                if x.is_identity() {
                    break;
                }
            }
            assert_eq!(steps, n);
        }
    }

    #[test]
    fn identity_constant_with_equal_groups() {
        let g = cyclic(3);
        let base = line("C1", &["0", "1"]);
        let base_cover = CoverDescriptor::identity_gluings(base, g.clone(), BTreeMap::new(), BTreeMap::new()).unwrap();
        // trivial monodromy on one line: the base cover itself is disconnected
        assert!(matches!(
            glue_same_component(&g, &g, &g.identity(), &base_cover, &pr("C1", "0"), &pr("C1", "1")),
            Err(Error::BaseNotConnected)
        ));
        let mut b = line("C1", &["0", "1", "inf"]);
        b.removed.push(pr("C1", "inf"));
        let ram = BTreeMap::from([(pr("C1", "inf"), super::super::Inertia { generators: g.generators().to_vec() })]);
        let mono = BTreeMap::from([("C1".to_string(), g.clone())]);
        let connected = CoverDescriptor::identity_gluings(b, g.clone(), mono, ram.clone()).unwrap();
        let out = glue_same_component(&g, &g, &g.identity(), &connected, &pr("C1", "0"), &pr("C1", "1")).unwrap();
        assert_eq!(out.constants().unwrap(), vec![g.identity()]);
        assert!(out.is_connected().unwrap());
        assert_eq!(out.ramification(), &ram);
    }

    #[test]
    fn transposition_in_s3() {
        let t = cyc(3, &[1, 2]);
        let gamma_group = PermutationGroup::new(3, vec![t.clone()]).unwrap();
        let base = line("C1", &["0", "1"]);
        let triv = CoverDescriptor::identity_gluings(base, PermutationGroup::trivial(3), BTreeMap::new(), BTreeMap::new()).unwrap();
        let out = glue_same_component(&gamma_group, &PermutationGroup::trivial(3), &t, &triv, &pr("C1", "0"), &pr("C1", "1")).unwrap();
        assert_eq!(out.sheets().unwrap().total(), 2);
        assert!(out.is_connected().unwrap());
        // a transposition does not generate S3 with the trivial group
        let err = glue_same_component(&symmetric(3), &PermutationGroup::trivial(3), &t, &triv, &pr("C1", "0"), &pr("C1", "1"));
        assert!(matches!(err, Err(Error::NotGenerating)));
    }

    #[test]
    fn powers_of_gamma_need_not_be_a_transversal() {
        // Γ = S3, G = <(1 2)>, γ = (1 3): the powers of γ give only two
        // representatives for index three, yet the gluing is connected.
        let s3 = symmetric(3);
        let g = PermutationGroup::new(3, vec![cyc(3, &[1, 2])]).unwrap();
        let gamma = cyc(3, &[1, 3]);
        let mut b = line("C1", &["0", "1", "inf"]);
        b.removed.push(pr("C1", "inf"));
        let ram = BTreeMap::from([(pr("C1", "inf"), super::super::Inertia { generators: g.generators().to_vec() })]);
        let cover = CoverDescriptor::identity_gluings(b, g.clone(), BTreeMap::from([("C1".to_string(), g.clone())]), ram).unwrap();
        let out = glue_same_component(&s3, &g, &gamma, &cover, &pr("C1", "0"), &pr("C1", "1")).unwrap();
        assert!(out.is_connected().unwrap());
        assert!(out.is_galois().unwrap());
        let powers: std::collections::HashSet<Permutation> = (0..3).map(|i| gamma.pow(i)).collect();
        assert!(check_transversal(&s3, &g, &powers.into_iter().collect::<Vec<_>>()).is_err());
    }

    #[test]
    fn two_components_s3() {
        let s3 = symmetric(3);
        let a3 = alternating(3);
        let c2 = PermutationGroup::new(3, vec![cyc(3, &[1, 2])]).unwrap();
        let a = ramified_line("A", &a3, &a3);
        let b = ramified_line("B", &c2, &c2);
        let out = glue_two_components(&s3, &a3, &c2, &a, &b, &pr("A", "0"), &pr("B", "0")).unwrap();
        let sheets = out.sheets().unwrap();
        assert_eq!(sheets.count(0) + sheets.count(1), 5);
        assert!(out.is_connected().unwrap());
        assert!(out.is_galois().unwrap());
        let mut expected = a.ramification().clone();
        expected.extend(b.ramification().clone());
        assert_eq!(out.ramification(), &expected);

        // equal groups, both connected
        let a = ramified_line("A", &s3, &s3);
        let b = ramified_line("B", &s3, &s3);
        assert!(glue_two_components(&s3, &s3, &s3, &a, &b, &pr("A", "1"), &pr("B", "0")).unwrap().is_connected().unwrap());

        // a proper subgroup twice does not generate
        let a = ramified_line("A", &a3, &a3);
        let b = ramified_line("B", &a3, &a3);
        assert!(matches!(glue_two_components(&s3, &a3, &a3, &a, &b, &pr("A", "0"), &pr("B", "0")), Err(Error::NotGenerating)));

        // overlapping ids
        let b = ramified_line("A", &c2, &c2);
        assert!(matches!(glue_two_components(&s3, &a3, &c2, &a, &b, &pr("A", "0"), &pr("A", "1")), Err(Error::ComponentOverlap(_))));
    }

    #[test]
    fn merging_into_an_existing_class() {
        // a triple point built from a node plus a third branch
        let g = cyclic(4);
        let mut base = nodal_line(1);
        base.mark("C1", "2");
        let c = CoverDescriptor::with_constants(base, g.clone(), BTreeMap::new(), &[cyclic_perm(4)], BTreeMap::new()).unwrap();
        let r = cyclic_perm(4);
        let out = add_identification(&c, &pr("C1", "2"), &pr("C1", "1"), &r).unwrap();
        // λ over 0 ↦ rλ over 1; λ over 2 ↦ rλ over 1, so 2 carries λ over 0
        assert_eq!(out.constants().unwrap(), vec![r.clone(), g.identity()]);
        assert!(out.is_connected().unwrap());
        assert!(matches!(add_identification(&out, &pr("C1", "0"), &pr("C1", "2"), &r), Err(Error::InvalidCover(_))));
    }

    #[test]
    fn glue_outputs_on_catalog_groups() {
        // Γ = ⟨G, γ⟩ for G the trivial group and each generator of small groups
        let cat = Catalog::embedded();
        for entry in cat.up_to_order(12) {
            let big = entry.group().unwrap();
            let n = big.degree();
            let base = line("C1", &["0", "1"]);
            let triv = CoverDescriptor::identity_gluings(base, PermutationGroup::trivial(n), BTreeMap::new(), BTreeMap::new()).unwrap();
            for g in big.generators() {
                let cyc_group = PermutationGroup::new(n, vec![g.clone()]).unwrap();
                let out = glue_same_component(&cyc_group, &PermutationGroup::trivial(n), g, &triv, &pr("C1", "0"), &pr("C1", "1")).unwrap();
                assert!(out.is_connected().unwrap() && out.is_galois().unwrap(), "{}", entry.name);
            }
        }
    }
}
