use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{glue_same_component, glue_two_components, CoverDescriptor, Inertia};
use crate::curve::{ComponentData, CurveConfiguration, PointRef};
use crate::error::Result;
use crate::group::PermutationGroup;

#[derive(Debug, Clone, Serialize)]
pub struct GlueReport {
    pub group_order: u64,
    /// `(G, γ)` inputs with `⟨G, γ⟩ = Γ`.
    pub same_component_cases: usize,
    /// `(G₁, G₂)` inputs with `⟨G₁, G₂⟩ = Γ`.
    pub two_component_cases: usize,
    pub failures: Vec<String>,
}

impl GlueReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A line through `0`, `1`, `inf`, with `inf` removed and carrying inertia
/// `m`, covered with monodromy `m`.
fn ramified_line(id: &str, group: &PermutationGroup, m: &PermutationGroup) -> Result<CoverDescriptor> {
    let mut base = CurveConfiguration::smooth(0, vec![ComponentData::new(id, 0)]);
    for p in ["0", "1", "inf"] {
        base.mark(id, p);
    }
    let inf = PointRef::new(id, "inf");
    base.removed.push(inf.clone());
    let mono = BTreeMap::from([(id.to_string(), m.clone())]);
    let ram = BTreeMap::from([(
        inf,
        Inertia {
            generators: m.generators().to_vec(),
        },
    )]);
    CoverDescriptor::new(base, group.clone(), mono, vec![], ram)
}

/// Connected, Galois over the full group, and carrying `before` unchanged.
fn audit(out: &CoverDescriptor, group: &PermutationGroup, before: &BTreeMap<PointRef, Inertia>) -> Result<Option<String>> {
    if !out.group().same_elements(group) {
        return Ok(Some("group changed".into()));
    }
    if !out.is_connected()? {
        return Ok(Some("not connected".into()));
    }
    if !out.is_galois()? {
        return Ok(Some("not Galois".into()));
    }
    if out.ramification() != before {
        return Ok(Some("ramification changed".into()));
    }
    Ok(None)
}

fn same_case(group: &PermutationGroup, sub: &PermutationGroup, gamma_index: usize) -> Result<Option<String>> {
    let gamma = group.elements()?.get(gamma_index).clone();
    let cover = ramified_line("X", sub, sub)?;
    let out = glue_same_component(group, sub, &gamma, &cover, &PointRef::new("X", "0"), &PointRef::new("X", "1"))?;
    let found = audit(&out, group, cover.ramification())?;
    Ok(found.map(|f| format!("G = {:?}, γ = {gamma}: {f}", sub.generators())))
}

fn two_case(group: &PermutationGroup, g1: &PermutationGroup, g2: &PermutationGroup) -> Result<Option<String>> {
    let c1 = ramified_line("A", g1, g1)?;
    let c2 = ramified_line("B", g2, g2)?;
    let out = glue_two_components(group, g1, g2, &c1, &c2, &PointRef::new("A", "0"), &PointRef::new("B", "0"))?;
    let mut before = c1.ramification().clone();
    before.extend(c2.ramification().iter().map(|(p, i)| (p.clone(), i.clone())));
    let found = audit(&out, group, &before)?;
    Ok(found.map(|f| format!("G1 = {:?}, G2 = {:?}: {f}", g1.generators(), g2.generators())))
}

/// Runs both gluing constructions on every generating input drawn from the
/// subgroup lattice and audits the outputs.
pub fn glue_properties(group: &PermutationGroup) -> Result<GlueReport> {
    let lattice = group.subgroup_lattice()?;
    let table = lattice.table();
    let full = table.len();
    let n = lattice.len();
    // ⟨H, K⟩ = Γ is decided on element sets
    let generates = |sets: &[usize]| table.is_full(&table.closure(sets));
    let members: Vec<Vec<usize>> = (0..n).map(|i| lattice.set(i).ones().collect()).collect();

    let same: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..full).map(move |g| (i, g)))
        .filter(|&(i, g)| {
            let mut s = members[i].clone();
            s.push(g);
            generates(&s)
        })
        .collect();
    let two: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| generates(&[members[i].as_slice(), members[j].as_slice()].concat()))
        .collect();

    let subgroups = lattice.subgroups();
    let mut failures: Vec<String> = same
        .par_iter()
        .map(|&(i, g)| same_case(group, &subgroups[i], g))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    failures.extend(
        two.par_iter()
            .map(|&(i, j)| two_case(group, &subgroups[i], &subgroups[j]))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten(),
    );
    Ok(GlueReport {
        group_order: group.order() as u64,
        same_component_cases: same.len(),
        two_component_cases: two.len(),
        failures,
    })
}
