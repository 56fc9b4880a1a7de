use std::collections::VecDeque;

use super::{BranchGluing, CoverDescriptor, GluingMap};
use crate::error::{Error, Result};
use crate::group::Permutation;

/// A spanning-tree edge of the dual graph: branch `branch` of class `class`,
/// reached from component `parent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge {
    pub class: usize,
    /// Position of the branch among the class's non-base branches.
    pub branch: usize,
    pub parent: usize,
    pub child: usize,
}

impl CoverDescriptor {
    /// Breadth-first spanning tree from the lexicographically smallest
    /// component id, scanning incident edges in dual-graph edge order.
    /// Self-loops are never tree edges.
    pub fn spanning_tree(&self) -> Result<Vec<TreeEdge>> {
        if !self.base.is_connected()? {
            return Err(Error::NotConnected);
        }
        let index = self.base.component_index();
        let n = self.base.components.len();
        // (class, branch, from, to) with `from` the base-branch component
        let mut incident: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); n];
        for (k, (class, branches)) in self.base.identifications.iter().zip(&self.gluings).enumerate() {
            let from = index[class.base().component.as_str()];
            for (j, b) in branches.iter().enumerate() {
                let to = index[b.branch.component.as_str()];
                if from != to {
                    incident[from].push((k, j, from, to));
                    incident[to].push((k, j, from, to));
                }
            }
        }
        let root = (0..n).min_by_key(|&i| &self.base.components[i].id).expect("nonempty");
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut tree = Vec::with_capacity(n - 1);
        while let Some(u) = queue.pop_front() {
            for &(class, branch, from, to) in &incident[u] {
                let v = if from == u { to } else { from };
                if !std::mem::replace(&mut seen[v], true) {
                    tree.push(TreeEdge {
                        class,
                        branch,
                        parent: u,
                        child: v,
                    });
                    queue.push_back(v);
                }
            }
        }
        Ok(tree)
    }

    fn constant(&self, class: usize, branch: usize) -> Result<Permutation> {
        match &self.gluings[class][branch].map {
            GluingMap::Translation(c) => Ok(c.clone()),
            GluingMap::Table(f) => {
                let elements = self.group.elements()?;
                let c = elements.get(f[0] as usize).clone();
                if elements.left_translation(&c) == *f {
                    Ok(c)
                } else {
                    Err(Error::GluingNotTranslation(class))
                }
            }
        }
    }

    /// Relabels the fiber over component `j` by `λ ↦ t_j λ`: a constant `c`
    /// from component `i` to `j` becomes `t_j c t_i⁻¹` and `M_j` becomes
    /// `t_j M_j t_j⁻¹`. The relabeling commutes with the right action, so
    /// the result is an isomorphic Galois cover.
    pub fn relabel(&self, shifts: &[Permutation]) -> Result<CoverDescriptor> {
        let index = self.base.component_index();
        if shifts.len() != self.base.components.len() {
            return Err(Error::InvalidCover(format!(
                "{} shifts for {} components",
                shifts.len(),
                self.base.components.len()
            )));
        }
        for t in shifts {
            self.group.check_member(t)?;
        }
        let mut gluings = Vec::with_capacity(self.gluings.len());
        for (k, (class, branches)) in self.base.identifications.iter().zip(&self.gluings).enumerate() {
            let ti = &shifts[index[class.base().component.as_str()]];
            let mut out = Vec::with_capacity(branches.len());
            for (j, b) in branches.iter().enumerate() {
                let tj = &shifts[index[b.branch.component.as_str()]];
                let c = self.constant(k, j)?;
                out.push(BranchGluing::translation(b.branch.clone(), tj.compose(&c).compose(&ti.inverse())));
            }
            gluings.push(out);
        }
        let monodromy = self
            .monodromy
            .iter()
            .map(|(id, m)| (id.clone(), m.conjugate(&shifts[index[id.as_str()]])))
            .collect();
        CoverDescriptor::new(self.base.clone(), self.group.clone(), monodromy, gluings, self.ramification.clone())
    }

    /// Relabels fibers so that every constant on the spanning tree is `e`.
    /// Exactly `δ` constants, one per non-tree edge, may remain nontrivial.
    pub fn normalize_spanning_tree(&self) -> Result<CoverDescriptor> {
        let tree = self.spanning_tree()?;
        let index = self.base.component_index();
        let n = self.base.components.len();
        let mut shifts: Vec<Option<Permutation>> = vec![None; n];
        let root = (0..n).min_by_key(|&i| &self.base.components[i].id).expect("nonempty");
        shifts[root] = Some(self.group.identity());
        for edge in &tree {
            let c = self.constant(edge.class, edge.branch)?;
            let ti = shifts[edge.parent].clone().expect("parent first");
            let base_side = index[self.base.identifications[edge.class].base().component.as_str()];
            // t_child c t_parent⁻¹ = e, or t_parent c t_child⁻¹ = e
            let tj = if base_side == edge.parent {
                ti.compose(&c.inverse())
            } else {
                ti.compose(&c)
            };
            shifts[edge.child] = Some(tj);
        }
        let shifts: Vec<Permutation> = shifts.into_iter().map(|t| t.expect("spanning")).collect();
        self.relabel(&shifts)
    }

    /// For a tree-normalized cover: connected iff the monodromy subgroups and
    /// the non-tree constants generate `G`.
    pub fn connectivity_criterion(&self) -> Result<bool> {
        let tree = self.spanning_tree()?;
        let mut on_tree = vec![Vec::new(); self.gluings.len()];
        for (k, branches) in self.gluings.iter().enumerate() {
            on_tree[k] = vec![false; branches.len()];
        }
        for edge in &tree {
            if !self.constant(edge.class, edge.branch)?.is_identity() {
                return Err(Error::NotTreeNormalized(format!("class {} branch {}", edge.class, edge.branch)));
            }
            on_tree[edge.class][edge.branch] = true;
        }
        let mut gens: Vec<Permutation> = self.monodromy.values().flat_map(|m| m.generators().iter().cloned()).collect();
        for (k, branches) in self.gluings.iter().enumerate() {
            for j in 0..branches.len() {
                if !on_tree[k][j] {
                    gens.push(self.constant(k, j)?);
                }
            }
        }
        let span = crate::group::PermutationGroup::new(self.group.degree(), gens)?;
        Ok(span.order() == self.group.order())
    }
}
