use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{CurveConfiguration, IdentificationClass, PointRef};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub delta: u64,
    pub affine_delta: u64,
    /// `Σ 2g_i + δ`; projective configurations only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi1_rank_bound: Option<u64>,
    /// `Σ s_i + δ`; projective configurations in positive characteristic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pro_p_rank: Option<u64>,
    /// `2g + r - 1 + δ`; irreducible normalization with removed points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tame_rank: Option<u64>,
}

/// One elementary identification: two distinct points glued together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorStep {
    pub first: PointRef,
    pub second: PointRef,
    /// Both points already lie in one connected component of the curve
    /// built so far.
    pub same_component: bool,
}

impl CurveConfiguration {
    /// `Σ (|class| - 1)`.
    pub(crate) fn class_excess(&self) -> u64 {
        self.identifications.iter().map(|c| c.sorted().len() as u64 - 1).sum()
    }

    /// `1 - n + Σ (|class| - 1)`, without any precondition. Equals the first
    /// Betti number of the dual graph minus the number of extra connected
    /// components.
    pub fn delta_formula(&self) -> i64 {
        1 - self.n() as i64 + self.class_excess() as i64
    }

    pub fn delta(&self) -> Result<u64> {
        self.ensure_valid()?;
        if !self.is_projective() {
            return Err(Error::NotProjective);
        }
        if !self.dual_graph_unchecked().is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(self.delta_formula() as u64)
    }

    pub fn affine_delta(&self) -> Result<u64> {
        self.ensure_valid()?;
        Ok(self.class_excess())
    }

    pub fn rank_report(&self) -> Result<RankReport> {
        self.ensure_valid()?;
        if !self.dual_graph_unchecked().is_connected() {
            return Err(Error::NotConnected);
        }
        let delta = self.delta_formula() as u64;
        let projective = self.is_projective();
        let tame_rank = (self.n() == 1 && !projective)
            .then(|| 2 * self.genus_sum() + self.removed.len() as u64 - 1 + delta);
        Ok(RankReport {
            delta,
            affine_delta: self.class_excess(),
            pi1_rank_bound: projective.then(|| 2 * self.genus_sum() + delta),
            pro_p_rank: (projective && self.characteristic > 0).then(|| self.p_rank_sum() + delta),
            tame_rank,
        })
    }

    /// `Σ s_i + δ`.
    pub fn pro_p_rank(&self) -> Result<u64> {
        if self.characteristic == 0 {
            self.ensure_valid()?;
            return Err(Error::CharacteristicZero);
        }
        Ok(self.p_rank_sum() + self.delta()?)
    }

    /// Glues each set of points to a single point. Members may be smooth
    /// marked points or points of existing classes, in which case the whole
    /// class joins. Overlapping sets merge.
    pub fn identify(&self, relation: &[Vec<PointRef>]) -> Result<CurveConfiguration> {
        self.ensure_valid()?;
        let removed: HashSet<&PointRef> = self.removed.iter().collect();
        for set in relation {
            let distinct: HashSet<&PointRef> = set.iter().collect();
            if distinct.len() < 2 {
                return Err(Error::TrivialMerge(distinct.len()));
            }
            for p in set {
                if removed.contains(p) {
                    return Err(Error::OverlapWithRemoved(p.to_string()));
                }
                if !self.has_point(p) {
                    return Err(Error::PointNotFound(p.to_string()));
                }
            }
        }

        let mut node: HashMap<PointRef, usize> = HashMap::new();
        let mut points: Vec<PointRef> = Vec::new();
        let mut id = |p: &PointRef| {
            *node.entry(p.clone()).or_insert_with(|| {
                points.push(p.clone());
                points.len() - 1
            })
        };
        let groups: Vec<Vec<usize>> = self
            .identifications
            .iter()
            .map(|c| c.members.clone())
            .chain(relation.iter().cloned())
            .map(|set| set.iter().map(&mut id).collect())
            .collect();
        let mut uf = UnionFind::new(points.len());
        for g in &groups {
            for w in g.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let labels = uf.labels();
        let mut members: Vec<Vec<PointRef>> = vec![Vec::new(); uf.classes()];
        for (i, p) in points.iter().enumerate() {
            members[labels[i]].push(p.clone());
        }
        // classes in order of first appearance: old classes, then new sets
        let mut emitted = vec![false; members.len()];
        let mut out = Vec::new();
        for g in &groups {
            let l = labels[g[0]];
            if !std::mem::replace(&mut emitted[l], true) {
                let mut m = std::mem::take(&mut members[l]);
                m.sort();
                out.push(IdentificationClass::new(m));
            }
        }
        Ok(CurveConfiguration {
            identifications: out,
            ..self.clone()
        })
    }

    /// Pairwise merges reproducing the configuration from its normalization:
    /// class by class in input order, each class's smallest member glued to
    /// the others in order.
    pub fn factorize(&self) -> Result<Vec<FactorStep>> {
        self.delta()?;
        let index = self.component_index();
        let mut uf = UnionFind::new(self.n());
        let mut steps = Vec::new();
        for class in &self.identifications {
            let members = class.sorted();
            let a = index[members[0].component.as_str()];
            for m in &members[1..] {
                let b = index[m.component.as_str()];
                steps.push(FactorStep {
                    first: members[0].clone(),
                    second: m.clone(),
                    same_component: !uf.union(a, b),
                });
            }
        }
        Ok(steps)
    }

    /// Applies the steps one at a time with [`identify`](Self::identify).
    pub fn replay(&self, steps: &[FactorStep]) -> Result<CurveConfiguration> {
        let mut c = self.clone();
        for s in steps {
            c = c.identify(&[vec![s.first.clone(), s.second.clone()]])?;
        }
        Ok(c)
    }
}
