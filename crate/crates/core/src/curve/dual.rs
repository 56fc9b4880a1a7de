use serde::Serialize;

use super::CurveConfiguration;
use crate::error::Result;
use crate::union_find::UnionFind;

/// One edge of the dual graph: the root of a class joined to another
/// member. Self-loops occur when both lie on the same component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    pub from: usize,
    pub to: usize,
    pub class: usize,
}

/// Vertices are components (in configuration order); each class of size m
/// contributes m - 1 edges from its smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    pub fn connected_components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.from, e.to);
        }
        uf.classes()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components() == 1
    }

    /// First Betti number `E - V + c`.
    pub fn betti(&self) -> usize {
        self.edges.len() + self.connected_components() - self.vertices.len()
    }
}

impl CurveConfiguration {
    pub fn dual_graph(&self) -> Result<DualGraph> {
        self.ensure_valid()?;
        Ok(self.dual_graph_unchecked())
    }

    pub(crate) fn dual_graph_unchecked(&self) -> DualGraph {
        let index = self.component_index();
        let mut edges = Vec::new();
        for (k, class) in self.identifications.iter().enumerate() {
            let members = class.sorted();
            let root = index[members[0].component.as_str()];
            for m in &members[1..] {
                edges.push(DualEdge {
                    from: root,
                    to: index[m.component.as_str()],
                    class: k,
                });
            }
        }
        DualGraph {
            vertices: self.components.iter().map(|c| c.id.clone()).collect(),
            edges,
        }
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.dual_graph()?.is_connected())
    }

    pub fn betti(&self) -> Result<usize> {
        Ok(self.dual_graph()?.betti())
    }
}
