use super::CoverDescriptor;
use crate::error::Result;
use crate::union_find::UnionFind;

/// The sheets of a cover: over each component, the right cosets `Mλ`,
/// numbered by their smallest label index.
#[derive(Debug, Clone)]
pub struct Sheets {
    /// `sheet_of[i][λ]` is the sheet over component `i` containing label `λ`.
    sheet_of: Vec<Vec<u32>>,
    counts: Vec<usize>,
    offsets: Vec<usize>,
}

impl Sheets {
    pub fn count(&self, component: usize) -> usize {
        self.counts[component]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn sheet(&self, component: usize, label: usize) -> usize {
        self.sheet_of[component][label] as usize
    }

    /// Global node index of a sheet.
    pub fn node(&self, component: usize, label: usize) -> usize {
        self.offsets[component] + self.sheet(component, label)
    }
}

impl CoverDescriptor {
    pub fn sheets(&self) -> Result<Sheets> {
        let elements = self.group.elements()?;
        let n = elements.len();
        let mut sheet_of = Vec::new();
        let mut counts = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for c in &self.base.components {
            let m = &self.monodromy[&c.id];
            let mut uf = UnionFind::new(n);
            for g in m.generators() {
                let t = elements.left_translation(g);
                for (x, &y) in t.iter().enumerate() {
                    uf.union(x, y as usize);
                }
            }
            let labels = uf.labels();
            offsets.push(total);
            counts.push(uf.classes());
            total += uf.classes();
            sheet_of.push(labels.into_iter().map(|l| l as u32).collect());
        }
        Ok(Sheets {
            sheet_of,
            counts,
            offsets,
        })
    }

    /// Union-find over all sheets, joined along every gluing.
    fn sheet_classes(&self) -> Result<(Sheets, UnionFind)> {
        let sheets = self.sheets()?;
        let index = self.base.component_index();
        let mut uf = UnionFind::new(sheets.total());
        for (class, branches) in self.base.identifications.iter().zip(&self.gluings) {
            let i = index[class.base().component.as_str()];
            for b in branches {
                let j = index[b.branch.component.as_str()];
                let f = self.map_indices(&b.map)?;
                for (x, &y) in f.iter().enumerate() {
                    uf.union(sheets.node(i, x), sheets.node(j, y as usize));
                }
            }
        }
        Ok((sheets, uf))
    }

    /// Number of connected components of the cover.
    pub fn connected_components(&self) -> Result<usize> {
        Ok(self.sheet_classes()?.1.classes())
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.connected_components()? == 1)
    }
}
