use std::collections::BTreeSet;
use std::fmt::Write;

use super::CoverDescriptor;
use crate::curve::CurveConfiguration;
use crate::error::Result;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(ch),
        }
    }
    out.push('"');
    out
}

impl CoverDescriptor {
    /// Sheet-connectivity graph: one node `component/sheet` per sheet, one
    /// edge per pair of sheets joined by some gluing, labelled with the
    /// class index. Nodes follow component order then sheet number; edges
    /// are deduplicated and sorted.
    pub fn to_dot(&self) -> Result<String> {
        let sheets = self.sheets()?;
        let index = self.base.component_index();
        let mut names = Vec::with_capacity(sheets.total());
        for c in &self.base.components {
            for s in 0..sheets.count(index[c.id.as_str()]) {
                names.push(format!("{}/{s}", c.id));
            }
        }
        let mut edges: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        for (k, (class, branches)) in self.base.identifications.iter().zip(&self.gluings).enumerate() {
            let i = index[class.base().component.as_str()];
            for b in branches {
                let j = index[b.branch.component.as_str()];
                for (x, &y) in self.map_indices(&b.map)?.iter().enumerate() {
                    let (u, v) = (sheets.node(i, x), sheets.node(j, y as usize));
                    edges.insert((u.min(v), u.max(v), k));
                }
            }
        }
        let mut out = String::from("graph cover {\n");
        for name in &names {
            writeln!(out, "  {};", quote(name)).expect("string write");
        }
        for (u, v, k) in edges {
            writeln!(out, "  {} -- {} [label={}];", quote(&names[u]), quote(&names[v]), quote(&k.to_string())).expect("string write");
        }
        out.push_str("}\n");
        Ok(out)
    }
}

impl CurveConfiguration {
    /// Dual graph: one node per component (with its genus), one edge per
    /// branch joined to its class's base branch.
    pub fn to_dot(&self) -> Result<String> {
        let graph = self.dual_graph()?;
        let mut out = String::from("graph configuration {\n");
        for c in &self.components {
            writeln!(out, "  {} [label={}];", quote(&c.id), quote(&format!("{} (g={})", c.id, c.genus))).expect("string write");
        }
        for e in &graph.edges {
            writeln!(
                out,
                "  {} -- {} [label={}];",
                quote(&graph.vertices[e.from]),
                quote(&graph.vertices[e.to]),
                quote(&e.class.to_string())
            )
            .expect("string write");
        }
        out.push_str("}\n");
        Ok(out)
    }
}
