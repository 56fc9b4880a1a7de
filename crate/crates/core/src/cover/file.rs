//! JSON form of a cover descriptor.
//!
//! ```json
//! {
//!   "config": "nodal.json",
//!   "group": "C3",
//!   "monodromy": {"C1": [[2, 3, 1]]},
//!   "gluings": [{"class_index": 0, "branch": ["C1", "1"], "constant": [2, 3, 1]}],
//!   "ramification": [{"point": ["C1", "inf"], "inertia": [[2, 3, 1]]}]
//! }
//! ```
//!
//! `config` is a path (relative to the cover file) or an inline
//! configuration; `group` is a catalog name or an inline group file. A
//! gluing gives either a `constant` (image array) or a `table` of label
//! indices in element-table order.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{BranchGluing, CoverDescriptor, GluingMap, Inertia};
use crate::curve::{CurveConfiguration, PointRef};
use crate::error::{Error, Result};
use crate::group::catalog::Catalog;
use crate::group::{GroupFile, Permutation, PermutationGroup};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConfigRef {
    Path(String),
    Inline(CurveConfiguration),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupFile),
}

impl GroupRef {
    pub fn resolve(&self) -> Result<PermutationGroup> {
        match self {
            GroupRef::Name(name) => Catalog::load()?.group(name),
            GroupRef::Inline(f) => f.clone().try_into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingEntry {
    pub class_index: usize,
    pub branch: PointRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<Permutation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamificationEntry {
    pub point: PointRef,
    #[serde(default)]
    pub inertia: Vec<Permutation>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub config: ConfigRef,
    pub group: GroupRef,
    #[serde(default)]
    pub monodromy: BTreeMap<String, Vec<Permutation>>,
    #[serde(default)]
    pub gluings: Vec<GluingEntry>,
    #[serde(default)]
    pub ramification: Vec<RamificationEntry>,
}

impl CoverFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Reads and resolves a cover file; relative configuration paths are
    /// taken from the file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<CoverDescriptor> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        CoverFile::from_json(&text)?.resolve(path.parent())
    }

    pub fn resolve(&self, dir: Option<&Path>) -> Result<CoverDescriptor> {
        let base = match &self.config {
            ConfigRef::Inline(c) => c.clone(),
            ConfigRef::Path(p) => match dir {
                Some(d) => CurveConfiguration::from_path(d.join(p))?,
                None => CurveConfiguration::from_path(p)?,
            },
        };
        let group = self.group.resolve()?;
        let monodromy = self
            .monodromy
            .iter()
            .map(|(id, gens)| {
                for g in gens {
                    group.check_degree(g)?;
                }
                Ok((id.clone(), PermutationGroup::new(group.degree(), gens.clone())?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut gluings: Vec<Vec<BranchGluing>> = vec![Vec::new(); base.identifications.len()];
        for entry in &self.gluings {
            let slot = gluings
                .get_mut(entry.class_index)
                .ok_or_else(|| Error::InvalidCover(format!("no class {}", entry.class_index)))?;
            let map = match (&entry.constant, &entry.table) {
                (Some(c), None) => {
                    group.check_degree(c)?;
                    GluingMap::Translation(c.clone())
                }
                (None, Some(t)) => GluingMap::Table(t.clone()),
                _ => {
                    return Err(Error::InvalidCover(format!(
                        "gluing at {} needs exactly one of constant and table",
                        entry.branch
                    )))
                }
            };
            slot.push(BranchGluing {
                branch: entry.branch.clone(),
                map,
            });
        }
        for slot in &mut gluings {
            slot.sort_by(|a, b| a.branch.cmp(&b.branch));
        }
        let ramification = self
            .ramification
            .iter()
            .map(|r| {
                for g in &r.inertia {
                    group.check_degree(g)?;
                }
                Ok((
                    r.point.clone(),
                    Inertia {
                        generators: r.inertia.clone(),
                    },
                ))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        CoverDescriptor::new(base, group, monodromy, gluings, ramification)
    }

    /// Self-contained file with the configuration and group inline.
    pub fn from_descriptor(cover: &CoverDescriptor) -> Self {
        CoverFile {
            config: ConfigRef::Inline(cover.base.clone()),
            group: GroupRef::Inline(GroupFile::from(&cover.group)),
            monodromy: cover
                .monodromy
                .iter()
                .filter(|(_, m)| m.order() > 1)
                .map(|(id, m)| (id.clone(), m.generators().to_vec()))
                .collect(),
            gluings: cover
                .gluings
                .iter()
                .enumerate()
                .flat_map(|(k, bs)| {
                    bs.iter().map(move |b| {
                        let (constant, table) = match &b.map {
                            GluingMap::Translation(c) => (Some(c.clone()), None),
                            GluingMap::Table(t) => (None, Some(t.clone())),
                        };
                        GluingEntry {
                            class_index: k,
                            branch: b.branch.clone(),
                            constant,
                            table,
                        }
                    })
                })
                .collect(),
            ramification: cover
                .ramification
                .iter()
                .map(|(p, i)| RamificationEntry {
                    point: p.clone(),
                    inertia: i.generators.clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::group::construct::{alternating, symmetric};

    #[test]
    fn round_trip() {
        let s3 = symmetric(3);
        let a3 = alternating(3);
        let cover = ramified_line("X", &s3, &a3);
        let text = CoverFile::from_descriptor(&cover).to_json_pretty();
        let back = CoverFile::from_json(&text).unwrap().resolve(None).unwrap();
        assert!(back.same_as(&cover).unwrap());
    }

    #[test]
    fn named_group_and_config_path() {
        let dir = std::env::temp_dir().join(format!("pi1-cover-file-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("nodal.json"), nodal_line(1).to_json()).unwrap();
        let text = r#"{"config": "nodal.json", "group": "C3",
            "gluings": [{"class_index": 0, "branch": ["C1", "1"], "constant": [2, 3, 1]}]}"#;
        std::fs::write(dir.join("cover.json"), text).unwrap();
        let cover = CoverFile::load(dir.join("cover.json")).unwrap();
        assert!(cover.is_connected().unwrap());
        std::fs::remove_dir_all(&dir).unwrap();

        let both = r#"{"config": {"characteristic": 0, "components": [{"id": "A", "genus": 0}]}, "group": "C2",
            "gluings": [{"class_index": 0, "branch": ["A", "x"], "constant": [2, 1], "table": [1, 0]}]}"#;
        assert!(CoverFile::from_json(both).unwrap().resolve(None).is_err());
    }
}
