//! The small-group catalog: every group of order at most 24, plus `A5`.
//!
//! The data file is generated by `cargo run -p pi1-core --example
//! build_catalog` and embedded at compile time. Setting `PI1_CATALOG_PATH`
//! points lookups at another file in the same format.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{construct, PermutationGroup};
use crate::error::{Error, Result};

pub const CATALOG_ENV: &str = "PI1_CATALOG_PATH";

const EMBEDDED: &str = include_str!("../../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    pub order: u64,
    pub degree: usize,
    /// 1-indexed image arrays.
    pub generators: Vec<Vec<u32>>,
}

impl CatalogEntry {
    pub fn group(&self) -> Result<PermutationGroup> {
        let g = PermutationGroup::from_images(self.degree, &self.generators)?;
        if g.order() != self.order as u128 {
            return Err(Error::Catalog(format!(
                "{}: generators give order {}, entry says {}",
                self.name,
                g.order(),
                self.order
            )));
        }
        Ok(g)
    }

    pub fn matches(&self, name: &str) -> bool {
        self.name == name || self.aliases.iter().any(|a| a == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub groups: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Catalog> {
        let cat: Catalog = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        let mut names = std::collections::HashSet::new();
        for e in &cat.groups {
            for n in std::iter::once(&e.name).chain(&e.aliases) {
                if !names.insert(n.as_str()) {
                    return Err(Error::Catalog(format!("duplicate name {n:?}")));
                }
            }
        }
        Ok(cat)
    }

    /// The compiled-in catalog.
    pub fn embedded() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::from_json(EMBEDDED).expect("embedded catalog is well-formed"))
    }

    /// The catalog named by `PI1_CATALOG_PATH`, or the embedded one.
    pub fn load() -> Result<Catalog> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Catalog(format!("{}: {e}", path.to_string_lossy())))?;
                Catalog::from_json(&text)
            }
            None => Ok(Catalog::embedded().clone()),
        }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.groups
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.groups.iter().find(|e| e.matches(name))
    }

    /// Entries of order at most `max_order`, in catalog order.
    pub fn up_to_order(&self, max_order: u64) -> impl Iterator<Item = &CatalogEntry> {
        self.groups.iter().filter(move |e| e.order <= max_order)
    }

    /// Looks up `name`, falling back to the families `Cn`, `Dn`, `Sn`, `An`
    /// for names outside the catalog.
    pub fn group(&self, name: &str) -> Result<PermutationGroup> {
        if let Some(e) = self.get(name) {
            return e.group();
        }
        family(name).ok_or_else(|| Error::UnknownGroup(name.to_string()))
    }
}

fn family(name: &str) -> Option<PermutationGroup> {
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    let n: usize = tail.parse().ok().filter(|&n| (1..=64).contains(&n))?;
    match head {
        "C" => Some(construct::cyclic(n)),
        "D" => Some(construct::dihedral(n)),
        "S" => Some(construct::symmetric(n)),
        "A" => Some(construct::alternating(n)),
        _ => None,
    }
}

/// Looks a group up in the current catalog.
pub fn by_name(name: &str) -> Result<PermutationGroup> {
    Catalog::load()?.group(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_catalog_loads() {
        let cat = Catalog::embedded();
        for e in cat.entries() {
            assert_eq!(e.group().unwrap().order(), e.order as u128, "{}", e.name);
        }
        assert_eq!(cat.group("S3").unwrap().order(), 6);
        assert_eq!(cat.group("D3").unwrap().order(), 6);
        assert_eq!(cat.group("Q8").unwrap().order(), 8);
        assert_eq!(cat.group("A5").unwrap().order(), 60);
        assert_eq!(cat.group("C30").unwrap().order(), 30);
        assert!(matches!(cat.group("nope"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn duplicate_names_rejected() {
        let text = r#"{"groups":[{"name":"X","order":1,"degree":1,"generators":[]},
                                  {"name":"Y","aliases":["X"],"order":1,"degree":1,"generators":[]}]}"#;
        assert!(matches!(Catalog::from_json(text), Err(Error::Catalog(_))));
    }
}
