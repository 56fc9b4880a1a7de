//! Combinatorial seminormal curves: the normalization as a list of smooth
//! components carrying marked points, together with the classes of points
//! glued to each singular point and the points removed to make an affine
//! curve.

mod dual;
mod ops;
mod validate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use dual::{DualEdge, DualGraph};
pub use ops::{FactorStep, RankReport};
pub use validate::{ValidationReport, Violation};

use crate::error::{Error, Result};

/// A marked point: a component id and a label unique on that component.
/// Serialized as `["C1", "0"]`. Ordered by component id, then label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(String, String)", into = "(String, String)")]
pub struct PointRef {
    pub component: String,
    pub label: String,
}

impl PointRef {
    pub fn new(component: impl Into<String>, label: impl Into<String>) -> Self {
        PointRef {
            component: component.into(),
            label: label.into(),
        }
    }
}

impl From<(String, String)> for PointRef {
    fn from((component, label): (String, String)) -> Self {
        PointRef { component, label }
    }
}

impl From<PointRef> for (String, String) {
    fn from(p: PointRef) -> Self {
        (p.component, p.label)
    }
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentData {
    pub id: String,
    pub genus: u32,
    /// Defaults to the genus (ordinary curve).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_rank: Option<u32>,
}

impl ComponentData {
    pub fn new(id: impl Into<String>, genus: u32) -> Self {
        ComponentData {
            id: id.into(),
            genus,
            p_rank: None,
        }
    }

    pub fn p_rank(&self) -> u32 {
        self.p_rank.unwrap_or(self.genus)
    }
}

/// The reduced fiber over one singular point. Members are a set; the
/// stored order is irrelevant to every invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdentificationClass {
    pub members: Vec<PointRef>,
}

impl IdentificationClass {
    pub fn new(members: Vec<PointRef>) -> Self {
        IdentificationClass { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in `PointRef` order, deduplicated.
    pub fn sorted(&self) -> Vec<PointRef> {
        let mut m = self.members.clone();
        m.sort();
        m.dedup();
        m
    }

    /// Smallest member; the root of the star in the dual graph and the base
    /// branch for gluings.
    pub fn base(&self) -> &PointRef {
        self.members.iter().min().expect("nonempty class")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfiguration {
    /// 0 or a prime.
    pub characteristic: u64,
    pub components: Vec<ComponentData>,
    /// Marked point labels per component id.
    #[serde(default)]
    pub points: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub identifications: Vec<IdentificationClass>,
    #[serde(default)]
    pub removed: Vec<PointRef>,
}

impl CurveConfiguration {
    /// Smooth configuration with the given components and no marked points.
    pub fn smooth(characteristic: u64, components: Vec<ComponentData>) -> Self {
        CurveConfiguration {
            characteristic,
            components,
            points: BTreeMap::new(),
            identifications: Vec::new(),
            removed: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Adds a marked point, keeping labels unique.
    pub fn mark(&mut self, component: &str, label: &str) {
        let labels = self.points.entry(component.to_string()).or_default();
        if !labels.iter().any(|l| l == label) {
            labels.push(label.to_string());
        }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn is_projective(&self) -> bool {
        self.removed.is_empty()
    }

    pub fn component_index(&self) -> HashMap<&str, usize> {
        self.components.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect()
    }

    pub fn component(&self, id: &str) -> Option<&ComponentData> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn has_point(&self, p: &PointRef) -> bool {
        self.points
            .get(&p.component)
            .is_some_and(|labels| labels.contains(&p.label))
    }

    /// Index of the identification class containing `p`.
    pub fn class_of(&self, p: &PointRef) -> Option<usize> {
        self.identifications.iter().position(|c| c.members.contains(p))
    }

    pub fn genus_sum(&self) -> u64 {
        self.components.iter().map(|c| c.genus as u64).sum()
    }

    pub fn p_rank_sum(&self) -> u64 {
        self.components.iter().map(|c| c.p_rank() as u64).sum()
    }

    pub fn all_genus_zero(&self) -> bool {
        self.components.iter().all(|c| c.genus == 0)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(report))
        }
    }

    /// Same components and marked points, no classes, nothing removed.
    pub fn normalization(&self) -> Self {
        CurveConfiguration {
            identifications: Vec::new(),
            removed: Vec::new(),
            ..self.clone()
        }
    }

    /// Classes as sorted member lists, sorted. Two configurations over the
    /// same normalization describe the same curve iff these agree.
    pub fn canonical_classes(&self) -> Vec<Vec<PointRef>> {
        let mut classes: Vec<Vec<PointRef>> = self.identifications.iter().map(|c| c.sorted()).collect();
        classes.sort();
        classes
    }
}
