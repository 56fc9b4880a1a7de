//! Gluing scripts: a starting cover and a list of steps applied in order.
//!
//! ```json
//! {
//!   "start": "line.cover.json",
//!   "steps": [
//!     {"same_component": {"ambient": "S3", "gamma": [3, 2, 1], "y1": ["X", "0"], "y2": ["X", "1"]}},
//!     {"two_components": {"ambient": "S3", "other": "other.cover.json", "y1": ["X", "2"], "y2": ["Y", "0"]}}
//!   ]
//! }
//! ```
//!
//! Cover references are paths relative to the script or inline cover
//! files. A same-component step induces the current cover to `ambient` and
//! glues `y1` to `y2` with constant `gamma`; a two-component step glues the
//! current cover to `other` along `y1` and `y2`.

use std::path::Path;

use pi1_core::cover::{glue_same_component, glue_two_components, GroupRef};
use pi1_core::{CoverDescriptor, CoverFile, Error, Permutation, PointRef, Result};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum CoverRef {
    Path(String),
    Inline(Box<CoverFile>),
}

impl CoverRef {
    fn resolve(&self, dir: Option<&Path>) -> Result<CoverDescriptor> {
        match self {
            CoverRef::Path(p) => CoverFile::load(dir.map_or_else(|| p.into(), |d| d.join(p))),
            CoverRef::Inline(f) => f.resolve(dir),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    SameComponent {
        ambient: GroupRef,
        gamma: Permutation,
        y1: PointRef,
        y2: PointRef,
    },
    TwoComponents {
        ambient: GroupRef,
        other: CoverRef,
        y1: PointRef,
        y2: PointRef,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Script {
    pub start: CoverRef,
    #[serde(default)]
    pub steps: Vec<Step>,
}

impl Script {
    pub fn load(path: &Path) -> Result<(Script, Option<&Path>)> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Ok((serde_json::from_str(&text)?, path.parent()))
    }

    pub fn run(&self, dir: Option<&Path>) -> Result<CoverDescriptor> {
        let mut cover = self.start.resolve(dir)?;
        for step in &self.steps {
            cover = match step {
                Step::SameComponent { ambient, gamma, y1, y2 } => {
                    let sub = cover.group().clone();
                    glue_same_component(&ambient.resolve()?, &sub, gamma, &cover, y1, y2)?
                }
                Step::TwoComponents { ambient, other, y1, y2 } => {
                    let other = other.resolve(dir)?;
                    glue_two_components(&ambient.resolve()?, cover.group(), other.group(), &cover, &other, y1, y2)?
                }
            };
        }
        Ok(cover)
    }
}
