//! Fundamental-group invariants of seminormal curves, Galois covers built by
//! gluing torsor-labeled fibers, and realizability checks for finite groups.

pub mod cover;
pub mod curve;
pub mod error;
pub mod group;
pub mod oracle;
pub mod realizability;
pub mod union_find;

pub use cover::{BranchGluing, CoverDescriptor, CoverFile, CoverPoint, GluingMap, Inertia, TorsorLabeling};
pub use curve::{ComponentData, CurveConfiguration, DualGraph, FactorStep, IdentificationClass, PointRef, RankReport, ValidationReport};
pub use error::{Error, Result};
pub use group::{GeneratorSearch, Permutation, PermutationGroup};
pub use realizability::{Checker, RealizabilityVerdict, Verdict};
