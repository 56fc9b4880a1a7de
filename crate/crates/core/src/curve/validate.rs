use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{CurveConfiguration, PointRef};
use crate::group::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: &'static str,
    pub message: String,
}

/// Every invariant violation found; empty when the configuration is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn codes(&self) -> Vec<&'static str> {
        self.violations.iter().map(|v| v.code).collect()
    }

    fn push(&mut self, code: &'static str, message: String) {
        self.violations.push(Violation { code, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{}: {}", v.code, v.message)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl CurveConfiguration {
    /// Checks every invariant without stopping at the first failure.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        if self.characteristic != 0 && !is_prime(self.characteristic) {
            r.push("BAD_CHARACTERISTIC", format!("{} is neither 0 nor prime", self.characteristic));
        }
        if self.components.is_empty() {
            r.push("NO_COMPONENTS", "at least one component is required".into());
        }
        let mut ids = HashSet::new();
        for c in &self.components {
            if !ids.insert(c.id.as_str()) {
                r.push("DUPLICATE_COMPONENT", format!("component id {:?} repeated", c.id));
            }
            if let Some(s) = c.p_rank {
                if s > c.genus {
                    r.push("P_RANK_EXCEEDS_GENUS", format!("{}: p-rank {s} > genus {}", c.id, c.genus));
                }
            }
        }
        for (comp, labels) in &self.points {
            if !ids.contains(comp.as_str()) {
                r.push("UNKNOWN_COMPONENT", format!("points listed for unknown component {comp:?}"));
            }
            let mut seen = HashSet::new();
            for l in labels {
                if !seen.insert(l) {
                    r.push("DUPLICATE_POINT", format!("label {l:?} repeated on {comp}"));
                }
            }
        }
        let check_ref = |r: &mut ValidationReport, p: &PointRef| {
            if !ids.contains(p.component.as_str()) {
                r.push("UNKNOWN_COMPONENT", format!("{p} refers to an unknown component"));
            } else if !self.has_point(p) {
                r.push("UNKNOWN_POINT", format!("{p} is not a marked point"));
            }
        };
        let mut owner: HashMap<&PointRef, usize> = HashMap::new();
        for (i, class) in self.identifications.iter().enumerate() {
            let mut distinct = HashSet::new();
            for m in &class.members {
                check_ref(&mut r, m);
                if !distinct.insert(m) {
                    r.push("DUPLICATE_MEMBER", format!("{m} repeated in class {i}"));
                }
            }
            if distinct.len() < 2 {
                r.push("CLASS_TOO_SMALL", format!("class {i} has {} distinct point(s)", distinct.len()));
            }
            for m in distinct {
                if let Some(j) = owner.insert(m, i) {
                    r.push("CLASSES_OVERLAP", format!("{m} lies in classes {j} and {i}"));
                }
            }
        }
        let mut removed = HashSet::new();
        for p in &self.removed {
            check_ref(&mut r, p);
            if !removed.insert(p) {
                r.push("DUPLICATE_REMOVED", format!("{p} removed twice"));
            }
            if let Some(i) = owner.get(p) {
                r.push("REMOVED_NOT_SMOOTH", format!("{p} is removed but lies in class {i}"));
            }
        }
        r
    }
}
