//! Which finite groups occur as Galois groups of connected étale covers.
//!
//! Projective seminormal curves have `π₁ = π₁(C₁) ∗ ⋯ ∗ π₁(Cₙ) ∗ F̂_δ`; an
//! affine irreducible curve with normalization of genus `g` minus `r`
//! points admits `G` iff `G/p(G)` needs at most `2g + r − 1 + δ`
//! generators. In characteristic `p` the quotients of `π₁(Cᵢ)` for
//! `gᵢ > 0` are not known from `(gᵢ, sᵢ)`, so those cases may be `Unknown`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::curve::CurveConfiguration;
use crate::error::{Error, Result};
use crate::group::{is_prime, GeneratorSearch, PermutationGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Named values in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Evidence(Vec<(String, Value)>);

impl Evidence {
    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }
}

impl Serialize for Evidence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizabilityVerdict {
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub rule: &'static str,
}

impl RealizabilityVerdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Runs the checks with a given generator search; randomized searches are
/// flagged with `"randomized": true` in the evidence.
#[derive(Debug, Clone, Default)]
pub struct Checker {
    pub search: GeneratorSearch,
}

struct Ctx<'a> {
    search: &'a GeneratorSearch,
    randomized: bool,
    evidence: Evidence,
}

impl Ctx<'_> {
    fn d(&mut self, g: &PermutationGroup) -> Result<usize> {
        let count = g.min_generators_with(self.search)?;
        self.randomized |= !count.exact;
        Ok(count.value)
    }

    fn finish(mut self, verdict: Verdict, rule: &'static str) -> RealizabilityVerdict {
        if self.randomized {
            self.evidence.push("randomized", true);
        }
        RealizabilityVerdict {
            verdict,
            evidence: self.evidence,
            rule,
        }
    }
}

fn check_prime_or_zero(p: u64) -> Result<()> {
    if p != 0 && !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn check_prime(p: u64) -> Result<()> {
    if p == 0 {
        return Err(Error::CharacteristicZero);
    }
    check_prime_or_zero(p)
}

fn check_char(p: u64, config: &CurveConfiguration) -> Result<()> {
    if p != config.characteristic {
        return Err(Error::CharacteristicMismatch(p, config.characteristic));
    }
    Ok(())
}

fn divides(p: u64, order: u128) -> bool {
    p != 0 && order % p as u128 == 0
}

/// `(g, r, δ)` of an irreducible affine configuration.
fn affine_triple(config: &CurveConfiguration) -> Result<(u64, u64, u64)> {
    config.ensure_valid()?;
    if config.n() != 1 {
        return Err(Error::ReducibleNormalization(config.n()));
    }
    if config.removed.is_empty() {
        return Err(Error::NotAffine);
    }
    Ok((config.components[0].genus as u64, config.removed.len() as u64, config.affine_delta()?))
}

impl Checker {
    pub fn new(search: GeneratorSearch) -> Self {
        Checker { search }
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx {
            search: &self.search,
            randomized: false,
            evidence: Evidence::default(),
        }
    }

    /// `G` is a quotient of `π₁(U)` iff `d(G/p(G)) ≤ 2g + r − 1 + δ`.
    pub fn affine_realizable(&self, group: &PermutationGroup, p: u64, genus: u64, r: u64, delta: u64) -> Result<RealizabilityVerdict> {
        check_prime_or_zero(p)?;
        if r == 0 {
            return Err(Error::NotAffine);
        }
        let bound = 2 * genus + r - 1 + delta;
        let mut ctx = self.ctx();
        let quotient_d = if p == 0 {
            ctx.d(group)?
        } else {
            let part = group.quasi_p_part(p)?;
            ctx.evidence.push("p_part_order", part.order() as u64);
            if part.order() == group.order() {
                0
            } else if part.order() == 1 {
                ctx.d(group)?
            } else {
                let q = group.quotient(&part)?;
                ctx.d(q.image())?
            }
        };
        ctx.evidence.push("quotient_d", quotient_d);
        ctx.evidence.push("bound", bound);
        let verdict = if quotient_d as u64 <= bound { Verdict::Yes } else { Verdict::No };
        Ok(ctx.finish(verdict, "abhyankar-affine"))
    }

    pub fn affine_realizable_config(&self, group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
        check_char(p, config)?;
        let (g, r, delta) = affine_triple(config)?;
        self.affine_realizable(group, p, g, r, delta)
    }

    /// Three-valued test on a connected projective configuration.
    pub fn projective_realizable(&self, group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
        check_prime_or_zero(p)?;
        check_char(p, config)?;
        let delta = config.delta()?;
        let mut ctx = self.ctx();
        let d = ctx.d(group)? as u64;
        ctx.evidence.push("d", d);
        ctx.evidence.push("delta", delta);
        if config.all_genus_zero() {
            let verdict = if d <= delta { Verdict::Yes } else { Verdict::No };
            return Ok(ctx.finish(verdict, "free-product-genus-zero"));
        }
        let genus = config.genus_sum();
        let rank_bound = 2 * genus + delta;
        if d > rank_bound {
            ctx.evidence.push("bound", rank_bound);
            return Ok(ctx.finish(Verdict::No, "rank-bound"));
        }
        if p > 0 {
            let sigma = group.abelianization_p_rank(p)? as u64;
            if sigma > genus + delta {
                ctx.evidence.push("sigma", sigma);
                ctx.evidence.push("bound", genus + delta);
                return Ok(ctx.finish(Verdict::No, "hasse-witt"));
            }
            // the maximal p-quotient of G needs σ(G) generators
            let pro_p = config.p_rank_sum() + delta;
            if sigma > pro_p {
                ctx.evidence.push("sigma", sigma);
                ctx.evidence.push("bound", pro_p);
                return Ok(ctx.finish(Verdict::No, "pro-p-rank"));
            }
        }
        if d <= delta {
            return Ok(ctx.finish(Verdict::Yes, "free-factor"));
        }
        ctx.evidence.push("bound", rank_bound);
        ctx.evidence.push("reason", "quotients of positive-genus components are not decided");
        Ok(ctx.finish(Verdict::Unknown, "free-factor"))
    }

    /// Necessary condition `σ(G) ≤ Σ gᵢ + δ`; never answers `Yes`.
    pub fn hasse_witt_check(&self, group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
        check_prime(p)?;
        check_char(p, config)?;
        let delta = config.delta()?;
        let bound = config.genus_sum() + delta;
        let sigma = group.abelianization_p_rank(p)? as u64;
        let mut ctx = self.ctx();
        ctx.evidence.push("sigma", sigma);
        ctx.evidence.push("bound", bound);
        let verdict = if sigma > bound { Verdict::No } else { Verdict::Unknown };
        Ok(ctx.finish(verdict, "hasse-witt"))
    }

    /// Necessary condition `t_G ≤ Σ gᵢ + δ`, decided only for p-groups where
    /// `t_G = d(G)`.
    pub fn nakajima_check(&self, group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
        check_prime(p)?;
        check_char(p, config)?;
        let delta = config.delta()?;
        let bound = config.genus_sum() + delta;
        let mut ctx = self.ctx();
        if !group.is_p_group(p) {
            ctx.evidence.push("bound", bound);
            ctx.evidence.push("reason", "t_G is only computed for p-groups");
            return Ok(ctx.finish(Verdict::Unknown, "nakajima"));
        }
        let t = ctx.d(group)? as u64;
        ctx.evidence.push("t", t);
        ctx.evidence.push("bound", bound);
        let verdict = if t > bound { Verdict::No } else { Verdict::Unknown };
        Ok(ctx.finish(verdict, "nakajima"))
    }

    /// Tame quotients: decided when `p ∤ |G|`, only the rank bound otherwise.
    pub fn tame_realizable(&self, group: &PermutationGroup, p: u64, genus: u64, r: u64, delta: u64) -> Result<RealizabilityVerdict> {
        check_prime_or_zero(p)?;
        if r == 0 {
            return Err(Error::NotAffine);
        }
        let bound = 2 * genus + r - 1 + delta;
        let mut ctx = self.ctx();
        let d = ctx.d(group)? as u64;
        ctx.evidence.push("d", d);
        ctx.evidence.push("bound", bound);
        let verdict = if d > bound {
            Verdict::No
        } else if divides(p, group.order()) {
            ctx.evidence.push("reason", "p divides the group order");
            Verdict::Unknown
        } else {
            Verdict::Yes
        };
        Ok(ctx.finish(verdict, "tame"))
    }

    pub fn tame_realizable_config(&self, group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
        check_char(p, config)?;
        let (g, r, delta) = affine_triple(config)?;
        self.tame_realizable(group, p, g, r, delta)
    }
}

pub fn affine_realizable(group: &PermutationGroup, p: u64, genus: u64, r: u64, delta: u64) -> Result<RealizabilityVerdict> {
    Checker::default().affine_realizable(group, p, genus, r, delta)
}

/// Affine check on an irreducible configuration with removed points.
pub fn affine_realizable_config(group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
    Checker::default().affine_realizable_config(group, p, config)
}

pub fn tame_realizable_config(group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
    Checker::default().tame_realizable_config(group, p, config)
}

pub fn projective_realizable(group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
    Checker::default().projective_realizable(group, p, config)
}

pub fn hasse_witt_check(group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
    Checker::default().hasse_witt_check(group, p, config)
}

pub fn nakajima_check(group: &PermutationGroup, p: u64, config: &CurveConfiguration) -> Result<RealizabilityVerdict> {
    Checker::default().nakajima_check(group, p, config)
}

pub fn tame_realizable(group: &PermutationGroup, p: u64, genus: u64, r: u64, delta: u64) -> Result<RealizabilityVerdict> {
    Checker::default().tame_realizable(group, p, genus, r, delta)
}

/// `Σ sᵢ + δ`, the rank of the free maximal pro-p quotient.
pub fn pro_p_rank(config: &CurveConfiguration) -> Result<u64> {
    config.pro_p_rank()
}
