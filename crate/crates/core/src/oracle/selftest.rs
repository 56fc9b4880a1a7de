use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::descent::cross_check_descent;
use super::enumerate::{count_generating_tuples, enumerate_connected_covers};
use super::glue::glue_properties;
use super::random::{random_configuration, RandomConfigOptions};
use crate::curve::{ComponentData, CurveConfiguration, IdentificationClass, PointRef};
use crate::error::Result;
use crate::group::catalog::Catalog;

#[derive(Debug, Clone)]
pub struct SelftestOptions {
    pub seed: u64,
    pub max_order: u64,
    pub random_configs: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: 0,
            max_order: 12,
            random_configs: 100,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
}

/// Counts and failures only; nothing here depends on timing or threads.
#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub max_order: u64,
    pub sections: Vec<Section>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("serializable")
        } else {
            serde_json::to_string(self).expect("serializable")
        }
    }
}

/// A line with `k` nodes.
pub fn nodal_line(k: usize) -> CurveConfiguration {
    let mut c = CurveConfiguration::smooth(0, vec![ComponentData::new("C1", 0)]);
    for i in 0..k {
        let pair: Vec<PointRef> = [2 * i, 2 * i + 1].iter().map(|j| PointRef::new("C1", j.to_string())).collect();
        for p in &pair {
            c.mark("C1", &p.label);
        }
        c.identifications.push(IdentificationClass::new(pair));
    }
    c
}

fn section(name: &'static str, mut run: impl FnMut(&mut Vec<String>) -> Result<u64>) -> Result<Section> {
    let mut failures = Vec::new();
    let checks = run(&mut failures)?;
    Ok(Section { name, checks, failures })
}

fn curves(rng: &mut ChaCha8Rng, count: usize, failures: &mut Vec<String>) -> Result<u64> {
    let opts = RandomConfigOptions::default();
    for i in 0..count {
        let c = random_configuration(rng, &opts);
        let betti = c.dual_graph()?.betti() as u64;
        if c.delta()? != betti {
            failures.push(format!("config {i}: delta {} but Betti {betti}", c.delta()?));
        }
        let replayed = c.normalization().replay(&c.factorize()?)?;
        if replayed.canonical_classes() != c.canonical_classes() {
            failures.push(format!("config {i}: replay differs"));
        }
    }
    Ok(count as u64)
}

fn pro_p(rng: &mut ChaCha8Rng, count: usize, failures: &mut Vec<String>) -> Result<u64> {
    let opts = RandomConfigOptions {
        characteristic: 3,
        max_genus: 2,
        ..Default::default()
    };
    for i in 0..count {
        let c = random_configuration(rng, &opts);
        let expected = c.components.iter().map(|k| k.p_rank() as u64).sum::<u64>() + c.dual_graph()?.betti() as u64;
        let got = c.pro_p_rank()?;
        if got != expected {
            failures.push(format!("config {i}: pro-p rank {got}, expected {expected}"));
        }
    }
    Ok(count as u64)
}

/// Runs the oracle suites over catalog groups up to `max_order` and seeded
/// random configurations.
pub fn selftest(opts: &SelftestOptions) -> Result<SelftestReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let catalog = Catalog::embedded();
    let groups: Vec<_> = catalog
        .up_to_order(opts.max_order)
        .map(|e| Ok((e.name.clone(), e.group()?)))
        .collect::<Result<_>>()?;
    let mut sections = vec![
        section("curve-invariants", |f| curves(&mut rng, opts.random_configs, f))?,
        section("pro-p-rank", |f| pro_p(&mut rng, opts.random_configs, f))?,
    ];
    sections.push(section("eulerian", |f| {
        let mut checks = 0;
        for (name, g) in &groups {
            for k in 1..=2 {
                let (phi, exhaustive) = (g.eulerian(k)?, count_generating_tuples(g, k)?);
                if phi != exhaustive as i128 {
                    f.push(format!("{name}, k = {k}: {phi} vs {exhaustive}"));
                }
                checks += 1;
            }
        }
        Ok(checks)
    })?);
    let bases = [nodal_line(1), nodal_line(2)];
    sections.push(section("cover-count", |f| {
        let mut checks = 0;
        for (name, g) in &groups {
            for (k, base) in bases.iter().enumerate() {
                let count = enumerate_connected_covers(g, base)?.count;
                let phi = g.eulerian(k as u32 + 1)?;
                if count as i128 != phi {
                    f.push(format!("{name}, δ = {}: {count} covers vs {phi}", k + 1));
                }
                checks += 1;
            }
        }
        Ok(checks)
    })?);
    sections.push(section("gluing", |f| {
        let mut checks = 0;
        for (name, g) in &groups {
            let r = glue_properties(g)?;
            checks += (r.same_component_cases + r.two_component_cases) as u64;
            f.extend(r.failures.into_iter().map(|x| format!("{name}: {x}")));
        }
        Ok(checks)
    })?);
    sections.push(section("descent", |f| {
        let mut checks = 0;
        for (name, g) in &groups {
            for base in &bases {
                let r = cross_check_descent(g, base)?;
                checks += r.tuples as u64 + r.controls.len() as u64;
                if r.mismatches > 0 {
                    f.push(format!("{name}, δ = {}: {} mismatches", r.delta, r.mismatches));
                }
                for c in r.controls.iter().filter(|c| !c.rejected) {
                    f.push(format!("{name}, δ = {}: control {} gave {}, expected {}", r.delta, c.name, c.observed, c.expected));
                }
            }
        }
        Ok(checks)
    })?);
    let passed = sections.iter().all(|s| s.failures.is_empty());
    Ok(SelftestReport {
        seed: opts.seed,
        max_order: opts.max_order,
        sections,
        passed,
    })
}
