use rand::Rng;

use crate::curve::{ComponentData, CurveConfiguration, IdentificationClass, PointRef};

#[derive(Debug, Clone)]
pub struct RandomConfigOptions {
    pub characteristic: u64,
    pub max_components: usize,
    /// Total classes, tree classes included; at least `max_components - 1`.
    pub max_classes: usize,
    pub max_genus: u32,
    /// Smooth points removed, spread over random components.
    pub removed: usize,
}

impl Default for RandomConfigOptions {
    fn default() -> Self {
        RandomConfigOptions {
            characteristic: 0,
            max_components: 6,
            max_classes: 6,
            max_genus: 0,
            removed: 0,
        }
    }
}

/// A connected seminormal configuration with classes of size 2 or 3. The
/// first `n - 1` classes join each component to an earlier one, so the
/// result is connected whatever follows.
pub fn random_configuration<R: Rng>(rng: &mut R, opts: &RandomConfigOptions) -> CurveConfiguration {
    let n = rng.gen_range(1..=opts.max_components.clamp(1, opts.max_classes + 1));
    let components = (0..n)
        .map(|i| {
            let genus = rng.gen_range(0..=opts.max_genus);
            let mut c = ComponentData::new(format!("C{}", i + 1), genus);
            if opts.characteristic > 0 && genus > 0 {
                c.p_rank = Some(rng.gen_range(0..=genus));
            }
            c
        })
        .collect();
    let mut config = CurveConfiguration::smooth(opts.characteristic, components);
    let mut next = vec![0usize; n];
    let mut fresh = |config: &mut CurveConfiguration, i: usize| {
        let id = format!("C{}", i + 1);
        let label = next[i].to_string();
        next[i] += 1;
        config.mark(&id, &label);
        PointRef::new(id, label)
    };

    let extra = rng.gen_range(0..=opts.max_classes - (n - 1));
    for k in 0..n - 1 + extra {
        let mut members = Vec::new();
        if k + 1 < n {
            members.push(k + 1);
            members.push(rng.gen_range(0..=k));
        } else {
            members.push(rng.gen_range(0..n));
            members.push(rng.gen_range(0..n));
        }
        if rng.gen_bool(0.3) {
            members.push(rng.gen_range(0..n));
        }
        let points = members.into_iter().map(|i| fresh(&mut config, i)).collect();
        config.identifications.push(IdentificationClass::new(points));
    }
    for r in 0..opts.removed {
        let i = rng.gen_range(0..n);
        let id = format!("C{}", i + 1);
        let label = format!("r{r}");
        config.mark(&id, &label);
        config.removed.push(PointRef::new(id, label));
    }
    config
}
