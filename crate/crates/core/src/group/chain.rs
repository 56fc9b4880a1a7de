//! Base and strong generating set via the deterministic Schreier–Sims
//! algorithm. Base points are chosen as the smallest point moved by the
//! first generator that fixes the current base.

use std::collections::VecDeque;

use super::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[β]` maps the base point to `β`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut level = Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut queue = VecDeque::from([self.base_point]);
        while let Some(beta) = queue.pop_front() {
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = s.compose(self.transversal[beta].as_ref().expect("orbit point"));
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                    queue.push_back(gamma);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.smallest_moved_point().expect("non-identity"));
            }
        }
        let mut levels: Vec<Level> = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let mut level = Level::new(b, degree);
                level.gens = gens
                    .iter()
                    .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                    .cloned()
                    .collect();
                level.rebuild_orbit(degree);
                level
            })
            .collect();

        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        if levels.is_empty() {
            return chain;
        }

        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart: Option<usize> = None;
            let orbit = levels[lvl].orbit.clone();
            let level_gens = levels[lvl].gens.clone();
            'scan: for &beta in &orbit {
                for s in &level_gens {
                    let gamma = s.apply(beta);
                    let u_beta = levels[lvl].transversal[beta].as_ref().expect("orbit");
                    let u_gamma = levels[lvl].transversal[gamma].as_ref().expect("orbit");
                    let schreier = u_gamma.inverse().compose(s).compose(u_beta);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, j) = sift_levels(&levels, schreier, lvl + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if j == levels.len() {
                        let b = residue.smallest_moved_point().expect("non-identity");
                        levels.push(Level::new(b, degree));
                    }
                    for level in &mut levels[lvl + 1..=j] {
                        level.gens.push(residue.clone());
                        level.rebuild_orbit(degree);
                    }
                    restart = Some(j);
                    break 'scan;
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        chain.levels = levels;
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, j) = sift_levels(&self.levels, g.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }

    /// Uniformly random element: a random transversal element per level.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in &self.levels {
            let beta = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.compose(level.transversal[beta].as_ref().expect("orbit"));
        }
        g
    }

    /// All elements, as products of transversal elements, level by level.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for &beta in &level.orbit {
                let u = level.transversal[beta].as_ref().expect("orbit");
                for g in &acc {
                    next.push(u.compose(g));
                }
            }
            acc = next;
        }
        acc
    }
}

fn sift_levels(levels: &[Level], mut h: Permutation, from: usize) -> (Permutation, usize) {
    for (l, level) in levels.iter().enumerate().skip(from) {
        let beta = h.apply(level.base_point);
        match &level.transversal[beta] {
            None => return (h, l),
            Some(u) => h = u.inverse().compose(&h),
        }
    }
    (h, levels.len())
}
