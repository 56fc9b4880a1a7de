use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::table::CayleyTable;
use super::{is_prime, ElementSet, PermutationGroup};
use crate::error::{Error, Result};

/// Knobs for the minimal-generator search.
#[derive(Debug, Clone)]
pub struct GeneratorSearch {
    /// Largest order for which the exact search runs.
    pub exhaustive_bound: u128,
    /// Seeded random tuples tried for each size before exhausting.
    pub random_budget: usize,
    pub seed: u64,
    /// Above the bound, return a flagged randomized upper bound instead of
    /// failing with `GROUP_TOO_LARGE`.
    pub allow_randomized: bool,
}

impl Default for GeneratorSearch {
    fn default() -> Self {
        GeneratorSearch {
            exhaustive_bound: 2000,
            random_budget: 32,
            seed: 0,
            allow_randomized: false,
        }
    }
}

/// Result of the generator search. `exact == false` marks a randomized
/// upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorCount {
    pub value: usize,
    pub exact: bool,
}

/// Nakajima's `t_G`: known only for p-groups, where it equals `d(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TG {
    Known(usize),
    Unknown,
}

impl PermutationGroup {
    /// `d(G)` with the default deterministic search.
    pub fn min_generators(&self) -> Result<usize> {
        Ok(self.min_generators_with(&GeneratorSearch::default())?.value)
    }

    pub fn min_generators_with(&self, search: &GeneratorSearch) -> Result<GeneratorCount> {
        let order = self.order();
        if order == 1 {
            return Ok(GeneratorCount { value: 0, exact: true });
        }
        if order > search.exhaustive_bound || order > super::table::CAYLEY_BOUND {
            if !search.allow_randomized {
                return Err(Error::GroupTooLarge {
                    order,
                    bound: search.exhaustive_bound,
                });
            }
            return Ok(GeneratorCount {
                value: self.randomized_generator_bound(search.seed),
                exact: false,
            });
        }
        let table = CayleyTable::new(self)?;
        Ok(GeneratorCount {
            value: minimal_generating_tuple(&table, search).len(),
            exact: true,
        })
    }

    /// Greedy random generating set, then drop redundant members.
    fn randomized_generator_bound(&self, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = self.order();
        let mut gens = Vec::new();
        let mut current = PermutationGroup::trivial(self.degree());
        while current.order() < target {
            let g = self.chain().random_element(&mut rng);
            if !current.chain().contains(&g) {
                gens.push(g);
                current = PermutationGroup::new(self.degree(), gens.clone()).expect("degree");
            }
        }
        let mut i = 0;
        while i < gens.len() {
            let mut rest = gens.clone();
            rest.remove(i);
            if PermutationGroup::new(self.degree(), rest.clone()).expect("degree").order() == target {
                gens = rest;
            } else {
                i += 1;
            }
        }
        gens.len()
    }

    /// `σ(G)`: rank of the largest elementary abelian p-quotient
    /// `G / [G,G] G^p`.
    pub fn abelianization_p_rank(&self, p: u64) -> Result<usize> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let gens = self.generators();
        let mut kernel_gens = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            kernel_gens.push(a.pow(p));
            for b in &gens[i + 1..] {
                kernel_gens.push(a.commutator(b));
            }
        }
        let frattini_p = self.normal_closure(&kernel_gens)?;
        let mut index = self.order() / frattini_p.order();
        let mut rank = 0;
        while index > 1 {
            debug_assert_eq!(index % p as u128, 0);
            index /= p as u128;
            rank += 1;
        }
        Ok(rank)
    }

    pub fn nakajima_tg(&self, p: u64) -> Result<TG> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.is_p_group(p) {
            Ok(TG::Known(self.min_generators()?))
        } else {
            Ok(TG::Unknown)
        }
    }
}

/// A generating tuple of minimal length, as element indices. Replacing an
/// element by another generator of its cyclic subgroup does not change what
/// a tuple generates, so one representative per cyclic subgroup suffices and
/// tuples may be taken as sets.
pub(crate) fn minimal_generating_tuple(table: &CayleyTable, search: &GeneratorSearch) -> Vec<usize> {
    let n = table.len();
    if n == 1 {
        return Vec::new();
    }
    let cyclic: Vec<(usize, ElementSet)> = table
        .cyclic_subgroups()
        .into_iter()
        .filter(|(g, _)| *g != 0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    for k in 1.. {
        for _ in 0..search.random_budget {
            let tuple: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            if table.is_full(&table.closure(&tuple)) {
                return tuple;
            }
        }
        let mut gens = Vec::with_capacity(k);
        if search_combinations(table, &cyclic, k, 0, &table.trivial_subgroup(), &mut gens) {
            return gens;
        }
    }
    unreachable!("the whole group generates itself")
}

fn search_combinations(
    table: &CayleyTable,
    cyclic: &[(usize, ElementSet)],
    remaining: usize,
    start: usize,
    current: &ElementSet,
    gens: &mut Vec<usize>,
) -> bool {
    if remaining == 0 {
        return table.is_full(current);
    }
    for i in start..cyclic.len() {
        let (rep, ref sub) = cyclic[i];
        if sub.is_subset(current) {
            continue;
        }
        let next = table.extend(current, gens, rep);
        gens.push(rep);
        let found = table.is_full(&next)
            || search_combinations(table, cyclic, remaining - 1, i + 1, &next, gens);
        if found {
            return true;
        }
        gens.pop();
    }
    false
}
