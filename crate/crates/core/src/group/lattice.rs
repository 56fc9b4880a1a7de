use std::collections::HashSet;

use super::table::CayleyTable;
use super::{ElementSet, PermutationGroup};
use crate::error::{Error, Result};

/// Default order bound for lattice computations.
pub const LATTICE_BOUND: u128 = 200;

/// Every subgroup of a small group (up to equality, not conjugacy) together
/// with the Möbius function `μ(H, G)` of the subgroup lattice.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    degree: usize,
    table: CayleyTable,
    /// Sorted by order, then by member indices. The last entry is `G`.
    subgroups: Vec<ElementSet>,
    orders: Vec<usize>,
    moebius: Vec<i64>,
}

impl PermutationGroup {
    pub fn subgroup_lattice(&self) -> Result<SubgroupLattice> {
        self.subgroup_lattice_with_bound(LATTICE_BOUND)
    }

    /// All cyclic subgroups, then joins with cyclic subgroups until no new
    /// subgroup appears. Every subgroup is a join of cyclic ones, so this
    /// reaches the whole lattice.
    pub fn subgroup_lattice_with_bound(&self, bound: u128) -> Result<SubgroupLattice> {
        let order = self.order();
        if order > bound {
            return Err(Error::GroupTooLarge { order, bound });
        }
        let table = CayleyTable::new(self)?;
        let cyclic = table.cyclic_subgroups();

        let mut seen: HashSet<ElementSet> = HashSet::new();
        let mut all: Vec<(ElementSet, Vec<usize>)> = Vec::new();
        for (g, set) in &cyclic {
            if seen.insert(set.clone()) {
                let gens = if *g == 0 { vec![] } else { vec![*g] };
                all.push((set.clone(), gens));
            }
        }
        let mut frontier: Vec<usize> = (0..all.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &h in &frontier {
                for (g, cset) in &cyclic {
                    let (hset, hgens) = &all[h];
                    if cset.is_subset(hset) {
                        continue;
                    }
                    let joined = table.extend(hset, hgens, *g);
                    if seen.insert(joined.clone()) {
                        let mut gens = hgens.clone();
                        gens.push(*g);
                        all.push((joined, gens));
                        next.push(all.len() - 1);
                    }
                }
            }
            frontier = next;
        }

        let mut subgroups: Vec<ElementSet> = all.into_iter().map(|(s, _)| s).collect();
        subgroups.sort_by_cached_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        let orders: Vec<usize> = subgroups.iter().map(|s| s.count_ones(..)).collect();

        // μ(G, G) = 1 and μ(H, G) = -Σ_{H < K ≤ G} μ(K, G), from the top down.
        let m = subgroups.len();
        let mut moebius = vec![0i64; m];
        for i in (0..m).rev() {
            if i == m - 1 {
                moebius[i] = 1;
                continue;
            }
            let mut sum = 0;
            for j in i + 1..m {
                if orders[j] > orders[i] && subgroups[i].is_subset(&subgroups[j]) {
                    sum += moebius[j];
                }
            }
            moebius[i] = -sum;
        }
        Ok(SubgroupLattice {
            degree: self.degree(),
            table,
            subgroups,
            orders,
            moebius,
        })
    }

    /// `φ_k(G)`, the number of k-tuples generating `G`, via Möbius inversion.
    pub fn eulerian(&self, k: u32) -> Result<i128> {
        Ok(self.subgroup_lattice()?.eulerian(k))
    }
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn order(&self, i: usize) -> usize {
        self.orders[i]
    }

    pub fn set(&self, i: usize) -> &ElementSet {
        &self.subgroups[i]
    }

    pub fn subgroup(&self, i: usize) -> PermutationGroup {
        self.table.subgroup_to_group(&self.subgroups[i], self.degree)
    }

    pub fn subgroups(&self) -> Vec<PermutationGroup> {
        (0..self.len()).map(|i| self.subgroup(i)).collect()
    }

    /// Whether subgroup `i` is contained in subgroup `j`.
    pub fn is_contained(&self, i: usize, j: usize) -> bool {
        self.subgroups[i].is_subset(&self.subgroups[j])
    }

    pub fn moebius(&self, i: usize) -> i64 {
        self.moebius[i]
    }

    pub fn index_of(&self, group: &PermutationGroup) -> Result<usize> {
        let set = self.table.set_of(group)?;
        self.subgroups
            .iter()
            .position(|s| *s == set)
            .ok_or(Error::NotASubgroup)
    }

    pub fn eulerian(&self, k: u32) -> i128 {
        self.orders
            .iter()
            .zip(&self.moebius)
            .map(|(&h, &mu)| mu as i128 * (h as i128).pow(k))
            .sum()
    }
}
