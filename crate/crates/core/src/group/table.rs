use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{ElementTable, PermutationGroup};
use crate::error::{Error, Result};

/// Subsets of a group, indexed through its [`ElementTable`].
pub type ElementSet = FixedBitSet;

/// Groups above this order never get a multiplication table.
pub const CAYLEY_BOUND: u128 = 4096;

/// Multiplication table of a small group over the sorted element indices.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    n: usize,
    elements: Arc<ElementTable>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
}

impl CayleyTable {
    pub fn new(group: &PermutationGroup) -> Result<Self> {
        let order = group.order();
        if order > CAYLEY_BOUND {
            return Err(Error::GroupTooLarge {
                order,
                bound: CAYLEY_BOUND,
            });
        }
        let elements = group.elements()?;
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            let row = elements.left_translation(elements.get(a));
            mul[a * n..(a + 1) * n].copy_from_slice(&row);
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = elements
                .index_of(&elements.get(a).inverse())
                .expect("closed under inverse") as u32;
        }
        let orders = (0..n).map(|a| elements.get(a).order() as u32).collect();
        Ok(CayleyTable {
            n,
            elements,
            mul,
            inv,
            orders,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> &ElementTable {
        &self.elements
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn empty_set(&self) -> ElementSet {
        FixedBitSet::with_capacity(self.n)
    }

    pub fn trivial_subgroup(&self) -> ElementSet {
        let mut s = self.empty_set();
        s.insert(0);
        s
    }

    pub fn full_set(&self) -> ElementSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> ElementSet {
        let mut set = self.trivial_subgroup();
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Subgroup generated by an existing subgroup (with its generators) and
    /// one more element.
    pub fn extend(&self, sub: &ElementSet, sub_gens: &[usize], g: usize) -> ElementSet {
        if sub.contains(g) {
            return sub.clone();
        }
        let mut set = sub.clone();
        let mut queue: Vec<usize> = sub.ones().collect();
        while let Some(x) = queue.pop() {
            for &s in sub_gens.iter().chain(std::iter::once(&g)) {
                let y = self.mul(x, s);
                if !set.put(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    pub fn cyclic(&self, a: usize) -> ElementSet {
        let mut set = self.trivial_subgroup();
        let mut x = a;
        while x != 0 {
            set.insert(x);
            x = self.mul(x, a);
        }
        set
    }

    /// Distinct cyclic subgroups with a generator of each, sorted by
    /// decreasing order and then by generator index.
    pub fn cyclic_subgroups(&self) -> Vec<(usize, ElementSet)> {
        let mut seen: std::collections::HashSet<ElementSet> = std::collections::HashSet::new();
        let mut out = Vec::new();
        for a in 0..self.n {
            let c = self.cyclic(a);
            if seen.insert(c.clone()) {
                out.push((a, c));
            }
        }
        out.sort_by(|(a, x), (b, y)| y.count_ones(..).cmp(&x.count_ones(..)).then(a.cmp(b)));
        out
    }

    /// A generating tuple of minimal length, as element indices.
    pub fn minimal_generating_tuple(&self) -> Vec<usize> {
        super::generators::minimal_generating_tuple(self, &super::GeneratorSearch::default())
    }

    pub fn is_full(&self, set: &ElementSet) -> bool {
        set.count_ones(..) == self.n
    }

    /// Generators of a subgroup given as an element set: greedy extension
    /// by the smallest missing element.
    pub fn generators_of(&self, sub: &ElementSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for x in sub.ones() {
            if !current.contains(x) {
                current = self.extend(&current, &gens, x);
                gens.push(x);
            }
        }
        gens
    }

    pub fn subgroup_to_group(&self, sub: &ElementSet, degree: usize) -> PermutationGroup {
        let gens = self
            .generators_of(sub)
            .into_iter()
            .map(|i| self.elements.get(i).clone())
            .collect();
        PermutationGroup::new(degree, gens).expect("same degree")
    }

    pub fn set_of(&self, group: &PermutationGroup) -> Result<ElementSet> {
        let gens = group
            .generators()
            .iter()
            .map(|g| {
                self.elements
                    .index_of(g)
                    .ok_or_else(|| Error::NotAMember(g.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&gens))
    }
}
