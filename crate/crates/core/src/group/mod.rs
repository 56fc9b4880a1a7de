//! Finite permutation groups and the computations every decision procedure
//! rests on: order, membership, normal closure, Sylow subgroups, p(G),
//! quotients, generator counts and the subgroup lattice.

mod chain;
pub mod catalog;
pub mod construct;
mod generators;
pub mod iso;
mod lattice;
mod perm;
mod quotient;
mod sylow;
mod table;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

pub use chain::StabilizerChain;
pub use generators::{GeneratorCount, GeneratorSearch, TG};
pub use lattice::SubgroupLattice;
pub use perm::{is_prime, Permutation};
pub use quotient::GroupHom;
pub use table::{CayleyTable, ElementSet};

use crate::error::{Error, Result};

/// Groups larger than this are never enumerated element by element.
pub const ELEMENT_BOUND: u128 = 1_000_000;

/// A finite group given by permutation generators on `{0, .., degree-1}`.
///
/// The stabilizer chain and the element table are computed on first use and
/// memoized; the memo fills are idempotent so shared references may be used
/// from several threads.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<Arc<StabilizerChain>>,
    table: OnceLock<Arc<ElementTable>>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermutationGroup {
            degree,
            generators,
            chain: OnceLock::new(),
            table: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::new(degree, Vec::new()).expect("no generators")
    }

    /// Convenience constructor from 1-indexed image arrays.
    pub fn from_images(degree: usize, generators: &[Vec<u32>]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|g| Permutation::from_one_indexed(g))
            .collect::<Result<Vec<_>>>()?;
        PermutationGroup::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| Arc::new(StabilizerChain::new(self.degree, &self.generators)))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_degree(g)?;
        Ok(self.chain().contains(g))
    }

    pub(crate) fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_member(&self, g: &Permutation) -> Result<()> {
        if !self.contains(g)? {
            return Err(Error::NotAMember(g.to_string()));
        }
        Ok(())
    }

    /// Indexed element list; fails for groups above [`ELEMENT_BOUND`].
    pub fn elements(&self) -> Result<Arc<ElementTable>> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        let order = self.order();
        if order > ELEMENT_BOUND {
            return Err(Error::GroupTooLarge {
                order,
                bound: ELEMENT_BOUND,
            });
        }
        let table = Arc::new(ElementTable::new(self.chain().elements()));
        Ok(self.table.get_or_init(|| table).clone())
    }

    /// The subgroup generated by `gens`, each of which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermutationGroup> {
        for g in &gens {
            self.check_member(g)?;
        }
        PermutationGroup::new(self.degree, gens)
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: other.degree,
                found: self.degree,
            });
        }
        for g in &self.generators {
            if !other.chain().contains(g) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as subsets of `Sym(degree)`.
    pub fn same_elements(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.generators.iter().all(|g| other.chain().contains(g))
    }

    /// `⟨self, extra⟩`.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermutationGroup> {
        let mut gens = self.generators.clone();
        for g in extra {
            self.check_degree(g)?;
            gens.push(g.clone());
        }
        PermutationGroup::new(self.degree, gens)
    }

    pub fn conjugate(&self, g: &Permutation) -> PermutationGroup {
        PermutationGroup::new(
            self.degree,
            self.generators.iter().map(|x| x.conjugate_by(g)).collect(),
        )
        .expect("same degree")
    }

    /// Smallest normal subgroup of `self` containing `set`.
    pub fn normal_closure(&self, set: &[Permutation]) -> Result<PermutationGroup> {
        for s in set {
            self.check_member(s)?;
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut queue: VecDeque<Permutation> = set.iter().filter(|s| !s.is_identity()).cloned().collect();
        let mut current = PermutationGroup::trivial(self.degree);
        while let Some(x) = queue.pop_front() {
            if current.chain().contains(&x) {
                continue;
            }
            gens.push(x.clone());
            current = PermutationGroup::new(self.degree, gens.clone())?;
            for g in &self.generators {
                queue.push_back(x.conjugate_by(g));
            }
        }
        Ok(current)
    }

    /// True when `sub` is a normal subgroup of `self`.
    pub fn is_normal(&self, sub: &PermutationGroup) -> Result<bool> {
        if !sub.is_subgroup_of(self)? {
            return Ok(false);
        }
        for g in &self.generators {
            for h in &sub.generators {
                if !sub.chain().contains(&h.conjugate_by(g)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Derived subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> Result<PermutationGroup> {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                comms.push(a.commutator(b));
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Normalizer of `sub` in `self`, by element enumeration.
    pub fn normalizer(&self, sub: &PermutationGroup) -> Result<PermutationGroup> {
        let elems = self.elements()?;
        let mut gens: Vec<Permutation> = sub.generators.clone();
        let mut current = PermutationGroup::new(self.degree, gens.clone())?;
        for g in elems.iter() {
            if current.chain().contains(g) {
                continue;
            }
            if sub
                .generators
                .iter()
                .all(|h| sub.chain().contains(&h.conjugate_by(g)))
            {
                gens.push(g.clone());
                current = PermutationGroup::new(self.degree, gens.clone())?;
            }
        }
        Ok(current)
    }

    /// Whether `self` is a p-group (the trivial group counts).
    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order();
        while n % p as u128 == 0 {
            n /= p as u128;
        }
        n == 1
    }

    /// Plain breadth-first closure of the generators, independent of the
    /// stabilizer chain. Used as a cross-check path.
    pub fn elements_by_closure(&self, bound: usize) -> Result<HashSet<Permutation>> {
        let id = self.identity();
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > bound {
                        return Err(Error::GroupTooLarge {
                            order: seen.len() as u128,
                            bound: bound as u128,
                        });
                    }
                    queue.push(y);
                }
            }
        }
        Ok(seen)
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> on {} points", self.degree)
    }
}

/// The group file format: `{"degree": 3, "generators": [[2,1,3],[2,3,1]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl From<&PermutationGroup> for GroupFile {
    fn from(g: &PermutationGroup) -> Self {
        GroupFile {
            degree: g.degree,
            generators: g.generators.iter().map(Permutation::one_indexed).collect(),
        }
    }
}

impl TryFrom<GroupFile> for PermutationGroup {
    type Error = Error;
    fn try_from(f: GroupFile) -> Result<Self> {
        PermutationGroup::from_images(f.degree, &f.generators)
    }
}

/// Sorted, indexed element list of a group. The identity is index 0 (it is
/// the lexicographically smallest image array).
#[derive(Debug)]
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: std::collections::HashMap<Permutation, u32>,
}

impl ElementTable {
    fn new(mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        ElementTable { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }

    pub fn as_slice(&self) -> &[Permutation] {
        &self.elements
    }

    /// Index permutation induced by left multiplication `λ ↦ c λ`.
    pub fn left_translation(&self, c: &Permutation) -> Vec<u32> {
        self.elements
            .iter()
            .map(|x| self.index[&c.compose(x)])
            .collect()
    }

    /// Index permutation induced by right multiplication `λ ↦ λ c`.
    pub fn right_translation(&self, c: &Permutation) -> Vec<u32> {
        self.elements
            .iter()
            .map(|x| self.index[&x.compose(c)])
            .collect()
    }
}
