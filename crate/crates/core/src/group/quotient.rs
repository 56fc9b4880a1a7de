use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};

/// The quotient map `G → G/N`, with `G/N` realized as the permutation
/// action of `G` on the left cosets of `N`.
#[derive(Debug, Clone)]
pub struct GroupHom {
    source: PermutationGroup,
    kernel: PermutationGroup,
    image: PermutationGroup,
    /// coset index of each source element (indexed like the element table)
    coset_of: Vec<u32>,
    representatives: Vec<Permutation>,
}

impl GroupHom {
    pub fn source(&self) -> &PermutationGroup {
        &self.source
    }

    pub fn kernel(&self) -> &PermutationGroup {
        &self.kernel
    }

    pub fn image(&self) -> &PermutationGroup {
        &self.image
    }

    /// Coset representatives, smallest element of each coset, in index order.
    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn coset_index(&self, g: &Permutation) -> Result<usize> {
        let table = self.source.elements()?;
        let i = table
            .index_of(g)
            .ok_or_else(|| Error::NotAMember(g.to_string()))?;
        Ok(self.coset_of[i] as usize)
    }

    /// Image of `g`: the permutation `xN ↦ gxN` of the coset indices.
    pub fn map(&self, g: &Permutation) -> Result<Permutation> {
        self.source.check_member(g)?;
        let images = self
            .representatives
            .iter()
            .map(|r| self.coset_index(&g.compose(r)).map(|c| c as u32))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    /// Checks `map(ab) = map(a) map(b)` on every ordered pair of generators.
    pub fn is_homomorphism_on_generators(&self) -> Result<bool> {
        let gens = self.source.generators();
        for a in gens {
            for b in gens {
                if self.map(&a.compose(b))? != self.map(a)?.compose(&self.map(b)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl PermutationGroup {
    pub fn quotient(&self, normal: &PermutationGroup) -> Result<GroupHom> {
        if !self.is_normal(normal)? {
            return Err(Error::NotNormal);
        }
        let table = self.elements()?;
        let kernel_elems = normal.elements()?;
        let mut coset_of = vec![u32::MAX; table.len()];
        let mut representatives = Vec::new();
        for (i, x) in table.iter().enumerate() {
            if coset_of[i] != u32::MAX {
                continue;
            }
            let c = representatives.len() as u32;
            representatives.push(x.clone());
            for n in kernel_elems.iter() {
                let j = table.index_of(&x.compose(n)).expect("closed");
                coset_of[j] = c;
            }
        }
        let index = representatives.len();
        let mut hom = GroupHom {
            source: self.clone(),
            kernel: normal.clone(),
            image: PermutationGroup::trivial(index),
            coset_of,
            representatives,
        };
        let image_gens = self
            .generators()
            .iter()
            .map(|g| hom.map(g))
            .collect::<Result<Vec<_>>>()?;
        hom.image = PermutationGroup::new(index, image_gens)?;
        Ok(hom)
    }
}
