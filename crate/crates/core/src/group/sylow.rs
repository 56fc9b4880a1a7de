use super::{is_prime, Permutation, PermutationGroup};
use crate::error::{Error, Result};

/// Largest power of `p` dividing `n`.
pub(crate) fn p_part(mut n: u128, p: u64) -> u128 {
    let mut out = 1;
    while n % p as u128 == 0 {
        n /= p as u128;
        out *= p as u128;
    }
    out
}

impl PermutationGroup {
    /// A Sylow p-subgroup, built as an ascending chain of p-subgroups: each
    /// step adjoins an element of the normalizer whose coset has order p.
    pub fn sylow_subgroup(&self, p: u64) -> Result<PermutationGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let target = p_part(self.order(), p);
        let mut sylow = PermutationGroup::trivial(self.degree());
        if target == 1 {
            return Ok(sylow);
        }
        let elems = self.elements()?;
        // Seed with the p-power part of an element of maximal p-power order.
        let seed = elems
            .iter()
            .map(|g| p_power_part(g, p))
            .max_by_key(|g| (g.order(), std::cmp::Reverse(g.clone())))
            .expect("nonempty");
        if !seed.is_identity() {
            sylow = PermutationGroup::new(self.degree(), vec![seed])?;
        }
        while sylow.order() < target {
            let normalizer = self.normalizer(&sylow)?;
            let n_elems = normalizer.elements()?;
            let mut extension = None;
            for g in n_elems.iter() {
                if sylow.chain().contains(g) {
                    continue;
                }
                // order of g modulo the current p-subgroup
                let mut m = 1u64;
                let mut x = g.clone();
                while !sylow.chain().contains(&x) {
                    x = x.compose(g);
                    m += 1;
                }
                if m % p == 0 {
                    extension = Some(g.pow(m / p));
                    break;
                }
            }
            let h = extension.expect("Cauchy: p divides [N(P):P] while P is not Sylow");
            sylow = sylow.join(&[h])?;
        }
        Ok(sylow)
    }

    /// `p(G)`: the subgroup generated by all Sylow p-subgroups, i.e. the
    /// normal closure of one of them. `p = 0` gives the trivial group.
    pub fn quasi_p_part(&self, p: u64) -> Result<PermutationGroup> {
        if p == 0 {
            return Ok(PermutationGroup::trivial(self.degree()));
        }
        let sylow = self.sylow_subgroup(p)?;
        self.normal_closure(sylow.generators())
    }

    pub fn is_quasi_p(&self, p: u64) -> Result<bool> {
        Ok(self.quasi_p_part(p)?.order() == self.order())
    }
}

/// The p-power part of `g` in its cyclic group: `g^(o / p-part(o))`.
fn p_power_part(g: &Permutation, p: u64) -> Permutation {
    let o = g.order();
    let pp = p_part(o as u128, p) as u64;
    g.pow(o / pp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermutationGroup {
        let t = Permutation::from_cycles(n, &[&[1, 2]]).unwrap();
        let cyc: Vec<u32> = (1..=n as u32).collect();
        let c = Permutation::from_cycles(n, &[&cyc]).unwrap();
        PermutationGroup::new(n, vec![t, c]).unwrap()
    }

    #[test]
    fn sylow_orders() {
        let s3 = sym(3);
        let p3 = s3.sylow_subgroup(3).unwrap();
        assert_eq!(p3.order(), 3);
        assert!(p3.contains(&Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap()).unwrap());

        let s4 = sym(4);
        let p2 = s4.sylow_subgroup(2).unwrap();
        assert_eq!(p2.order(), 8);
        // every element is a 2-element
        for g in p2.elements().unwrap().iter() {
            assert!(g.order().is_power_of_two());
        }

        let c5 = PermutationGroup::new(5, vec![Permutation::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap()]).unwrap();
        assert_eq!(c5.sylow_subgroup(3).unwrap().order(), 1);
        assert!(matches!(c5.sylow_subgroup(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn quasi_p_parts() {
        let s3 = sym(3);
        let p3 = s3.quasi_p_part(3).unwrap();
        assert_eq!(p3.order(), 3);
        assert!(s3.is_normal(&p3).unwrap());
        assert!(s3.quasi_p_part(2).unwrap().same_elements(&s3));
        let c3 = PermutationGroup::new(3, vec![Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap()]).unwrap();
        assert_eq!(c3.quasi_p_part(2).unwrap().order(), 1);
        assert_eq!(s3.quasi_p_part(0).unwrap().order(), 1);
    }

    #[test]
    fn sylow_in_a5() {
        let a = Permutation::from_cycles(5, &[&[1, 2, 3]]).unwrap();
        let b = Permutation::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap();
        let a5 = PermutationGroup::new(5, vec![a, b]).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(a5.sylow_subgroup(2).unwrap().order(), 4);
        assert_eq!(a5.sylow_subgroup(3).unwrap().order(), 3);
        assert_eq!(a5.sylow_subgroup(5).unwrap().order(), 5);
        assert!(a5.is_quasi_p(2).unwrap());
        assert!(a5.is_quasi_p(5).unwrap());
    }
}
