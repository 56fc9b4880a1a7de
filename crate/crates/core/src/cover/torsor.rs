use crate::error::{Error, Result};
use crate::group::{Permutation, PermutationGroup};

/// Bijection `α` between a fiber `{0, .., |G|-1}` and `G`, determined by a
/// simply transitive right action and a base point: `α(s0 · g) = g`. It
/// intertwines the action with right multiplication, `α(s · g) = α(s) g`.
#[derive(Debug, Clone)]
pub struct TorsorLabeling {
    group: PermutationGroup,
    base: usize,
    /// label index (element-table order) of each fiber point
    label: Vec<u32>,
    /// fiber point of each label index
    point: Vec<u32>,
}

impl TorsorLabeling {
    /// `action[i]` is the permutation of the fiber induced by the `i`-th
    /// generator of `group`, acting on the right: `s · g_i = action[i](s)`.
    pub fn new(group: &PermutationGroup, action: &[Permutation], base: usize) -> Result<Self> {
        let elements = group.elements()?;
        let n = elements.len();
        if action.len() != group.generators().len() {
            return Err(Error::NotSimplyTransitive(format!(
                "{} action generators for {} group generators",
                action.len(),
                group.generators().len()
            )));
        }
        for a in action {
            if a.degree() != n {
                return Err(Error::NotSimplyTransitive(format!("fiber has {} points, group has order {n}", a.degree())));
            }
        }
        if base >= n {
            return Err(Error::NotSimplyTransitive(format!("base point {base} outside the fiber")));
        }
        let rights: Vec<Vec<u32>> = group.generators().iter().map(|g| elements.right_translation(g)).collect();
        let mut label = vec![u32::MAX; n];
        label[base] = 0;
        let mut queue = vec![base];
        let mut head = 0;
        while head < queue.len() {
            let s = queue[head];
            head += 1;
            for (a, r) in action.iter().zip(&rights) {
                let t = a.apply(s);
                let want = r[label[s] as usize];
                if label[t] == u32::MAX {
                    label[t] = want;
                    queue.push(t);
                } else if label[t] != want {
                    return Err(Error::NotSimplyTransitive(format!("point {t} receives two labels")));
                }
            }
        }
        if queue.len() != n {
            return Err(Error::NotSimplyTransitive("action is not transitive".into()));
        }
        let mut point = vec![u32::MAX; n];
        for (s, &l) in label.iter().enumerate() {
            if point[l as usize] != u32::MAX {
                return Err(Error::NotSimplyTransitive("two points share a label".into()));
            }
            point[l as usize] = s as u32;
        }
        Ok(TorsorLabeling {
            group: group.clone(),
            base,
            label,
            point,
        })
    }

    /// The right regular action: the fiber is the element table itself and
    /// `s · g` is `s g`.
    pub fn regular(group: &PermutationGroup, base: usize) -> Result<Self> {
        let elements = group.elements()?;
        let action = group
            .generators()
            .iter()
            .map(|g| Permutation::from_images(elements.right_translation(g)))
            .collect::<Result<Vec<_>>>()?;
        TorsorLabeling::new(group, &action, base)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    pub fn label_index(&self, s: usize) -> usize {
        self.label[s] as usize
    }

    pub fn label(&self, s: usize) -> Permutation {
        self.group.elements().expect("enumerated").get(self.label[s] as usize).clone()
    }

    /// `α^{-1}(g)`.
    pub fn point(&self, g: &Permutation) -> Result<usize> {
        let i = self
            .group
            .elements()?
            .index_of(g)
            .ok_or_else(|| Error::NotAMember(g.to_string()))?;
        Ok(self.point[i] as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct::{cyclic, symmetric};

    #[test]
    fn two_point_fiber() {
        let g = cyclic(2);
        let swap = Permutation::from_cycles(2, &[&[1, 2]]).unwrap();
        let a = TorsorLabeling::new(&g, &[swap.clone()], 0).unwrap();
        assert!(a.label(0).is_identity());
        assert_eq!(a.label(1), swap);
    }

    #[test]
    fn rebasing_is_a_left_translation() {
        let g = symmetric(3);
        let el = g.elements().unwrap();
        let a = TorsorLabeling::regular(&g, 0).unwrap();
        for b in 0..6 {
            let a2 = TorsorLabeling::regular(&g, b).unwrap();
            let shift = a.label(b).inverse();
            for s in 0..6 {
                assert_eq!(a2.label(s), shift.compose(&a.label(s)));
            }
            assert_eq!(a2.point(&g.identity()).unwrap(), b);
        }
        // regular labeling with base e reproduces the element table
        for s in 0..6 {
            assert_eq!(&a.label(s), el.get(s));
        }
    }

    #[test]
    fn correspondence_both_ways() {
        // torsor -> labeling -> torsor reproduces the action
        let g = symmetric(3);
        let el = g.elements().unwrap();
        // a fiber labelled by a scrambled copy of the element table
        let scramble = Permutation::from_images(vec![3, 5, 0, 1, 4, 2]).unwrap();
        let action: Vec<Permutation> = g
            .generators()
            .iter()
            .map(|gen| {
                let r = el.right_translation(gen);
                let images = (0..6).map(|s| scramble.apply(r[scramble.inverse().apply(s)] as usize) as u32).collect();
                Permutation::from_images(images).unwrap()
            })
            .collect();
        let base = scramble.apply(0);
        let a = TorsorLabeling::new(&g, &action, base).unwrap();
        for s in 0..6 {
            for (i, gen) in g.generators().iter().enumerate() {
                assert_eq!(a.label(action[i].apply(s)), a.label(s).compose(gen));
            }
            assert_eq!(a.point(&a.label(s)).unwrap(), s);
        }
    }

    #[test]
    fn rejects_non_torsors() {
        let g = cyclic(2);
        let id = Permutation::identity(2);
        assert!(matches!(TorsorLabeling::new(&g, &[id], 0), Err(Error::NotSimplyTransitive(_))));
        let three = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert!(TorsorLabeling::new(&g, &[three], 0).is_err());
    }
}
