//! Standard families of permutation groups.

use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (k, &p) in pts.iter().enumerate() {
        images[p] = pts[(k + 1) % pts.len()] as u32;
    }
    Permutation::from_images(images).expect("cycle is a bijection")
}

/// `C_n` acting regularly on `n` points. `C_1` has degree 1.
pub fn cyclic(n: usize) -> PermutationGroup {
    assert!(n >= 1);
    PermutationGroup::new(n, vec![cycle(n, 0..n)]).expect("degree")
}

/// `D_n` of order `2n`: the symmetries of an `n`-gon for `n ≥ 3`, the Klein
/// group on 4 points for `n = 2`, and `C_2` for `n = 1`.
pub fn dihedral(n: usize) -> PermutationGroup {
    match n {
        0 => panic!("dihedral(0)"),
        1 => cyclic(2),
        2 => PermutationGroup::new(4, vec![cycle(4, [0, 1]), cycle(4, [2, 3])]).expect("degree"),
        _ => {
            let rot = cycle(n, 0..n);
            let refl = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())
                .expect("reflection");
            PermutationGroup::new(n, vec![rot, refl]).expect("degree")
        }
    }
}

pub fn symmetric(n: usize) -> PermutationGroup {
    assert!(n >= 1);
    if n == 1 {
        return PermutationGroup::trivial(1);
    }
    PermutationGroup::new(n, vec![cycle(n, [0, 1]), cycle(n, 0..n)]).expect("degree")
}

/// `A_n`, generated by the 3-cycles `(1 2 k)`.
pub fn alternating(n: usize) -> PermutationGroup {
    assert!(n >= 1);
    let gens = (2..n).map(|k| cycle(n, [0, 1, k])).collect();
    PermutationGroup::new(n, gens).expect("degree")
}

/// `A × B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermutationGroup, b: &PermutationGroup) -> PermutationGroup {
    let (da, db) = (a.degree(), b.degree());
    let shift = |g: &Permutation, offset: usize, own: usize| {
        let mut images: Vec<u32> = (0..(da + db) as u32).collect();
        for i in 0..own {
            images[offset + i] = (offset + g.apply(i)) as u32;
        }
        Permutation::from_images(images).expect("bijection")
    };
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| shift(g, 0, da)).collect();
    gens.extend(b.generators().iter().map(|g| shift(g, da, db)));
    PermutationGroup::new(da + db, gens).expect("degree")
}

/// Left regular representation of a group given by its multiplication
/// table on `0..n` with identity `0`. Only the listed generators are used
/// (all elements when `generators` is empty).
pub fn from_multiplication_table(mul: &[Vec<usize>], generators: &[usize]) -> Result<PermutationGroup> {
    let n = mul.len();
    if n == 0 || mul.iter().any(|row| row.len() != n) {
        return Err(Error::Parse("multiplication table must be square".into()));
    }
    if (0..n).any(|x| mul[0][x] != x || mul[x][0] != x) {
        return Err(Error::Parse("element 0 must be the identity".into()));
    }
    let chosen: Vec<usize> = if generators.is_empty() {
        (1..n).collect()
    } else {
        generators.to_vec()
    };
    let gens = chosen
        .iter()
        .map(|&g| Permutation::from_images(mul[g].iter().map(|&x| x as u32).collect()))
        .collect::<Result<Vec<_>>>()?;
    let group = PermutationGroup::new(n, gens)?;
    if group.order() != n as u128 {
        return Err(Error::Parse("table is not a group table or generators do not generate".into()));
    }
    Ok(group)
}

/// Dicyclic group `Dic_n = <a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>` of
/// order `4n`, in its regular representation. `Dic_2` is `Q8`.
pub fn dicyclic(n: usize) -> PermutationGroup {
    assert!(n >= 1);
    let m = 2 * n;
    // element a^i x^j has index j*m + i
    let idx = |i: usize, j: usize| j * m + i % m;
    let mut mul = vec![vec![0; 2 * m]; 2 * m];
    for j1 in 0..2 {
        for i1 in 0..m {
            for j2 in 0..2 {
                for i2 in 0..m {
                    let prod = match (j1, j2) {
                        (0, _) => idx(i1 + i2, j2),
                        (1, 0) => idx(i1 + m - i2, 1),
                        _ => idx(i1 + m - i2 + n, 0),
                    };
                    mul[idx(i1, j1)][idx(i2, j2)] = prod;
                }
            }
        }
    }
    from_multiplication_table(&mul, &[idx(1, 0), idx(0, 1)]).expect("dicyclic table")
}

pub fn quaternion() -> PermutationGroup {
    dicyclic(2)
}
