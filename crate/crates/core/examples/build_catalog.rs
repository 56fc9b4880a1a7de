//! Regenerates `data/catalog.json`: every group of order at most 24 up to
//! isomorphism, plus `A5`.
//!
//! Candidates come from named families, direct products and all semidirect
//! products `N:K` with `|N| <= 12`; duplicates are removed with an explicit
//! isomorphism test. The per-order counts are checked against the known
//! numbers before anything is written.
//!
//! Usage: `cargo run -p pi1-core --release --example build_catalog [out.json]`

use std::collections::HashSet;

use pi1_core::group::catalog::{Catalog, CatalogEntry};
use pi1_core::group::construct::{alternating, cyclic, dicyclic, dihedral, direct_product, from_multiplication_table, symmetric};
use pi1_core::group::iso::{automorphisms, find_isomorphism, fingerprint};
use pi1_core::group::{CayleyTable, Permutation, PermutationGroup};

const MAX_ORDER: usize = 24;
/// Number of groups of each order 1..=24.
const KNOWN_COUNTS: [usize; 24] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

struct Entry {
    name: String,
    aliases: Vec<String>,
    group: PermutationGroup,
    table: CayleyTable,
    fingerprint: Vec<(usize, usize)>,
}

#[derive(Default)]
struct Registry {
    entries: Vec<Entry>,
    names: HashSet<String>,
}

impl Registry {
    /// Adds the group unless an isomorphic one is present; in that case a
    /// flat direct-product name becomes an alias when it is still free.
    /// Semidirect names depend on the action and never become aliases.
    fn offer(&mut self, name: &str, group: PermutationGroup) -> bool {
        let table = CayleyTable::new(&group).expect("small group");
        let fp = fingerprint(&table);
        for e in &mut self.entries {
            if e.fingerprint == fp && find_isomorphism(&e.table, &table).is_some() {
                if !name.contains(['(', ':']) && self.names.insert(name.to_string()) {
                    e.aliases.push(name.to_string());
                }
                return false;
            }
        }
        let mut unique = name.to_string();
        let mut k = 2;
        while self.names.contains(&unique) {
            unique = format!("{name}_{k}");
            k += 1;
        }
        self.names.insert(unique.clone());
        self.entries.push(Entry {
            name: unique,
            aliases: Vec::new(),
            group,
            table,
            fingerprint: fp,
        });
        true
    }
}

fn wrap(name: &str) -> String {
    if name.contains(['x', ':']) {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// `SL(2,3)` acting on the eight nonzero vectors of `F_3^2`.
fn sl23() -> PermutationGroup {
    let vectors: Vec<(u32, u32)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[u32; 2]; 2]| {
        let images = vectors
            .iter()
            .map(|&(x, y)| {
                let w = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
                vectors.iter().position(|&v| v == w).unwrap() as u32
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    PermutationGroup::new(8, vec![act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]])]).unwrap()
}

/// `C_m : C_k` with the generator of `C_k` acting by `a -> a^r`.
fn metacyclic(m: usize, k: usize, r: usize) -> PermutationGroup {
    let idx = |i: usize, j: usize| j * m + i % m;
    let pow_r: Vec<usize> = (0..k).scan(1, |acc, _| {
        let cur = *acc;
        *acc = *acc * r % m;
        Some(cur)
    }).collect();
    let mut mul = vec![vec![0; m * k]; m * k];
    for j1 in 0..k {
        for i1 in 0..m {
            for j2 in 0..k {
                for i2 in 0..m {
                    mul[idx(i1, j1)][idx(i2, j2)] = idx(i1 + i2 * pow_r[j1], (j1 + j2) % k);
                }
            }
        }
    }
    from_multiplication_table(&mul, &[idx(1, 0), idx(0, 1)]).expect("metacyclic table")
}

/// Abelian groups of order `n` by invariant factors `d_1 | d_2 | ...`,
/// listed largest first.
fn invariant_factors(n: usize, divisor_of: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for d in (2..=n).filter(|d| n % d == 0 && divisor_of % d == 0) {
        for mut rest in invariant_factors(n / d, d) {
            // rest holds factors dividing d, largest first
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

fn semidirect(n: &CayleyTable, k: &CayleyTable, action: &[Vec<usize>]) -> PermutationGroup {
    let (a, b) = (n.len(), k.len());
    let idx = |x: usize, y: usize| y * a + x;
    let mut mul = vec![vec![0; a * b]; a * b];
    for y1 in 0..b {
        for x1 in 0..a {
            for y2 in 0..b {
                for x2 in 0..a {
                    mul[idx(x1, y1)][idx(x2, y2)] = idx(n.mul(x1, action[y1][x2]), k.mul(y1, y2));
                }
            }
        }
    }
    let mut gens: Vec<usize> = n.minimal_generating_tuple().into_iter().map(|x| idx(x, 0)).collect();
    gens.extend(k.minimal_generating_tuple().into_iter().map(|y| idx(0, y)));
    from_multiplication_table(&mul, &gens).expect("semidirect product table")
}

/// Homomorphisms `K -> Aut(N)`, each as the list of automorphisms indexed by
/// the elements of `K`.
fn actions(k: &CayleyTable, auts: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let gens = k.minimal_generating_tuple();
    let compose = |f: &[usize], g: &[usize]| g.iter().map(|&x| f[x]).collect::<Vec<usize>>();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let identity: Vec<usize> = (0..auts[0].len()).collect();
        let mut phi: Vec<Option<Vec<usize>>> = vec![None; k.len()];
        phi[0] = Some(identity);
        let mut queue = vec![0usize];
        let mut head = 0;
        let mut ok = true;
        while head < queue.len() && ok {
            let x = queue[head];
            head += 1;
            for (i, &g) in gens.iter().enumerate() {
                let y = k.mul(x, g);
                let img = compose(phi[x].as_ref().unwrap(), &auts[choice[i]]);
                match &phi[y] {
                    None => {
                        phi[y] = Some(img);
                        queue.push(y);
                    }
                    Some(existing) if *existing != img => {
                        ok = false;
                        break;
                    }
                    _ => {}
                }
            }
        }
        if ok {
            out.push(phi.into_iter().map(Option::unwrap).collect());
        }
        // the all-identity choice comes first since `auts[0]` is the identity
        let mut i = 0;
        loop {
            if i == choice.len() {
                break 'outer;
            }
            choice[i] += 1;
            if choice[i] < auts.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
    out
}

fn main() {
    let out_path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog.json").to_string());
    let mut reg = Registry::default();

    for n in 1..=MAX_ORDER {
        reg.offer(&format!("C{n}"), cyclic(n));
    }
    for n in 2..=MAX_ORDER {
        for factors in invariant_factors(n, n) {
            if factors.len() < 2 {
                continue;
            }
            let name = factors.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x");
            let g = factors[1..].iter().fold(cyclic(factors[0]), |acc, &d| direct_product(&acc, &cyclic(d)));
            reg.offer(&name, g);
        }
    }
    reg.offer("V4", dihedral(2));
    reg.offer("D2", dihedral(2));
    reg.offer("S3", symmetric(3));
    for n in 3..=12 {
        reg.offer(&format!("D{n}"), dihedral(n));
    }
    reg.offer("Q8", dicyclic(2));
    reg.offer("Dic3", dicyclic(3));
    reg.offer("Q16", dicyclic(4));
    reg.offer("Dic4", dicyclic(4));
    reg.offer("Dic5", dicyclic(5));
    reg.offer("Dic6", dicyclic(6));
    reg.offer("A4", alternating(4));
    reg.offer("S4", symmetric(4));
    reg.offer("SL(2,3)", sl23());
    reg.offer("SD16", metacyclic(8, 2, 3));
    reg.offer("M16", metacyclic(8, 2, 5));
    reg.offer("F20", metacyclic(5, 4, 2));
    reg.offer("F21", metacyclic(7, 3, 2));

    // direct products and semidirect products until nothing new appears
    loop {
        let before = reg.entries.len();
        let snapshot: Vec<(String, PermutationGroup, CayleyTable)> = reg
            .entries
            .iter()
            .map(|e| (e.name.clone(), e.group.clone(), e.table.clone()))
            .collect();
        for (i, (na, ga, _)) in snapshot.iter().enumerate() {
            for (nb, gb, _) in &snapshot[i..] {
                let order = ga.order() * gb.order();
                if ga.order() > 1 && gb.order() > 1 && order <= MAX_ORDER as u128 {
                    reg.offer(&format!("{}x{}", wrap(na), wrap(nb)), direct_product(ga, gb));
                }
            }
        }
        for (nn, gn, tn) in &snapshot {
            if gn.order() < 2 || gn.order() > 12 {
                continue;
            }
            let auts = automorphisms(tn);
            for (nk, gk, tk) in &snapshot {
                if gk.order() < 2 || gn.order() * gk.order() > MAX_ORDER as u128 {
                    continue;
                }
                // trivial actions give direct products, offered above
                for action in actions(tk, &auts).into_iter().skip(1) {
                    reg.offer(&format!("{}:{}", wrap(nn), wrap(nk)), semidirect(tn, tk, &action));
                }
            }
        }
        if reg.entries.len() == before {
            break;
        }
    }
    reg.offer("A5", alternating(5));

    let mut counts = [0usize; MAX_ORDER];
    for e in &reg.entries {
        let o = e.group.order() as usize;
        if o <= MAX_ORDER {
            counts[o - 1] += 1;
        }
    }
    assert_eq!(counts, KNOWN_COUNTS, "per-order counts differ from the known numbers");

    let mut entries: Vec<&Entry> = reg.entries.iter().collect();
    entries.sort_by_key(|e| e.group.order());
    let catalog = Catalog {
        groups: entries
            .iter()
            .map(|e| CatalogEntry {
                name: e.name.clone(),
                aliases: e.aliases.clone(),
                order: e.group.order() as u64,
                degree: e.group.degree(),
                generators: e.group.generators().iter().map(|g| g.one_indexed()).collect(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&catalog).expect("serializable");
    text.push('\n');
    std::fs::write(&out_path, text).expect("write catalog");
    eprintln!("wrote {} groups to {out_path}", catalog.groups.len());
}
