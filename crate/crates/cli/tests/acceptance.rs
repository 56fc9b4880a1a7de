//! Acceptance suite: nine criteria, each checked against an oracle written
//! here from scratch and held to a wall-clock budget. Prints one line per
//! criterion and exits nonzero if any fails.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use pi1_core::group::catalog::Catalog;
use pi1_core::group::construct::{cyclic, direct_product};
use pi1_core::oracle::{
    cross_check_descent, enumerate_connected_covers, glue_properties, nodal_line, random_configuration, selftest, RandomConfigOptions, SelftestOptions,
};
use pi1_core::realizability::{affine_realizable, hasse_witt_check, nakajima_check, pro_p_rank};
use pi1_core::{ComponentData, CurveConfiguration, IdentificationClass, PermutationGroup, PointRef, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Group arithmetic on plain image vectors, sharing nothing with the
/// engine beyond the catalog's generator lists.
mod brute {
    use super::*;

    pub type Perm = Vec<u32>;

    /// `(a ∘ b)(i) = a(b(i))`.
    pub fn mul(a: &Perm, b: &Perm) -> Perm {
        b.iter().map(|&i| a[i as usize]).collect()
    }

    pub struct Table {
        pub elements: Vec<Perm>,
        pub mul: Vec<Vec<usize>>,
        pub identity: usize,
    }

    impl Table {
        pub fn from_generators(degree: usize, gens: &[Perm]) -> Table {
            let id: Perm = (0..degree as u32).collect();
            let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
            let mut elements = vec![id.clone()];
            let mut queue = VecDeque::from([id]);
            while let Some(x) = queue.pop_front() {
                for g in gens {
                    let y = mul(g, &x);
                    if seen.insert(y.clone()) {
                        elements.push(y.clone());
                        queue.push_back(y);
                    }
                }
            }
            let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mul = elements.iter().map(|a| elements.iter().map(|b| index[&super::brute::mul(a, b)]).collect()).collect();
            Table { elements, mul, identity: 0 }
        }

        pub fn len(&self) -> usize {
            self.elements.len()
        }

        /// Subgroup generated by `gens`, as a membership vector.
        pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
            let mut member = vec![false; self.len()];
            member[self.identity] = true;
            let mut list = vec![self.identity];
            let mut i = 0;
            while i < list.len() {
                let x = list[i];
                for &g in gens {
                    let y = self.mul[g][x];
                    if !member[y] {
                        member[y] = true;
                        list.push(y);
                    }
                }
                i += 1;
            }
            member
        }

        pub fn generates(&self, gens: &[usize]) -> bool {
            self.closure(gens).iter().all(|&b| b)
        }

        pub fn order_of(&self, a: usize) -> usize {
            let (mut x, mut k) = (a, 1);
            while x != self.identity {
                x = self.mul[a][x];
                k += 1;
            }
            k
        }

        pub fn inverse(&self, a: usize) -> usize {
            (0..self.len()).find(|&b| self.mul[a][b] == self.identity).expect("group")
        }

        /// Ordered `k`-tuples generating the group.
        pub fn generating_tuples(&self, k: u32) -> u128 {
            let n = self.len();
            let mut count = 0;
            for index in 0..n.pow(k) {
                let tuple: Vec<usize> = (0..k).map(|j| index / n.pow(j) % n).collect();
                count += self.generates(&tuple) as u128;
            }
            count
        }

        /// Smallest `k` such that some `k` elements generate.
        pub fn rank(&self) -> usize {
            let n = self.len();
            (0..=n)
                .find(|&k| {
                    let mut combo: Vec<usize> = (0..k).collect();
                    loop {
                        if self.generates(&combo) {
                            return true;
                        }
                        let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
                            return false;
                        };
                        combo[i] += 1;
                        for j in i + 1..k {
                            combo[j] = combo[j - 1] + 1;
                        }
                    }
                })
                .expect("the whole group generates")
        }

        /// `log_p [G : G′Gᵖ]`.
        pub fn sigma(&self, p: usize) -> usize {
            let n = self.len();
            let mut gens = Vec::new();
            for a in 0..n {
                let mut x = self.identity;
                for _ in 0..p {
                    x = self.mul[a][x];
                }
                gens.push(x);
                for b in 0..n {
                    let ab = self.mul[a][b];
                    gens.push(self.mul[self.mul[ab][self.inverse(a)]][self.inverse(b)]);
                }
            }
            let sub = self.closure(&gens).iter().filter(|&&b| b).count();
            let mut index = n / sub;
            let mut s = 0;
            while index > 1 {
                assert_eq!(index % p, 0);
                index /= p;
                s += 1;
            }
            s
        }

        /// Subgroup generated by the elements of `p`-power order.
        pub fn p_part(&self, p: usize) -> BTreeSet<Perm> {
            let gens: Vec<usize> = (0..self.len())
                .filter(|&a| {
                    let mut o = self.order_of(a);
                    while o % p == 0 {
                        o /= p;
                    }
                    o == 1
                })
                .collect();
            self.closure(&gens).iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| self.elements[i].clone()).collect()
        }
    }

    pub fn table_of(g: &PermutationGroup) -> Table {
        let gens: Vec<Perm> = g.generators().iter().map(|p| p.images().to_vec()).collect();
        Table::from_generators(g.degree(), &gens)
    }

    /// Cycle rank of the component–class incidence graph by counting edges
    /// that close a cycle in a breadth-first forest.
    pub fn betti(config: &CurveConfiguration) -> usize {
        let n = config.components.len();
        let comp: HashMap<&str, usize> = config.components.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + config.identifications.len()];
        let mut edges = 0;
        for (k, class) in config.identifications.iter().enumerate() {
            for m in &class.members {
                adj[comp[m.component.as_str()]].push(n + k);
                adj[n + k].push(comp[m.component.as_str()]);
                edges += 1;
            }
        }
        let mut seen = vec![false; adj.len()];
        let mut tree_edges = 0;
        for s in 0..adj.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        tree_edges += 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        edges - tree_edges
    }
}

struct Outcome {
    failures: Vec<String>,
    checks: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), checks: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn catalog_groups(max_order: u64) -> Vec<(String, PermutationGroup)> {
    Catalog::embedded().up_to_order(max_order).map(|e| (e.name.clone(), e.group().expect("catalog group"))).collect()
}

fn config(p: u64, components: usize, classes: &[&[(&str, &str)]]) -> CurveConfiguration {
    let comps = (1..=components).map(|i| ComponentData::new(format!("C{i}"), 0)).collect();
    let mut c = CurveConfiguration::smooth(p, comps);
    for class in classes {
        for (a, b) in *class {
            c.mark(a, b);
        }
        c.identifications.push(IdentificationClass::new(class.iter().map(|(a, b)| PointRef::new(*a, *b)).collect()));
    }
    c
}

/// Genus-0 bases with at most two components.
fn small_bases() -> Vec<CurveConfiguration> {
    vec![
        nodal_line(1),
        nodal_line(2),
        config(0, 2, &[&[("C1", "0"), ("C2", "0")], &[("C1", "1"), ("C2", "1")]]),
        config(0, 2, &[&[("C1", "0"), ("C2", "0"), ("C1", "1")]]),
    ]
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let opts = RandomConfigOptions::default();
    for i in 0..200 {
        let c = random_configuration(&mut rng, &opts);
        let valid = c.validate().is_valid() && c.is_projective() && c.dual_graph().map(|g| g.is_connected()).unwrap_or(false);
        out.check(valid, || format!("config {i} is not a valid connected projective configuration"));
        out.check(c.n() <= 6 && c.identifications.len() <= 6, || format!("config {i} too large"));
        let betti = brute::betti(&c);
        out.check(c.delta().ok() == Some(betti as u64), || format!("config {i}: delta {:?}, Betti {betti}", c.delta()));
        let replayed = c.factorize().and_then(|steps| c.normalization().replay(&steps));
        out.check(
            replayed.as_ref().map(|r| r.canonical_classes() == c.canonical_classes() && r.components == c.components).unwrap_or(false),
            || format!("config {i}: factorization does not replay"),
        );
    }
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in catalog_groups(24) {
        let t = brute::table_of(&g);
        for k in 1..=2 {
            let phi = g.eulerian(k).expect("eulerian");
            let exhaustive = t.generating_tuples(k);
            out.check(phi == exhaustive as i128, || format!("{name}, k = {k}: eulerian {phi}, exhaustive {exhaustive}"));
        }
    }
    let s3 = Catalog::embedded().group("S3").unwrap();
    out.check(s3.eulerian(2).unwrap() == 18, || "φ₂(S₃) ≠ 18".into());
    out.check(brute::table_of(&s3).generating_tuples(2) == 18, || "exhaustive φ₂(S₃) ≠ 18".into());
    let c6 = Catalog::embedded().group("C6").unwrap();
    out.check(c6.eulerian(1).unwrap() == 2, || "φ₁(C₆) ≠ 2".into());
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let bases = [nodal_line(1), nodal_line(2)];
    for (name, g) in catalog_groups(24) {
        let t = brute::table_of(&g);
        for (k, base) in bases.iter().enumerate() {
            let delta = k as u32 + 1;
            let covers = enumerate_connected_covers(&g, base).expect("enumeration").count;
            let phi = g.eulerian(delta).unwrap();
            out.check(covers as i128 == phi, || format!("{name}, δ = {delta}: {covers} covers, eulerian {phi}"));
            let exhaustive = t.generating_tuples(delta);
            out.check(covers == exhaustive, || format!("{name}, δ = {delta}: {covers} covers, {exhaustive} generating tuples"));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in catalog_groups(24) {
        match glue_properties(&g) {
            Ok(r) => {
                out.check(r.same_component_cases > 0 && r.two_component_cases > 0, || format!("{name}: no inputs"));
                for f in &r.failures {
                    out.check(false, || format!("{name}: {f}"));
                }
                out.checks += r.same_component_cases + r.two_component_cases;
            }
            Err(e) => out.check(false, || format!("{name}: {e}")),
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let bases = small_bases();
    for (name, g) in catalog_groups(24) {
        for (b, base) in bases.iter().enumerate() {
            match cross_check_descent(&g, base) {
                Ok(r) => {
                    out.check(r.mismatches == 0, || format!("{name}, base {b}: {} mismatches", r.mismatches));
                    for c in &r.controls {
                        out.check(c.rejected, || format!("{name}, base {b}: control {} gave {}, expected {}", c.name, c.observed, c.expected));
                    }
                    if g.order() >= 3 {
                        let names: Vec<&str> = r.controls.iter().map(|c| c.name).collect();
                        for required in ["equality-relation", "point-twice", "missing-block", "not-equivariant", "wrong-constant"] {
                            out.check(names.contains(&required), || format!("{name}, base {b}: control {required} did not run"));
                        }
                    }
                }
                Err(e) => out.check(false, || format!("{name}, base {b}: {e}")),
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in catalog_groups(60) {
        let t = brute::table_of(&g);
        for p in [2u64, 3, 5, 7] {
            let quasi_p = t.p_part(p as usize).len() == t.len();
            let v = affine_realizable(&g, p, 0, 1, 0).expect("verdict").verdict;
            let expected = if quasi_p { Verdict::Yes } else { Verdict::No };
            out.check(v == expected, || format!("{name}, p = {p}: {v:?}, quasi-p = {quasi_p}"));
        }
    }
    let c3 = cyclic(3);
    let at = |delta| affine_realizable(&c3, 2, 0, 1, delta).unwrap().verdict;
    out.check(at(0) == Verdict::No, || "C3, p = 2, (0,1,0) is not No".into());
    out.check(at(1) == Verdict::Yes, || "C3, p = 2, (0,1,1) is not Yes".into());
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    for p in [2u64, 3, 5] {
        let cp = cyclic(p as usize);
        let square = direct_product(&cp, &cp);
        let cube = direct_product(&square, &cp);
        let two_nodes = {
            let mut c = nodal_line(2);
            c.characteristic = p;
            c
        };
        let theta = config(p, 2, &[&[("C1", "0"), ("C2", "0")], &[("C1", "1"), ("C2", "1")], &[("C1", "2"), ("C2", "2")]]);
        let triple = config(p, 3, &[&[("C1", "0"), ("C2", "0"), ("C3", "0")], &[("C1", "1"), ("C2", "1"), ("C3", "1")]]);
        for (i, base) in [two_nodes, theta, triple].iter().enumerate() {
            out.check(base.delta().unwrap() == 2, || format!("base {i} has δ ≠ 2"));
            let v = hasse_witt_check(&cube, p, base).unwrap();
            out.check(v.verdict == Verdict::No, || format!("(C{p})³ on base {i}: {}", v.to_json()));
        }
        let mut nodal = nodal_line(1);
        nodal.characteristic = p;
        let cycle = config(p, 2, &[&[("C1", "0"), ("C2", "0")], &[("C1", "1"), ("C2", "1")]]);
        for (i, base) in [nodal, cycle].iter().enumerate() {
            let v = nakajima_check(&square, p, base).unwrap();
            out.check(v.verdict == Verdict::No, || format!("(C{p})² on δ = 1 base {i}: {}", v.to_json()));
            let v = nakajima_check(&cp, p, base).unwrap();
            out.check(v.verdict == Verdict::Unknown, || format!("C{p} on δ = 1 base {i}: {}", v.to_json()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = RandomConfigOptions {
        characteristic: 3,
        max_genus: 2,
        ..Default::default()
    };
    for i in 0..50 {
        let c = random_configuration(&mut rng, &opts);
        let expected = c.components.iter().map(|k| k.p_rank.unwrap_or(k.genus) as u64).sum::<u64>() + brute::betti(&c) as u64;
        let got = pro_p_rank(&c);
        out.check(got.as_ref().ok() == Some(&expected), || format!("config {i}: pro-p rank {got:?}, expected {expected}"));
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in catalog_groups(60) {
        let t = brute::table_of(&g);
        out.check(g.order() == t.len() as u128, || format!("{name}: order {} vs {}", g.order(), t.len()));
        let d = g.min_generators().expect("d");
        let brute_d = t.rank();
        out.check(d == brute_d, || format!("{name}: d = {d}, exhaustive {brute_d}"));
        for p in [2u64, 3, 5, 7] {
            let sigma = g.abelianization_p_rank(p).expect("σ");
            let brute_sigma = t.sigma(p as usize);
            out.check(sigma == brute_sigma, || format!("{name}, p = {p}: σ = {sigma}, exhaustive {brute_sigma}"));
            let engine: BTreeSet<Vec<u32>> = g
                .quasi_p_part(p)
                .and_then(|h| h.elements())
                .map(|el| el.iter().map(|x| x.images().to_vec()).collect())
                .unwrap_or_default();
            out.check(engine == t.p_part(p as usize), || format!("{name}, p = {p}: p(G) differs"));
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    let opts = SelftestOptions {
        seed: 99,
        max_order: 12,
        random_configs: 100,
    };
    let a = selftest(&opts).map(|r| r.to_json(true));
    let b = selftest(&opts).map(|r| r.to_json(true));
    out.check(a.is_ok() && a.as_ref().ok() == b.as_ref().ok(), || "library selftest reports differ".into());
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_pi1"))
            .args(["selftest", "--seed", "99", "--max-order", "12", "--jobs", jobs])
            .output()
            .expect("pi1 runs")
    };
    let (x, y) = (run("1"), run("4"));
    out.check(x.status.success() && y.status.success(), || "pi1 selftest failed".into());
    out.check(!x.stdout.is_empty() && x.stdout == y.stdout, || "pi1 selftest reports differ".into());
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("delta equals Betti number; factorization replays", 5, criterion_1),
        ("eulerian function equals exhaustive tuple count", 60, criterion_2),
        ("connected cover count equals eulerian function", 120, criterion_3),
        ("gluing outputs connected, Galois, inertia kept", 60, criterion_4),
        ("descent agrees with gluing; controls rejected", 60, criterion_5),
        ("affine verdicts reproduce the smooth criterion", 10, criterion_6),
        ("necessary-condition checkers", 10, criterion_7),
        ("group engine ground truth", 120, criterion_8),
        ("selftest is deterministic", 120, criterion_9),
    ];
    let mut all = true;
    for (i, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(*budget) {
            outcome.failures.push(format!("took {:.1} s, budget {budget} s", elapsed.as_secs_f64()));
        }
        let pass = outcome.failures.is_empty();
        all &= pass;
        println!(
            "criterion {}: {} {title} ({} checks, {:.2} s of {budget} s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            outcome.checks,
            elapsed.as_secs_f64()
        );
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
