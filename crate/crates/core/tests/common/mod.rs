//! Independent oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls the library routine it is checking.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::PathBuf;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use tenstwist::diagram::{cartan_matrix, DynkinDiagram, Family, VertexMap};
use tenstwist::galois::{DiagramAutomorphism, GaloisAction};
use tenstwist::polymer::{project, Polymer};

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

pub fn read_scenario(name: &str) -> String {
    std::fs::read_to_string(scenario_path(name)).expect("shipped scenario")
}

pub const SHIPPED: [&str; 7] = [
    "mumford-2n1.scn",
    "mumford-deg5.scn",
    "mumford-deg7.scn",
    "degree8.scn",
    "pel-singletons.scn",
    "outer-a3.scn",
    "twin-b2.scn",
];

// ---------------------------------------------------------------------------
// Root systems

/// Permutations of the vertices preserving the Cartan matrix.
pub fn brute_force_automorphisms(family: Family, rank: usize) -> BTreeSet<Vec<usize>> {
    let a = cartan_matrix(family, rank).unwrap();
    (0..rank)
        .permutations(rank)
        .filter(|p| (0..rank).all(|i| (0..rank).all(|j| a[p[i]][p[j]] == a[i][j])))
        .map(|p| p.into_iter().map(|i| i + 1).collect())
        .collect()
}

/// `s_i(β) = β − ⟨β, α_i^∨⟩ α_i` in simple-root coordinates for the Cartan
/// matrix `a` (with `a[i][j] = ⟨α_j, α_i^∨⟩`).
fn reflect(a: &[Vec<i32>], i: usize, beta: &[i64]) -> Vec<i64> {
    let pairing: i64 = beta.iter().zip(&a[i]).map(|(b, &c)| b * c as i64).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

/// A reduced word for `w₀`, found by walking `ρ` to the antidominant chamber.
fn longest_word(a: &[Vec<i32>]) -> Vec<usize> {
    let r = a.len();
    let mut lambda = vec![1i64; r];
    let mut word = Vec::new();
    while let Some(i) = (0..r).find(|&i| lambda[i] > 0) {
        // weights: s_i(λ)_j = λ_j − λ_i ⟨α_i, α_j^∨⟩ = λ_j − λ_i a[j][i]
        let li = lambda[i];
        for (j, l) in lambda.iter_mut().enumerate() {
            *l -= li * a[j][i] as i64;
        }
        word.push(i);
    }
    word
}

/// `−w₀` as a vertex permutation, 1-based.
pub fn minus_w0(family: Family, rank: usize) -> Vec<usize> {
    let a = cartan_matrix(family, rank).unwrap();
    let word = longest_word(&a);
    (0..rank)
        .map(|k| {
            let mut beta = vec![0i64; rank];
            beta[k] = 1;
            for &i in &word {
                beta = reflect(&a, i, &beta);
            }
            let neg: Vec<i64> = beta.iter().map(|x| -x).collect();
            let j = neg.iter().position(|&x| x == 1).expect("simple root");
            assert!(neg.iter().enumerate().all(|(t, &x)| x == if t == j { 1 } else { 0 }));
            j + 1
        })
        .collect()
}

/// Positive roots of the Cartan matrix `a`, closed under reflections.
fn positive_roots(a: &[Vec<i32>]) -> Vec<Vec<i64>> {
    let r = a.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = (0..r)
        .map(|k| (0..r).map(|t| i64::from(t == k)).collect())
        .collect();
    while let Some(beta) = queue.pop_front() {
        if !seen.insert(beta.clone()) {
            continue;
        }
        for i in 0..r {
            let img = reflect(a, i, &beta);
            if !seen.contains(&img) {
                queue.push_back(img);
            }
        }
    }
    seen.into_iter().filter(|b| b.iter().all(|&x| x >= 0)).collect()
}

/// Weyl dimension formula for the fundamental weight `ω_vertex`:
/// `∏_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`, with positive coroots taken from the
/// dual root system (transposed Cartan matrix).
pub fn weyl_dimension(family: Family, rank: usize, vertex: usize) -> BigInt {
    let a = cartan_matrix(family, rank).unwrap();
    let at: Vec<Vec<i32>> = (0..rank).map(|i| (0..rank).map(|j| a[j][i]).collect()).collect();
    let coroots = positive_roots(&at);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for c in &coroots {
        let rho: i64 = c.iter().sum();
        num *= BigInt::from(rho + c[vertex - 1]);
        den *= BigInt::from(rho);
    }
    let q = BigRational::new(num, den);
    assert!(q.is_integer());
    q.to_integer()
}

/// Number of positive roots of a classical type, for sanity checks.
pub fn positive_root_count(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank * (rank + 1) / 2,
        Family::B | Family::C => rank * rank,
        Family::D => rank * (rank - 1),
    }
}

pub fn positive_roots_of(family: Family, rank: usize) -> usize {
    positive_roots(&cartan_matrix(family, rank).unwrap()).len()
}

// ---------------------------------------------------------------------------
// Permutation groups

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn closure(gens: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut group = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(g, &x);
            if group.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    group
}

/// Representatives of the conjugacy classes of subgroups of `S_n`, as
/// element sets. Every subgroup of `S_n` for `n ≤ 4` is generated by two
/// elements, so closures of pairs are exhaustive there.
pub fn subgroup_classes(n: usize) -> Vec<BTreeSet<Vec<usize>>> {
    assert!(n <= 4, "two generators suffice only up to S4");
    let all: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut canon: BTreeMap<Vec<Vec<usize>>, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i..] {
            let h = closure(&[a.clone(), b.clone()], n);
            let key = all
                .iter()
                .map(|c| {
                    let ci = inverse(c);
                    let conj: BTreeSet<Vec<usize>> =
                        h.iter().map(|x| compose(c, &compose(x, &ci))).collect();
                    conj.into_iter().collect::<Vec<_>>()
                })
                .min()
                .unwrap();
            canon.entry(key).or_insert(h);
        }
    }
    canon.into_values().collect()
}

/// Galois action on `n` A1 components with the given permutation group.
pub fn a1_action(n: usize, group: &BTreeSet<Vec<usize>>) -> GaloisAction {
    let d = DynkinDiagram::all_a1(n);
    let gens = group
        .iter()
        .map(|p| DiagramAutomorphism::new(&d, p.clone(), vec![VertexMap::Identity; n]).unwrap())
        .collect();
    GaloisAction::generate(gens, d).unwrap()
}

pub fn fixed_points(p: &[usize]) -> usize {
    p.iter().enumerate().filter(|&(i, &j)| i == j).count()
}

/// Orbits of the components under the permutations, by union-find.
pub fn orbits_of(perms: &[Vec<usize>], n: usize) -> Vec<BTreeSet<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for p in perms {
        for (i, &j) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut out: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        out.entry(r).or_default().insert(i);
    }
    out.into_values().collect()
}

// ---------------------------------------------------------------------------
// Twist oracles

/// Minimum over nonempty supports `J` (unions of orbits not flagged
/// anisotropic) of `1 + max_T |π(T) ∩ J|`; `None` when no such `J` exists.
pub fn brute_index_bound(
    polymer: &Polymer,
    orbits: &[BTreeSet<usize>],
    anisotropic: &[bool],
) -> Option<usize> {
    let eligible: Vec<&BTreeSet<usize>> = orbits
        .iter()
        .zip(anisotropic)
        .filter(|(_, &a)| !a)
        .map(|(o, _)| o)
        .collect();
    let mut best = None;
    for mask in 1u32..(1 << eligible.len()) {
        let j: BTreeSet<usize> = eligible
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .flat_map(|(_, o)| o.iter().copied())
            .collect();
        let m = polymer
            .parts()
            .iter()
            .map(|t| project(t).intersection(&j).count())
            .max()
            .unwrap_or(0);
        best = Some(best.map_or(1 + m, |b: usize| b.min(1 + m)));
    }
    best
}

/// Orbit-wise definition: each orbit meets some `π(T)` twice or is flagged.
pub fn brute_tens_twisted(
    polymer: &Polymer,
    orbits: &[BTreeSet<usize>],
    anisotropic: &[bool],
) -> bool {
    orbits.iter().zip(anisotropic).all(|(o, &a)| {
        a || polymer
            .parts()
            .iter()
            .any(|t| project(t).intersection(o).count() >= 2)
    })
}

// ---------------------------------------------------------------------------
// Exact matrices, independent of the library's matrix type

pub type Grid = Vec<Vec<BigRational>>;

pub fn grid_mul(a: &Grid, b: &Grid) -> Grid {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

pub fn grid_kron(a: &Grid, b: &Grid) -> Grid {
    let (p, q) = (b.len(), b[0].len());
    let mut out = vec![vec![BigRational::zero(); a[0].len() * q]; a.len() * p];
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            for (k, brow) in b.iter().enumerate() {
                for (l, y) in brow.iter().enumerate() {
                    out[i * p + k][j * q + l] = x * y;
                }
            }
        }
    }
    out
}

pub fn grid_identity(n: usize) -> Grid {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

/// Smallest `k` with `m^k = 0`, or `None` when `m` is not nilpotent.
pub fn naive_nilpotency(m: &Grid) -> Option<usize> {
    let n = m.len();
    let mut p = grid_identity(n);
    for k in 1..=n {
        p = grid_mul(&p, m);
        if p.iter().all(|r| r.iter().all(|x| x.is_zero())) {
            return Some(k);
        }
    }
    None
}

/// `exp` of a nilpotent by the finite series.
pub fn naive_exp(m: &Grid) -> Grid {
    let n = m.len();
    let mut acc = grid_identity(n);
    let mut term = grid_identity(n);
    for j in 1..=n {
        term = grid_mul(&term, m);
        let inv = BigRational::new(BigInt::one(), BigInt::from(j));
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x *= &inv;
            }
        }
        for (ar, tr) in acc.iter_mut().zip(&term) {
            for (a, t) in ar.iter_mut().zip(tr) {
                *a += t;
            }
        }
    }
    acc
}

pub fn jordan_grid(n: usize) -> Grid {
    let mut g = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n.saturating_sub(1) {
        g[i][i + 1] = BigRational::one();
    }
    g
}

pub fn minus_identity(u: &Grid) -> Grid {
    let mut m = u.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= BigRational::one();
    }
    m
}
