//! Brute-force oracles shared by the integration tests and the acceptance
//! harness. They avoid the library's own cube builders on purpose.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cubelab::cubes::{Category, CubeMorphism};
use cubelab::gowers::FunctionSystem;
use cubelab::groups::GroupTable;
use num_complex::Complex64;

/// Every tuple in `0..m` of length `len`, first entry fastest.
pub fn tuples(m: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = m.pow(len as u32);
    (0..count).map(move |mut code| {
        (0..len)
            .map(|_| {
                let d = code % m;
                code /= m;
                d
            })
            .collect()
    })
}

fn bits(v: usize, n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |i| v >> (i - 1) & 1 == 1)
}

/// `v ↦ a_0 a_1^{v_1} ⋯ a_n^{v_n}`.
pub fn direct_simple_cube(g: &GroupTable, a: &[usize]) -> Vec<usize> {
    let n = a.len() - 1;
    (0..1usize << n).map(|v| g.product(std::iter::once(a[0]).chain(bits(v, n).map(|i| a[i])))).collect()
}

/// `v ↦ a_{1,v_1} ⋯ a_{n,v_n}` with `a[2(i-1) + j] = a_{i,j}`.
pub fn direct_general_cube(g: &GroupTable, a: &[usize]) -> Vec<usize> {
    let n = a.len() / 2;
    (0..1usize << n).map(|v| g.product((0..n).map(|i| a[2 * i + (v >> i & 1)]))).collect()
}

pub fn simple_cube_set(g: &GroupTable, n: usize) -> BTreeSet<Vec<usize>> {
    tuples(g.order(), n + 1).map(|a| direct_simple_cube(g, &a)).collect()
}

pub fn general_cube_set(g: &GroupTable, n: usize) -> BTreeSet<Vec<usize>> {
    tuples(g.order(), 2 * n).map(|a| direct_general_cube(g, &a)).collect()
}

/// The subgroup of `Z_m^{{0,1}^n}` generated by `f ∘ φ` for every
/// `φ ∈ hom_N({0,1}^n, {0,1}^j)`, `j <= k`, and every `f: {0,1}^j → Z_m`.
pub fn v_span(m: usize, n: usize, k: usize) -> BTreeSet<Vec<usize>> {
    let len = 1usize << n;
    let mut gens: BTreeSet<Vec<usize>> = BTreeSet::new();
    for j in 0..=k {
        for phi in CubeMorphism::all(n, j, Category::N) {
            let table = phi.table();
            // f = indicator of one target vertex; they generate all f.
            for u in 0..1u32 << j {
                gens.insert(table.iter().map(|&t| usize::from(t == u)).collect());
            }
        }
    }
    let gens: Vec<Vec<usize>> = gens.into_iter().collect();
    let mut span: BTreeSet<Vec<usize>> = BTreeSet::new();
    let zero = vec![0usize; len];
    span.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y: Vec<usize> = x.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    span
}

/// Every `f: {0,1}^n → Z_m` with `Σ_{u ⊆ v} (-1)^{h(u)} f(u) = 0` for each
/// `v` of height at least `k + 1`.
pub fn v_prime(m: usize, n: usize, k: usize) -> BTreeSet<Vec<usize>> {
    let len = 1usize << n;
    let high: Vec<usize> = (0..len).filter(|v| v.count_ones() as usize > k).collect();
    tuples(m, len)
        .filter(|f| {
            high.iter().all(|&v| {
                let s: i64 = (0..len)
                    .filter(|u| u & !v == 0)
                    .map(|u| if u.count_ones() % 2 == 0 { f[u] as i64 } else { -(f[u] as i64) })
                    .sum();
                s.rem_euclid(m as i64) == 0
            })
        })
        .collect()
}

/// The cubic product straight from its definition.
pub fn brute_cubic_product(system: &FunctionSystem) -> Complex64 {
    let g = system.group();
    let n = system.n();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut count = 0usize;
    for a in tuples(g.order(), n + 1) {
        let cube = direct_simple_cube(g, &a);
        let mut prod = Complex64::new(1.0, 0.0);
        for (v, &x) in cube.iter().enumerate() {
            let z = system.at(v).value(x);
            prod *= if v.count_ones() % 2 == 1 { z.conj() } else { z };
        }
        sum += prod;
        count += 1;
    }
    sum / count as f64
}

/// `A ≅ B` for cyclic, dihedral and similar small groups, through a bijection
/// search that is independent of the library's isomorphism routine.
pub fn isomorphic_by_search(a: &GroupTable, b: &GroupTable) -> bool {
    let m = a.order();
    if m != b.order() || m > 8 {
        return false;
    }
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        if (0..m).all(|x| (0..m).all(|y| perm[a.mul(x, y)] == b.mul(perm[x], perm[y]))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
