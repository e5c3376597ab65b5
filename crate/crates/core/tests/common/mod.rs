//! Independent oracles for integration tests. Nothing here calls the group or
//! quotient code of the library; permutations are plain 0-based image vectors.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use branchfold::simplicial::{Complex, Simplex};

pub type Images = Vec<usize>;

pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Images {
    let mut p: Images = (0..n).collect();
    for c in cycles {
        for i in 0..c.len() {
            p[c[i] - 1] = c[(i + 1) % c.len()] - 1;
        }
    }
    p
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn mul(a: &Images, b: &Images) -> Images {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inv(a: &Images) -> Images {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x] = i;
    }
    r
}

/// Brute-force closure under multiplication.
pub fn closure(n: usize, gens: &[Images]) -> Vec<Images> {
    let id: Images = (0..n).collect();
    let mut seen: HashSet<Images> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(g, &x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Order of the largest normal subgroup of `group` fixing the point `x`.
pub fn core_of_stabilizer(group: &[Images], x: usize) -> usize {
    group.iter().filter(|h| group.iter().all(|g| h[g[x]] == g[x])).count()
}

pub fn cycle_lengths(p: &Images) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// Euler characteristic of the orbit space by Burnside's count of simplex orbits
/// in each dimension. Valid when setwise-fixed simplices are fixed pointwise.
pub fn burnside_euler(c: &Complex, group: &[Images]) -> i64 {
    let mut total = 0i64;
    for s in c.simplices() {
        let sign = if s.len() % 2 == 1 { 1 } else { -1 };
        let fixed = group.iter().filter(|g| image_set(g, s) == s.iter().copied().collect()).count() as i64;
        total += sign * fixed;
    }
    assert_eq!(total % group.len() as i64, 0);
    total / group.len() as i64
}

fn image_set(g: &Images, s: &Simplex) -> BTreeSet<u32> {
    s.iter().map(|&v| g[v as usize - 1] as u32 + 1).collect()
}

/// Number of vertex orbits with a nontrivial stabilizer.
pub fn singular_vertex_orbits(c: &Complex, group: &[Images]) -> usize {
    let mut orbits: BTreeSet<BTreeSet<u32>> = BTreeSet::new();
    for &v in c.vertices() {
        let x = v as usize - 1;
        if group.iter().any(|g| g[x] == x && g.iter().enumerate().any(|(i, &y)| i != y)) {
            orbits.insert(group.iter().map(|g| g[x] as u32 + 1).collect());
        }
    }
    orbits.len()
}

/// Largest dimension of a simplex fixed pointwise by a nontrivial element.
pub fn fixed_dimension(c: &Complex, group: &[Images]) -> isize {
    let mut best = -1;
    for g in group.iter().filter(|g| g.iter().enumerate().any(|(i, &y)| i != y)) {
        for s in c.simplices() {
            if s.iter().all(|&v| g[v as usize - 1] == v as usize - 1) {
                best = best.max(s.len() as isize - 1);
            }
        }
    }
    best
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
