#![allow(dead_code)] // shared by several test binaries, each using a subset

//! Brute-force oracles, deliberately written over the dumbest possible code
//! paths (full enumeration + whole-graph triangle scans) so they stay
//! independent of the engines they check.

use gallai_core::coloring::{edge_count, ColorId, EdgeColoring};
use rand::Rng;

/// Visits every coloring (not just Gallai) of `K_n` over `[1, k]` by literal
/// odometer enumeration.
pub fn for_each_coloring<F: FnMut(&EdgeColoring)>(n: usize, k: ColorId, mut f: F) {
    let edges = edge_count(n);
    let mut colors = vec![1 as ColorId; edges];
    loop {
        f(&EdgeColoring::from_colors(n, k, colors.clone()).unwrap());
        let mut pos = edges;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if colors[pos] < k {
                colors[pos] += 1;
                for c in colors[pos + 1..].iter_mut() {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// Visits every Gallai coloring by filtering the full enumeration.
pub fn for_each_gallai_brute<F: FnMut(&EdgeColoring)>(n: usize, k: ColorId, mut f: F) {
    for_each_coloring(n, k, |phi| {
        if phi.rainbow_triangles().unwrap().is_empty() {
            f(phi);
        }
    });
}

/// `c(n,k)` by literal enumeration.
pub fn brute_count(n: usize, k: ColorId) -> u64 {
    let mut count = 0;
    for_each_gallai_brute(n, k, |_| count += 1);
    count
}

/// `w(φ,k)` by assembling each of the k^n extended colorings and scanning
/// all of its triangles.
pub fn brute_extensions(phi: &EdgeColoring, k: ColorId) -> u64 {
    let n = phi.n();
    let mut fan = vec![1 as ColorId; n];
    let mut count = 0;
    loop {
        let child_colors: Vec<ColorId> = phi.raw_colors().iter().chain(fan.iter()).copied().collect();
        let child = EdgeColoring::from_colors(n + 1, k.max(phi.k()), child_colors).unwrap();
        if child.rainbow_triangles().unwrap().is_empty() {
            count += 1;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            if fan[pos] < k {
                fan[pos] += 1;
                for c in fan[pos + 1..].iter_mut() {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// A random Gallai coloring built by assigning edges in order, each time
/// picking uniformly among the colors that close no rainbow triangle. The
/// greedy build can dead-end (two earlier vertices may impose disjoint color
/// pairs on one edge), in which case it restarts from scratch.
pub fn random_gallai(rng: &mut impl Rng, n: usize, k: ColorId) -> EdgeColoring {
    'restart: loop {
        let mut colors: Vec<ColorId> = Vec::with_capacity(edge_count(n));
        let color_of = |colors: &[ColorId], u: usize, v: usize| colors[v * (v - 1) / 2 + u];
        for v in 1..n {
            for u in 0..v {
                let safe: Vec<ColorId> = (1..=k)
                    .filter(|&c| {
                        (0..u).all(|w| {
                            let cu = color_of(&colors, w, u);
                            let cv = color_of(&colors, w, v);
                            !(cu != c && cv != c && cu != cv)
                        })
                    })
                    .collect();
                if safe.is_empty() {
                    continue 'restart;
                }
                colors.push(safe[rng.random_range(0..safe.len())]);
            }
        }
        let phi = EdgeColoring::from_colors(n, k, colors).unwrap();
        debug_assert!(phi.rainbow_triangles().unwrap().is_empty());
        return phi;
    }
}
