#![allow(dead_code)]

use loopmod::enumerate::{enumerate_loops, EnumerationConfig};
use loopmod::measure::rational::rational;
use loopmod::{LoopTable, Measure, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weights `p/q` with `p ∈ 1..=30`, `q ∈ 1..=12`.
pub fn random_measure(rng: &mut impl Rng, n: usize) -> Measure {
    let weights = (0..n)
        .map(|_| rational(rng.random_range(1..=30), rng.random_range(1..=12)))
        .collect();
    Measure::new(weights, n).unwrap()
}

/// Like [`random_measure`] but never constant (requires `n ≥ 2`).
pub fn random_nonuniform_measure(rng: &mut impl Rng, n: usize) -> Measure {
    assert!(n >= 2);
    loop {
        let mu = random_measure(rng, n);
        if !mu.is_uniform() {
            return mu;
        }
    }
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// A random relabeling that sends `identity` to `0`.
pub fn random_relabeling(rng: &mut impl Rng, n: usize, identity: usize) -> Permutation {
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    let mut images = vec![0; n];
    let mut it = rest.into_iter();
    for (x, img) in images.iter_mut().enumerate() {
        if x != identity {
            *img = it.next().unwrap();
        }
    }
    Permutation::from_images(images).unwrap()
}

pub fn normalized_loops(n: usize) -> Vec<LoopTable> {
    let mut out = Vec::new();
    enumerate_loops(&EnumerationConfig::normalized(n), |t| out.push(t.clone())).unwrap();
    out
}

/// Every normalized loop of orders `1..=max`.
pub fn loops_up_to(max: usize) -> Vec<LoopTable> {
    (1..=max).flat_map(normalized_loops).collect()
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Reference enumeration by brute force: every grid with the first row and
/// column fixed to `0..n`, kept when it is a Latin square.
pub fn slow_normalized_loops(n: usize) -> Vec<Vec<usize>> {
    let free: Vec<(usize, usize)> = (1..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
    let mut grid = vec![0; n * n];
    for i in 0..n {
        grid[i] = i;
        grid[i * n] = i;
    }
    let total = n.pow(free.len() as u32);
    let mut out = Vec::new();
    for mut index in 0..total {
        for &(r, c) in free.iter().rev() {
            grid[r * n + c] = index % n;
            index /= n;
        }
        let latin = (0..n).all(|i| {
            let (mut row, mut col) = (vec![false; n], vec![false; n]);
            (0..n).all(|j| {
                let fresh_r = !std::mem::replace(&mut row[grid[i * n + j]], true);
                let fresh_c = !std::mem::replace(&mut col[grid[j * n + i]], true);
                fresh_r && fresh_c
            })
        });
        if latin {
            out.push(grid.clone());
        }
    }
    out
}

/// Number of isomorphism classes, by trying every relabeling of every square.
pub fn slow_isomorphism_classes(n: usize) -> usize {
    let perms = all_permutations(n);
    let mut reps = std::collections::BTreeSet::new();
    for cells in slow_normalized_loops(n) {
        let best = perms
            .iter()
            .map(|p| {
                let mut out = vec![0; n * n];
                for a in 0..n {
                    for b in 0..n {
                        out[p[a] * n + p[b]] = p[cells[a * n + b]];
                    }
                }
                out
            })
            .min()
            .unwrap();
        reps.insert(best);
    }
    reps.len()
}
