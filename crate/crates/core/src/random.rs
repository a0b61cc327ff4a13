//! Seeded random matrix generators for property checks and benchmarks.
//!
//! Off-pattern entries are drawn from `[0.05, 0.95]` so they never collide
//! with the unit entries that define critical cycles.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::semiring::{normalize_max_stochastic, NonnegMatrix};

pub type FixtureRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FixtureRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry(rng: &mut impl Rng) -> f64 {
    rng.random_range(0.05..0.95)
}

/// Random sparse pattern with density `density`, plus a Hamiltonian cycle
/// through a random node order so the result is irreducible.
fn irreducible_pattern(rng: &mut impl Rng, n: usize, density: f64) -> Vec<f64> {
    let mut data = vec![0.0; n * n];
    for x in data.iter_mut() {
        if rng.random_bool(density) {
            *x = entry(rng);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for k in 0..n {
        let (i, j) = (order[k], order[(k + 1) % n]);
        if data[i * n + j] == 0.0 {
            data[i * n + j] = entry(rng);
        }
    }
    data
}

/// Irreducible matrix with positive entries drawn on a random pattern.
pub fn irreducible(rng: &mut impl Rng, n: usize, density: f64) -> NonnegMatrix {
    NonnegMatrix::from_vec(n, n, irreducible_pattern(rng, n, density)).expect("valid entries")
}

/// Irreducible max-stochastic matrix: a random irreducible matrix with each
/// row divided by its maximum.
pub fn irreducible_max_stochastic(rng: &mut impl Rng, n: usize, density: f64) -> NonnegMatrix {
    normalize_max_stochastic(&irreducible(rng, n, density))
        .expect("every row has an entry")
        .0
}

/// Irreducible row-stochastic matrix.
pub fn irreducible_row_stochastic(rng: &mut impl Rng, n: usize, density: f64) -> NonnegMatrix {
    let a = irreducible(rng, n, density);
    let sums: Vec<f64> = a.rows().map(|r| r.iter().sum()).collect();
    NonnegMatrix::from_fn(n, |i, j| a.get(i, j) / sums[i]).expect("valid entries")
}

/// Matrix with every entry in `[lo, hi]`.
pub fn positive(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> NonnegMatrix {
    NonnegMatrix::from_fn(n, |_, _| rng.random_range(lo..=hi)).expect("valid entries")
}

/// Irreducible max-stochastic matrix whose critical digraph has exactly
/// `components` strongly connected components.
///
/// Each component is a cycle of unit entries on a random node set (a single
/// node gets a unit loop), sometimes with extra unit chords. Every other
/// node gets one unit edge to a node placed earlier in a random order that
/// starts with the critical nodes, so unit edges outside the components
/// form a forest leading into them. All remaining entries are below 1.
///
/// Returns the matrix and its critical components (sorted, ordered by
/// smallest node).
pub fn with_critical_components(
    rng: &mut impl Rng,
    n: usize,
    components: usize,
    density: f64,
) -> (NonnegMatrix, Vec<Vec<usize>>) {
    assert!(components >= 1 && components <= n);
    let mut data = irreducible_pattern(rng, n, density);

    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(rng);
    let critical_count = rng.random_range(components..=n);
    // split the first `critical_count` nodes into `components` non-empty runs
    let mut cuts: Vec<usize> = (1..critical_count).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(components - 1).collect();
    cuts.sort_unstable();
    let mut sets = Vec::with_capacity(components);
    let mut start = 0;
    for cut in cuts.into_iter().chain(std::iter::once(critical_count)) {
        sets.push(nodes[start..cut].to_vec());
        start = cut;
    }

    for set in &sets {
        let k = set.len();
        for t in 0..k {
            data[set[t] * n + set[(t + 1) % k]] = 1.0;
        }
        if k > 2 && rng.random_bool(0.5) {
            let (u, v) = (set[rng.random_range(0..k)], set[rng.random_range(0..k)]);
            data[u * n + v] = 1.0;
        }
    }
    for (pos, &v) in nodes.iter().enumerate().skip(critical_count) {
        let target = nodes[rng.random_range(0..pos)];
        data[v * n + target] = 1.0;
    }

    let mut sets: Vec<Vec<usize>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect();
    sets.sort_by_key(|s| s[0]);
    (
        NonnegMatrix::from_vec(n, n, data).expect("valid entries"),
        sets,
    )
}

/// Symmetrically reciprocal matrix `a_ij = (x_i/x_j)·e_ij` with
/// multiplicative noise `e_ij = 1/e_ji ∈ [1/(1+noise), 1+noise]`.
pub fn sr_matrix(rng: &mut impl Rng, n: usize, noise: f64) -> NonnegMatrix {
    let scores: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..10.0)).collect();
    let mut data = vec![1.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let e = if noise > 0.0 {
                (1.0 + noise).powf(rng.random_range(-1.0..=1.0))
            } else {
                1.0
            };
            let x = scores[i] / scores[j] * e;
            data[i * n + j] = x;
            data[j * n + i] = 1.0 / x;
        }
    }
    NonnegMatrix::from_vec(n, n, data).expect("valid entries")
}

/// Score table whose rows each have maximum exactly 1.
pub fn normalized_scores(rng: &mut impl Rng, rows: usize, cols: usize) -> NonnegMatrix {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let top = rng.random_range(0..cols);
        data.extend((0..cols).map(|j| if j == top { 1.0 } else { entry(rng) }));
    }
    NonnegMatrix::from_vec(rows, cols, data).expect("valid entries")
}
