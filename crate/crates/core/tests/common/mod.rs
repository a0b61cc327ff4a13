//! Independent oracles: brute force over paths, cycles and successor maps,
//! and dense linear algebra from nalgebra.

#![allow(dead_code, clippy::needless_range_loop)]

use maxtree::NonnegMatrix;
use nalgebra::DMatrix;

/// Largest geometric mean over all simple cycles, by depth-first search
/// from each cycle's smallest node.
pub fn brute_max_cycle_mean(a: &NonnegMatrix) -> Option<f64> {
    let n = a.n();
    let mut best: Option<f64> = None;
    for start in 0..n {
        let mut stack = vec![(start, vec![start], 1.0)];
        while let Some((v, path, weight)) = stack.pop() {
            for u in start..n {
                let w = a.get(v, u);
                if w == 0.0 {
                    continue;
                }
                if u == start {
                    let mean = (weight * w).powf(1.0 / path.len() as f64);
                    best = Some(best.map_or(mean, |b| b.max(mean)));
                } else if !path.contains(&u) {
                    let mut next = path.clone();
                    next.push(u);
                    stack.push((u, next, weight * w));
                }
            }
        }
    }
    best
}

/// Heaviest simple path weight from every `i` to every `j`, 1 on the
/// diagonal.
pub fn brute_path_star(a: &NonnegMatrix) -> Vec<Vec<f64>> {
    let n = a.n();
    let mut best = vec![vec![0.0; n]; n];
    for i in 0..n {
        best[i][i] = 1.0;
        let mut stack = vec![(i, vec![i], 1.0)];
        while let Some((v, path, weight)) = stack.pop() {
            for u in 0..n {
                let w = a.get(v, u);
                if w == 0.0 || path.contains(&u) {
                    continue;
                }
                let next_weight = weight * w;
                best[i][u] = f64::max(best[i][u], next_weight);
                let mut next = path.clone();
                next.push(u);
                stack.push((u, next, next_weight));
            }
        }
    }
    best
}

/// Every i-tree as a successor map, by trying every choice of one
/// out-neighbour per non-root node and keeping the acyclic ones.
pub fn brute_itrees(a: &NonnegMatrix, root: usize) -> Vec<(Vec<usize>, f64)> {
    let n = a.n();
    let choices: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if v == root {
                vec![usize::MAX]
            } else {
                (0..n).filter(|&u| u != v && a.get(v, u) > 0.0).collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    let mut cursor = vec![0; n];
    loop {
        let succ: Vec<usize> = (0..n).map(|v| choices[v][cursor[v]]).collect();
        let reaches_root = (0..n).all(|v| {
            let mut x = v;
            for _ in 0..n {
                if x == root {
                    return true;
                }
                x = succ[x];
            }
            x == root
        });
        if reaches_root {
            let weight = (0..n)
                .filter(|&v| v != root)
                .map(|v| a.get(v, succ[v]))
                .product();
            out.push((succ, weight));
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            cursor[k] += 1;
            if cursor[k] < choices[k].len() {
                break;
            }
            cursor[k] = 0;
            k += 1;
        }
    }
}

pub fn brute_max_rst(a: &NonnegMatrix) -> Vec<f64> {
    (0..a.n())
        .map(|r| brute_itrees(a, r).iter().map(|t| t.1).fold(0.0, f64::max))
        .collect()
}

/// Stationary distribution of a row-stochastic matrix: solve
/// `(Pᵀ − I) π = 0` with one equation replaced by `Σ π = 1`.
pub fn stationary_distribution(p: &NonnegMatrix) -> Vec<f64> {
    let n = p.n();
    let mut m = DMatrix::from_fn(n, n, |i, j| p.get(j, i) - if i == j { 1.0 } else { 0.0 });
    let mut rhs = nalgebra::DVector::zeros(n);
    for j in 0..n {
        m[(n - 1, j)] = 1.0;
    }
    rhs[n - 1] = 1.0;
    let pi = m.lu().solve(&rhs).expect("irreducible chain");
    pi.iter().copied().collect()
}

/// Total weight of the i-trees by the matrix-tree theorem: the principal
/// minor of the out-Laplacian with row and column `root` deleted.
pub fn matrix_tree_sum(a: &NonnegMatrix, root: usize) -> f64 {
    let n = a.n();
    let idx: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let k = idx.len();
    if k == 0 {
        return 1.0;
    }
    let lap = DMatrix::from_fn(k, k, |r, c| {
        let (i, j) = (idx[r], idx[c]);
        if i == j {
            (0..n).filter(|&u| u != i).map(|u| a.get(i, u)).sum()
        } else {
            -a.get(i, j)
        }
    });
    lap.determinant()
}

pub fn rel_close(x: f64, y: f64, eps: f64) -> bool {
    (x - y).abs() <= eps * x.abs().max(y.abs()).max(1.0)
}
