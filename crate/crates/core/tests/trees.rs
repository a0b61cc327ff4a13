#![allow(clippy::needless_range_loop)]

mod common;

use common::{brute_itrees, brute_max_rst, matrix_tree_sum, rel_close, stationary_distribution};
use maxtree::arborescence::{
    count_itrees, enumerate_itrees, max_arborescence, max_rst_vector, p_rst_vector, sum_rst_vector,
    verify_left_max_eigen, DEFAULT_ENUMERATION_CAP,
};
use maxtree::digraph::{tree_path, validate_itree, WeightedDigraph};
use maxtree::random;
use maxtree::semiring::{max_matvec_transposed, normalize_max_stochastic, NonnegMatrix, Tolerance};
use maxtree::spectral::{critical_structure, kleene_star, min_critical_row};
use proptest::prelude::*;

const CAP: usize = DEFAULT_ENUMERATION_CAP;

fn fixture(seed: u64, n: usize, density: f64) -> NonnegMatrix {
    random::irreducible_max_stochastic(&mut random::rng(seed), n, density)
}

fn graph(a: &NonnegMatrix) -> WeightedDigraph {
    WeightedDigraph::from_matrix(a).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn max_rst_matches_brute_force(seed in any::<u64>(), n in 1usize..7, density in 0.1..1.0f64) {
        let a = random::irreducible(&mut random::rng(seed), n, density);
        let report = max_rst_vector(&a).unwrap();
        let expected = brute_max_rst(&a);
        for i in 0..n {
            prop_assert!(rel_close(report.vector[i], expected[i], 1e-12));
            let t = &report.witnesses[i];
            prop_assert_eq!(t.root(), i);
            prop_assert!(validate_itree(&graph(&a), t));
            prop_assert_eq!(t.weight(), report.vector[i]);
        }
    }

    #[test]
    fn witness_is_lexicographically_first_maximizer(seed in any::<u64>(), n in 2usize..6) {
        // coarse weights make ties common
        let mut rng = random::rng(seed);
        let raw = random::irreducible(&mut rng, n, 0.6);
        let a = raw.map(|x| if x > 0.0 { (x * 4.0).ceil() / 4.0 } else { 0.0 }).unwrap();
        let g = graph(&a);
        for root in 0..n {
            let best = enumerate_itrees(&g, root, CAP)
                .unwrap()
                .map(|t| t.weight())
                .fold(0.0, f64::max);
            let first = enumerate_itrees(&g, root, CAP)
                .unwrap()
                .find(|t| rel_close(t.weight(), best, 1e-12))
                .unwrap();
            let witness = max_arborescence(&g, root).unwrap();
            prop_assert_eq!(witness.edges(), first.edges());
        }
    }

    #[test]
    fn enumeration_is_complete_and_ordered(seed in any::<u64>(), n in 1usize..6, density in 0.2..1.0f64) {
        let a = random::irreducible(&mut random::rng(seed), n, density);
        let g = graph(&a);
        for root in 0..n {
            let trees: Vec<_> = enumerate_itrees(&g, root, CAP).unwrap().collect();
            prop_assert_eq!(trees.len(), brute_itrees(&a, root).len());
            prop_assert_eq!(trees.len(), count_itrees(&g, root, CAP).unwrap());
            prop_assert!(trees.windows(2).all(|w| w[0].edges() < w[1].edges()));
            for t in &trees {
                prop_assert!(validate_itree(&g, t));
                let path = tree_path(t, (root + 1) % n).unwrap();
                if n > 1 {
                    prop_assert_eq!(path.last().copied(), Some(root));
                }
            }
            let total: f64 = trees.iter().map(|t| t.weight()).sum();
            prop_assert!(rel_close(total, matrix_tree_sum(&a, root), 1e-9));
        }
    }

    #[test]
    fn max_mctt_two_sided(seed in any::<u64>(), n in 1usize..8, density in 0.1..1.0f64) {
        let a = fixture(seed, n, density);
        let w = max_rst_vector(&a).unwrap().vector;
        let image = max_matvec_transposed(&a, &w).unwrap();
        for i in 0..n {
            // Aᵀ ⊗ w ≥ w and Aᵀ ⊗ w ≤ w separately
            prop_assert!(image[i] >= w[i] * (1.0 - 1e-12));
            prop_assert!(image[i] <= w[i] * (1.0 + 1e-12));
        }
        prop_assert!(verify_left_max_eigen(&a, &w).unwrap() <= 1e-12);
    }

    #[test]
    fn scaling_covariance(seed in any::<u64>(), n in 1usize..7) {
        let a = random::irreducible(&mut random::rng(seed), n, 0.5);
        let (ahat, d) = normalize_max_stochastic(&a).unwrap();
        let det: f64 = d.iter().product();
        let w = max_rst_vector(&a).unwrap().vector;
        let what = max_rst_vector(&ahat).unwrap().vector;
        for i in 0..n {
            prop_assert!(rel_close(what[i], d[i] / det * w[i], 1e-12));
        }
    }

    #[test]
    fn classical_tree_theorem(seed in any::<u64>(), n in 1usize..7, density in 0.1..1.0f64) {
        let p = random::irreducible_row_stochastic(&mut random::rng(seed), n, density);
        let report = sum_rst_vector(&p, CAP).unwrap();
        prop_assert!(report.residual < 1e-12);
        let pi = stationary_distribution(&p);
        let w = report.normalized();
        for i in 0..n {
            prop_assert!((w[i] - pi[i]).abs() <= 1e-10);
        }
    }

    #[test]
    fn p_rst_interpolates(seed in any::<u64>(), n in 1usize..6, p in 1u32..200) {
        let a = random::irreducible(&mut random::rng(seed), n, 0.6);
        let g = graph(&a);
        let w_max = max_rst_vector(&a).unwrap().vector;
        let w_p = p_rst_vector(&a, p, CAP).unwrap().vector;
        for i in 0..n {
            let count = count_itrees(&g, i, CAP).unwrap() as f64;
            prop_assert!(w_p[i] >= w_max[i] * (1.0 - 1e-12));
            prop_assert!(w_p[i] <= w_max[i] * count.powf(1.0 / p as f64) * (1.0 + 1e-12));
        }
        if p == 1 {
            let w_sum = sum_rst_vector(&a, CAP).unwrap().vector;
            prop_assert!(w_p.max_abs_diff(&w_sum) <= 1e-12 * w_sum.iter().fold(1.0, f64::max));
        }
    }

    #[test]
    fn p_rst_of_p_stochastic_is_eigenvector(seed in any::<u64>(), n in 1usize..6, p in 1u32..100) {
        let a = random::irreducible(&mut random::rng(seed), n, 0.6);
        let a = NonnegMatrix::from_fn(n, |i, j| {
            a.get(i, j) / maxtree::semiring::p_sum(a.row(i).iter().copied(), p)
        }).unwrap();
        prop_assert!(p_rst_vector(&a, p, CAP).unwrap().residual <= 1e-9);
    }

    #[test]
    fn bound_part_one(seed in any::<u64>(), n in 1usize..8, density in 0.1..1.0f64) {
        let a = fixture(seed, n, density);
        let (w, mcr, _) = bound_inputs(&a);
        for j in 0..n {
            prop_assert!(w[j] <= mcr[j] * (1.0 + 1e-9));
        }
    }

    #[test]
    fn bound_part_two(seed in any::<u64>(), n in 1usize..8) {
        let (a, _) = random::with_critical_components(&mut random::rng(seed), n, 1, 0.4);
        let (w, mcr, critical) = bound_inputs(&a);
        for j in 0..n {
            prop_assert!(rel_close(w[j], mcr[j], 1e-9));
        }
        for &c in &critical {
            prop_assert!(rel_close(w[c], 1.0, 1e-12));
        }
    }

    #[test]
    fn bound_part_three(seed in any::<u64>(), n in 2usize..8) {
        let (a, _) = random::with_critical_components(&mut random::rng(seed), n, 2, 0.4);
        let (w, mcr, critical) = bound_inputs(&a);
        for &c in &critical {
            prop_assert!(rel_close(w[c], mcr[c], 1e-9));
        }
    }
}

fn bound_inputs(a: &NonnegMatrix) -> (Vec<f64>, Vec<f64>, Vec<usize>) {
    let tol = Tolerance::default();
    let w = max_rst_vector(a).unwrap().vector.into_vec();
    let ks = kleene_star(a, tol).unwrap();
    let cs = critical_structure(a, tol).unwrap();
    let mcr = min_critical_row(&ks, &cs).unwrap().into_vec();
    (w, mcr, cs.critical_nodes)
}

#[test]
fn three_components_can_break_equality() {
    let a = NonnegMatrix::from_rows(vec![
        vec![1.0, 0.75, 5.0 / 6.0, 0.0],
        vec![0.5, 1.0, 0.25, 0.9],
        vec![0.0, 0.0, 1.0, 0.875],
        vec![1.0 / 3.0, 0.0, 1.0, 0.8],
    ])
    .unwrap();
    let (w, mcr, critical) = bound_inputs(&a);
    assert_eq!(critical, vec![0, 1, 2]);
    assert!(critical.iter().any(|&c| !rel_close(w[c], mcr[c], 1e-9)));
}
