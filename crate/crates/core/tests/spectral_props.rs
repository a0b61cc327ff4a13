#![allow(clippy::needless_range_loop)]

mod common;

use common::{brute_max_cycle_mean, brute_path_star, rel_close};
use maxtree::random;
use maxtree::semiring::{max_matmul, max_matvec, NonnegMatrix, Tolerance};
use maxtree::spectral::{
    critical_column_eigenvectors, critical_structure, kleene_star, max_cycle_geometric_mean,
    min_critical_row, reduced_matrix, verify_vis_kleene_blocks,
};
use maxtree::Error;
use proptest::prelude::*;

fn fixture(seed: u64, n: usize, density: f64) -> NonnegMatrix {
    random::irreducible_max_stochastic(&mut random::rng(seed), n, density)
}

/// Sparse random matrix, possibly reducible or acyclic.
fn sparse(seed: u64, n: usize) -> NonnegMatrix {
    let mut rng = random::rng(seed);
    let dense = random::positive(&mut rng, n, 0.05, 3.0);
    let mask = random::positive(&mut rng, n, 0.0, 1.0);
    NonnegMatrix::from_fn(n, |i, j| {
        if mask.get(i, j) < 0.35 {
            dense.get(i, j)
        } else {
            0.0
        }
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mu_matches_cycle_enumeration(seed in any::<u64>(), n in 1usize..7) {
        let a = sparse(seed, n);
        match (max_cycle_geometric_mean(&a), brute_max_cycle_mean(&a)) {
            (Ok(mu), Some(expected)) => prop_assert!(rel_close(mu, expected, 1e-12)),
            (Err(Error::NoCycles), None) => {}
            (got, expected) => prop_assert!(false, "{:?} vs {:?}", got, expected),
        }
    }

    #[test]
    fn star_is_heaviest_path(seed in any::<u64>(), n in 1usize..7, density in 0.1..0.9f64) {
        let a = fixture(seed, n, density);
        let ks = kleene_star(&a, Tolerance::default()).unwrap();
        let paths = brute_path_star(&a);
        for i in 0..n {
            for j in 0..n {
                prop_assert!(rel_close(ks.get(i, j), paths[i][j], 1e-12));
            }
        }
        prop_assert!(ks.positive);
    }

    #[test]
    fn star_closure_laws(seed in any::<u64>(), n in 1usize..8) {
        let a = fixture(seed, n, 0.4);
        let s = kleene_star(&a, Tolerance::default()).unwrap().star;
        // S = I ⊕ A ⊗ S and S ⊗ S = S
        let a_s = max_matmul(&a, &s).unwrap();
        let rhs = NonnegMatrix::from_fn(n, |i, j| {
            f64::max(if i == j { 1.0 } else { 0.0 }, a_s.get(i, j))
        }).unwrap();
        prop_assert!(s.max_abs_diff(&rhs).unwrap() < 1e-12);
        prop_assert!(s.max_abs_diff(&max_matmul(&s, &s).unwrap()).unwrap() < 1e-12);
        for i in 0..n {
            for j in 0..n {
                prop_assert!(s.get(i, j) >= a.get(i, j) - 1e-15);
            }
        }
    }

    #[test]
    fn star_of_scaled_matrix(seed in any::<u64>(), n in 2usize..7) {
        // after dividing by μ every cycle weight is at most 1
        let a = sparse(seed, n);
        if let Ok(mu) = max_cycle_geometric_mean(&a) {
            let b = a.scale(1.0 / mu).unwrap();
            let ks = kleene_star(&b, Tolerance::default()).unwrap();
            let paths = brute_path_star(&b);
            for i in 0..n {
                for j in 0..n {
                    prop_assert!(rel_close(ks.get(i, j), paths[i][j], 1e-12));
                }
            }
        }
    }

    #[test]
    fn critical_nodes_lie_on_mean_attaining_cycles(seed in any::<u64>(), n in 1usize..7, k in 1usize..4) {
        let k = k.min(n);
        let (a, sets) = random::with_critical_components(&mut random::rng(seed), n, k, 0.4);
        let cs = critical_structure(&a, Tolerance::default()).unwrap();
        prop_assert!(rel_close(cs.mu, 1.0, 1e-12));
        prop_assert_eq!(&cs.dc_components, &sets);
        let mut nodes: Vec<usize> = sets.concat();
        nodes.sort_unstable();
        prop_assert_eq!(&cs.critical_nodes, &nodes);
        prop_assert_eq!(cs.r_prime(), n - nodes.len() + k);
        // components of D^{C*} partition the nodes
        let mut all: Vec<usize> = cs.dcstar_components.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn column_min_equals_critical_row_min(seed in any::<u64>(), n in 1usize..8) {
        let a = fixture(seed, n, 0.4);
        let tol = Tolerance::default();
        let ks = kleene_star(&a, tol).unwrap();
        let cs = critical_structure(&a, tol).unwrap();
        let v = min_critical_row(&ks, &cs).unwrap();
        for j in 0..n {
            let col_min = (0..n).map(|i| ks.get(i, j)).fold(f64::INFINITY, f64::min);
            prop_assert!(rel_close(v[j], col_min, 1e-12));
        }
    }

    #[test]
    fn critical_columns_are_eigenvectors(seed in any::<u64>(), n in 1usize..8) {
        let a = fixture(seed, n, 0.4);
        let tol = Tolerance::default();
        let ks = kleene_star(&a, tol).unwrap();
        let cs = critical_structure(&a, tol).unwrap();
        let vecs = critical_column_eigenvectors(&ks, &cs);
        prop_assert_eq!(vecs.len(), cs.dc_components.len());
        for (_, v) in vecs {
            prop_assert!(max_matvec(&a, &v).unwrap().max_abs_diff(&v) < 1e-12);
        }
    }

    #[test]
    fn block_law(seed in any::<u64>(), n in 1usize..8, k in 1usize..4) {
        let k = k.min(n);
        let (a, _) = random::with_critical_components(&mut random::rng(seed), n, k, 0.4);
        let report = verify_vis_kleene_blocks(&a, Tolerance::default()).unwrap();
        prop_assert!(report.holds, "{:?}", report.violations);
        // diagonal blocks of critical components carry 1
        let cs = critical_structure(&a, Tolerance::default()).unwrap();
        let red = reduced_matrix(&a, &cs).unwrap();
        for (mu, comp) in cs.dcstar_components.iter().enumerate() {
            if cs.is_critical(comp[0]) {
                prop_assert_eq!(red.get(mu, mu), 1.0);
            }
        }
    }
}

#[test]
fn block_law_rejects_unnormalized_input() {
    let a = NonnegMatrix::from_rows(vec![vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
    assert!(matches!(
        verify_vis_kleene_blocks(&a, Tolerance::default()),
        Err(Error::MuNotOne(_))
    ));
}
