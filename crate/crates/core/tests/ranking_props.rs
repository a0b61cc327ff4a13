use maxtree::arborescence::max_rst_vector;
use maxtree::random;
use maxtree::ranking::{ahp_rank, generalized_eigen_residual, is_sr_matrix, judge_competitor_rank};
use maxtree::semiring::{is_max_stochastic, max_matmul, NonnegMatrix, Tolerance};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generalized_eigen_equation(seed in any::<u64>(), n in 1usize..7) {
        let a = random::positive(&mut random::rng(seed), n, 0.01, 5.0);
        let w = max_rst_vector(&a).unwrap().vector;
        prop_assert!(generalized_eigen_residual(&a, &w).unwrap() <= 1e-12);
    }

    #[test]
    fn sparse_irreducible_also_solves_it(seed in any::<u64>(), n in 1usize..7) {
        let a = random::irreducible(&mut random::rng(seed), n, 0.3);
        let w = max_rst_vector(&a).unwrap().vector;
        prop_assert!(generalized_eigen_residual(&a, &w).unwrap() <= 1e-12);
    }

    #[test]
    fn ahp_is_scale_invariant_and_deterministic(seed in any::<u64>(), n in 1usize..7, c in 0.01..100.0f64) {
        let tol = Tolerance::default();
        let a = random::sr_matrix(&mut random::rng(seed), n, 0.3);
        prop_assert!(is_sr_matrix(&a, tol));
        let r = ahp_rank(&a, tol).unwrap();
        prop_assert!(r.residual <= 1e-12);
        prop_assert_eq!(&ahp_rank(&a, tol).unwrap(), &r);
        // scaling all entries scales every tree by c^(n-1) and keeps the order
        let scaled = ahp_rank(&a.scale(c).unwrap(), tol).unwrap();
        prop_assert_eq!(&scaled.order, &r.order);
        let mut sorted = r.order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());
        for pair in r.order.windows(2) {
            prop_assert!(r.weights[pair[0]] >= r.weights[pair[1]] * (1.0 - 1e-9));
        }
    }

    #[test]
    fn consistent_matrix_recovers_score_order(seed in any::<u64>(), n in 1usize..7) {
        let tol = Tolerance::default();
        let scores = random::positive(&mut random::rng(seed), n, 0.1, 10.0).row(0).to_vec();
        let a = NonnegMatrix::from_fn(n, |i, j| scores[i] / scores[j]).unwrap();
        let r = ahp_rank(&a, tol).unwrap();
        for pair in r.order.windows(2) {
            prop_assert!(scores[pair[0]] >= scores[pair[1]] * (1.0 - 1e-9));
        }
    }

    #[test]
    fn judges_compose_to_max_stochastic(seed in any::<u64>(), m in 1usize..5, n in 1usize..6) {
        let tol = Tolerance::default();
        let mut rng = random::rng(seed);
        let j = random::normalized_scores(&mut rng, m, n);
        let c = random::normalized_scores(&mut rng, n, m);
        let chat = max_matmul(&c, &j).unwrap();
        prop_assert!(is_max_stochastic(&chat, tol));
        if let Ok((composite, r)) = judge_competitor_rank(&j, &c, tol) {
            prop_assert_eq!(composite, chat);
            prop_assert!(r.residual <= 1e-12);
        }
    }
}
