//! Max-algebra tools for nonnegative matrices.
//!
//! The central object is the *maximal rooted spanning tree vector* of a
//! square nonnegative matrix `A`: entry `i` is the largest product of edge
//! weights over spanning trees of `D(A)` directed towards node `i`. For an
//! irreducible max-stochastic `A` (every row maximum is 1) this vector is a
//! left max-times eigenvector, `Aᵀ ⊗ w = w`, mirroring the classical Markov
//! chain tree theorem.
//!
//! Modules:
//!
//! * [`semiring`]: max-times and p-semiring arithmetic, stochasticity.
//! * [`digraph`]: graph view of a matrix, components, rooted trees.
//! * [`spectral`]: `μ(A)`, Kleene star, critical structure.
//! * [`arborescence`]: RST vectors in max, sum and p arithmetic.
//! * [`dequantize`]: p-stochastic approximants converging to the max case.
//! * [`ranking`]: pairwise-comparison and judge/competitor rankings.
//! * [`io`]: JSON and CSV matrix files.
//! * [`random`]: seeded fixture generators.
//!
//! Nodes are numbered from 0 in the API and from 1 in files and reports.
//!
//! ```
//! use maxtree::{max_rst_vector, NonnegMatrix};
//!
//! let a = NonnegMatrix::from_rows(vec![
//!     vec![0.5, 1.0],
//!     vec![1.0, 0.25],
//! ])?;
//! let report = max_rst_vector(&a)?;
//! assert_eq!(report.vector.as_slice(), &[1.0, 1.0]);
//! assert_eq!(report.residual, 0.0);
//! # Ok::<(), maxtree::Error>(())
//! ```

pub mod arborescence;
pub mod dequantize;
pub mod digraph;
mod error;
pub mod io;
pub mod random;
pub mod ranking;
pub mod semiring;
pub mod spectral;

pub use arborescence::{
    count_itrees, enumerate_itrees, max_arborescence, max_rst_vector, p_rst_vector, sum_rst_vector,
    verify_left_max_eigen, RstReport, DEFAULT_ENUMERATION_CAP,
};
pub use dequantize::{
    build_ap, convergence_run, p0_threshold, theoretical_error_bound, DequantStep,
};
pub use digraph::{
    is_irreducible, saturation_digraph, tree_path, validate_itree, Edge, ITree, WeightedDigraph,
};
pub use error::{Error, Result};
pub use ranking::{
    ahp_rank, error_functional, generalized_eigen_residual, is_sr_matrix, judge_competitor_rank,
    RankingResult,
};
pub use semiring::{
    is_max_stochastic, is_p_stochastic, max_matmul, max_matvec, normalize_max_stochastic, p_add,
    NonnegMatrix, NonnegVector, Tolerance,
};
pub use spectral::{
    critical_column_eigenvectors, critical_structure, kleene_star, max_cycle_geometric_mean,
    min_critical_row, reduced_matrix, verify_vis_kleene_blocks, CriticalStructure, KleeneStar,
};

// The guide's and README's code samples compile and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/max-algebra.md")]
    mod max_algebra {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/kleene.md")]
    mod kleene {}
    #[doc = include_str!("../../../book/src/dequantization.md")]
    mod dequantization {}
    #[doc = include_str!("../../../book/src/ranking.md")]
    mod ranking {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
