//! Dequantization of the classical tree theorem.
//!
//! A max-stochastic matrix `A` is approximated by p-stochastic matrices
//! `A^(p)`: entries below 1 are kept, and the `l_i` unit entries of row `i`
//! are lowered to
//!
//! ```text
//! δ_i = ((1 − Σ_{j ∈ J_i} a_ij^p) / l_i)^(1/p),   J_i = { j : a_ij < 1 }
//! ```
//!
//! so that each row has p-norm 1. This is possible once `p ≥ P₀`, the first
//! exponent at which `Σ_{j ∈ J_i} a_ij^p < 1` for every row. As `p → ∞` the
//! p-semiring RST vector of `A^(p)` converges to the maximal RST vector of
//! `A`, with error at most `M_i^(1/p) − 1 + max_ij (a_ij − a^(p)_ij)` where
//! `M_i` counts the i-trees.

use crate::arborescence::{count_itrees, max_rst_vector, p_rst_vector};
use crate::digraph::WeightedDigraph;
use crate::error::{Error, Result};
use crate::semiring::{require_max_stochastic, NonnegMatrix, NonnegVector, Tolerance};

const LOG_DOMAIN_P: u32 = 64;

/// Largest exponent tried by [`p0_threshold`].
pub const MAX_P: u32 = 1 << 20;

/// Largest exponent of the default sweep.
pub const DEFAULT_SWEEP_CAP: u32 = 1024;

/// One point of a convergence run.
#[derive(Debug, Clone, PartialEq)]
pub struct DequantStep {
    pub p: u32,
    /// `A^(p)`.
    pub ap: NonnegMatrix,
    /// `w^(p)(A^(p))`.
    pub wp: NonnegVector,
    /// `max_ij (a_ij − a^(p)_ij)`.
    pub err_matrix: f64,
    /// `max_i |w^(p)_i − w^max_i(A)|`.
    pub err_vector: f64,
    /// Value of [`theoretical_error_bound`] at this `p`.
    pub bound: f64,
}

/// `a^p`, through the log domain for large `p` where the direct power would
/// underflow.
fn pow(a: f64, p: u32) -> f64 {
    if p > LOG_DOMAIN_P {
        (p as f64 * a.ln()).exp()
    } else {
        a.powi(p as i32)
    }
}

/// Per row: `(l_i, Σ_{j ∈ J_i} a_ij^p)`. Entries within `tol` of 1 count
/// as units; zeros belong to `J_i` but add nothing.
fn row_split(row: &[f64], p: u32, tol: Tolerance) -> (usize, f64) {
    let mut units = 0;
    let mut rest = 0.0;
    for &x in row {
        if tol.eq(x, 1.0) {
            units += 1;
        } else if x > 0.0 {
            rest += pow(x, p);
        }
    }
    (units, rest)
}

/// Smallest `p ≥ 1` with `Σ_{j ∈ J_i} a_ij^p < 1` for every row.
///
/// The inequality is strict so that every `δ_i` stays positive and `A^(p)`
/// keeps the support of `A`.
pub fn p0_threshold(a: &NonnegMatrix, tol: Tolerance) -> Result<u32> {
    a.require_square()?;
    require_max_stochastic(a, tol)?;
    let mut p0 = 1;
    for row in a.rows() {
        while row_split(row, p0, tol).1 >= 1.0 {
            p0 += 1;
            if p0 > MAX_P {
                return Err(Error::BelowThreshold {
                    p: MAX_P,
                    p0: MAX_P + 1,
                });
            }
        }
    }
    Ok(p0)
}

/// The p-stochastic approximant `A^(p)`.
pub fn build_ap(a: &NonnegMatrix, p: u32, tol: Tolerance) -> Result<NonnegMatrix> {
    if p == 0 {
        return Err(Error::InvalidP(p));
    }
    let p0 = p0_threshold(a, tol)?;
    if p < p0 {
        return Err(Error::BelowThreshold { p, p0 });
    }
    let n = a.n();
    let mut data = Vec::with_capacity(n * n);
    for row in a.rows() {
        let (units, rest) = row_split(row, p, tol);
        let delta = ((-rest).ln_1p() - (units as f64).ln()) / p as f64;
        let delta = delta.exp();
        data.extend(row.iter().map(|&x| if tol.eq(x, 1.0) { delta } else { x }));
    }
    NonnegMatrix::from_vec(n, n, data)
}

/// `max_i (M_i^(1/p) − 1) + max_ij (a_ij − a^(p)_ij)`.
pub fn theoretical_error_bound(
    a: &NonnegMatrix,
    p: u32,
    tol: Tolerance,
    cap: usize,
) -> Result<f64> {
    let ap = build_ap(a, p, tol)?;
    error_bound(a, &ap, p, cap)
}

fn error_bound(a: &NonnegMatrix, ap: &NonnegMatrix, p: u32, cap: usize) -> Result<f64> {
    let g = WeightedDigraph::from_matrix(a)?;
    let mut tree_term: f64 = 0.0;
    for root in 0..a.n() {
        let count = count_itrees(&g, root, cap)? as f64;
        tree_term = tree_term.max(count.powf(1.0 / p as f64) - 1.0);
    }
    Ok(tree_term + matrix_gap(a, ap))
}

fn matrix_gap(a: &NonnegMatrix, ap: &NonnegMatrix) -> f64 {
    a.as_slice()
        .iter()
        .zip(ap.as_slice())
        .map(|(x, y)| x - y)
        .fold(0.0, f64::max)
}

/// Builds `A^(p)` and `w^(p)(A^(p))` for each `p` and measures both against
/// `A` and `w^max(A)`. Steps come back sorted by `p`.
pub fn convergence_run(
    a: &NonnegMatrix,
    p_values: &[u32],
    tol: Tolerance,
    cap: usize,
) -> Result<Vec<DequantStep>> {
    crate::digraph::require_irreducible(a)?;
    let w_max = max_rst_vector(a)?.vector;
    let mut ps = p_values.to_vec();
    ps.sort_unstable();
    ps.dedup();
    ps.into_iter()
        .map(|p| {
            let ap = build_ap(a, p, tol)?;
            let wp = p_rst_vector(&ap, p, cap)?.vector;
            Ok(DequantStep {
                p,
                err_matrix: matrix_gap(a, &ap),
                err_vector: wp.max_abs_diff(&w_max),
                bound: error_bound(a, &ap, p, cap)?,
                ap,
                wp,
            })
        })
        .collect()
}

/// `{P₀, 2P₀, 4P₀, …}` up to `cap`.
pub fn default_sweep(p0: u32, cap: u32) -> Vec<u32> {
    std::iter::successors(Some(p0.max(1)), |&p| p.checked_mul(2))
        .take_while(|&p| p <= cap)
        .collect()
}

/// Whether both error columns are non-increasing in `p` (up to `tol`).
pub fn is_monotone(steps: &[DequantStep], tol: Tolerance) -> bool {
    steps.windows(2).all(|w| {
        tol.le(w[1].err_matrix, w[0].err_matrix) && tol.le(w[1].err_vector, w[0].err_vector)
    })
}

/// Right-hand side of the entrywise bound `a_ik − a^(p)_ik ≤ 1 − δ_i ≤
/// 1 − ((1 − m_i^p (n − l_i)) / l_i)^(1/p)`, maximized over rows whose
/// inner term is nonnegative. `m_i` is the largest entry below 1.
pub fn matrix_error_bound(a: &NonnegMatrix, p: u32, tol: Tolerance) -> Result<f64> {
    a.require_square()?;
    require_max_stochastic(a, tol)?;
    let n = a.n();
    let mut bound: f64 = 0.0;
    for row in a.rows() {
        let units = row.iter().filter(|&&x| tol.eq(x, 1.0)).count();
        let m = row
            .iter()
            .copied()
            .filter(|&x| !tol.eq(x, 1.0))
            .fold(0.0, f64::max);
        let inner = (1.0 - pow(m, p) * (n - units) as f64) / units as f64;
        let row_bound = if inner >= 0.0 {
            1.0 - inner.powf(1.0 / p as f64)
        } else {
            1.0
        };
        bound = bound.max(row_bound);
    }
    Ok(bound)
}
