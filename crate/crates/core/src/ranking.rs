//! Ranking with maximal RST vectors.
//!
//! For a pairwise-comparison matrix `A` (`a_ij` scores option `i` against
//! option `j`), the maximal RST vector of `Aᵀ` weighs each option by its
//! best chain of relative scores against all others. It solves the
//! generalized eigen-equation `A ⊗ w = D w` with `D` the column maxima of
//! `A`.
//!
//! Judges and competitors: with judge scores `J` (m×n) and competitor
//! scores `C` (n×m), each row scaled to maximum 1, the composite
//! `Ĉ = C ⊗ J` is max-stochastic and its maximal RST vector ranks the
//! competitors.

use crate::arborescence::{max_rst_vector, relative_residual, verify_left_max_eigen};
use crate::digraph::require_irreducible;
use crate::error::{Error, Result};
use crate::semiring::{
    is_max_stochastic, max_matmul, max_matvec_transposed, NonnegMatrix, NonnegVector, Tolerance,
};

#[derive(Debug, Clone, PartialEq)]
pub struct RankingResult {
    pub weights: NonnegVector,
    /// Options by descending weight; equal weights keep ascending index.
    pub order: Vec<usize>,
    /// Maximal runs of `order` with equal weight (within tolerance).
    pub ties: Vec<Vec<usize>>,
    pub residual: f64,
}

impl RankingResult {
    fn new(weights: NonnegVector, residual: f64, tol: Tolerance) -> Self {
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_by(|&i, &j| weights[j].total_cmp(&weights[i]).then(i.cmp(&j)));

        let mut ties: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match ties.last_mut() {
                Some(group) if tol.eq(weights[group[0]], weights[i]) => group.push(i),
                _ => ties.push(vec![i]),
            }
        }
        // equal-weight runs are reported in ascending index order
        for group in &mut ties {
            group.sort_unstable();
        }
        order = ties.iter().flatten().copied().collect();

        RankingResult {
            weights,
            order,
            ties,
            residual,
        }
    }
}

/// True iff every entry is positive and `a_ij · a_ji = 1` within `tol`.
pub fn is_sr_matrix(a: &NonnegMatrix, tol: Tolerance) -> bool {
    let Ok(n) = a.require_square() else {
        return false;
    };
    (0..n).all(|i| {
        (0..n).all(|j| {
            let product = a.get(i, j) * a.get(j, i);
            a.get(i, j) > 0.0 && (product - 1.0).abs() <= tol.rel_eps()
        })
    })
}

/// `max_i |(Aᵀ ⊗ w)_i − d_i w_i| / max(d_i w_i, 1)` with `d_i` the row
/// maxima of `A`.
pub fn generalized_eigen_residual(a: &NonnegMatrix, w: &NonnegVector) -> Result<f64> {
    a.require_square()?;
    let d = a.row_maxima();
    if let Some(row) = d.iter().position(|&x| x == 0.0) {
        return Err(Error::ZeroRow(row));
    }
    let image = max_matvec_transposed(a, w)?;
    let target = d.iter().zip(w.iter()).map(|(d, w)| d * w);
    Ok(relative_residual(image.iter(), target))
}

/// Ranks the options of a comparison matrix by the maximal RST vector of
/// `Aᵀ`. The residual measures `A ⊗ w = D w`.
pub fn ahp_rank(a: &NonnegMatrix, tol: Tolerance) -> Result<RankingResult> {
    a.require_square()?;
    require_irreducible(a)?;
    let at = a.transpose();
    let weights = max_rst_vector(&at)?.vector;
    let residual = generalized_eigen_residual(&at, &weights)?;
    Ok(RankingResult::new(weights, residual, tol))
}

/// `e_A(x) = max_ij a_ij x_j / x_i`.
pub fn error_functional(a: &NonnegMatrix, x: &NonnegVector) -> Result<f64> {
    let n = a.require_square()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if let Some(k) = x.iter().position(|v| v == 0.0) {
        return Err(Error::ZeroEntry(k));
    }
    Ok((0..n)
        .flat_map(|i| (0..n).map(move |j| a.get(i, j) * x[j] / x[i]))
        .fold(0.0, f64::max))
}

fn require_normalized(m: &NonnegMatrix, name: &'static str, tol: Tolerance) -> Result<()> {
    match m
        .row_maxima()
        .into_iter()
        .enumerate()
        .find(|(_, max)| !tol.eq(*max, 1.0))
    {
        Some((row, max)) => Err(Error::NotNormalized {
            matrix: name,
            row,
            max,
        }),
        None => Ok(()),
    }
}

/// Composes judge scores `J` (m×n) and competitor scores `C` (n×m) into
/// `Ĉ = C ⊗ J` and ranks the competitors by its maximal RST vector.
///
/// The residual is that of `Ĉᵀ ⊗ w = w`.
pub fn judge_competitor_rank(
    judges: &NonnegMatrix,
    competitors: &NonnegMatrix,
    tol: Tolerance,
) -> Result<(NonnegMatrix, RankingResult)> {
    if judges.nrows() != competitors.ncols() || judges.ncols() != competitors.nrows() {
        return Err(Error::DimensionMismatch {
            expected: judges.ncols(),
            found: competitors.nrows(),
        });
    }
    require_normalized(judges, "judge matrix", tol)?;
    require_normalized(competitors, "competitor matrix", tol)?;
    let composite = max_matmul(competitors, judges)?;
    debug_assert!(is_max_stochastic(&composite, tol));
    require_irreducible(&composite)?;
    let weights = max_rst_vector(&composite)?.vector;
    let residual = verify_left_max_eigen(&composite, &weights)?;
    Ok((composite, RankingResult::new(weights, residual, tol)))
}
