//! Max-algebraic spectral theory: the maximum cycle geometric mean `μ(A)`,
//! the Kleene star `A*`, and the critical structure of a matrix.
//!
//! `μ(A)` is the largest eigenvalue of `A` in max-times arithmetic. When
//! `μ(A) ≤ 1` the series `I ⊕ A ⊕ A² ⊕ …` stabilizes after `n − 1` terms
//! and `a*_ij` is the heaviest path weight from `i` to `j`.
//!
//! Cycles whose geometric mean attains `μ(A)` are *critical*. Their nodes
//! and edges make up the critical digraph `D^C(A)`. Adding every
//! non-critical node as an isolated singleton gives `D^{C*}(A)`, whose
//! components `N_1, …, N_r'` index the reduced matrix `A^red`.

use crate::digraph::WeightedDigraph;
use crate::error::{Error, Result};
use crate::semiring::{NonnegMatrix, NonnegVector, Tolerance};

/// Maximum geometric mean over all directed cycles of `D(A)`.
///
/// Runs Karp's maximum mean cycle algorithm on log-weights inside every
/// strongly connected component.
pub fn max_cycle_geometric_mean(a: &NonnegMatrix) -> Result<f64> {
    let g = WeightedDigraph::from_matrix(a)?;
    let mut best: Option<f64> = None;
    for component in g.strongly_connected_components() {
        if let Some(lambda) = karp_max_mean(&g, &component) {
            best = Some(best.map_or(lambda, |b: f64| b.max(lambda)));
        }
    }
    best.map(f64::exp).ok_or(Error::NoCycles)
}

/// Maximum mean log-weight of a cycle inside one strongly connected
/// component, or `None` if the component carries no cycle.
fn karp_max_mean(g: &WeightedDigraph, component: &[usize]) -> Option<f64> {
    let k = component.len();
    let mut local = vec![usize::MAX; g.node_count()];
    for (ix, &v) in component.iter().enumerate() {
        local[v] = ix;
    }
    // in-edges restricted to the component, in local indices
    let mut incoming: Vec<Vec<(usize, f64)>> = vec![Vec::new(); k];
    for &v in component {
        for &(h, w) in g.out_edges(v) {
            if local[h] != usize::MAX {
                incoming[local[h]].push((local[v], w.ln()));
            }
        }
    }
    if incoming.iter().all(Vec::is_empty) {
        return None;
    }

    // walks[m][v]: heaviest walk of exactly m edges from node 0 to v
    let mut walks = vec![vec![f64::NEG_INFINITY; k]; k + 1];
    walks[0][0] = 0.0;
    for m in 1..=k {
        for v in 0..k {
            walks[m][v] = incoming[v]
                .iter()
                .map(|&(u, w)| walks[m - 1][u] + w)
                .fold(f64::NEG_INFINITY, f64::max);
        }
    }

    (0..k)
        .filter(|&v| walks[k][v] > f64::NEG_INFINITY)
        .map(|v| {
            (0..k)
                .filter(|&m| walks[m][v] > f64::NEG_INFINITY)
                .map(|m| (walks[k][v] - walks[m][v]) / (k - m) as f64)
                .fold(f64::INFINITY, f64::min)
        })
        .fold(None, |acc: Option<f64>, x| {
            Some(acc.map_or(x, |a| a.max(x)))
        })
}

/// The Kleene star `A* = I ⊕ A ⊕ … ⊕ A^{n−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KleeneStar {
    pub star: NonnegMatrix,
    /// True iff every entry of `A*` is positive, which happens exactly when
    /// `A` is irreducible.
    pub positive: bool,
}

impl KleeneStar {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.star.get(i, j)
    }

    pub fn column(&self, j: usize) -> NonnegVector {
        NonnegVector::new((0..self.star.n()).map(|i| self.star.get(i, j)).collect())
            .expect("star entries are nonnegative")
    }
}

/// Kleene star of a matrix with `μ(A) ≤ 1` (within `tol`).
///
/// Acyclic matrices are accepted; their series is finite regardless of
/// `μ`.
pub fn kleene_star(a: &NonnegMatrix, tol: Tolerance) -> Result<KleeneStar> {
    kleene_star_with(a, tol, false)
}

/// Like [`kleene_star`]; with `renormalize` set, a matrix with `μ(A) > 1`
/// is first scaled by `1/μ(A)` instead of being rejected.
pub fn kleene_star_with(a: &NonnegMatrix, tol: Tolerance, renormalize: bool) -> Result<KleeneStar> {
    let n = a.require_square()?;
    let mu = match max_cycle_geometric_mean(a) {
        Ok(mu) => Some(mu),
        Err(Error::NoCycles) => None,
        Err(e) => return Err(e),
    };
    let scaled;
    let a = match mu {
        Some(mu) if mu > 1.0 && renormalize => {
            scaled = a.scale(1.0 / mu)?;
            &scaled
        }
        Some(mu) if !tol.le(mu, 1.0) => return Err(Error::SeriesDiverges(mu)),
        _ => a,
    };
    Ok(closure(a, n))
}

/// Floyd–Warshall closure of `I ⊕ A`. Assumes no cycle is heavier than 1
/// (up to rounding).
fn closure(a: &NonnegMatrix, n: usize) -> KleeneStar {
    let mut s = a.as_slice().to_vec();
    for i in 0..n {
        s[i * n + i] = s[i * n + i].max(1.0);
    }
    for k in 0..n {
        for i in 0..n {
            let ik = s[i * n + k];
            if ik == 0.0 {
                continue;
            }
            for j in 0..n {
                let through = ik * s[k * n + j];
                if through > s[i * n + j] {
                    s[i * n + j] = through;
                }
            }
        }
    }
    for i in 0..n {
        s[i * n + i] = 1.0;
    }
    let positive = s.iter().all(|&x| x > 0.0);
    KleeneStar {
        star: NonnegMatrix::from_vec(n, n, s).expect("closure entries are finite"),
        positive,
    }
}

/// Critical cycles, nodes, edges, and the component partitions of `D^C(A)`
/// and `D^{C*}(A)`. Node indices are 0-based; every component list is
/// sorted and components are ordered by their smallest node.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalStructure {
    pub mu: f64,
    pub critical_nodes: Vec<usize>,
    pub critical_edges: Vec<(usize, usize)>,
    /// `A^C`: `a_ij` on critical edges, 0 elsewhere.
    pub critical_matrix: NonnegMatrix,
    pub dc_components: Vec<Vec<usize>>,
    pub dcstar_components: Vec<Vec<usize>>,
}

impl CriticalStructure {
    /// Number of components of `D^{C*}(A)`.
    pub fn r_prime(&self) -> usize {
        self.dcstar_components.len()
    }

    pub fn is_critical(&self, v: usize) -> bool {
        self.critical_nodes.binary_search(&v).is_ok()
    }

    /// Index of the `D^{C*}` component containing each node.
    pub fn component_of(&self) -> Vec<usize> {
        let n = self.critical_matrix.n();
        let mut owner = vec![0; n];
        for (c, nodes) in self.dcstar_components.iter().enumerate() {
            for &v in nodes {
                owner[v] = c;
            }
        }
        owner
    }
}

/// An edge `(i, j)` is critical iff `b_ij · b*_ji = 1` where `B = A/μ(A)`.
pub fn critical_structure(a: &NonnegMatrix, tol: Tolerance) -> Result<CriticalStructure> {
    let n = a.require_square()?;
    let mu = max_cycle_geometric_mean(a)?;
    let b = a.scale(1.0 / mu)?;
    let b_star = closure(&b, n);

    let mut critical_edges = Vec::new();
    for i in 0..n {
        for j in b.support(i) {
            if tol.eq(b.get(i, j) * b_star.get(j, i), 1.0) {
                critical_edges.push((i, j));
            }
        }
    }

    let mut is_critical = vec![false; n];
    for &(i, j) in &critical_edges {
        is_critical[i] = true;
        is_critical[j] = true;
    }
    let critical_nodes: Vec<usize> = (0..n).filter(|&v| is_critical[v]).collect();

    let mut cm = vec![0.0; n * n];
    for &(i, j) in &critical_edges {
        cm[i * n + j] = a.get(i, j);
    }
    let critical_matrix = NonnegMatrix::from_vec(n, n, cm)?;

    let mut dc_components: Vec<Vec<usize>> = WeightedDigraph::from_matrix(&critical_matrix)?
        .strongly_connected_components()
        .into_iter()
        .filter(|c| is_critical[c[0]])
        .collect();
    dc_components.sort_by_key(|c| c[0]);

    let mut dcstar_components = dc_components.clone();
    dcstar_components.extend((0..n).filter(|&v| !is_critical[v]).map(|v| vec![v]));
    dcstar_components.sort_by_key(|c| c[0]);

    Ok(CriticalStructure {
        mu,
        critical_nodes,
        critical_edges,
        critical_matrix,
        dc_components,
        dcstar_components,
    })
}

/// `A^red`: `α_μν = max { a_ij : i ∈ N_μ, j ∈ N_ν }` over the components of
/// `D^{C*}(A)`.
pub fn reduced_matrix(a: &NonnegMatrix, cs: &CriticalStructure) -> Result<NonnegMatrix> {
    let n = a.require_square()?;
    if n != cs.critical_matrix.n() {
        return Err(Error::DimensionMismatch {
            expected: cs.critical_matrix.n(),
            found: n,
        });
    }
    let parts = &cs.dcstar_components;
    NonnegMatrix::from_fn(parts.len(), |mu, nu| {
        parts[mu]
            .iter()
            .flat_map(|&i| parts[nu].iter().map(move |&j| a.get(i, j)))
            .fold(0.0, f64::max)
    })
}

/// One entry of `A*` that differs from the constant its block should carry.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockViolation {
    pub row: usize,
    pub col: usize,
    /// `(μ, ν)` component indices.
    pub block: (usize, usize),
    pub star_entry: f64,
    pub reduced_star_entry: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockLawReport {
    pub holds: bool,
    pub violations: Vec<BlockViolation>,
}

/// Checks that every `(μ, ν)` block of `A*` is the constant `α*_μν`, the
/// `(μ, ν)` entry of `(A^red)*`.
///
/// Requires a visualized matrix with `μ(A) = 1`: every critical edge has
/// weight 1. Max-stochastic matrices always qualify.
pub fn verify_vis_kleene_blocks(a: &NonnegMatrix, tol: Tolerance) -> Result<BlockLawReport> {
    let cs = critical_structure(a, tol)?;
    if !tol.eq(cs.mu, 1.0) {
        return Err(Error::MuNotOne(cs.mu));
    }
    if let Some(&(tail, head)) = cs
        .critical_edges
        .iter()
        .find(|&&(i, j)| !tol.eq(a.get(i, j), 1.0))
    {
        return Err(Error::NotVisualized {
            tail,
            head,
            weight: a.get(tail, head),
        });
    }
    let star = kleene_star(a, tol)?;
    let reduced = reduced_matrix(a, &cs)?;
    let reduced_star = kleene_star(&reduced, tol)?;
    let owner = cs.component_of();

    let n = a.n();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let block = (owner[i], owner[j]);
            let expected = reduced_star.get(block.0, block.1);
            let actual = star.get(i, j);
            if !tol.eq(actual, expected) {
                violations.push(BlockViolation {
                    row: i,
                    col: j,
                    block,
                    star_entry: actual,
                    reduced_star_entry: expected,
                });
            }
        }
    }
    Ok(BlockLawReport {
        holds: violations.is_empty(),
        violations,
    })
}

/// `v_j = min_{q ∈ N^C(A)} a*_qj`.
///
/// For an irreducible max-stochastic matrix this equals the plain column
/// minimum of `A*`.
pub fn min_critical_row(ks: &KleeneStar, cs: &CriticalStructure) -> Result<NonnegVector> {
    if cs.critical_nodes.is_empty() {
        return Err(Error::NoCriticalNodes);
    }
    let n = ks.star.n();
    NonnegVector::new(
        (0..n)
            .map(|j| {
                cs.critical_nodes
                    .iter()
                    .map(|&q| ks.get(q, j))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect(),
    )
}

/// One column `A*_{·i}` per critical component, taking `i` as the smallest
/// node of the component. Each is a right max eigenvector: `A ⊗ v = v`.
pub fn critical_column_eigenvectors(
    ks: &KleeneStar,
    cs: &CriticalStructure,
) -> Vec<(usize, NonnegVector)> {
    cs.dc_components
        .iter()
        .map(|c| (c[0], ks.column(c[0])))
        .collect()
}
