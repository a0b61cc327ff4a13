//! Rooted spanning tree (RST) vectors.
//!
//! For a square nonnegative matrix `A` and a node `i`, collect the weights
//! `π(T)` of every i-tree `T` of `D(A)`. Aggregating them gives the i-th
//! entry of an RST vector:
//!
//! * max-times: `w_i = max_T π(T)`, the maximal RST vector. For an
//!   irreducible max-stochastic `A` it satisfies `Aᵀ ⊗ w = w`.
//! * sum-product: `w_i = Σ_T π(T)`. For a row-stochastic `A` the normalized
//!   vector is the stationary distribution of the Markov chain.
//! * p-semiring: `w_i = (Σ_T π(T)^p)^(1/p)`.
//!
//! The maximal vector is computed with a maximum-weight arborescence
//! algorithm; the other two enumerate trees and are limited to small `n`.

use crate::digraph::{ITree, WeightedDigraph};
use crate::error::{Error, Result};
use crate::semiring::{max_matvec_transposed, p_sum, NonnegMatrix, NonnegVector};

pub const DEFAULT_ENUMERATION_CAP: usize = 9;

/// Above this `p`, powers are taken in the log domain.
const LOG_DOMAIN_P: u32 = 64;

/// Relative slack when deciding that two tree weights tie.
const TIE_EPS: f64 = 1e-12;

/// RST vector with per-root witness trees and the residual of the matching
/// eigen-equation.
#[derive(Debug, Clone, PartialEq)]
pub struct RstReport {
    pub vector: NonnegVector,
    /// A maximizing i-tree for each root `i`; empty for sum and p
    /// aggregation.
    pub witnesses: Vec<ITree>,
    pub residual: f64,
}

impl RstReport {
    /// The vector scaled to sum to one.
    pub fn normalized(&self) -> NonnegVector {
        let total: f64 = self.vector.iter().sum();
        NonnegVector::new(self.vector.iter().map(|x| x / total).collect())
            .expect("entries stay nonnegative")
    }
}

/// Iterator over all i-trees of a digraph, in lexicographic order of their
/// sorted edge lists.
pub struct ITreeIter<'g> {
    graph: &'g WeightedDigraph,
    root: usize,
    // non-root nodes and their admissible targets (self-loops removed)
    nodes: Vec<usize>,
    targets: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    done: bool,
}

impl<'g> ITreeIter<'g> {
    fn new(graph: &'g WeightedDigraph, root: usize) -> Self {
        let nodes: Vec<usize> = (0..graph.node_count()).filter(|&v| v != root).collect();
        let targets: Vec<Vec<usize>> = nodes
            .iter()
            .map(|&v| {
                graph
                    .out_edges(v)
                    .iter()
                    .map(|&(h, _)| h)
                    .filter(|&h| h != v)
                    .collect()
            })
            .collect();
        let done = targets.iter().any(Vec::is_empty);
        ITreeIter {
            graph,
            root,
            cursor: vec![0; nodes.len()],
            nodes,
            targets,
            done,
        }
    }

    fn advance(&mut self) {
        for k in (0..self.cursor.len()).rev() {
            self.cursor[k] += 1;
            if self.cursor[k] < self.targets[k].len() {
                return;
            }
            self.cursor[k] = 0;
        }
        self.done = true;
    }

    fn current(&self) -> Vec<Option<usize>> {
        let mut succ = vec![None; self.graph.node_count()];
        for (k, &v) in self.nodes.iter().enumerate() {
            succ[v] = Some(self.targets[k][self.cursor[k]]);
        }
        succ
    }
}

impl Iterator for ITreeIter<'_> {
    type Item = ITree;

    fn next(&mut self) -> Option<ITree> {
        while !self.done {
            let succ = self.current();
            self.advance();
            if is_acyclic(&succ, self.root) {
                return Some(
                    ITree::from_successors(self.graph, self.root, &succ)
                        .expect("targets are edges of the graph"),
                );
            }
        }
        None
    }
}

/// Every node reaches `root` by following `succ`.
fn is_acyclic(succ: &[Option<usize>], root: usize) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; succ.len()];
    mark[root] = Mark::Done;
    for start in 0..succ.len() {
        let mut v = start;
        while mark[v] == Mark::New {
            mark[v] = Mark::Active;
            match succ[v] {
                Some(next) => v = next,
                None => return false,
            }
        }
        if mark[v] == Mark::Active {
            return false;
        }
        let mut v = start;
        while mark[v] == Mark::Active {
            mark[v] = Mark::Done;
            v = succ[v].expect("active nodes have successors");
        }
    }
    true
}

/// All i-trees of `g` rooted at `root`.
///
/// The search visits every combination of out-edges, so it refuses graphs
/// with more than `cap` nodes.
pub fn enumerate_itrees(g: &WeightedDigraph, root: usize, cap: usize) -> Result<ITreeIter<'_>> {
    let n = g.node_count();
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    if root >= n {
        return Err(Error::InvalidTree(format!(
            "root {} out of range",
            root + 1
        )));
    }
    Ok(ITreeIter::new(g, root))
}

/// Number of i-trees rooted at `root`.
pub fn count_itrees(g: &WeightedDigraph, root: usize, cap: usize) -> Result<usize> {
    Ok(enumerate_itrees(g, root, cap)?.count())
}

fn require_reachable(g: &WeightedDigraph, root: usize) -> Result<()> {
    match g.reaches(root).iter().position(|&r| !r) {
        Some(unreachable) => Err(Error::Unreachable { root, unreachable }),
        None => Ok(()),
    }
}

/// Log-weight matrix for the arborescence search: `w[v][u] = ln a_vu`,
/// `-∞` for absent edges and on the diagonal.
fn log_weights(g: &WeightedDigraph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut w = vec![vec![f64::NEG_INFINITY; n]; n];
    for e in g.edges() {
        if e.tail != e.head {
            w[e.tail][e.head] = e.weight.ln();
        }
    }
    w
}

/// Chu–Liu/Edmonds for in-arborescences: every non-root node picks one
/// outgoing edge, maximizing the total log-weight with no cycle. Returns
/// the successor table, or `None` when some node cannot reach the root.
fn edmonds(w: &[Vec<f64>], root: usize) -> Option<Vec<Option<usize>>> {
    let n = w.len();
    let mut choice: Vec<Option<usize>> = vec![None; n];
    for v in (0..n).filter(|&v| v != root) {
        let mut best: Option<usize> = None;
        for u in 0..n {
            if u != v && w[v][u] > f64::NEG_INFINITY && best.is_none_or(|b| w[v][u] > w[v][b]) {
                best = Some(u);
            }
        }
        choice[v] = Some(best?);
    }

    let Some(cycle) = find_cycle(&choice, root) else {
        return Some(choice);
    };

    // contract the cycle into a single node `c`
    let mut in_cycle = vec![false; n];
    for &v in &cycle {
        in_cycle[v] = true;
    }
    let outside: Vec<usize> = (0..n).filter(|&v| !in_cycle[v]).collect();
    let c = outside.len();
    let mut index = vec![c; n];
    for (k, &v) in outside.iter().enumerate() {
        index[v] = k;
    }

    let mut w2 = vec![vec![f64::NEG_INFINITY; c + 1]; c + 1];
    // which cycle node an edge into `c` lands on
    let mut enters = vec![usize::MAX; c];
    // which cycle node an edge out of `c` leaves from
    let mut leaves = vec![usize::MAX; c];
    for (kx, &x) in outside.iter().enumerate() {
        for (ky, &y) in outside.iter().enumerate() {
            w2[kx][ky] = w[x][y];
        }
        for &y in &cycle {
            if w[x][y] > w2[kx][c] {
                w2[kx][c] = w[x][y];
                enters[kx] = y;
            }
        }
    }
    for (ky, &y) in outside.iter().enumerate() {
        for &x in &cycle {
            if w[x][y] == f64::NEG_INFINITY {
                continue;
            }
            let gain = w[x][y] - w[x][choice[x].expect("cycle nodes have choices")];
            if gain > w2[c][ky] {
                w2[c][ky] = gain;
                leaves[ky] = x;
            }
        }
    }

    let sub = edmonds(&w2, index[root])?;

    let mut succ: Vec<Option<usize>> = vec![None; n];
    for (kx, &x) in outside.iter().enumerate() {
        succ[x] = sub[kx].map(|t| if t == c { enters[kx] } else { outside[t] });
    }
    for &v in &cycle {
        succ[v] = choice[v];
    }
    let exit = sub[c].expect("contracted node is not the root");
    succ[leaves[exit]] = Some(outside[exit]);
    Some(succ)
}

fn find_cycle(succ: &[Option<usize>], root: usize) -> Option<Vec<usize>> {
    let n = succ.len();
    // 0 = unvisited, otherwise 1 + id of the walk that first reached the node
    let mut seen = vec![0usize; n];
    for start in 0..n {
        if start == root || seen[start] != 0 {
            continue;
        }
        let walk = start + 1;
        let mut v = start;
        while v != root && seen[v] == 0 {
            seen[v] = walk;
            v = succ[v]?;
        }
        if v != root && seen[v] == walk {
            let mut cycle = vec![v];
            let mut u = succ[v]?;
            while u != v {
                cycle.push(u);
                u = succ[u]?;
            }
            return Some(cycle);
        }
    }
    None
}

fn log_weight(w: &[Vec<f64>], succ: &[Option<usize>]) -> f64 {
    succ.iter()
        .enumerate()
        .filter_map(|(v, s)| s.map(|u| w[v][u]))
        .sum()
}

/// A maximum-weight i-tree of `g`.
///
/// Among trees of maximal weight the one with the lexicographically
/// smallest sorted edge list is returned: tails are fixed in increasing
/// order, each to the smallest head that still admits an optimal tree.
pub fn max_arborescence(g: &WeightedDigraph, root: usize) -> Result<ITree> {
    let n = g.node_count();
    if root >= n {
        return Err(Error::InvalidTree(format!(
            "root {} out of range",
            root + 1
        )));
    }
    require_reachable(g, root)?;
    let mut w = log_weights(g);
    let best = edmonds(&w, root).expect("all nodes reach the root");
    let optimum = log_weight(&w, &best);

    let mut current = best;
    for v in (0..n).filter(|&v| v != root) {
        let targets: Vec<usize> = (0..n).filter(|&u| w[v][u] > f64::NEG_INFINITY).collect();
        for &t in &targets {
            let saved = w[v].clone();
            for (u, x) in w[v].iter_mut().enumerate() {
                if u != t {
                    *x = f64::NEG_INFINITY;
                }
            }
            match edmonds(&w, root) {
                Some(succ) if log_weight(&w, &succ) >= optimum - TIE_EPS => {
                    current = succ;
                    break;
                }
                _ => w[v] = saved,
            }
        }
    }
    let tree = ITree::from_successors(g, root, &current)?;
    if tree.weight() == 0.0 {
        return Err(Error::ZeroWeightTrees(root));
    }
    Ok(tree)
}

/// Maximal RST vector: `w_i` is the largest weight of an i-tree.
///
/// The residual measures `Aᵀ ⊗ w = w`, which holds when `A` is
/// max-stochastic and irreducible.
pub fn max_rst_vector(a: &NonnegMatrix) -> Result<RstReport> {
    let n = a.require_square()?;
    let g = WeightedDigraph::from_matrix(a)?;
    let witnesses = (0..n)
        .map(|root| max_arborescence(&g, root))
        .collect::<Result<Vec<_>>>()?;
    let vector = NonnegVector::new(witnesses.iter().map(ITree::weight).collect())?;
    let residual = verify_left_max_eigen(a, &vector)?;
    Ok(RstReport {
        vector,
        witnesses,
        residual,
    })
}

/// Classical RST vector: `w_i` is the total weight of all i-trees.
///
/// The residual measures `Aᵀ w = w`; for a row-stochastic `A` it vanishes
/// and [`RstReport::normalized`] is the stationary distribution.
pub fn sum_rst_vector(a: &NonnegMatrix, cap: usize) -> Result<RstReport> {
    let n = a.require_square()?;
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    crate::digraph::require_irreducible(a)?;
    let g = WeightedDigraph::from_matrix(a)?;
    let entries = (0..n)
        .map(|root| Ok(enumerate_itrees(&g, root, cap)?.map(|t| t.weight()).sum()))
        .collect::<Result<Vec<f64>>>()?;
    let vector = NonnegVector::new(entries)?;
    let residual = classical_residual(a, &vector);
    Ok(RstReport {
        vector,
        witnesses: Vec::new(),
        residual,
    })
}

/// RST vector in the p-semiring: `w_i = (Σ_T π(T)^p)^(1/p)`.
///
/// Uses the isomorphism `a ↦ a^(1/p)` with ordinary arithmetic: the
/// classical vector of the entrywise p-th power, then entrywise p-th roots.
/// For large `p` the same sum is evaluated as a log-sum-exp over tree
/// log-weights. The residual measures `Aᵀ ×_p w = w`.
pub fn p_rst_vector(a: &NonnegMatrix, p: u32, cap: usize) -> Result<RstReport> {
    if p == 0 {
        return Err(Error::InvalidP(p));
    }
    let n = a.require_square()?;
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    crate::digraph::require_irreducible(a)?;

    let entries = if p <= LOG_DOMAIN_P {
        let powered = a.map(|x| x.powi(p as i32))?;
        sum_rst_vector(&powered, cap)?
            .vector
            .iter()
            .map(|x| x.powf(1.0 / p as f64))
            .collect()
    } else {
        let g = WeightedDigraph::from_matrix(a)?;
        (0..n)
            .map(|root| {
                let logs: Vec<f64> = enumerate_itrees(&g, root, cap)?
                    .map(|t| t.edges().iter().map(|&(u, v)| a.get(u, v).ln()).sum())
                    .collect();
                Ok(p_root_of_power_sum(&logs, p))
            })
            .collect::<Result<Vec<f64>>>()?
    };
    let vector = NonnegVector::new(entries)?;
    let residual = p_residual(a, &vector, p);
    Ok(RstReport {
        vector,
        witnesses: Vec::new(),
        residual,
    })
}

/// `(Σ_k exp(p·l_k))^(1/p)` for log-values `l_k`.
fn p_root_of_power_sum(logs: &[f64], p: u32) -> f64 {
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return 0.0;
    }
    let p = p as f64;
    let scaled: f64 = logs.iter().map(|&l| (p * (l - top)).exp()).sum();
    (top + scaled.ln() / p).exp()
}

/// `max_i |(Aᵀ ⊗ w)_i − w_i| / max(w_i, 1)`.
pub fn verify_left_max_eigen(a: &NonnegMatrix, w: &NonnegVector) -> Result<f64> {
    a.require_square()?;
    let image = max_matvec_transposed(a, w)?;
    Ok(relative_residual(image.iter(), w.iter()))
}

fn classical_residual(a: &NonnegMatrix, w: &NonnegVector) -> f64 {
    let n = a.n();
    let image = (0..n).map(|i| (0..n).map(|j| a.get(j, i) * w[j]).sum::<f64>());
    relative_residual(image, w.iter())
}

fn p_residual(a: &NonnegMatrix, w: &NonnegVector, p: u32) -> f64 {
    let n = a.n();
    let image = (0..n).map(|i| p_sum((0..n).map(|j| a.get(j, i) * w[j]), p));
    relative_residual(image, w.iter())
}

pub(crate) fn relative_residual(
    image: impl Iterator<Item = f64>,
    target: impl Iterator<Item = f64>,
) -> f64 {
    image
        .zip(target)
        .map(|(y, w)| (y - w).abs() / w.max(1.0))
        .fold(0.0, f64::max)
}
