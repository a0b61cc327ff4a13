//! Graph view of a nonnegative matrix.
//!
//! `D(A)` has an edge `(i, j)` of weight `a_ij` for every positive entry.
//! Rooted spanning trees live here too: an *i-tree* is a spanning subgraph
//! in which every node except the root has exactly one outgoing edge, the
//! root has none, and there is no directed cycle. Following outgoing edges
//! from any node therefore ends at the root.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::semiring::{NonnegMatrix, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
}

/// Weighted digraph on nodes `0..n`, at most one edge per ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    // out[v] sorted by head
    out: Vec<Vec<(usize, f64)>>,
}

impl WeightedDigraph {
    pub fn from_matrix(a: &NonnegMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let out = (0..n)
            .map(|i| a.support(i).map(|j| (j, a.get(i, j))).collect())
            .collect();
        Ok(WeightedDigraph { n, out })
    }

    /// Builds a digraph from an edge list. Edge weights must be positive
    /// and no ordered pair may repeat.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut out: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for e in edges {
            if e.tail >= n || e.head >= n {
                return Err(Error::InvalidMatrix(format!(
                    "edge ({}, {}) out of range for {n} nodes",
                    e.tail + 1,
                    e.head + 1
                )));
            }
            if !(e.weight > 0.0 && e.weight.is_finite()) {
                return Err(Error::InvalidMatrix(format!(
                    "edge ({}, {}) has non-positive weight {}",
                    e.tail + 1,
                    e.head + 1,
                    e.weight
                )));
            }
            if out[e.tail].iter().any(|&(h, _)| h == e.head) {
                return Err(Error::InvalidMatrix(format!(
                    "duplicate edge ({}, {})",
                    e.tail + 1,
                    e.head + 1
                )));
            }
            out[e.tail].push((e.head, e.weight));
        }
        for list in &mut out {
            list.sort_by_key(|&(h, _)| h);
        }
        Ok(WeightedDigraph { n, out })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.out.iter().enumerate().flat_map(|(tail, list)| {
            list.iter()
                .map(move |&(head, weight)| Edge { tail, head, weight })
        })
    }

    /// Out-neighbours of `v` with weights, ordered by head.
    pub fn out_edges(&self, v: usize) -> &[(usize, f64)] {
        &self.out[v]
    }

    pub fn weight(&self, tail: usize, head: usize) -> Option<f64> {
        self.out[tail]
            .binary_search_by_key(&head, |&(h, _)| h)
            .ok()
            .map(|k| self.out[tail][k].1)
    }

    pub fn has_edge(&self, tail: usize, head: usize) -> bool {
        self.weight(tail, head).is_some()
    }

    /// Subgraph keeping only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> WeightedDigraph {
        let out = self
            .out
            .iter()
            .enumerate()
            .map(|(tail, list)| {
                list.iter()
                    .copied()
                    .filter(|&(head, weight)| keep(&Edge { tail, head, weight }))
                    .collect()
            })
            .collect();
        WeightedDigraph { n: self.n, out }
    }

    /// Strongly connected components in reverse topological order of the
    /// condensation (sink components first). Nodes inside a component are
    /// sorted.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let mut g = DiGraph::<(), ()>::with_capacity(self.n, self.edge_count());
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for e in self.edges() {
            g.add_edge(nodes[e.tail], nodes[e.head], ());
        }
        tarjan_scc(&g)
            .into_iter()
            .map(|component| {
                let mut c: Vec<usize> = component.into_iter().map(|ix| ix.index()).collect();
                c.sort_unstable();
                c
            })
            .collect()
    }

    /// Nodes from which `target` can be reached (including `target`).
    pub fn reaches(&self, target: usize) -> Vec<bool> {
        let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for e in self.edges() {
            reverse[e.head].push(e.tail);
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([target]);
        seen[target] = true;
        while let Some(v) = queue.pop_front() {
            for &u in &reverse[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// An i-tree built by breadth-first search on the reversed graph, or
    /// `None` when some node cannot reach the root.
    pub fn bfs_itree(&self, root: usize) -> Option<ITree> {
        let mut reverse: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.n];
        for e in self.edges() {
            reverse[e.head].push((e.tail, e.weight));
        }
        let mut succ: Vec<Option<usize>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &reverse[v] {
                if !seen[u] {
                    seen[u] = true;
                    succ[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return None;
        }
        ITree::from_successors(self, root, &succ).ok()
    }
}

pub fn from_matrix(a: &NonnegMatrix) -> Result<WeightedDigraph> {
    WeightedDigraph::from_matrix(a)
}

/// True iff `D(A)` is strongly connected. A 1×1 matrix always counts as
/// irreducible.
pub fn is_irreducible(a: &NonnegMatrix) -> Result<bool> {
    let n = a.require_square()?;
    if n == 1 {
        return Ok(true);
    }
    Ok(WeightedDigraph::from_matrix(a)?
        .strongly_connected_components()
        .len()
        == 1)
}

/// Fails with the component list when `A` is reducible.
pub(crate) fn require_irreducible(a: &NonnegMatrix) -> Result<()> {
    let n = a.require_square()?;
    if n == 1 {
        return Ok(());
    }
    let mut components = WeightedDigraph::from_matrix(a)?.strongly_connected_components();
    if components.len() == 1 {
        Ok(())
    } else {
        components.sort_by_key(|c| c[0]);
        Err(Error::Reducible(components))
    }
}

/// `Sat(A)`: the edges of `D(A)` whose weight equals 1 within `tol`.
pub fn saturation_digraph(a: &NonnegMatrix, tol: Tolerance) -> Result<WeightedDigraph> {
    Ok(WeightedDigraph::from_matrix(a)?.filter_edges(|e| tol.eq(e.weight, 1.0)))
}

/// A rooted spanning tree with edges directed towards the root.
///
/// Edges are kept sorted by `(tail, head)`. Construction does not check the
/// tree conditions; use [`validate_itree`] for that.
#[derive(Debug, Clone, PartialEq)]
pub struct ITree {
    root: usize,
    edges: Vec<(usize, usize)>,
    weight: f64,
}

impl ITree {
    pub fn new(root: usize, mut edges: Vec<(usize, usize)>, weight: f64) -> Self {
        edges.sort_unstable();
        ITree {
            root,
            edges,
            weight,
        }
    }

    /// Tree given by a successor table (`succ[root]` must be `None`), with
    /// the weight taken from `g`.
    pub fn from_successors(
        g: &WeightedDigraph,
        root: usize,
        succ: &[Option<usize>],
    ) -> Result<ITree> {
        let mut edges = Vec::with_capacity(succ.len().saturating_sub(1));
        let mut weight = 1.0;
        for (tail, head) in succ.iter().enumerate() {
            match (tail == root, head) {
                (true, None) => {}
                (false, Some(head)) => {
                    weight *= g.weight(tail, *head).ok_or_else(|| {
                        Error::InvalidTree(format!(
                            "edge ({}, {}) not in graph",
                            tail + 1,
                            head + 1
                        ))
                    })?;
                    edges.push((tail, *head));
                }
                (true, Some(_)) => {
                    return Err(Error::InvalidTree("root has an outgoing edge".into()))
                }
                (false, None) => {
                    return Err(Error::InvalidTree(format!(
                        "node {} has no outgoing edge",
                        tail + 1
                    )))
                }
            }
        }
        Ok(ITree {
            root,
            edges,
            weight,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `π(T)`, the product of the edge weights.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// The unique outgoing edge of `v`, if any.
    pub fn successor(&self, v: usize) -> Option<usize> {
        self.edges
            .binary_search_by_key(&v, |&(t, _)| t)
            .ok()
            .map(|k| self.edges[k].1)
    }
}

/// Checks the tree conditions: every edge exists in `g`, each non-root node
/// has exactly one outgoing edge, the root has none, there is no cycle, and
/// the stored weight is the product of the edge weights.
pub fn validate_itree(g: &WeightedDigraph, t: &ITree) -> bool {
    let n = g.node_count();
    if t.root >= n || t.edges.len() + 1 != n {
        return false;
    }
    let mut succ: Vec<Option<usize>> = vec![None; n];
    let mut product = 1.0;
    for &(tail, head) in &t.edges {
        if tail == t.root || tail >= n || succ[tail].is_some() {
            return false;
        }
        match g.weight(tail, head) {
            Some(w) => product *= w,
            None => return false,
        }
        succ[tail] = Some(head);
    }
    if !(0..n).all(|v| walk_to_root(&succ, t.root, v).is_some()) {
        return false;
    }
    (product - t.weight).abs() <= 1e-12 * product.max(t.weight)
}

fn walk_to_root(succ: &[Option<usize>], root: usize, start: usize) -> Option<Vec<usize>> {
    let mut path = vec![start];
    let mut v = start;
    while v != root {
        v = succ[v]?;
        path.push(v);
        if path.len() > succ.len() {
            return None;
        }
    }
    Some(path)
}

/// The unique path from `j` to the root, following outgoing edges.
///
/// Returns an empty path when `j` is the root, and an error when the edge
/// set does not lead from `j` to the root.
pub fn tree_path(t: &ITree, j: usize) -> Result<Vec<usize>> {
    if j == t.root {
        return Ok(Vec::new());
    }
    let n = t.edges.len() + 1;
    if j >= n {
        return Err(Error::InvalidTree(format!("node {} out of range", j + 1)));
    }
    let mut succ: Vec<Option<usize>> = vec![None; n];
    for &(tail, head) in &t.edges {
        if tail >= n || head >= n {
            return Err(Error::InvalidTree(format!(
                "edge ({}, {}) out of range",
                tail + 1,
                head + 1
            )));
        }
        succ[tail] = Some(head);
    }
    walk_to_root(&succ, t.root, j)
        .ok_or_else(|| Error::InvalidTree(format!("no path from node {} to the root", j + 1)))
}
