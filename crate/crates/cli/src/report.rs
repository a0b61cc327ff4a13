//! Serializable reports. Node numbers are 1-based.

use maxtree::dequantize::DequantStep;
use maxtree::{CriticalStructure, ITree, RankingResult, RstReport};
use serde::Serialize;

fn one_based(nodes: &[usize]) -> Vec<usize> {
    nodes.iter().map(|v| v + 1).collect()
}

fn one_based_sets(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| one_based(s)).collect()
}

#[derive(Serialize)]
pub struct Mu {
    pub mu: f64,
}

#[derive(Serialize)]
pub struct Critical {
    pub mu: f64,
    pub critical_nodes: Vec<usize>,
    pub critical_edges: Vec<[usize; 2]>,
    pub dc_components: Vec<Vec<usize>>,
    pub dcstar_components: Vec<Vec<usize>>,
}

impl From<&CriticalStructure> for Critical {
    fn from(cs: &CriticalStructure) -> Self {
        Critical {
            mu: cs.mu,
            critical_nodes: one_based(&cs.critical_nodes),
            critical_edges: cs
                .critical_edges
                .iter()
                .map(|&(i, j)| [i + 1, j + 1])
                .collect(),
            dc_components: one_based_sets(&cs.dc_components),
            dcstar_components: one_based_sets(&cs.dcstar_components),
        }
    }
}

#[derive(Serialize)]
pub struct Tree {
    pub root: usize,
    pub edges: Vec<[usize; 2]>,
    pub weight: f64,
}

impl From<&ITree> for Tree {
    fn from(t: &ITree) -> Self {
        Tree {
            root: t.root() + 1,
            edges: t.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
            weight: t.weight(),
        }
    }
}

#[derive(Serialize)]
pub struct Rst {
    pub w: Vec<f64>,
    pub witnesses: Vec<Tree>,
    pub residual: f64,
}

impl From<&RstReport> for Rst {
    fn from(r: &RstReport) -> Self {
        Rst {
            w: r.vector.as_slice().to_vec(),
            witnesses: r.witnesses.iter().map(Tree::from).collect(),
            residual: r.residual,
        }
    }
}

#[derive(Serialize)]
pub struct ClassicalRst {
    pub w: Vec<f64>,
    pub normalized: Vec<f64>,
    pub residual: f64,
}

impl From<&RstReport> for ClassicalRst {
    fn from(r: &RstReport) -> Self {
        ClassicalRst {
            w: r.vector.as_slice().to_vec(),
            normalized: r.normalized().into_vec(),
            residual: r.residual,
        }
    }
}

#[derive(Serialize)]
pub struct Step {
    pub p: u32,
    pub err_matrix: f64,
    pub err_vector: f64,
    pub bound: f64,
    pub w: Vec<f64>,
}

impl From<&DequantStep> for Step {
    fn from(s: &DequantStep) -> Self {
        Step {
            p: s.p,
            err_matrix: s.err_matrix,
            err_vector: s.err_vector,
            bound: s.bound,
            w: s.wp.as_slice().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct Ranking {
    pub weights: Vec<f64>,
    pub order: Vec<usize>,
    pub ties: Vec<Vec<usize>>,
    pub residual: f64,
}

impl From<&RankingResult> for Ranking {
    fn from(r: &RankingResult) -> Self {
        Ranking {
            weights: r.weights.as_slice().to_vec(),
            order: one_based(&r.order),
            ties: one_based_sets(&r.ties),
            residual: r.residual,
        }
    }
}

#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct Verify {
    pub input: String,
    /// Whether rows were divided by their maxima before checking.
    pub normalized: bool,
    pub checks: Vec<Check>,
    pub pass: bool,
}
