use thiserror::Error;

/// Errors raised by the max-algebra operations.
///
/// Node indices carried by variants are 0-based; the `Display` output
/// converts them to the 1-based numbering used in reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, found {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("row {} has no positive entry", .0 + 1)]
    ZeroRow(usize),

    #[error("matrix is not max-stochastic (row {} has maximum {max})", .row + 1)]
    NotMaxStochastic { row: usize, max: f64 },

    #[error("the digraph of the matrix has no cycles")]
    NoCycles,

    #[error("Kleene star series diverges: mu = {0} > 1")]
    SeriesDiverges(f64),

    #[error("maximum cycle geometric mean is {0}, expected 1")]
    MuNotOne(f64),

    #[error("matrix is not visualized: critical edge ({}, {}) has weight {weight}", .tail + 1, .head + 1)]
    NotVisualized {
        tail: usize,
        head: usize,
        weight: f64,
    },

    #[error("no critical nodes")]
    NoCriticalNodes,

    #[error("no {}-tree exists: node {} cannot reach the root", .root + 1, .unreachable + 1)]
    Unreachable { root: usize, unreachable: usize },

    #[error("every {}-tree has zero weight", .0 + 1)]
    ZeroWeightTrees(usize),

    #[error("matrix is reducible; strongly connected components: {}", format_components(.0))]
    Reducible(Vec<Vec<usize>>),

    #[error("enumeration of trees on {n} nodes exceeds the cap of {cap}; use the arborescence algorithm")]
    EnumerationCap { n: usize, cap: usize },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("p must be at least 1, found {0}")]
    InvalidP(u32),

    #[error("p = {p} is below the threshold P0 = {p0}")]
    BelowThreshold { p: u32, p0: u32 },

    #[error("{matrix} row {} is not normalized (maximum {max}, expected 1)", .row + 1)]
    NotNormalized {
        matrix: &'static str,
        row: usize,
        max: f64,
    },

    #[error("entry {} of the vector is zero", .0 + 1)]
    ZeroEntry(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

fn format_components(components: &[Vec<usize>]) -> String {
    components
        .iter()
        .map(|c| {
            let nodes: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
            format!("{{{}}}", nodes.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub type Result<T> = std::result::Result<T, Error>;
