//! Plain and extended graphs (chord diagrams), canonical forms with
//! orientation signs, automorphism counting, and the boundary built from
//! edge contractions and peripheral collapses.
//!
//! An edge flip or a transposition of two vertex labels flips the sign of a
//! graph; cyclic relabeling of the peripheral circle by one step carries
//! `(-1)^{q-1}`. Classes fixed by a sign-reversing symmetry are zero and
//! are dropped everywhere.

mod canon;
mod chain;
mod diff;
mod enumerate;
mod named;
mod text;

pub use canon::{aut_order, canonicalize, canonicalize_plain, Canonical};
pub use chain::{pair, pair_rat, Coefficient, GraphChain, GraphCochain};
pub use diff::{class_differential, graph_differential, is_trivalent_cocycle, CocycleReport};
pub use enumerate::{enumerate_graphs, EnumLimits, Valence};
pub use named::{class_name, gamma, named_graphs};
pub use text::{parse_graph, to_dot};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex label out of range: {0}")]
    BadLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

/// Endpoint of an edge: internal vertices and peripheral (circle) vertices
/// are labelled separately, both starting from 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum End {
    Int(u32),
    Per(u32),
}

impl End {
    pub fn is_internal(&self) -> bool {
        matches!(self, End::Int(_))
    }

    pub fn label(&self) -> u32 {
        match self {
            End::Int(i) | End::Per(i) => *i,
        }
    }
}

/// Graph with `n_int` internal vertices, `n_per` peripheral vertices in
/// cyclic order on an oriented circle, and directed edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExtGraph {
    pub n_int: u32,
    pub n_per: u32,
    pub edges: Vec<(End, End)>,
}

impl ExtGraph {
    pub fn new(n_int: u32, n_per: u32, edges: Vec<(End, End)>) -> Result<Self, GraphError> {
        let g = ExtGraph { n_int, n_per, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn plain(n: u32, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        Self::new(n, 0, edges.iter().map(|&(a, b)| (End::Int(a), End::Int(b))).collect())
    }

    pub(crate) fn validate(&self) -> Result<(), GraphError> {
        for &(a, b) in &self.edges {
            for e in [a, b] {
                let ok = match e {
                    End::Int(i) => i >= 1 && i <= self.n_int,
                    End::Per(i) => i >= 1 && i <= self.n_per,
                };
                if !ok {
                    return Err(GraphError::BadLabel(format!("{e:?}")));
                }
            }
        }
        Ok(())
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// Valence of a vertex (loops would count twice, but loops are zero
    /// classes and never stored).
    pub fn valence(&self, v: End) -> u32 {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as u32 + (b == v) as u32)
            .sum()
    }

    pub fn internal_valences(&self) -> Vec<u32> {
        (1..=self.n_int).map(|i| self.valence(End::Int(i))).collect()
    }

    pub fn peripheral_valences(&self) -> Vec<u32> {
        (1..=self.n_per).map(|i| self.valence(End::Per(i))).collect()
    }
}

/// A plain graph is the peripheral-free special case.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlainGraph(pub ExtGraph);

impl PlainGraph {
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        Ok(PlainGraph(ExtGraph::plain(n, edges)?))
    }
}

/// Canonical representative of a nonzero equivalence class. Construct via
/// [`canonicalize`]; ordering and hashing are on the representative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GraphClass(ExtGraph);

impl GraphClass {
    pub fn graph(&self) -> &ExtGraph {
        &self.0
    }

    pub(crate) fn from_canonical(g: ExtGraph) -> Self {
        GraphClass(g)
    }
}
