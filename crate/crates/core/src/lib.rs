//! Exact-arithmetic workbench for weight systems on trivalent graphs and
//! chord diagrams built from graded symplectic data: a graph complex with
//! its differential, the extended Chevalley-Eilenberg complex, the
//! contraction maps between them, Lie-algebra and curvature weight systems,
//! and a truncated-jet engine for exponential maps and the flat connection
//! they induce.

pub mod graded;
pub mod linalg;
pub mod num;
pub mod random;

pub mod ce;
pub mod correspondence;
pub mod graph;
pub mod jets;
pub mod weights;

#[cfg(test)]
mod graph_golden_tests;
#[cfg(test)]
mod jets_tests;
#[cfg(test)]
mod rwhol_tests;
#[cfg(test)]
mod dbg3;

pub use num::{fmt_rat, parse_rat, rat, rat_int, Rat};
