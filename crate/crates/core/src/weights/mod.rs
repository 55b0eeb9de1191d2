//! Weight systems: the standard chain built from a cubic Hamiltonian vertex
//! and a linear matrix vertex, evaluated through the chain-to-graph map, for
//! Lie-algebra data and for holomorphic-symplectic curvature data.

mod lie;
mod rw;

pub use lie::{lie_space, lie_theta, lie_weights, oracle_chord_weight, sl2_adjoint, sl2_fundamental, so3_adjoint, LieData};
pub use rw::{rw_bundle_vertex, rw_hamiltonian_vertex, rw_space, rw_weights, RwData, RwMatTensor, RwTensor, RwWeights};

use crate::ce::{CeChain, CeError};
use crate::graded::{GradedPoly, MatPoly};
use crate::graph::{pair, Coefficient, GraphChain, GraphCochain};
use crate::num::{rat_int, Rat};
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("cubic vertex entry must be homogeneous of weight 3")]
    BadCubic,
    #[error("linear vertex entry must be homogeneous of weight 1")]
    BadLinear,
    #[error("structure constants fail antisymmetry or the Jacobi identity")]
    BadStructure,
    #[error("matrices do not represent the bracket")]
    BadRepresentation,
    #[error("killing pairing is singular")]
    SingularKilling,
    #[error("quadratic casimir is not scalar")]
    NonScalarCasimir,
    #[error("tensor data fails a symmetry it must satisfy: {0}")]
    BadTensor(String),
    #[error("truncation order too low for the requested size")]
    TruncationTooLow,
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Beta(#[from] crate::correspondence::BetaError),
    #[error(transparent)]
    Poly(#[from] crate::graded::PolyError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Result of pairing a weight chain with a diagram cochain: a scalar or a
/// tensor representative.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightResult {
    Rational(Rat),
    Tensor(GradedPoly),
}

/// The chain `sum_{p+q=m} 1/(p! q) (Theta_3, ..., Theta_3) (x) Tr[T_1 | ... | T_1]`
/// (the pure-Hamiltonian `q = 0` part is normalized by `1/p!` alone), with
/// the trace expanded over fibre index cycles into scalar bar entries.
/// `sign_q(q)` scales the `(p, q)` summand, for variants carrying `(-1)^q`.
pub fn theorem_chain(
    theta3: &GradedPoly,
    t1: Option<&MatPoly>,
    m: u32,
    sign_q: impl Fn(u32) -> Rat,
    allow_higher: bool,
) -> Result<CeChain, WeightError> {
    let space = theta3.space().clone();
    // homogeneity is measured over the paired generators; spectators ride
    // along in the coefficients
    let paired: Vec<usize> = space
        .symplectic()
        .map(|s| s.paired.clone())
        .unwrap_or_else(|| (0..space.dim()).collect());
    let keep = |i: usize| paired.contains(&i);
    if !allow_higher && !theta3.is_zero() && theta3.uniform_weight_filtered(keep) != Some(3) {
        return Err(WeightError::BadCubic);
    }
    if let Some(t) = t1 {
        if !allow_higher {
            for row in &t.entries {
                for e in row {
                    if !e.is_zero() && e.uniform_weight_filtered(keep) != Some(1) {
                        return Err(WeightError::BadLinear);
                    }
                }
            }
        }
    }
    let mut chain = CeChain::zero(&space);
    for p in 0..=m {
        let q = m - p;
        if p + q == 0 {
            continue;
        }
        let mut fact = Rat::one();
        for k in 2..=p {
            fact *= rat_int(k as i64);
        }
        let norm = if q == 0 {
            Rat::one() / fact
        } else {
            Rat::one() / (fact * rat_int(q as i64))
        };
        let norm = norm * sign_q(q);
        let hams: Vec<GradedPoly> = (0..p).map(|_| theta3.clone()).collect();
        if theta3.is_zero() && p > 0 {
            continue;
        }
        if q == 0 {
            chain.add_term(norm, hams, Vec::new())?;
            continue;
        }
        let Some(t) = t1 else { continue };
        if t.is_zero() {
            continue;
        }
        // Tr over fibre cycles: one scalar bar word per index tuple
        let r = t.dim();
        let mut tuple = vec![0usize; q as usize];
        loop {
            let mut bar = Vec::with_capacity(q as usize);
            let mut nonzero = true;
            for k in 0..q as usize {
                let a = tuple[k];
                let b = tuple[(k + 1) % q as usize];
                let entry = &t.entries[a][b];
                if entry.is_zero() {
                    nonzero = false;
                    break;
                }
                bar.push(entry.clone());
            }
            if nonzero {
                chain.add_term(norm.clone(), hams.clone(), bar)?;
            }
            // next tuple
            let mut k = 0;
            loop {
                if k == q as usize {
                    break;
                }
                tuple[k] += 1;
                if tuple[k] < r {
                    break;
                }
                tuple[k] = 0;
                k += 1;
            }
            if k == q as usize {
                break;
            }
        }
    }
    Ok(chain)
}

/// Convenience wrapper matching the plain construction.
pub fn theorem_a_chain(
    theta3: &GradedPoly,
    t1: Option<&MatPoly>,
    m: u32,
) -> Result<CeChain, WeightError> {
    theorem_chain(theta3, t1, m, |_| Rat::one(), false)
}

/// Pairs a weight chain against a diagram cochain.
pub fn pair_with_diagram<C: Coefficient>(
    weights: &GraphChain<C>,
    diagram: &GraphCochain,
) -> Option<C> {
    pair(diagram, weights)
}

/// Scalar pairing with the zero default.
pub fn pair_with_diagram_rat(weights: &GraphChain<Rat>, diagram: &GraphCochain) -> Rat {
    crate::graph::pair_rat(diagram, weights)
}
