//! Curvature weight systems on a holomorphic symplectic model: the cubic
//! vertex is built from symmetrized curvature jets, the linear matrix
//! vertex from bundle curvature jets, and the antiholomorphic directions
//! ride along as odd spectators, so graph coefficients come out as
//! antisymmetric tensor representatives.

use super::{theorem_chain, WeightError};
use crate::correspondence::beta;
use crate::graded::{GradedPoly, GradedSpace, Generator, MatPoly, Mono};
use crate::graph::{graph_differential, EnumLimits, GraphChain};
use crate::linalg::RatMat;
use crate::num::{rat_int, Rat};
use num_traits::{One, Zero};

/// A jet tensor `D[ibar][l_1 .. l_k]`, totally symmetric in the `l`'s,
/// stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct RwTensor {
    pub order: usize,
    pub dim: usize,
    pub data: Vec<Rat>,
}

impl RwTensor {
    pub fn zero(dim: usize, order: usize) -> Self {
        RwTensor { order, dim, data: vec![Rat::zero(); dim * dim.pow(order as u32)] }
    }

    pub fn at(&self, ibar: usize, ls: &[usize]) -> &Rat {
        assert_eq!(ls.len(), self.order);
        let mut idx = ibar;
        for &l in ls {
            idx = idx * self.dim + l;
        }
        &self.data[idx]
    }

    pub fn set(&mut self, ibar: usize, ls: &[usize], v: Rat) {
        assert_eq!(ls.len(), self.order);
        let mut idx = ibar;
        for &l in ls {
            idx = idx * self.dim + l;
        }
        self.data[idx] = v;
    }

    fn check_symmetric(&self) -> bool {
        // compare against the transposition of the first two lower slots
        if self.order < 2 {
            return true;
        }
        let mut ls = vec![0usize; self.order];
        loop {
            for ibar in 0..self.dim {
                let mut sw = ls.clone();
                sw.swap(0, 1);
                if self.at(ibar, &ls) != self.at(ibar, &sw) {
                    return false;
                }
                if self.order >= 3 {
                    let mut sw2 = ls.clone();
                    sw2.swap(1, 2);
                    if self.at(ibar, &ls) != self.at(ibar, &sw2) {
                        return false;
                    }
                }
            }
            if !super::lie::bump_pub(&mut ls, self.dim) {
                return true;
            }
        }
    }
}

/// Matrix-valued jet tensors `(K[ibar][l_1..l_k])^a_b` for the bundle side.
#[derive(Debug, Clone, PartialEq)]
pub struct RwMatTensor {
    pub order: usize,
    pub dim: usize,
    pub rank: usize,
    /// Indexed `[ibar][l_1..l_k]`, each a `rank x rank` matrix.
    pub data: Vec<RatMat>,
}

impl RwMatTensor {
    pub fn zero(dim: usize, order: usize, rank: usize) -> Self {
        RwMatTensor {
            order,
            dim,
            rank,
            data: vec![RatMat::zero(rank, rank); dim * dim.pow(order as u32)],
        }
    }

    pub fn at(&self, ibar: usize, ls: &[usize]) -> &RatMat {
        let mut idx = ibar;
        for &l in ls {
            idx = idx * self.dim + l;
        }
        &self.data[idx]
    }

    pub fn set(&mut self, ibar: usize, ls: &[usize], v: RatMat) {
        let mut idx = ibar;
        for &l in ls {
            idx = idx * self.dim + l;
        }
        self.data[idx] = v;
    }
}

#[derive(Debug, Clone)]
pub struct RwData {
    /// Holomorphic dimension (the paired generators).
    pub dim: usize,
    pub omega: RatMat,
    /// Cubic-and-up coefficient tensors of the Hamiltonian vertex, starting
    /// at order 3: the order-`k` entry multiplies `xi^{l_1} .. xi^{l_k} / k!`.
    pub theta_jets: Vec<RwTensor>,
    /// Linear-and-up matrix tensors of the bundle vertex, starting at order
    /// 1: the order-`k` entry multiplies `xi^{l_1} .. xi^{l_k} / k!`.
    pub k_jets: Vec<RwMatTensor>,
    pub truncation: usize,
}

impl RwData {
    pub fn new(
        dim: usize,
        omega: RatMat,
        theta_jets: Vec<RwTensor>,
        k_jets: Vec<RwMatTensor>,
        truncation: usize,
    ) -> Result<Self, WeightError> {
        if !omega.is_square() || omega.rows != dim {
            return Err(WeightError::BadTensor("pairing shape".into()));
        }
        if omega.inverse().is_none() {
            return Err(WeightError::BadTensor("pairing is singular".into()));
        }
        if omega.add(&omega.transpose()) != RatMat::zero(dim, dim) {
            return Err(WeightError::BadTensor("pairing must be antisymmetric".into()));
        }
        for (k, t) in theta_jets.iter().enumerate() {
            if t.order != k + 3 || t.dim != dim {
                return Err(WeightError::BadTensor("vertex jet shape".into()));
            }
            if !t.check_symmetric() {
                return Err(WeightError::BadTensor(
                    "vertex jet must be symmetric in its lower slots".into(),
                ));
            }
        }
        for (k, t) in k_jets.iter().enumerate() {
            if t.order != k + 1 || t.dim != dim {
                return Err(WeightError::BadTensor("bundle jet shape".into()));
            }
        }
        Ok(RwData { dim, omega, theta_jets, k_jets, truncation })
    }
}

/// The model space: `dim` even paired generators and `dim` odd spectators.
pub fn rw_space(data: &RwData) -> GradedSpace {
    let mut gens: Vec<Generator> = Vec::new();
    for i in 0..data.dim {
        gens.push(Generator::new(format!("x{}", i + 1), 0));
    }
    for i in 0..data.dim {
        gens.push(Generator::new(format!("vb{}", i + 1), 1));
    }
    GradedSpace::with_partial_symplectic(gens, 0, (0..data.dim).collect(), data.omega.clone())
        .expect("validated pairing")
}

fn factorial(k: usize) -> Rat {
    let mut f = Rat::one();
    for i in 2..=k {
        f *= rat_int(i as i64);
    }
    f
}

/// `v^ibar Theta_ibar` as one polynomial: each order-`k` jet contributes
/// `(1/k!) D[ibar][ls] v^ibar xi^{ls}`.
pub fn rw_hamiltonian_vertex(data: &RwData, space: &GradedSpace) -> Result<GradedPoly, WeightError> {
    let d = data.dim;
    let mut out = GradedPoly::zero(space);
    for t in &data.theta_jets {
        if t.order > data.truncation {
            continue;
        }
        let norm = Rat::one() / factorial(t.order);
        let mut ls = vec![0usize; t.order];
        loop {
            for ibar in 0..d {
                let c = t.at(ibar, &ls);
                if !c.is_zero() {
                    let mut exps = vec![0u32; space.dim()];
                    for &l in &ls {
                        exps[l] += 1;
                    }
                    exps[d + ibar] = 1;
                    // v factor first, then the symmetric xi block: even
                    // generators commute, the single odd factor needs no sign
                    let mut p = GradedPoly::zero(space);
                    p.add_term(Mono::from_exps(&exps), c * &norm);
                    out = out.add(&p)?;
                }
            }
            if !super::lie::bump_pub(&mut ls, d) {
                break;
            }
        }
    }
    Ok(out)
}

/// `v^ibar K_ibar` as a matrix of polynomials.
pub fn rw_bundle_vertex(data: &RwData, space: &GradedSpace) -> Result<Option<MatPoly>, WeightError> {
    let Some(first) = data.k_jets.first() else {
        return Ok(None);
    };
    let rank = first.rank;
    let d = data.dim;
    let mut out = MatPoly::zero(space, vec![0; rank]);
    for t in &data.k_jets {
        if t.order > data.truncation {
            continue;
        }
        let norm = Rat::one() / factorial(t.order);
        let mut ls = vec![0usize; t.order];
        loop {
            for ibar in 0..d {
                let m = t.at(ibar, &ls);
                if m.is_zero() {
                    continue;
                }
                let mut exps = vec![0u32; space.dim()];
                for &l in &ls {
                    exps[l] += 1;
                }
                exps[d + ibar] = 1;
                for a in 0..rank {
                    for b in 0..rank {
                        let c = &m[(a, b)];
                        if c.is_zero() {
                            continue;
                        }
                        out.entries[a][b].add_term(Mono::from_exps(&exps), c * &norm);
                    }
                }
            }
            if !super::lie::bump_pub(&mut ls, d) {
                break;
            }
        }
    }
    Ok(Some(out))
}

#[derive(Debug, Clone)]
pub struct RwWeights {
    /// Graph chain with tensor-representative coefficients (polynomials in
    /// the odd spectators).
    pub chain: GraphChain<GradedPoly>,
    /// Boundary of the chain. It is not zero in general; it represents an
    /// exact term on the cohomology side and is reported for inspection.
    pub boundary: GraphChain<GradedPoly>,
}

/// The curvature weight system at total vertex count `m`: the image of the
/// chain `sum (-1)^q/(p! q) (vTheta, ..) (x) Tr[vK | ..]`.
pub fn rw_weights(data: &RwData, m: u32) -> Result<RwWeights, WeightError> {
    if data.truncation < 3 && !data.theta_jets.is_empty() {
        return Err(WeightError::TruncationTooLow);
    }
    let space = rw_space(data);
    let theta = rw_hamiltonian_vertex(data, &space)?;
    let t1 = rw_bundle_vertex(data, &space)?;
    // entries are inhomogeneous in weight once higher jets are present
    let chain = theorem_chain(
        &theta,
        t1.as_ref(),
        m,
        |q| if q % 2 == 0 { Rat::one() } else { rat_int(-1) },
        true,
    )?;
    let limits = EnumLimits {
        max_vertices: (m + 2).max(8),
        max_edges: (m as usize) * data.truncation,
        ..Default::default()
    };
    let out = beta(&chain, &limits)?;
    let boundary = graph_differential(&out)?;
    Ok(RwWeights { chain: out, boundary })
}
