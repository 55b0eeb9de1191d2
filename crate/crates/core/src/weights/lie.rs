//! Lie-algebra weight systems: structure constants and a matrix
//! representation feed the cubic vertex `(1/6) eta f l l l` and the linear
//! matrix vertex `T_a l^a`; the trace pairing plays the symplectic form on
//! the degree-one space.

use super::{theorem_a_chain, WeightError};
use crate::correspondence::beta_rat;
use crate::graded::{GradedPoly, GradedSpace, Generator, MatPoly, Mono};
use crate::graph::{EnumLimits, ExtGraph, GraphChain};
use crate::linalg::RatMat;
use crate::num::{rat_int, Rat};
use num_traits::Zero;

#[derive(Debug, Clone)]
pub struct LieData {
    /// `f[c][a][b]` is the coefficient of the bracket `[T_a, T_b] = f^c_{ab} T_c`.
    pub f: Vec<RatMat>,
    /// Representation matrices, one per algebra generator.
    pub t: Vec<RatMat>,
    /// `eta_{ab} = Tr[T_a T_b]`, computed at validation.
    pub eta: RatMat,
}

impl LieData {
    /// Validates antisymmetry, the Jacobi identity, the commutation rule
    /// and invertibility of the trace pairing.
    pub fn new(f: Vec<RatMat>, t: Vec<RatMat>) -> Result<Self, WeightError> {
        let dg = f.len();
        if t.len() != dg || f.iter().any(|m| m.rows != dg || m.cols != dg) {
            return Err(WeightError::BadStructure);
        }
        let fat = |c: usize, a: usize, b: usize| -> Rat { f[c][(a, b)].clone() };
        for c in 0..dg {
            for a in 0..dg {
                for b in 0..dg {
                    if fat(c, a, b) != -fat(c, b, a) {
                        return Err(WeightError::BadStructure);
                    }
                }
            }
        }
        // Jacobi: f^e_{ad} f^d_{bc} + f^e_{bd} f^d_{ca} + f^e_{cd} f^d_{ab} = 0
        for e in 0..dg {
            for a in 0..dg {
                for b in 0..dg {
                    for c in 0..dg {
                        let mut s = Rat::zero();
                        for d in 0..dg {
                            s += fat(e, a, d) * fat(d, b, c);
                            s += fat(e, b, d) * fat(d, c, a);
                            s += fat(e, c, d) * fat(d, a, b);
                        }
                        if !s.is_zero() {
                            return Err(WeightError::BadStructure);
                        }
                    }
                }
            }
        }
        // commutation: [T_a, T_b] = f^c_{ab} T_c
        for a in 0..dg {
            for b in 0..dg {
                let mut want = RatMat::zero(t[0].rows, t[0].cols);
                for c in 0..dg {
                    want = want.add(&t[c].scale(&fat(c, a, b)));
                }
                if t[a].commutator(&t[b]) != want {
                    return Err(WeightError::BadRepresentation);
                }
            }
        }
        let mut eta = RatMat::zero(dg, dg);
        for a in 0..dg {
            for b in 0..dg {
                eta[(a, b)] = t[a].mul(&t[b]).trace();
            }
        }
        if eta.inverse().is_none() {
            return Err(WeightError::SingularKilling);
        }
        Ok(LieData { f, t, eta })
    }

    pub fn dim_algebra(&self) -> usize {
        self.f.len()
    }

    pub fn dim_rep(&self) -> usize {
        self.t[0].rows
    }

    /// Adjoint matrices `(ad_a)^c_b = f^c_{ab}`.
    pub fn adjoint(&self) -> Vec<RatMat> {
        let dg = self.dim_algebra();
        (0..dg)
            .map(|a| {
                let mut m = RatMat::zero(dg, dg);
                for c in 0..dg {
                    for b in 0..dg {
                        m[(c, b)] = self.f[c][(a, b)].clone();
                    }
                }
                m
            })
            .collect()
    }

    /// Quadratic Casimir of the given matrices against `eta`; errors when it
    /// is not a multiple of the identity.
    pub fn casimir(&self, mats: &[RatMat]) -> Result<Rat, WeightError> {
        let inv = self.eta.inverse().expect("validated");
        let d = mats[0].rows;
        let mut c = RatMat::zero(d, d);
        for a in 0..self.dim_algebra() {
            for b in 0..self.dim_algebra() {
                if inv[(a, b)].is_zero() {
                    continue;
                }
                c = c.add(&mats[a].mul(&mats[b]).scale(&inv[(a, b)]));
            }
        }
        let lambda = c[(0, 0)].clone();
        if c != RatMat::identity(d).scale(&lambda) {
            return Err(WeightError::NonScalarCasimir);
        }
        Ok(lambda)
    }

    pub fn casimir_rep(&self) -> Result<Rat, WeightError> {
        self.casimir(&self.t)
    }

    pub fn casimir_adjoint(&self) -> Result<Rat, WeightError> {
        self.casimir(&self.adjoint())
    }
}

/// The degree-one space with the trace pairing as symplectic form.
pub fn lie_space(data: &LieData) -> GradedSpace {
    let gens: Vec<Generator> =
        (0..data.dim_algebra()).map(|a| Generator::new(format!("l{}", a + 1), 1)).collect();
    GradedSpace::with_symplectic(gens, 2, data.eta.clone())
        .expect("trace pairing is symmetric and invertible")
}

/// `Theta = (1/6) eta_{ck} f^k_{ab} l^c l^a l^b`.
pub fn lie_theta(data: &LieData, space: &GradedSpace) -> Result<GradedPoly, WeightError> {
    let dg = data.dim_algebra();
    let mut theta = GradedPoly::zero(space);
    let sixth = Rat::new(1.into(), 6.into());
    for c in 0..dg {
        for a in 0..dg {
            for b in 0..dg {
                let mut coeff = Rat::zero();
                for k in 0..dg {
                    coeff += &data.eta[(c, k)] * &data.f[k][(a, b)];
                }
                if coeff.is_zero() {
                    continue;
                }
                let term = GradedPoly::gen(space, c)
                    .mul(&GradedPoly::gen(space, a))?
                    .mul(&GradedPoly::gen(space, b))?;
                theta = theta.add(&term.scale(&(coeff * &sixth)))?;
            }
        }
    }
    Ok(theta)
}

fn lie_t1(data: &LieData, space: &GradedSpace) -> Result<MatPoly, WeightError> {
    let r = data.dim_rep();
    let mut t1 = MatPoly::zero(space, vec![0; r]);
    for a in 0..r {
        for b in 0..r {
            let mut entry = GradedPoly::zero(space);
            for (alpha, tm) in data.t.iter().enumerate() {
                let c = tm[(a, b)].clone();
                if c.is_zero() {
                    continue;
                }
                entry.add_term(Mono::gen(space.dim(), alpha), c);
            }
            t1.entries[a][b] = entry;
        }
    }
    Ok(t1)
}

/// The Lie-algebra weight system at total vertex count `m`: the image of
/// the standard chain under the chain-to-graph map. The output is closed.
pub fn lie_weights(data: &LieData, m: u32) -> Result<GraphChain<Rat>, WeightError> {
    let space = lie_space(data);
    let theta = lie_theta(data, &space)?;
    let t1 = lie_t1(data, &space)?;
    let chain = theorem_a_chain(&theta, Some(&t1), m)?;
    let limits = EnumLimits { max_vertices: (m + 2).max(8), ..Default::default() };
    Ok(beta_rat(&chain, &limits)?)
}

/// Independent evaluation of a pure chord diagram (no internal vertices):
/// the trace of the representation matrices around the circle with the
/// inverse pairing across each chord, summed over all index assignments.
/// This ignores orientation signs; it fixes magnitudes and ratios.
pub fn oracle_chord_weight(data: &LieData, diagram: &ExtGraph) -> Result<Rat, WeightError> {
    assert_eq!(diagram.n_int, 0, "oracle covers chord-only diagrams");
    let q = diagram.n_per as usize;
    let dg = data.dim_algebra();
    let inv = data.eta.inverse().expect("validated");
    let chords: Vec<(usize, usize)> = diagram
        .edges
        .iter()
        .map(|&(a, b)| match (a, b) {
            (crate::graph::End::Per(i), crate::graph::End::Per(j)) => {
                ((i - 1) as usize, (j - 1) as usize)
            }
            _ => panic!("chord-only diagram expected"),
        })
        .collect();
    assert_eq!(chords.len() * 2, q, "univalent circle points");
    // per chord, both ends range over the algebra independently
    let mut total = Rat::zero();
    let mut assign = vec![0usize; 2 * chords.len()];
    loop {
        let mut w = Rat::new(1.into(), 1.into());
        for (c, _) in chords.iter().enumerate() {
            w *= inv[(assign[2 * c], assign[2 * c + 1])].clone();
        }
        if !w.is_zero() {
            let mut label = vec![0usize; q];
            for (c, &(i, j)) in chords.iter().enumerate() {
                label[i] = assign[2 * c];
                label[j] = assign[2 * c + 1];
            }
            let mut mat = RatMat::identity(data.dim_rep());
            for &l in &label {
                mat = mat.mul(&data.t[l]);
            }
            total += w * mat.trace();
        }
        if !bump_pub(&mut assign, dg) {
            break;
        }
    }
    Ok(total)
}

pub(crate) fn bump_pub(tuple: &mut [usize], base: usize) -> bool {
    for slot in tuple.iter_mut() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Reference structure constants and fundamental representation of the
/// rank-one algebra in the `e, f, h` basis.
pub fn sl2_fundamental() -> LieData {
    // [h,e] = 2e, [h,f] = -2f, [e,f] = h; basis order (e, f, h)
    let mut fe = RatMat::zero(3, 3);
    let mut ff = RatMat::zero(3, 3);
    let mut fh = RatMat::zero(3, 3);
    // f^e_{he} = 2, f^e_{eh} = -2
    fe[(2, 0)] = rat_int(2);
    fe[(0, 2)] = rat_int(-2);
    // f^f_{hf} = -2, f^f_{fh} = 2
    ff[(2, 1)] = rat_int(-2);
    ff[(1, 2)] = rat_int(2);
    // f^h_{ef} = 1, f^h_{fe} = -1
    fh[(0, 1)] = rat_int(1);
    fh[(1, 0)] = rat_int(-1);
    let e = RatMat::from_i64(&[&[0, 1], &[0, 0]]);
    let f = RatMat::from_i64(&[&[0, 0], &[1, 0]]);
    let h = RatMat::from_i64(&[&[1, 0], &[0, -1]]);
    LieData::new(vec![fe, ff, fh], vec![e, f, h]).expect("reference data is consistent")
}

/// The same algebra in its adjoint representation.
pub fn sl2_adjoint() -> LieData {
    let fund = sl2_fundamental();
    let ad = fund.adjoint();
    LieData::new(fund.f.clone(), ad).expect("adjoint of reference data is consistent")
}

/// Rotation algebra with totally antisymmetric structure constants, adjoint
/// (vector) representation.
pub fn so3_adjoint() -> LieData {
    // [T_a, T_b] = eps_{abc} T_c, (T_a)^c_b = eps_{cab}  (adjoint)
    let eps = |a: usize, b: usize, c: usize| -> i64 {
        match (a, b, c) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
            _ => 0,
        }
    };
    let mut f = vec![RatMat::zero(3, 3), RatMat::zero(3, 3), RatMat::zero(3, 3)];
    for c in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                f[c][(a, b)] = rat_int(eps(a, b, c));
            }
        }
    }
    let t: Vec<RatMat> = (0..3)
        .map(|a| {
            let mut m = RatMat::zero(3, 3);
            for c in 0..3 {
                for b in 0..3 {
                    m[(c, b)] = rat_int(eps(c, a, b));
                }
            }
            m
        })
        .collect();
    LieData::new(f, t).expect("rotation algebra data is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_data_checks() {
        let d = sl2_fundamental();
        assert_eq!(d.dim_algebra(), 3);
        assert_eq!(d.dim_rep(), 2);
        assert_eq!(d.casimir_rep().unwrap(), Rat::new(3.into(), 2.into()));
        assert_eq!(d.casimir_adjoint().unwrap(), rat_int(4));
        let ad = sl2_adjoint();
        assert_eq!(ad.dim_rep(), 3);
        assert_eq!(ad.casimir_rep().unwrap(), rat_int(1));
        let so3 = so3_adjoint();
        // eta = -2 delta; casimir of the vector rep against it
        assert_eq!(so3.eta[(0, 0)], rat_int(-2));
        assert!(so3.casimir_rep().is_ok());
    }

    #[test]
    fn theta_is_cubic_and_nonzero() {
        let d = sl2_fundamental();
        let sp = lie_space(&d);
        let th = lie_theta(&d, &sp).unwrap();
        assert_eq!(th.uniform_weight(), Some(3));
        assert!(!th.is_zero());
    }

    #[test]
    fn abelian_theta_vanishes() {
        // two commuting generators represented by diagonal matrices with
        // independent traces
        let f = vec![RatMat::zero(2, 2), RatMat::zero(2, 2)];
        let t = vec![
            RatMat::from_i64(&[&[1, 0], &[0, 0]]),
            RatMat::from_i64(&[&[0, 0], &[0, 1]]),
        ];
        let d = LieData::new(f, t).unwrap();
        let sp = lie_space(&d);
        assert!(lie_theta(&d, &sp).unwrap().is_zero());
    }

    #[test]
    fn bad_structure_rejected() {
        let mut d = sl2_fundamental();
        d.f[0][(0, 0)] = rat_int(1); // breaks antisymmetry
        assert!(LieData::new(d.f.clone(), d.t.clone()).is_err());
    }
}
