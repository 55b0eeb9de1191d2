//! Matrix-valued graded polynomials: square matrices over a fixed graded
//! fibre whose entries are `GradedPoly` on a base space.

use super::poly::{GradedPoly, PolyError, Trunc};
use super::space::GradedSpace;
use crate::num::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatPoly {
    /// Degrees of the fibre generators; the matrix is indexed by them.
    pub fiber_degrees: Vec<u32>,
    pub entries: Vec<Vec<GradedPoly>>,
}

impl MatPoly {
    pub fn zero(base: &GradedSpace, fiber_degrees: Vec<u32>) -> Self {
        let n = fiber_degrees.len();
        MatPoly {
            fiber_degrees,
            entries: vec![vec![GradedPoly::zero(base); n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.fiber_degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &MatPoly) -> Result<MatPoly, PolyError> {
        assert_eq!(self.dim(), other.dim());
        let mut out = self.clone();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                out.entries[i][j] = self.entries[i][j].add(&other.entries[i][j])?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MatPoly {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = e.scale(c);
            }
        }
        out
    }

    pub fn mul(&self, other: &MatPoly) -> Result<MatPoly, PolyError> {
        assert_eq!(self.dim(), other.dim());
        let base = self.entries[0][0].space().clone();
        let mut out = MatPoly::zero(&base, self.fiber_degrees.clone());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let mut acc = GradedPoly::zero(&base);
                for k in 0..self.dim() {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j])?)?;
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<GradedPoly, PolyError> {
        let base = self.entries[0][0].space().clone();
        let mut acc = GradedPoly::zero(&base);
        for i in 0..self.dim() {
            acc = acc.add(&self.entries[i][i])?;
        }
        Ok(acc)
    }

    pub fn truncated(&self, trunc: &Trunc) -> MatPoly {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = e.clone().truncated(trunc.clone());
            }
        }
        out
    }

    /// Checks that entry `(a, b)` has graded degree `target - |z_a| + |z_b|`
    /// whenever nonzero (`T: V -> V` of degree `target`).
    pub fn check_homogeneous(&self, target: i64) -> bool {
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let e = &self.entries[a][b];
                if e.is_zero() {
                    continue;
                }
                let want = target - self.fiber_degrees[a] as i64 + self.fiber_degrees[b] as i64;
                match e.homogeneous_degree() {
                    Some(d) if d as i64 == want => {}
                    _ => return false,
                }
            }
        }
        true
    }
}
