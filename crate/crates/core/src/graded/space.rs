//! Graded vector spaces with ordered generators and an optional constant
//! symplectic pairing of even form degree.

use crate::linalg::RatMat;
use crate::num::Rat;
use num_traits::Zero;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("form degree {0} is odd; only even symplectic degrees are supported")]
    OddFormDegree(u32),
    #[error("symplectic matrix must be square over the paired generators")]
    BadShape,
    #[error("symplectic form is singular")]
    Singular,
    #[error("omega[{0}][{1}] pairs generators whose degrees do not sum to the form degree")]
    DegreeMismatch(usize, usize),
    #[error("omega is not graded-antisymmetric at ({0},{1})")]
    NotGradedAntisymmetric(usize, usize),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
}

/// Truncation class of a generator. Monomials are cut when the total
/// exponent over a class exceeds the budget set in [`Trunc`](super::Trunc).
pub type WeightClass = u8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub class: WeightClass,
    /// Hard cap on the exponent; even nilpotent parameters use `Some(1)`.
    pub cap: Option<u32>,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree, class: 0, cap: None }
    }

    pub fn with_class(mut self, class: WeightClass) -> Self {
        self.class = class;
        self
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

#[derive(Debug, PartialEq)]
pub struct Symplectic {
    /// Indices of the paired generators, in generator order.
    pub paired: Vec<usize>,
    pub omega: RatMat,
    pub omega_inv: RatMat,
}

#[derive(Debug, PartialEq)]
struct SpaceData {
    gens: Vec<Generator>,
    form_degree: u32,
    symplectic: Option<Symplectic>,
}

/// An ordered list of graded generators, shared by reference.
#[derive(Clone, Debug)]
pub struct GradedSpace(Arc<SpaceData>);

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new(gens: Vec<Generator>, form_degree: u32) -> Result<Self, SpaceError> {
        if form_degree % 2 != 0 {
            return Err(SpaceError::OddFormDegree(form_degree));
        }
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(SpaceError::DuplicateName(g.name.clone()));
            }
        }
        Ok(GradedSpace(Arc::new(SpaceData { gens, form_degree, symplectic: None })))
    }

    /// Space with a symplectic form over all generators.
    pub fn with_symplectic(
        gens: Vec<Generator>,
        form_degree: u32,
        omega: RatMat,
    ) -> Result<Self, SpaceError> {
        let n = gens.len();
        Self::with_partial_symplectic(gens, form_degree, (0..n).collect(), omega)
    }

    /// Space where only the listed generators carry the pairing; the rest
    /// are spectators (they multiply but are never contracted).
    pub fn with_partial_symplectic(
        gens: Vec<Generator>,
        form_degree: u32,
        paired: Vec<usize>,
        omega: RatMat,
    ) -> Result<Self, SpaceError> {
        let base = Self::new(gens, form_degree)?;
        let data = Arc::try_unwrap(base.0).expect("fresh arc");
        let SpaceData { gens, .. } = data;
        if !omega.is_square() || omega.rows != paired.len() {
            return Err(SpaceError::BadShape);
        }
        for (a, &ia) in paired.iter().enumerate() {
            for (b, &ib) in paired.iter().enumerate() {
                let dega = gens[ia].degree;
                let degb = gens[ib].degree;
                if !omega[(a, b)].is_zero() && dega + degb != form_degree {
                    return Err(SpaceError::DegreeMismatch(ia, ib));
                }
                // graded antisymmetry: omega[a][b] = -(-1)^{|a||b|} omega[b][a]
                let sign = if gens[ia].is_odd() && gens[ib].is_odd() { 1 } else { -1 };
                let rhs = omega[(b, a)].clone() * crate::num::rat_int(sign);
                if omega[(a, b)] != rhs {
                    return Err(SpaceError::NotGradedAntisymmetric(ia, ib));
                }
            }
        }
        let omega_inv = omega.inverse().ok_or(SpaceError::Singular)?;
        Ok(GradedSpace(Arc::new(SpaceData {
            gens,
            form_degree,
            symplectic: Some(Symplectic { paired, omega, omega_inv }),
        })))
    }

    pub fn dim(&self) -> usize {
        self.0.gens.len()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0.gens
    }

    pub fn gen(&self, i: usize) -> &Generator {
        &self.0.gens[i]
    }

    pub fn form_degree(&self) -> u32 {
        self.0.form_degree
    }

    pub fn symplectic(&self) -> Option<&Symplectic> {
        self.0.symplectic.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.gens.iter().position(|g| g.name == name)
    }

    /// Entry of the inverse pairing between two generator indices, zero for
    /// spectators.
    pub fn omega_inv_at(&self, i: usize, j: usize) -> Rat {
        match self.symplectic() {
            None => Rat::zero(),
            Some(s) => {
                let (Some(a), Some(b)) = (
                    s.paired.iter().position(|&k| k == i),
                    s.paired.iter().position(|&k| k == j),
                ) else {
                    return Rat::zero();
                };
                s.omega_inv[(a, b)].clone()
            }
        }
    }
}
