//! Jet charts: truncated series in the base offset `y = x - x0`, the flat
//! coordinates `xi`, optional graded coordinates (curved `w`, flat `nu`),
//! extra odd spectators, and a nilpotent variation parameter `eps`.

use crate::graded::{Generator, GradedPoly, GradedSpace, Mono, Trunc};
use crate::linalg::RatMat;
use crate::num::Rat;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JetError {
    #[error("connection has torsion: gamma[{0}][{1}][{2}] is not symmetric")]
    Torsion(usize, usize, usize),
    #[error("series matrix is singular at the base point")]
    SingularAtBase,
    #[error("symplectic data is not parallel for the given connection")]
    OmegaNotParallel,
    #[error("vielbein is singular at the base point")]
    SingularVielbein,
    #[error("truncation order too low: need {0}, have {1}")]
    OrderTooLow(u32, u32),
    #[error("missing structure: {0}")]
    Missing(&'static str),
    #[error(transparent)]
    Poly(#[from] crate::graded::PolyError),
}

pub const CLASS_XI: u8 = 1;
pub const CLASS_Y: u8 = 2;
pub const CLASS_GRADED: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orders {
    pub xi: u32,
    pub y: u32,
    pub graded: u32,
}

impl Default for Orders {
    fn default() -> Self {
        Orders { xi: 3, y: 2, graded: 2 }
    }
}

/// Coordinate layout of one chart. Generator order: body `y`, graded `w`,
/// body `xi`, graded `nu`, odd spectators, `eps`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetChart {
    space: GradedSpace,
    pub n_body: usize,
    pub graded_degrees: Vec<u32>,
    pub orders: Orders,
    y: Vec<usize>,
    w: Vec<usize>,
    xi: Vec<usize>,
    nu: Vec<usize>,
    spectators: Vec<usize>,
    eps: usize,
}

impl JetChart {
    pub fn new(
        n_body: usize,
        graded_degrees: Vec<u32>,
        odd_spectators: usize,
        orders: Orders,
    ) -> Self {
        let mut gens: Vec<Generator> = Vec::new();
        let mut y = Vec::new();
        let mut w = Vec::new();
        let mut xi = Vec::new();
        let mut nu = Vec::new();
        let mut spectators = Vec::new();
        for i in 0..n_body {
            y.push(gens.len());
            gens.push(Generator::new(format!("y{}", i + 1), 0).with_class(CLASS_Y));
        }
        for (i, &d) in graded_degrees.iter().enumerate() {
            w.push(gens.len());
            gens.push(Generator::new(format!("w{}", i + 1), d).with_class(CLASS_GRADED));
        }
        for i in 0..n_body {
            xi.push(gens.len());
            gens.push(Generator::new(format!("q{}", i + 1), 0).with_class(CLASS_XI));
        }
        for (i, &d) in graded_degrees.iter().enumerate() {
            nu.push(gens.len());
            gens.push(Generator::new(format!("n{}", i + 1), d).with_class(CLASS_GRADED));
        }
        for i in 0..odd_spectators {
            spectators.push(gens.len());
            gens.push(Generator::new(format!("s{}", i + 1), 1));
        }
        let eps = gens.len();
        gens.push(Generator::new("eps", 0).with_cap(1));
        let space = GradedSpace::new(gens, 0).expect("chart generators are distinct");
        JetChart { space, n_body, graded_degrees, orders, y, w, xi, nu, spectators, eps }
    }

    pub fn smooth(n_body: usize, orders: Orders) -> Self {
        Self::new(n_body, Vec::new(), 0, orders)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn trunc(&self) -> Trunc {
        Trunc::none()
            .with(CLASS_XI, self.orders.xi)
            .with(CLASS_Y, self.orders.y)
            .with(CLASS_GRADED, self.orders.graded)
    }

    pub fn y(&self, i: usize) -> usize {
        self.y[i]
    }

    pub fn xi(&self, i: usize) -> usize {
        self.xi[i]
    }

    pub fn w(&self, i: usize) -> usize {
        self.w[i]
    }

    pub fn nu(&self, i: usize) -> usize {
        self.nu[i]
    }

    pub fn spectator(&self, i: usize) -> usize {
        self.spectators[i]
    }

    pub fn eps(&self) -> usize {
        self.eps
    }

    /// All curved directions: body then graded.
    pub fn curved(&self) -> Vec<usize> {
        self.y.iter().chain(self.w.iter()).copied().collect()
    }

    /// All flat directions: body then graded.
    pub fn flat(&self) -> Vec<usize> {
        self.xi.iter().chain(self.nu.iter()).copied().collect()
    }

    pub fn zero(&self) -> GradedPoly {
        GradedPoly::zero(&self.space).truncated(self.trunc())
    }

    pub fn one(&self) -> GradedPoly {
        GradedPoly::one(&self.space).truncated(self.trunc())
    }

    pub fn constant(&self, c: Rat) -> GradedPoly {
        GradedPoly::constant(&self.space, c).truncated(self.trunc())
    }

    pub fn gen_poly(&self, idx: usize) -> GradedPoly {
        GradedPoly::gen(&self.space, idx).truncated(self.trunc())
    }

    /// Drops the variation part (`eps -> 0`).
    pub fn base_part(&self, p: &GradedPoly) -> GradedPoly {
        p.set_gen_zero(self.eps)
    }

    /// First-order variation: the coefficient of `eps`.
    pub fn variation_part(&self, p: &GradedPoly) -> GradedPoly {
        p.coeff_of_power(self.eps, 1)
    }

    /// Keeps the terms whose class totals stay at least one below every
    /// budget that `classes` lists; used before asserting residuals that
    /// lost one order to differentiation.
    pub fn clip(&self, p: &GradedPoly, drop: &[(u8, u32)]) -> GradedPoly {
        let mut t = self.trunc();
        for &(class, by) in drop {
            let cur = *t.0.get(&class).expect("chart class");
            t = t.with(class, cur.saturating_sub(by));
        }
        p.clone().truncated(t)
    }
}

/// Dense square matrix of series.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMat {
    pub n: usize,
    pub entries: Vec<GradedPoly>,
}

impl PolyMat {
    pub fn zero(chart: &JetChart, n: usize) -> Self {
        PolyMat { n, entries: vec![chart.zero(); n * n] }
    }

    pub fn identity(chart: &JetChart, n: usize) -> Self {
        let mut m = Self::zero(chart, n);
        for i in 0..n {
            m[(i, i)] = chart.one();
        }
        m
    }

    pub fn from_ratmat(chart: &JetChart, m: &RatMat) -> Self {
        let mut out = Self::zero(chart, m.rows);
        for i in 0..m.rows {
            for j in 0..m.cols {
                if !m[(i, j)].is_zero() {
                    out[(i, j)] = chart.constant(m[(i, j)].clone());
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.n, other.n);
        let space = self.entries[0].space().clone();
        let mut out =
            PolyMat { n: self.n, entries: vec![GradedPoly::zero(&space); self.n * self.n] };
        for i in 0..self.n {
            for k in 0..self.n {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let p = self[(i, k)].mul(&other[(k, j)]).expect("same chart");
                    out[(i, j)] = out[(i, j)].add(&p).expect("same chart");
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMat) -> PolyMat {
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.add(b).expect("same chart");
        }
        out
    }

    pub fn sub(&self, other: &PolyMat) -> PolyMat {
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.sub(b).expect("same chart");
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PolyMat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.scale(c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Constant part as a rational matrix.
    pub fn scalar_part(&self, space: &GradedSpace) -> RatMat {
        let mut m = RatMat::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self[(i, j)].coeff(&Mono::unit(space.dim()));
            }
        }
        m
    }

    /// Two-sided inverse by the geometric series around the scalar part
    /// (which must be invertible).
    pub fn inverse(&self, chart: &JetChart) -> Result<PolyMat, JetError> {
        let m0 = self.scalar_part(chart.space());
        let m0_inv = m0.inverse().ok_or(JetError::SingularAtBase)?;
        let m0i = PolyMat::from_ratmat(chart, &m0_inv);
        let mut rest = self.sub(&PolyMat::from_ratmat(chart, &m0));
        rest = m0i.mul(&rest); // M0^{-1} M+
        let mut out = PolyMat::identity(chart, self.n);
        let mut term = PolyMat::identity(chart, self.n);
        loop {
            term = term.mul(&rest).scale(&-Rat::one());
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        Ok(out.mul(&m0i))
    }
}

impl std::ops::Index<(usize, usize)> for PolyMat {
    type Output = GradedPoly;
    fn index(&self, (i, j): (usize, usize)) -> &GradedPoly {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GradedPoly {
        &mut self.entries[i * self.n + j]
    }
}

/// Bundle connection: one fibre matrix of `y`-series per body direction.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleData {
    pub rank: usize,
    pub a: Vec<PolyMat>,
}

/// Connection jets on a chart: body Christoffels, optional bundle
/// connection, optional vielbein, optional symplectic series.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    pub chart: JetChart,
    /// `gamma[mu][al][be]`, symmetric in the lower pair.
    pub gamma: Vec<Vec<Vec<GradedPoly>>>,
    pub bundle: Option<BundleData>,
    pub vielbein: Option<PolyMat>,
    pub omega: Option<PolyMat>,
}

impl ConnectionData {
    pub fn new(chart: JetChart, gamma: Vec<Vec<Vec<GradedPoly>>>) -> Result<Self, JetError> {
        let n = chart.n_body;
        assert_eq!(gamma.len(), n);
        for mu in 0..n {
            for al in 0..n {
                for be in 0..n {
                    if gamma[mu][al][be] != gamma[mu][be][al] {
                        return Err(JetError::Torsion(mu, al, be));
                    }
                }
            }
        }
        Ok(ConnectionData { chart, gamma, bundle: None, vielbein: None, omega: None })
    }

    pub fn flat(chart: JetChart) -> Self {
        let n = chart.n_body;
        let z = chart.zero();
        ConnectionData {
            chart,
            gamma: vec![vec![vec![z.clone(); n]; n]; n],
            bundle: None,
            vielbein: None,
            omega: None,
        }
    }

    pub fn with_bundle(mut self, bundle: BundleData) -> Self {
        self.bundle = Some(bundle);
        self
    }

    pub fn with_vielbein(mut self, e: PolyMat) -> Result<Self, JetError> {
        if e.scalar_part(self.chart.space()).inverse().is_none() {
            return Err(JetError::SingularVielbein);
        }
        self.vielbein = Some(e);
        Ok(self)
    }

    /// Attaches a symplectic series and checks `∇Ω = 0` within the budget.
    pub fn with_omega(mut self, omega: PolyMat) -> Result<Self, JetError> {
        let n = self.chart.n_body;
        let chart = self.chart.clone();
        for mu in 0..n {
            for al in 0..n {
                for be in 0..n {
                    // ∂_mu Ω_{al be} - Γ^l_{mu al} Ω_{l be} - Γ^l_{mu be} Ω_{al l}
                    let mut r = omega[(al, be)].left_deriv(chart.y(mu));
                    for l in 0..n {
                        r = r
                            .sub(&self.gamma[l][mu][al].mul(&omega[(l, be)]).expect("chart"))
                            .expect("chart");
                        r = r
                            .sub(&self.gamma[l][mu][be].mul(&omega[(al, l)]).expect("chart"))
                            .expect("chart");
                    }
                    let r = chart.clip(&r, &[(CLASS_Y, 1)]);
                    if !r.is_zero() {
                        return Err(JetError::OmegaNotParallel);
                    }
                }
            }
        }
        if omega.scalar_part(chart.space()).inverse().is_none() {
            return Err(JetError::SingularAtBase);
        }
        self.omega = Some(omega);
        Ok(self)
    }

    /// Riemann jets `R[nu][ga][la][be] = R_{nu ga}^{..la}_{..be}`:
    /// antisymmetrized derivative plus the quadratic terms.
    pub fn riemann(&self) -> Vec<Vec<Vec<Vec<GradedPoly>>>> {
        let n = self.chart.n_body;
        let chart = &self.chart;
        let mut r = vec![vec![vec![vec![chart.zero(); n]; n]; n]; n];
        for nu in 0..n {
            for ga in 0..n {
                for la in 0..n {
                    for be in 0..n {
                        let mut acc = self.gamma[la][ga][be].left_deriv(chart.y(nu));
                        acc = acc
                            .sub(&self.gamma[la][nu][be].left_deriv(chart.y(ga)))
                            .expect("chart");
                        for ka in 0..n {
                            acc = acc
                                .add(&self.gamma[la][nu][ka].mul(&self.gamma[ka][ga][be]).expect("chart"))
                                .expect("chart");
                            acc = acc
                                .sub(&self.gamma[la][ga][ka].mul(&self.gamma[ka][nu][be]).expect("chart"))
                                .expect("chart");
                        }
                        r[nu][ga][la][be] = acc;
                    }
                }
            }
        }
        r
    }
}
