//! Holomorphic sector: the body splits into holomorphic and antiholomorphic
//! halves, only holomorphic Christoffels are nonzero, the antiholomorphic
//! flat directions extend trivially, and a constant holomorphic pairing
//! lifts the reduced hats to Hamiltonians. Produces the cubic curvature
//! vertex, the moment-map vertex with its corrected third-order
//! coefficient, and the bundle vertex, together with their identity checks.

use super::chart::{BundleData, ConnectionData, JetChart, JetError, Orders, PolyMat, CLASS_Y};
use super::exp::{exp_geodesic, JetMap};
use super::gro::{grothendieck, GroConn};
use super::hat::{base_action, hat, IdentityReport};
use super::vf::VectorField;
use crate::graded::GradedPoly;
use crate::linalg::RatMat;
use crate::num::{rat, rat_int, Rat};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;

/// Chart layout: body `2d` (holomorphic then antiholomorphic), graded
/// degree-one partners of the antiholomorphic sector, an optional even
/// fibre of rank `r`, and odd spectators for the moment sector.
pub struct HolChart {
    pub d: usize,
    pub rank: usize,
    pub n_moment: usize,
    pub chart: JetChart,
}

impl HolChart {
    pub fn new(d: usize, rank: usize, n_moment: usize, orders: Orders) -> Self {
        let mut graded = vec![1u32; d];
        graded.extend(std::iter::repeat(0).take(rank));
        let chart = JetChart::new(2 * d, graded, n_moment, orders);
        HolChart { d, rank, n_moment, chart }
    }

    pub fn y_hol(&self, i: usize) -> usize {
        self.chart.y(i)
    }

    pub fn y_bar(&self, i: usize) -> usize {
        self.chart.y(self.d + i)
    }

    pub fn xi_hol(&self, i: usize) -> usize {
        self.chart.xi(i)
    }

    pub fn xi_bar(&self, i: usize) -> usize {
        self.chart.xi(self.d + i)
    }

    /// Curved degree-one partner of the antiholomorphic sector.
    pub fn vbar(&self, i: usize) -> usize {
        self.chart.w(i)
    }

    pub fn nubar(&self, i: usize) -> usize {
        self.chart.nu(i)
    }

    pub fn z(&self, a: usize) -> usize {
        self.chart.w(self.d + a)
    }

    pub fn zeta(&self, a: usize) -> usize {
        self.chart.nu(self.d + a)
    }

    pub fn ell(&self, a: usize) -> usize {
        self.chart.spectator(a)
    }
}

pub struct HolData {
    pub hc: HolChart,
    /// Holomorphic Christoffels `gamma[i][j][k]`, series in both halves.
    pub gamma_hol: Vec<Vec<Vec<GradedPoly>>>,
    /// Constant antisymmetric invertible holomorphic pairing.
    pub omega: RatMat,
    /// Holomorphic moment maps, one per odd spectator.
    pub moments: Vec<GradedPoly>,
    /// Bundle connection in the holomorphic gauge: entries along the
    /// holomorphic body directions only.
    pub a_hol: Vec<PolyMat>,
}

impl HolData {
    /// Connection data on the full chart: holomorphic Christoffels extended
    /// by zero, flat transport for the degree-one partners, holomorphic
    /// transport for the even fibre.
    pub fn connection(&self) -> Result<ConnectionData, JetError> {
        let hc = &self.hc;
        let chart = &hc.chart;
        let n = chart.n_body;
        let d = hc.d;
        let r = hc.rank;
        let mut gamma = vec![vec![vec![chart.zero(); n]; n]; n];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    gamma[i][j][k] = self.gamma_hol[i][j][k].clone();
                }
            }
        }
        let fibre = d + r;
        let mut a = Vec::with_capacity(n);
        for mu in 0..n {
            let mut m = PolyMat::zero(chart, fibre);
            if mu < d && r > 0 {
                for p in 0..r {
                    for q in 0..r {
                        m[(d + p, d + q)] = self.a_hol[mu][(p, q)].clone();
                    }
                }
            }
            a.push(m);
        }
        let cd = ConnectionData::new(chart.clone(), gamma)?;
        Ok(cd.with_bundle(BundleData { rank: fibre, a }))
    }

    /// Riemann contraction `R^mu_{ga al be}` over the holomorphic block,
    /// indices moved with the constant pairing.
    fn sfr_hol(&self, cd: &ConnectionData) -> Vec<Vec<Vec<Vec<GradedPoly>>>> {
        let hc = &self.hc;
        let chart = &hc.chart;
        let d = hc.d;
        let riem = cd.riemann();
        let inv = self.omega.inverse().expect("invertible pairing");
        let mut out = vec![vec![vec![vec![chart.zero(); d]; d]; d]; d];
        for mu in 0..d {
            for ga in 0..d {
                for al in 0..d {
                    for be in 0..d {
                        let mut acc = chart.zero();
                        for nu in 0..d {
                            for la in 0..d {
                                let w = &inv[(nu, mu)] * &self.omega[(la, al)];
                                if w.is_zero() || riem[nu][ga][la][be].is_zero() {
                                    continue;
                                }
                                acc = acc
                                    .add(&riem[nu][ga][la][be].scale(&w))
                                    .expect("chart");
                            }
                        }
                        out[mu][ga][al][be] = acc;
                    }
                }
            }
        }
        out
    }

    /// Symplectic-corrected map: geodesic plus the holomorphic curvature
    /// correction at third order.
    pub fn exp_hol(&self, cd: &ConnectionData) -> Result<JetMap, JetError> {
        let hc = &self.hc;
        let chart = &hc.chart;
        let d = hc.d;
        let mut map = exp_geodesic(cd)?;
        let sfr = self.sfr_hol(cd);
        for mu in 0..d {
            let mut corr = chart.zero();
            for ga in 0..d {
                for al in 0..d {
                    for be in 0..d {
                        if sfr[mu][ga][al][be].is_zero() {
                            continue;
                        }
                        let xi3 = chart
                            .gen_poly(hc.xi_hol(ga))
                            .mul(&chart.gen_poly(hc.xi_hol(al)))
                            .expect("chart")
                            .mul(&chart.gen_poly(hc.xi_hol(be)))
                            .expect("chart");
                        corr = corr
                            .add(&sfr[mu][ga][al][be].mul(&xi3).expect("chart"))
                            .expect("chart");
                    }
                }
            }
            map.comps[mu] = map.comps[mu].add(&corr.scale(&rat(-1, 24))).expect("chart");
        }
        Ok(map)
    }

    /// The homological field: degree-one partners move the antiholomorphic
    /// base, moment maps move the holomorphic base.
    pub fn q_field(&self) -> VectorField {
        let hc = &self.hc;
        let chart = &hc.chart;
        let d = hc.d;
        let mut q = VectorField::new(1);
        for i in 0..d {
            q.set(hc.y_bar(i), chart.gen_poly(hc.vbar(i)));
        }
        if !self.moments.is_empty() {
            let inv = self.omega.inverse().expect("invertible pairing");
            for i in 0..d {
                let mut acc = q.comp(hc.y_hol(i)).cloned().unwrap_or_else(|| chart.zero());
                for (al, mm) in self.moments.iter().enumerate() {
                    for j in 0..d {
                        if inv[(j, i)].is_zero() {
                            continue;
                        }
                        let t = chart
                            .gen_poly(hc.ell(al))
                            .mul(&mm.left_deriv(hc.y_hol(j)))
                            .expect("chart")
                            .scale(&inv[(j, i)]);
                        acc = acc.add(&t).expect("chart");
                    }
                }
                q.set(hc.y_hol(i), acc);
            }
        }
        q
    }

    /// Sets the antiholomorphic flat coordinates to zero.
    pub fn reduce(&self, p: &GradedPoly) -> GradedPoly {
        let hc = &self.hc;
        let mut out = p.clone();
        for i in 0..hc.d {
            out = out.set_gen_zero(hc.xi_bar(i));
            out = out.set_gen_zero(hc.nubar(i));
        }
        out
    }

    fn is_hol_flat(&self, idx: usize) -> bool {
        (0..self.hc.d).any(|i| self.hc.xi_hol(i) == idx)
    }

    /// Hamiltonian of the reduced holomorphic components of a vector field
    /// with respect to the constant pairing: solves `{H, xi^i} = v^i` with
    /// zero constant term and verifies the solution.
    pub fn lift(&self, v: &VectorField) -> Result<GradedPoly, JetError> {
        let hc = &self.hc;
        let chart = &hc.chart;
        let d = hc.d;
        let mut w = Vec::with_capacity(d);
        for j in 0..d {
            let mut acc = chart.zero();
            for i in 0..d {
                if self.omega[(i, j)].is_zero() {
                    continue;
                }
                let vi = v
                    .comp(hc.xi_hol(i))
                    .map(|p| self.reduce(p))
                    .unwrap_or_else(|| chart.zero());
                acc = acc.add(&vi.scale(&self.omega[(i, j)])).expect("chart");
            }
            w.push(acc);
        }
        let mut h = chart.zero();
        let maxw = chart.orders.xi + 1;
        for k in 1..=maxw {
            let mut part = chart.zero();
            for j in 0..d {
                let mut piece = chart.zero();
                for (m, c) in w[j].terms() {
                    let wt: u32 = (0..chart.space().dim())
                        .filter(|&g| self.is_hol_flat(g))
                        .map(|g| m.get(g))
                        .sum();
                    if wt == k - 1 {
                        piece.add_term(m.clone(), c.clone());
                    }
                }
                if piece.is_zero() {
                    continue;
                }
                part = part
                    .add(&chart.gen_poly(hc.xi_hol(j)).mul(&piece).expect("chart"))
                    .expect("chart");
            }
            h = h.add(&part.scale(&Rat::new(1.into(), k.into()))).expect("chart");
        }
        let inv = self.omega.inverse().expect("invertible");
        for i in 0..d {
            let mut got = chart.zero();
            for j in 0..d {
                if inv[(j, i)].is_zero() {
                    continue;
                }
                got = got
                    .add(&h.left_deriv(hc.xi_hol(j)).scale(&inv[(j, i)]))
                    .expect("chart");
            }
            let want = v
                .comp(hc.xi_hol(i))
                .map(|p| self.reduce(p))
                .unwrap_or_else(|| chart.zero());
            if got != want {
                return Err(JetError::Missing("reduced components admit no Hamiltonian"));
            }
        }
        Ok(h)
    }

    /// Constant-pairing bracket over the holomorphic flat directions.
    pub fn bracket(&self, f: &GradedPoly, g: &GradedPoly) -> GradedPoly {
        let hc = &self.hc;
        let chart = &hc.chart;
        let d = hc.d;
        let inv = self.omega.inverse().expect("invertible");
        let mut out = chart.zero();
        for i in 0..d {
            let df = f.left_deriv(hc.xi_hol(i));
            if df.is_zero() {
                continue;
            }
            for j in 0..d {
                if inv[(i, j)].is_zero() {
                    continue;
                }
                let dg = g.left_deriv(hc.xi_hol(j));
                if dg.is_zero() {
                    continue;
                }
                out = out
                    .add(&df.mul(&dg).expect("chart").scale(&inv[(i, j)]))
                    .expect("chart");
            }
        }
        out
    }

    /// Base action of the homological field on a function of the chart.
    pub fn q_action(&self, f: &GradedPoly) -> GradedPoly {
        let q = self.q_field();
        let mut wrap = VectorField::new(0);
        wrap.set(0, f.clone());
        base_action(&q, &wrap, &self.hc.chart)
            .comp(0)
            .cloned()
            .unwrap_or_else(|| self.hc.chart.zero())
    }

    /// Flat-weight part of a series over the holomorphic flat directions.
    pub fn xi_weight_part(&self, p: &GradedPoly, k: u32) -> GradedPoly {
        let chart = &self.hc.chart;
        let mut out = chart.zero();
        for (m, c) in p.terms() {
            let wt: u32 = (0..chart.space().dim())
                .filter(|&g| self.is_hol_flat(g))
                .map(|g| m.get(g))
                .sum();
            if wt == k {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

pub type RatMatSeries = Vec<Vec<GradedPoly>>;

/// Vertex jets produced by the holomorphic computation.
pub struct RwJets {
    /// Hamiltonian of the reduced hat of the antiholomorphic part: the
    /// degree-one partners contracted against the cubic-and-up vertex.
    pub v_theta: GradedPoly,
    /// Moment part: spectators contracted against the quadratic-and-up
    /// vertex.
    pub ell_m: GradedPoly,
    /// Fibre vertex per antiholomorphic direction, when a bundle is
    /// present: `k_matrices[ibar][a][b]` is a flat series.
    pub k_matrices: Vec<RatMatSeries>,
    pub map: JetMap,
    pub gro: GroConn,
}

/// Computes the vertex jets from holomorphic connection data.
pub fn rw_jets(data: &HolData) -> Result<RwJets, JetError> {
    let hc = &data.hc;
    let chart = &hc.chart;
    let d = hc.d;
    let cd = data.connection()?;
    let map = data.exp_hol(&cd)?;
    let gro = grothendieck(&map)?;
    let mut q_dol = VectorField::new(1);
    for i in 0..d {
        q_dol.set(hc.y_bar(i), chart.gen_poly(hc.vbar(i)));
    }
    let qh_dol = hat(&q_dol, &map, &gro)?;
    let v_theta = data.lift(&qh_dol)?;

    let ell_m = if data.moments.is_empty() {
        chart.zero()
    } else {
        let mut q_mom = data.q_field();
        for i in 0..d {
            q_mom.set(hc.y_bar(i), chart.zero());
        }
        let qh_mom = hat(&q_mom, &map, &gro)?;
        data.lift(&qh_mom)?
    };

    let mut k_matrices = Vec::new();
    if hc.rank > 0 {
        for ibar in 0..d {
            let mut m: RatMatSeries = vec![vec![chart.zero(); hc.rank]; hc.rank];
            for b in 0..hc.rank {
                let Some(comp) = qh_dol.comp(hc.zeta(b)) else { continue };
                let comp = data.reduce(comp);
                for a in 0..hc.rank {
                    let mut c = comp.coeff_of_power(hc.vbar(ibar), 1);
                    c = c.coeff_of_power(hc.zeta(a), 1);
                    for o in 0..d {
                        c = c.set_gen_zero(hc.vbar(o));
                    }
                    for o in 0..hc.rank {
                        c = c.set_gen_zero(hc.zeta(o));
                        c = c.set_gen_zero(hc.z(o));
                    }
                    m[a][b] = c.scale(&rat_int(-1));
                }
            }
            k_matrices.push(m);
        }
    }
    Ok(RwJets { v_theta, ell_m, k_matrices, map, gro })
}

/// The variation generator as a Hamiltonian:
/// `Ψ = (1/6) γ^l_{ik} Ω_{lj} ξ^i ξ^j ξ^k`.
pub fn psi_hamiltonian(data: &HolData, gamma_var: &[Vec<Vec<GradedPoly>>]) -> GradedPoly {
    let hc = &data.hc;
    let chart = &hc.chart;
    let d = hc.d;
    let mut psi = chart.zero();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    if data.omega[(l, j)].is_zero() || gamma_var[l][i][k].is_zero() {
                        continue;
                    }
                    let xi3 = chart
                        .gen_poly(hc.xi_hol(i))
                        .mul(&chart.gen_poly(hc.xi_hol(j)))
                        .expect("chart")
                        .mul(&chart.gen_poly(hc.xi_hol(k)))
                        .expect("chart");
                    psi = psi
                        .add(
                            &gamma_var[l][i][k]
                                .mul(&xi3)
                                .expect("chart")
                                .scale(&data.omega[(l, j)]),
                        )
                        .expect("chart");
                }
            }
        }
    }
    psi.scale(&rat(1, 6))
}

/// Verifies the connection-variation identity of the combined vertex: the
/// first-order change of `vΘ + ℓM` equals the base action of the
/// homological field on `Ψ` plus the bracket of the quadratic moment part
/// with `Ψ`.
pub fn check_delta_gamma(
    data: &HolData,
    gamma_var: &[Vec<Vec<GradedPoly>>],
) -> Result<IdentityReport, JetError> {
    let hc = &data.hc;
    let chart = &hc.chart;
    let d = hc.d;
    let eps = chart.gen_poly(chart.eps());
    let mut gvar = data.gamma_hol.clone();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                gvar[i][j][k] = gvar[i][j][k]
                    .add(&eps.mul(&gamma_var[i][j][k]).expect("chart"))
                    .expect("chart");
            }
        }
    }
    let varied = HolData {
        hc: HolChart { d, rank: hc.rank, n_moment: hc.n_moment, chart: chart.clone() },
        gamma_hol: gvar,
        omega: data.omega.clone(),
        moments: data.moments.clone(),
        a_hol: data.a_hol.clone(),
    };
    let jets = rw_jets(&varied)?;
    let total = jets.v_theta.add(&jets.ell_m).expect("chart");
    let delta = chart.variation_part(&total);
    let psi = psi_hamiltonian(data, gamma_var);
    let m2 = data.xi_weight_part(&chart.base_part(&jets.ell_m), 2);
    let rhs = data.q_action(&psi).add(&data.bracket(&m2, &psi)).expect("chart");
    let res = chart.clip(&delta.sub(&rhs).expect("chart"), &[(CLASS_Y, 1)]);
    Ok(IdentityReport {
        ok: res.is_zero(),
        residual_dirs: if res.is_zero() { vec![] } else { vec![0] },
    })
}

/// Seeded holomorphic test data: totally symmetric lowered Christoffels
/// against a constant standard pairing, holomorphic moment maps, and a
/// holomorphic-gauge bundle connection.
pub fn random_hol_data(
    d: usize,
    rank: usize,
    n_moment: usize,
    orders: Orders,
    rng: &mut ChaCha8Rng,
) -> HolData {
    assert!(d % 2 == 0, "even holomorphic dimension");
    let hc = HolChart::new(d, rank, n_moment, orders);
    let chart = hc.chart.clone();
    let mut omega = RatMat::zero(d, d);
    for k in 0..d / 2 {
        omega[(k, d / 2 + k)] = rat_int(1);
        omega[(d / 2 + k, k)] = rat_int(-1);
    }
    let inv = omega.inverse().unwrap();
    let mut s = std::collections::BTreeMap::new();
    for a in 0..d {
        for b in a..d {
            for c in b..d {
                s.insert((a, b, c), super::data::random_y_series_capped(&chart, rng, true, 2));
            }
        }
    }
    let sym = |mut a: usize, mut b: usize, mut c: usize| -> GradedPoly {
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        if b > c {
            std::mem::swap(&mut b, &mut c);
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        s[&(a, b, c)].clone()
    };
    let mut gamma = vec![vec![vec![chart.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut acc = chart.zero();
                for l in 0..d {
                    if inv[(i, l)].is_zero() {
                        continue;
                    }
                    acc = acc.add(&sym(l, j, k).scale(&inv[(i, l)])).expect("chart");
                }
                gamma[i][j][k] = acc;
            }
        }
    }
    let moments: Vec<GradedPoly> = (0..n_moment)
        .map(|k| {
            let raw = super::data::random_y_series_capped(&chart, rng, false, 3);
            let mut p = chart.zero();
            for (m, c) in raw.terms() {
                let bar: u32 = (0..d).map(|i| m.get(hc.y_bar(i))).sum();
                let hol: u32 = (0..d).map(|i| m.get(hc.y_hol(i))).sum();
                if bar == 0 && hol >= 2 {
                    p.add_term(*m, c.clone());
                }
            }
            // guarantee a nonvanishing second derivative
            let a = chart.gen_poly(hc.y_hol(k % d));
            let b = chart.gen_poly(hc.y_hol((k + 1) % d));
            p.add(&a.mul(&b).expect("chart")).expect("chart")
        })
        .collect();
    let a_hol: Vec<PolyMat> = (0..d)
        .map(|_| {
            let mut m = PolyMat::zero(&chart, rank.max(1));
            for i in 0..rank {
                for j in 0..rank {
                    m[(i, j)] = super::data::random_y_series_capped(&chart, rng, true, 2);
                }
            }
            m
        })
        .collect();
    HolData { hc, gamma_hol: gamma, omega, moments, a_hol }
}
