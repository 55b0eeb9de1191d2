//! Exponential maps computed by order-by-order flow recursion: the geodesic
//! flow of the body connection, the frame flow of a vielbein, the
//! symplectic correction at third order, and parallel transport for the
//! graded sector. Each comes with the closed-form third-order expansion for
//! cross-checking.

use super::chart::{ConnectionData, JetChart, JetError, PolyMat, CLASS_XI};
use crate::graded::GradedPoly;
use crate::num::{rat, rat_int, Rat};
use num_traits::One;

/// A local identification written as series: one component per curved
/// coordinate, each a polynomial in `(y, xi [, w, nu])`. Body components
/// are stored relative to the base point.
#[derive(Clone, Debug, PartialEq)]
pub struct JetMap {
    pub chart: JetChart,
    /// Indexed parallel to `chart.curved()`.
    pub comps: Vec<GradedPoly>,
}

impl JetMap {
    pub fn body(&self, mu: usize) -> &GradedPoly {
        &self.comps[mu]
    }

    /// Substitutes the body components for the `y`-variables of a series
    /// (composition `f(phi)` for `f` a function of the base point alone).
    pub fn compose_body(&self, f: &GradedPoly) -> GradedPoly {
        let chart = &self.chart;
        f.subst(chart.space(), &chart.trunc(), |g| {
            if let Some(mu) = (0..chart.n_body).find(|&m| chart.y(m) == g) {
                self.comps[mu].clone()
            } else if let Some(a) = (0..chart.graded_degrees.len()).find(|&a| chart.w(a) == g) {
                self.comps[chart.n_body + a].clone()
            } else {
                chart.gen_poly(g)
            }
        })
        .expect("parity is preserved by the transport")
    }
}

/// Truncated series in the flow parameter with `GradedPoly` coefficients.
#[derive(Clone, Debug)]
struct TauSeries {
    coeffs: Vec<GradedPoly>,
}

impl TauSeries {
    fn zero(chart: &JetChart, order: usize) -> Self {
        TauSeries { coeffs: vec![chart.zero(); order + 1] }
    }

    fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn mul(&self, other: &TauSeries) -> TauSeries {
        let n = self.order();
        let mut out = TauSeries { coeffs: vec![self.coeffs[0].scale(&Rat::new(0.into(), 1.into())); n + 1] };
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let p = self.coeffs[i].mul(&other.coeffs[j]).expect("same chart");
                out.coeffs[i + j] = out.coeffs[i + j].add(&p).expect("same chart");
            }
        }
        out
    }

    fn add(&self, other: &TauSeries) -> TauSeries {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.add(b).expect("same chart");
        }
        out
    }

    /// Derivative in the flow parameter.
    fn dot(&self) -> TauSeries {
        let n = self.order();
        let mut out = TauSeries { coeffs: vec![self.coeffs[0].scale(&Rat::new(0.into(), 1.into())); n + 1] };
        for k in 1..=n {
            out.coeffs[k - 1] = self.coeffs[k].scale(&rat_int(k as i64));
        }
        out
    }

    /// Value at parameter one.
    fn at_one(&self) -> GradedPoly {
        let mut acc = self.coeffs[0].clone();
        for c in &self.coeffs[1..] {
            acc = acc.add(c).expect("same chart");
        }
        acc
    }
}

/// Evaluates a series on flow-parameter arguments: body offsets follow the
/// flow, every other generator rides along unchanged.
fn compose_tau(chart: &JetChart, f: &GradedPoly, args: &[TauSeries]) -> TauSeries {
    let order = args.first().map_or(0, |a| a.order());
    let mut out = TauSeries::zero(chart, order);
    for (m, c) in f.terms() {
        let mut acc = TauSeries::zero(chart, order);
        acc.coeffs[0] = chart.constant(c.clone());
        for i in 0..chart.space().dim() {
            let e = m.get(i);
            if e == 0 {
                continue;
            }
            if let Some(mu) = (0..chart.n_body).find(|&k| chart.y(k) == i) {
                for _ in 0..e {
                    acc = acc.mul(&args[mu]);
                }
            } else {
                let mut still = TauSeries::zero(chart, order);
                still.coeffs[0] = chart.gen_poly(i);
                for _ in 0..e {
                    acc = acc.mul(&still);
                }
            }
        }
        out = out.add(&acc);
    }
    out
}

/// Solves the geodesic flow and returns the flow-parameter expansion of the
/// body components.
fn geodesic_tau(cd: &ConnectionData) -> Vec<TauSeries> {
    let chart = &cd.chart;
    let n = chart.n_body;
    let order = chart.orders.xi as usize;
    let mut a: Vec<TauSeries> = (0..n)
        .map(|mu| {
            let mut s = TauSeries::zero(chart, order);
            s.coeffs[0] = chart.gen_poly(chart.y(mu));
            if order >= 1 {
                s.coeffs[1] = chart.gen_poly(chart.xi(mu));
            }
            s
        })
        .collect();
    for k in 0..order.saturating_sub(1) {
        // phi''^mu = -Gamma^mu_{al be}(phi) phi'^al phi'^be at flow order k
        for mu in 0..n {
            let mut rhs = chart.zero();
            for al in 0..n {
                for be in 0..n {
                    if cd.gamma[mu][al][be].is_zero() {
                        continue;
                    }
                    let g = compose_tau(chart, &cd.gamma[mu][al][be], &a);
                    let term = g.mul(&a[al].dot()).mul(&a[be].dot());
                    rhs = rhs.add(&term.coeffs[k]).expect("chart");
                }
            }
            let denom = rat_int(((k + 2) * (k + 1)) as i64);
            a[mu].coeffs[k + 2] = rhs.scale(&(-Rat::one() / denom));
        }
    }
    a
}

/// Geodesic exponential map.
pub fn exp_geodesic(cd: &ConnectionData) -> Result<JetMap, JetError> {
    let tau = geodesic_tau(cd);
    finish_with_graded(cd, tau, None)
}

/// Frame-flow exponential map: the velocity field is `xi^a e_a`.
pub fn exp_orthonormal(cd: &ConnectionData) -> Result<JetMap, JetError> {
    let chart = &cd.chart;
    let e = cd.vielbein.as_ref().ok_or(JetError::Missing("vielbein"))?;
    if e.scalar_part(chart.space()).inverse().is_none() {
        return Err(JetError::SingularVielbein);
    }
    let n = chart.n_body;
    let order = chart.orders.xi as usize;
    let mut a: Vec<TauSeries> = (0..n)
        .map(|mu| {
            let mut s = TauSeries::zero(chart, order);
            s.coeffs[0] = chart.gen_poly(chart.y(mu));
            s
        })
        .collect();
    for k in 0..order {
        // phi'^mu = xi^a e^mu_a(phi) at flow order k
        for mu in 0..n {
            let mut rhs = chart.zero();
            for fr in 0..n {
                if e[(mu, fr)].is_zero() {
                    continue;
                }
                let comp = compose_tau(chart, &e[(mu, fr)], &a);
                let term = comp.coeffs[k].mul(&chart.gen_poly(chart.xi(fr))).expect("chart");
                rhs = rhs.add(&term).expect("chart");
            }
            a[mu].coeffs[k + 1] = rhs.scale(&(Rat::one() / rat_int((k + 1) as i64)));
        }
    }
    finish_with_graded(cd, a, None)
}

/// Symplectic exponential map: the geodesic flow plus the curvature
/// correction `-(1/24) R^mu_{ga al be} xi^3` with indices moved by the
/// parallel symplectic form. Defined through third order in `xi`.
pub fn exp_symplectic(cd: &ConnectionData) -> Result<JetMap, JetError> {
    let chart = &cd.chart;
    let omega = cd.omega.as_ref().ok_or(JetError::Missing("omega"))?;
    if chart.orders.xi < 3 {
        return Err(JetError::OrderTooLow(3, chart.orders.xi));
    }
    let tau = geodesic_tau(cd);
    let sfr = sfr_tensor(cd, omega)?;
    let n = chart.n_body;
    let mut correction: Vec<GradedPoly> = vec![chart.zero(); n];
    for mu in 0..n {
        let mut acc = chart.zero();
        for ga in 0..n {
            for al in 0..n {
                for be in 0..n {
                    if sfr[mu][ga][al][be].is_zero() {
                        continue;
                    }
                    let m = sfr[mu][ga][al][be]
                        .mul(&chart.gen_poly(chart.xi(ga)))
                        .expect("chart")
                        .mul(&chart.gen_poly(chart.xi(al)))
                        .expect("chart")
                        .mul(&chart.gen_poly(chart.xi(be)))
                        .expect("chart");
                    acc = acc.add(&m).expect("chart");
                }
            }
        }
        correction[mu] = acc.scale(&rat(-1, 24));
    }
    finish_with_graded(cd, tau, Some(correction))
}

/// `R^mu_{ga al be} = (Ω^{-1})^{nu mu} R_{nu ga}^{..la}_{..be} Ω_{la al}`.
pub fn sfr_tensor(
    cd: &ConnectionData,
    omega: &PolyMat,
) -> Result<Vec<Vec<Vec<Vec<GradedPoly>>>>, JetError> {
    let chart = &cd.chart;
    let n = chart.n_body;
    let riem = cd.riemann();
    let omega_inv = omega.inverse(chart)?;
    let mut out = vec![vec![vec![vec![chart.zero(); n]; n]; n]; n];
    for mu in 0..n {
        for ga in 0..n {
            for al in 0..n {
                for be in 0..n {
                    let mut acc = chart.zero();
                    for nu in 0..n {
                        for la in 0..n {
                            if riem[nu][ga][la][be].is_zero() {
                                continue;
                            }
                            let t = omega_inv[(nu, mu)]
                                .mul(&riem[nu][ga][la][be])
                                .expect("chart")
                                .mul(&omega[(la, al)])
                                .expect("chart");
                            acc = acc.add(&t).expect("chart");
                        }
                    }
                    out[mu][ga][al][be] = acc;
                }
            }
        }
    }
    Ok(out)
}

/// Completes a body flow with parallel transport of the graded sector and
/// assembles the map.
fn finish_with_graded(
    cd: &ConnectionData,
    body_tau: Vec<TauSeries>,
    correction: Option<Vec<GradedPoly>>,
) -> Result<JetMap, JetError> {
    let chart = &cd.chart;
    let n = chart.n_body;
    let r = chart.graded_degrees.len();
    let order = chart.orders.xi as usize;
    let mut comps: Vec<GradedPoly> = Vec::with_capacity(n + r);
    for mu in 0..n {
        let mut c = body_tau[mu].at_one();
        if let Some(corr) = &correction {
            c = c.add(&corr[mu]).expect("chart");
        }
        comps.push(c);
    }
    if r > 0 {
        let bundle = cd.bundle.as_ref().ok_or(JetError::Missing("bundle connection"))?;
        assert_eq!(bundle.rank, r, "one fibre matrix per graded coordinate");
        // transport: psi' = -phi'^al A_al(phi) psi, psi(0) = w + nu
        let mut psi: Vec<TauSeries> = (0..r)
            .map(|a| {
                let mut s = TauSeries::zero(chart, order);
                s.coeffs[0] = chart
                    .gen_poly(chart.w(a))
                    .add(&chart.gen_poly(chart.nu(a)))
                    .expect("chart");
                s
            })
            .collect();
        for k in 0..order {
            let mut next: Vec<GradedPoly> = vec![chart.zero(); r];
            for al in 0..n {
                let dot = body_tau[al].dot();
                for a in 0..r {
                    for b in 0..r {
                        if bundle.a[al][(a, b)].is_zero() {
                            continue;
                        }
                        let comp = compose_tau(chart, &bundle.a[al][(a, b)], &body_tau);
                        // flow order k of phi'^al * A(phi) * psi^b
                        let term = dot.mul(&comp).mul(&psi[b]);
                        next[a] = next[a].sub(&term.coeffs[k]).expect("chart");
                    }
                }
            }
            for a in 0..r {
                psi[a].coeffs[k + 1] = next[a].scale(&(Rat::one() / rat_int((k + 1) as i64)));
            }
        }
        for a in 0..r {
            comps.push(psi[a].at_one());
        }
    }
    Ok(JetMap { chart: chart.clone(), comps })
}

/// Closed third-order form of the geodesic map, for cross-checks:
/// `y + xi - Γ xi xi / 2 + (-∂Γ/6 + ΓΓ/3) xi^3`.
pub fn geodesic_closed_form(cd: &ConnectionData) -> Vec<GradedPoly> {
    let chart = &cd.chart;
    let n = chart.n_body;
    let mut out = Vec::with_capacity(n);
    for mu in 0..n {
        let mut acc = chart.gen_poly(chart.y(mu)).add(&chart.gen_poly(chart.xi(mu))).expect("chart");
        for al in 0..n {
            for be in 0..n {
                let xi2 = chart
                    .gen_poly(chart.xi(al))
                    .mul(&chart.gen_poly(chart.xi(be)))
                    .expect("chart");
                acc = acc
                    .sub(&cd.gamma[mu][al][be].mul(&xi2).expect("chart").scale(&rat(1, 2)))
                    .expect("chart");
                for ga in 0..n {
                    let xi3 = xi2.mul(&chart.gen_poly(chart.xi(ga))).expect("chart");
                    let mut coeff = cd.gamma[mu][al][be]
                        .left_deriv(chart.y(ga))
                        .scale(&rat(-1, 6));
                    for ka in 0..n {
                        coeff = coeff
                            .add(
                                &cd.gamma[mu][ka][ga]
                                    .mul(&cd.gamma[ka][al][be])
                                    .expect("chart")
                                    .scale(&rat(1, 3)),
                            )
                            .expect("chart");
                    }
                    acc = acc.add(&coeff.mul(&xi3).expect("chart")).expect("chart");
                }
            }
        }
        out.push(acc);
    }
    out
}

/// Difference of two maps clipped to a flat-sector order, for assertions.
pub fn map_matches_through(
    chart: &JetChart,
    got: &[GradedPoly],
    want: &[GradedPoly],
    xi_order: u32,
) -> bool {
    let budget = chart.orders.xi - xi_order.min(chart.orders.xi);
    got.iter().zip(want.iter()).all(|(g, w)| {
        let d = g.sub(w).expect("chart");
        chart.clip(&d, &[(CLASS_XI, budget)]).is_zero()
    })
}

/// Pullback of the symplectic series through a map: the matrix
/// `(∂_A φ^mu) Ω_{mu nu}(φ) (∂_B φ^nu)` over the flat body directions.
pub fn pullback_omega(map: &JetMap, omega: &PolyMat) -> PolyMat {
    let chart = &map.chart;
    let n = chart.n_body;
    let mut out = PolyMat::zero(chart, n);
    for a in 0..n {
        for b in 0..n {
            let mut acc = chart.zero();
            for mu in 0..n {
                let da = map.comps[mu].left_deriv(chart.xi(a));
                if da.is_zero() {
                    continue;
                }
                for nu in 0..n {
                    if omega[(mu, nu)].is_zero() {
                        continue;
                    }
                    let db = map.comps[nu].left_deriv(chart.xi(b));
                    if db.is_zero() {
                        continue;
                    }
                    let om = map.compose_body(&omega[(mu, nu)]);
                    acc = acc
                        .add(&da.mul(&om).expect("chart").mul(&db).expect("chart"))
                        .expect("chart");
                }
            }
            out[(a, b)] = acc;
        }
    }
    out
}

/// Rebuilds truncation-consistent polynomials for user data.
pub fn adopt(chart: &JetChart, p: &GradedPoly) -> GradedPoly {
    p.clone().truncated(chart.trunc())
}

/// The combination `x + xi` for a graded coordinate.
pub fn graded_combo(chart: &JetChart, a: usize) -> GradedPoly {
    chart.gen_poly(chart.w(a)).add(&chart.gen_poly(chart.nu(a))).expect("chart")
}

/// Geodesic body plus parallel transport of the graded sector; requires a
/// bundle connection when graded coordinates are present.
pub fn exp_graded(cd: &ConnectionData) -> Result<JetMap, JetError> {
    exp_geodesic(cd)
}
