//! The degree-one tangent model: graded coordinates mirror the body with
//! degree one, the bundle connection is the body connection, and the
//! homological field moves base points along the odd directions.

use super::chart::{BundleData, ConnectionData, JetChart, JetError, Orders, PolyMat};
use super::exp::{exp_graded, graded_combo, JetMap};
use super::gro::{grothendieck, GroConn};
use super::hat::hat;
use super::vf::VectorField;
use crate::graded::GradedPoly;
use crate::num::rat;

/// Builds the chart and connection for the degree-one tangent model over a
/// smooth body connection given by `gamma_of(chart)`.
pub fn t1m_connection(
    n: usize,
    orders: Orders,
    gamma_of: impl Fn(&JetChart) -> Vec<Vec<Vec<GradedPoly>>>,
) -> Result<ConnectionData, JetError> {
    let chart = JetChart::new(n, vec![1; n], 0, orders);
    let gamma = gamma_of(&chart);
    let mut a = Vec::with_capacity(n);
    for al in 0..n {
        let mut m = PolyMat::zero(&chart, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = gamma[i][al][j].clone();
            }
        }
        a.push(m);
    }
    let cd = ConnectionData::new(chart, gamma)?;
    Ok(cd.with_bundle(BundleData { rank: n, a }))
}

/// The odd field moving base points along the graded directions.
pub fn t1m_q(chart: &JetChart) -> VectorField {
    let mut q = VectorField::new(1);
    for mu in 0..chart.n_body {
        q.set(chart.y(mu), chart.gen_poly(chart.w(mu)));
    }
    q
}

/// Definitional hat of the homological field for the degree-one tangent
/// model, with the map and connection used.
pub fn qhat_t1m(cd: &ConnectionData) -> Result<(VectorField, JetMap, GroConn), JetError> {
    let map = exp_graded(cd)?;
    let gro = grothendieck(&map)?;
    let q = t1m_q(&cd.chart);
    let qh = hat(&q, &map, &gro)?;
    Ok((qh, map, gro))
}

/// Covariant derivative of the curvature jets:
/// `∇_al R_{mu be}^{..la}_{..ka}`.
pub fn nabla_riemann(
    cd: &ConnectionData,
    riem: &[Vec<Vec<Vec<GradedPoly>>>],
    al: usize,
    mu: usize,
    be: usize,
    la: usize,
    ka: usize,
) -> GradedPoly {
    let chart = &cd.chart;
    let n = chart.n_body;
    let mut acc = riem[mu][be][la][ka].left_deriv(chart.y(al));
    for rho in 0..n {
        acc = acc
            .sub(&cd.gamma[rho][al][mu].mul(&riem[rho][be][la][ka]).expect("chart"))
            .expect("chart");
        acc = acc
            .sub(&cd.gamma[rho][al][be].mul(&riem[mu][rho][la][ka]).expect("chart"))
            .expect("chart");
        acc = acc
            .add(&cd.gamma[la][al][rho].mul(&riem[mu][be][rho][ka]).expect("chart"))
            .expect("chart");
        acc = acc
            .sub(&cd.gamma[rho][al][ka].mul(&riem[mu][be][la][rho]).expect("chart"))
            .expect("chart");
    }
    acc
}

/// Closed second-order expansion of the hat of the homological field at
/// the base point: the tautological `ν^mu ∂_{ξ^mu}` piece, the body part
/// `(1/2) v^mu ξ^al ξ^be R_{mu al}^{..rho}_{..be} ∂_{ξ^rho}`, and the
/// graded part `v^mu v^ka (ξ^al R_{mu al}^{..la}_{..ka} + (1/2) ξ^al ξ^be
/// ∇_al R_{mu be}^{..la}_{..ka}) ∂_{ν^la}`, with `v = w + nu`.
pub fn qhat_closed_form(cd: &ConnectionData) -> VectorField {
    let chart = &cd.chart;
    let n = chart.n_body;
    let riem = cd.riemann();
    let mut out = VectorField::new(1);
    for rho in 0..n {
        let mut acc = chart.gen_poly(chart.nu(rho));
        for mu in 0..n {
            let v = graded_combo(chart, mu);
            for al in 0..n {
                for be in 0..n {
                    if riem[mu][al][rho][be].is_zero() {
                        continue;
                    }
                    let t = v
                        .mul(&chart.gen_poly(chart.xi(al)))
                        .expect("chart")
                        .mul(&chart.gen_poly(chart.xi(be)))
                        .expect("chart")
                        .mul(&riem[mu][al][rho][be])
                        .expect("chart");
                    acc = acc.add(&t.scale(&rat(1, 2))).expect("chart");
                }
            }
        }
        out.set(chart.xi(rho), acc);
    }
    for la in 0..n {
        let mut acc = chart.zero();
        for mu in 0..n {
            for ka in 0..n {
                let vv = graded_combo(chart, mu)
                    .mul(&graded_combo(chart, ka))
                    .expect("chart");
                if vv.is_zero() {
                    continue;
                }
                for al in 0..n {
                    let t1 = chart
                        .gen_poly(chart.xi(al))
                        .mul(&riem[mu][al][la][ka])
                        .expect("chart");
                    acc = acc.add(&vv.mul(&t1).expect("chart")).expect("chart");
                    for be in 0..n {
                        let nr = nabla_riemann(cd, &riem, al, mu, be, la, ka);
                        if nr.is_zero() {
                            continue;
                        }
                        let t2 = chart
                            .gen_poly(chart.xi(al))
                            .mul(&chart.gen_poly(chart.xi(be)))
                            .expect("chart")
                            .mul(&nr)
                            .expect("chart")
                            .scale(&rat(1, 2));
                        acc = acc.add(&vv.mul(&t2).expect("chart")).expect("chart");
                    }
                }
            }
        }
        out.set(chart.nu(la), acc);
    }
    out
}
