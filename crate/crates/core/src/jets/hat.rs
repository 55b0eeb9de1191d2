//! Pulling vector fields to the flat model: push forward through the map
//! and subtract the contraction with the flat connection. The result
//! vanishes at the flat origin and obeys the base-differentiation bracket
//! identity, which `check_key_identity` verifies. Variations of the
//! underlying choices act through a generator of flat diffeomorphisms; the
//! comparison runs on a nilpotent parameter.

use super::chart::{ConnectionData, JetChart, JetError, PolyMat, CLASS_GRADED, CLASS_XI, CLASS_Y};
use super::exp::JetMap;
use super::gro::GroConn;
use super::vf::VectorField;
use crate::graded::GradedPoly;
use crate::num::{rat, rat_int, Rat};
use num_traits::One;

/// Push-forward of a curved vector field (components over curved
/// directions, base-dependent coefficients) to the flat model:
/// `(φ^{-1}_* u)^c = u^B(φ) (M^{-1})_B^c`.
pub fn pushforward(u: &VectorField, map: &JetMap) -> Result<VectorField, JetError> {
    let chart = &map.chart;
    let curved = chart.curved();
    let flat = chart.flat();
    let n = curved.len();
    let mut m = PolyMat::zero(chart, n);
    for (ci, &c) in flat.iter().enumerate() {
        for b in 0..n {
            m[(ci, b)] = map.comps[b].left_deriv(c);
        }
    }
    let minv = m.inverse(chart)?;
    let mut out = VectorField::new(u.parity);
    for (ci, &cdir) in flat.iter().enumerate() {
        let mut acc = chart.zero();
        for (bi, &bdir) in curved.iter().enumerate() {
            let Some(ub) = u.comp(bdir) else { continue };
            let composed = map.compose_body(ub);
            acc = acc
                .add(&composed.mul(&minv[(bi, ci)]).expect("chart"))
                .expect("chart");
        }
        out.set(cdir, acc);
    }
    Ok(out)
}

/// `hat(u) = φ^{-1}_* u - ι_u G`; the contraction takes the curved
/// components at the base point. The push-forward reuses the Jacobian
/// inverse cached on the connection.
pub fn hat(u: &VectorField, map: &JetMap, gro: &GroConn) -> Result<VectorField, JetError> {
    let chart = &map.chart;
    let curved = chart.curved();
    let flat = chart.flat();
    let mut out = VectorField::new(u.parity);
    for (ci, &cdir) in flat.iter().enumerate() {
        let mut acc = chart.zero();
        for (bi, &bdir) in curved.iter().enumerate() {
            let Some(ub) = u.comp(bdir) else { continue };
            let composed = map.compose_body(ub);
            acc = acc
                .add(&composed.mul(&gro.minv[(bi, ci)]).expect("chart"))
                .expect("chart");
        }
        out.set(cdir, acc);
    }

    for (ai, &adir) in curved.iter().enumerate() {
        let Some(ua) = u.comp(adir) else { continue };
        for (&cdir, gc) in gro.comps[ai].comps() {
            let term = ua.mul(gc).expect("chart");
            let cur = match out.comp(cdir) {
                Some(p) => p.sub(&term).expect("chart"),
                None => term.scale(&rat_int(-1)),
            };
            out.set(cdir, cur);
        }
    }
    Ok(out)
}

/// Base-point differentiation: `(u ∘ v)^c = Σ_A u^A ∂_A v^c` over curved
/// directions.
pub fn base_action(u: &VectorField, v: &VectorField, chart: &JetChart) -> VectorField {
    let mut out = VectorField::new((u.parity + v.parity) % 2);
    for (&c, vc) in v.comps() {
        let mut acc = chart.zero();
        for (&a, ua) in u.comps() {
            acc = acc.add(&ua.mul(&vc.left_deriv(a)).expect("chart")).expect("chart");
        }
        out.set(c, acc);
    }
    out
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub ok: bool,
    pub residual_dirs: Vec<usize>,
}

fn report(vf: &VectorField) -> IdentityReport {
    let dirs: Vec<usize> = vf.comps().map(|(&d, _)| d).collect();
    IdentityReport { ok: vf.is_zero(), residual_dirs: dirs }
}

/// `[û, v̂] - hat([u, v]) + u∘v̂ - (-1)^{|u||v|} v∘û = 0` within reduced
/// budgets.
pub fn check_key_identity(
    u: &VectorField,
    v: &VectorField,
    map: &JetMap,
    gro: &GroConn,
) -> Result<IdentityReport, JetError> {
    let chart = &map.chart;
    let hu = hat(u, map, gro)?;
    let hv = hat(v, map, gro)?;
    let br = hu.bracket(&hv);
    let huv = hat(&u.bracket(v), map, gro)?;
    let uv = base_action(u, &hv, chart);
    let vu = base_action(v, &hu, chart);
    let sign = if u.parity * v.parity % 2 == 1 { 1 } else { -1 };
    let residual = br.sub(&huv).add(&uv).add(&vu.scale(&rat_int(sign)));
    let clipped =
        residual.clipped(chart, &[(CLASS_XI, 1), (CLASS_Y, 1), (CLASS_GRADED, 1)]);
    Ok(report(&clipped))
}

/// Closed second-order form of the hat of a body field for the geodesic
/// map: `ξ ∂u + (ξξ/2)(u R + ∇∇u)`.
pub fn hat_closed_form(cd: &ConnectionData, u: &VectorField) -> VectorField {
    let chart = &cd.chart;
    let n = chart.n_body;
    let riem = cd.riemann();
    let mut out = VectorField::new(u.parity);
    for mu in 0..n {
        let mut acc = chart.zero();
        for al in 0..n {
            // ξ^al ∂_al u^mu
            if let Some(umu) = u.comp(chart.y(mu)) {
                acc = acc
                    .add(
                        &chart
                            .gen_poly(chart.xi(al))
                            .mul(&umu.left_deriv(chart.y(al)))
                            .expect("chart"),
                    )
                    .expect("chart");
            }
            for be in 0..n {
                let xi2 = chart
                    .gen_poly(chart.xi(al))
                    .mul(&chart.gen_poly(chart.xi(be)))
                    .expect("chart")
                    .scale(&rat(1, 2));
                // u^rho R_{rho al}^{..mu}_{..be}
                let mut inner = chart.zero();
                for rho in 0..n {
                    if let Some(ur) = u.comp(chart.y(rho)) {
                        inner = inner
                            .add(&ur.mul(&riem[rho][al][mu][be]).expect("chart"))
                            .expect("chart");
                    }
                }
                // ∇_al ∇_be u^mu
                inner = inner.add(&nabla2_u(cd, u, al, be, mu)).expect("chart");
                acc = acc.add(&xi2.mul(&inner).expect("chart")).expect("chart");
            }
        }
        out.set(chart.xi(mu), acc);
    }
    out
}

/// `∇_al u^mu = ∂_al u^mu + Γ^mu_{al rho} u^rho`.
fn nabla_u(cd: &ConnectionData, u: &VectorField, al: usize, mu: usize) -> GradedPoly {
    let chart = &cd.chart;
    let n = chart.n_body;
    let mut acc = u
        .comp(chart.y(mu))
        .map(|p| p.left_deriv(chart.y(al)))
        .unwrap_or_else(|| chart.zero());
    for rho in 0..n {
        if let Some(ur) = u.comp(chart.y(rho)) {
            acc = acc.add(&cd.gamma[mu][al][rho].mul(ur).expect("chart")).expect("chart");
        }
    }
    acc
}

/// `∇_al ∇_be u^mu` treating `∇u` as a `(1,1)`-tensor.
fn nabla2_u(cd: &ConnectionData, u: &VectorField, al: usize, be: usize, mu: usize) -> GradedPoly {
    let chart = &cd.chart;
    let n = chart.n_body;
    let mut acc = nabla_u(cd, u, be, mu).left_deriv(chart.y(al));
    for rho in 0..n {
        acc = acc
            .add(&cd.gamma[mu][al][rho].mul(&nabla_u(cd, u, be, rho)).expect("chart"))
            .expect("chart");
        acc = acc
            .sub(&cd.gamma[rho][al][be].mul(&nabla_u(cd, u, rho, mu)).expect("chart"))
            .expect("chart");
    }
    acc
}

/// Compares the definitional hat against the closed second-order form.
pub fn check_hat_closed_form(
    cd: &ConnectionData,
    u: &VectorField,
    map: &JetMap,
    gro: &GroConn,
) -> Result<IdentityReport, JetError> {
    let chart = &cd.chart;
    let got = hat(u, map, gro)?;
    let want = hat_closed_form(cd, u);
    // the closed form stops at second order in the flat coordinates
    let cut = chart.orders.xi.saturating_sub(2);
    let diff = got.sub(&want).clipped(chart, &[(CLASS_XI, cut.max(1)), (CLASS_Y, 1)]);
    Ok(report(&diff))
}

/// Generator of the flat-diffeomorphism family induced by a change of the
/// body connection: `Ψ = (γ/2) ξξ + (∇γ/6) ξ^3 [+ (γ F/12) ξ^3` on the
/// graded sector when a bundle is present].
pub fn variation_generator_metric(
    cd: &ConnectionData,
    gamma_var: &[Vec<Vec<GradedPoly>>],
) -> VectorField {
    let chart = &cd.chart;
    let n = chart.n_body;
    let mut out = VectorField::new(0);
    for mu in 0..n {
        let mut acc = chart.zero();
        for al in 0..n {
            for be in 0..n {
                let xi2 = chart
                    .gen_poly(chart.xi(al))
                    .mul(&chart.gen_poly(chart.xi(be)))
                    .expect("chart");
                acc = acc
                    .add(&gamma_var[mu][al][be].mul(&xi2).expect("chart").scale(&rat(1, 2)))
                    .expect("chart");
                for ga in 0..n {
                    let xi3 = xi2.mul(&chart.gen_poly(chart.xi(ga))).expect("chart");
                    // ∇_ga γ^mu_{al be} with the unvaried connection
                    let mut ng = gamma_var[mu][al][be].left_deriv(chart.y(ga));
                    for rho in 0..n {
                        ng = ng
                            .add(&cd.gamma[mu][ga][rho].mul(&gamma_var[rho][al][be]).expect("chart"))
                            .expect("chart");
                        ng = ng
                            .sub(&cd.gamma[rho][ga][al].mul(&gamma_var[mu][rho][be]).expect("chart"))
                            .expect("chart");
                        ng = ng
                            .sub(&cd.gamma[rho][ga][be].mul(&gamma_var[mu][al][rho]).expect("chart"))
                            .expect("chart");
                    }
                    acc = acc.add(&ng.mul(&xi3).expect("chart").scale(&rat(1, 6))).expect("chart");
                }
            }
        }
        out.set(chart.xi(mu), acc);
    }
    if let Some(bundle) = &cd.bundle {
        let f = super::gro::bundle_curvature(cd).expect("bundle present");
        let r = bundle.rank;
        for a in 0..r {
            let mut acc = chart.zero();
            for b in 0..r {
                let mut coeff = chart.zero();
                for mu in 0..n {
                    for al in 0..n {
                        for be in 0..n {
                            if gamma_var[mu][al][be].is_zero() {
                                continue;
                            }
                            for ga in 0..n {
                                if f[mu][ga][(a, b)].is_zero() {
                                    continue;
                                }
                                let xi3 = chart
                                    .gen_poly(chart.xi(al))
                                    .mul(&chart.gen_poly(chart.xi(be)))
                                    .expect("chart")
                                    .mul(&chart.gen_poly(chart.xi(ga)))
                                    .expect("chart");
                                let t = gamma_var[mu][al][be]
                                    .mul(&f[mu][ga][(a, b)])
                                    .expect("chart")
                                    .mul(&xi3)
                                    .expect("chart");
                                coeff = coeff.add(&t).expect("chart");
                            }
                        }
                    }
                }
                let combo = super::exp::graded_combo(chart, b);
                acc = acc
                    .add(&coeff.scale(&rat(1, 12)).mul(&combo).expect("chart"))
                    .expect("chart");
            }
            out.set(chart.nu(a), acc);
        }
    }
    out
}

/// Generator for a change of the bundle connection:
/// `Ψ = (a ξ + ∇a ξξ/2 + ∇∇a ξ^3/6)` acting on the graded sector.
pub fn variation_generator_bundle(
    cd: &ConnectionData,
    a_var: &[PolyMat],
) -> VectorField {
    let chart = &cd.chart;
    let bundle = cd.bundle.as_ref().expect("bundle present");
    let n = chart.n_body;
    let r = bundle.rank;
    // ∇_al a_be = ∂ a + [A, a] - Γ a  (combined connection)
    let nabla_a = |al: usize, be: usize| -> PolyMat {
        let mut m = PolyMat::zero(chart, r);
        for i in 0..r {
            for j in 0..r {
                let mut acc = a_var[be][(i, j)].left_deriv(chart.y(al));
                for k in 0..r {
                    acc = acc
                        .add(&bundle.a[al][(i, k)].mul(&a_var[be][(k, j)]).expect("chart"))
                        .expect("chart");
                    acc = acc
                        .sub(&a_var[be][(i, k)].mul(&bundle.a[al][(k, j)]).expect("chart"))
                        .expect("chart");
                }
                for rho in 0..n {
                    acc = acc
                        .sub(&cd.gamma[rho][al][be].mul(&a_var[rho][(i, j)]).expect("chart"))
                        .expect("chart");
                }
                m[(i, j)] = acc;
            }
        }
        m
    };
    let nabla2_a = |al: usize, be: usize, ga: usize| -> PolyMat {
        // ∇_al (∇a)_{be ga}
        let inner: Vec<PolyMat> = (0..n).map(|g2| nabla_a(be, g2)).collect();
        let mut m = PolyMat::zero(chart, r);
        for i in 0..r {
            for j in 0..r {
                let mut acc = inner[ga][(i, j)].left_deriv(chart.y(al));
                for k in 0..r {
                    acc = acc
                        .add(&bundle.a[al][(i, k)].mul(&inner[ga][(k, j)]).expect("chart"))
                        .expect("chart");
                    acc = acc
                        .sub(&inner[ga][(i, k)].mul(&bundle.a[al][(k, j)]).expect("chart"))
                        .expect("chart");
                }
                for rho in 0..n {
                    acc = acc
                        .sub(&cd.gamma[rho][al][be].mul(&nabla_a(rho, ga)[(i, j)]).expect("chart"))
                        .expect("chart");
                    acc = acc
                        .sub(&cd.gamma[rho][al][ga].mul(&nabla_a(be, rho)[(i, j)]).expect("chart"))
                        .expect("chart");
                }
                m[(i, j)] = acc;
            }
        }
        m
    };
    let mut out = VectorField::new(0);
    for a in 0..r {
        let mut acc = chart.zero();
        for b in 0..r {
            let mut coeff = chart.zero();
            for al in 0..n {
                coeff = coeff
                    .add(&a_var[al][(a, b)].mul(&chart.gen_poly(chart.xi(al))).expect("chart"))
                    .expect("chart");
                for be in 0..n {
                    let na = nabla_a(al, be);
                    let xi2 = chart
                        .gen_poly(chart.xi(al))
                        .mul(&chart.gen_poly(chart.xi(be)))
                        .expect("chart");
                    coeff = coeff
                        .add(&na[(a, b)].mul(&xi2).expect("chart").scale(&rat(1, 2)))
                        .expect("chart");
                    for ga in 0..n {
                        let n2 = nabla2_a(al, be, ga);
                        let xi3 = xi2.mul(&chart.gen_poly(chart.xi(ga))).expect("chart");
                        coeff = coeff
                            .add(&n2[(a, b)].mul(&xi3).expect("chart").scale(&rat(1, 6)))
                            .expect("chart");
                    }
                }
            }
            let combo = super::exp::graded_combo(chart, b);
            acc = acc.add(&coeff.mul(&combo).expect("chart")).expect("chart");
        }
        out.set(chart.nu(a), acc);
    }
    out
}

/// Checks `[-d + G, Ψ] = δG` given the varied connection on the nilpotent
/// parameter: per curved direction `A`, the component identity
/// `-∂_A Ψ + [G_A, Ψ] = δG_A`.
pub fn check_variation_identity(
    chart: &JetChart,
    gro_varied: &GroConn,
    psi: &VectorField,
) -> IdentityReport {
    let curved = chart.curved();
    let mut residuals = VectorField::new(0);
    for (ai, &adir) in curved.iter().enumerate() {
        let base = gro_varied.comps[ai].base_part(chart);
        let delta = gro_varied.comps[ai].variation_part(chart);
        // -∂_A Ψ
        let mut lhs = VectorField::new(psi.parity);
        for (&c, p) in psi.comps() {
            lhs.set(c, p.left_deriv(adir).scale(&rat_int(-1)));
        }
        let br = base.bracket(psi);
        let lhs = lhs.add(&br);
        let res = lhs.sub(&delta).clipped(
            chart,
            &[(CLASS_XI, 1), (CLASS_Y, 1), (CLASS_GRADED, 1)],
        );
        for (&c, p) in res.comps() {
            let cur = match residuals.comp(c) {
                Some(q) => q.add(&p.clone().scale(&Rat::one())).expect("chart"),
                None => p.clone(),
            };
            residuals.set(c, cur);
        }
    }
    report(&residuals)
}

/// Checks `δ hat(u) = u∘Ψ + [hat(u), Ψ]` for a varied map.
pub fn check_hat_variation(
    chart: &JetChart,
    u: &VectorField,
    hat_varied: &VectorField,
    psi: &VectorField,
) -> IdentityReport {
    let delta = hat_varied.variation_part(chart);
    let base = hat_varied.base_part(chart);
    let want = base_action(u, psi, chart).add(&base.bracket(psi));
    let res = delta.sub(&want).clipped(chart, &[(CLASS_XI, 1), (CLASS_Y, 1), (CLASS_GRADED, 1)]);
    report(&res)
}
