//! The flat connection induced by a local identification: contract the
//! base-point Jacobian with the inverse of the flat-coordinate Jacobian.
//! Each curved direction yields a vector field along the flat directions;
//! the family is flat, which `check_flatness` verifies instance by
//! instance.

use super::chart::{ConnectionData, JetChart, JetError, PolyMat, CLASS_GRADED, CLASS_XI, CLASS_Y};
use super::exp::JetMap;
use super::vf::VectorField;
use crate::num::{rat, rat_int};

/// One vector field per curved direction, with components along the flat
/// directions.
#[derive(Clone, Debug)]
pub struct GroConn {
    pub chart: JetChart,
    /// Indexed parallel to `chart.curved()`.
    pub comps: Vec<VectorField>,
    /// Inverse of the flat-coordinate Jacobian of the map that produced
    /// this connection; reused by the hat machinery.
    pub minv: PolyMat,
}

impl GroConn {
    /// The operator `D_A = ∂_A - Σ_c G_A^c ∂_c` as a vector field.
    pub fn covariant_direction(&self, a: usize) -> VectorField {
        let chart = &self.chart;
        let dir = chart.curved()[a];
        let parity = chart.space().gen(dir).degree % 2;
        let mut d = VectorField::new(parity);
        d.set(dir, chart.one());
        let mut out = d.add(&self.comps[a].scale(&rat_int(-1)));
        out.parity = parity;
        out
    }
}

/// Computes the connection from a map: solve `G · M = J` with
/// `M = ∂φ/∂(flat)` and `J = ∂φ/∂(curved)`.
pub fn grothendieck(map: &JetMap) -> Result<GroConn, JetError> {
    let chart = &map.chart;
    let curved = chart.curved();
    let flat = chart.flat();
    let n = curved.len();
    assert_eq!(map.comps.len(), n);
    let mut m = PolyMat::zero(chart, n);
    for (ci, &c) in flat.iter().enumerate() {
        for b in 0..n {
            m[(ci, b)] = map.comps[b].left_deriv(c);
        }
    }
    let minv = m.inverse(chart)?;
    let mut comps = Vec::with_capacity(n);
    for &a in curved.iter() {
        let parity = chart.space().gen(a).degree % 2;
        let mut vf = VectorField::new(parity);
        for (ci, &cdir) in flat.iter().enumerate() {
            // G_A^c = Σ_B (∂_A φ^B) (M^{-1})_B^c
            let mut acc = chart.zero();
            for b in 0..n {
                let j = map.comps[b].left_deriv(a);
                if j.is_zero() {
                    continue;
                }
                acc = acc.add(&j.mul(&minv[(b, ci)]).expect("chart")).expect("chart");
            }
            vf.set(cdir, acc);
        }
        comps.push(vf);
    }
    Ok(GroConn { chart: chart.clone(), comps, minv })
}

#[derive(Debug, Clone)]
pub struct FlatnessReport {
    pub ok: bool,
    /// Curved direction pairs with a nonvanishing commutator.
    pub failures: Vec<(usize, usize)>,
}

/// `[D_A, D_B]` must vanish for every pair of curved coordinate directions,
/// within the budgets reduced by the derivatives taken.
pub fn check_flatness(gro: &GroConn) -> FlatnessReport {
    let chart = &gro.chart;
    let n = chart.curved().len();
    let mut failures = Vec::new();
    let drop = [(CLASS_Y, 1), (CLASS_XI, 1), (CLASS_GRADED, 1)];
    for a in 0..n {
        for b in a..n {
            let da = gro.covariant_direction(a);
            let db = gro.covariant_direction(b);
            if a == b && da.parity == 0 {
                continue;
            }
            let br = da.bracket(&db).clipped(chart, &drop);
            if !br.is_zero() {
                failures.push((a, b));
            }
        }
    }
    FlatnessReport { ok: failures.is_empty(), failures }
}

/// Closed second-order expansion of the body block,
/// `δ + Γ ξ - (1/3) R ξ ξ`, for cross-checking against the definitional
/// computation.
pub fn body_closed_form(cd: &ConnectionData) -> Vec<VectorField> {
    let chart = &cd.chart;
    let n = chart.n_body;
    let riem = cd.riemann();
    let mut out = Vec::with_capacity(n);
    for ga in 0..n {
        let mut vf = VectorField::new(0);
        for mu in 0..n {
            let mut acc = if mu == ga { chart.one() } else { chart.zero() };
            for be in 0..n {
                acc = acc
                    .add(
                        &cd.gamma[mu][be][ga]
                            .mul(&chart.gen_poly(chart.xi(be)))
                            .expect("chart"),
                    )
                    .expect("chart");
            }
            for al in 0..n {
                for be in 0..n {
                    if riem[ga][al][mu][be].is_zero() {
                        continue;
                    }
                    let xi2 = chart
                        .gen_poly(chart.xi(al))
                        .mul(&chart.gen_poly(chart.xi(be)))
                        .expect("chart");
                    acc = acc
                        .add(&riem[ga][al][mu][be].mul(&xi2).expect("chart").scale(&rat(-1, 3)))
                        .expect("chart");
                }
            }
            vf.set(chart.xi(mu), acc);
        }
        out.push(vf);
    }
    out
}

/// Bundle curvature `F_{al be} = ∂_al A_be - ∂_be A_al + [A_al, A_be]`.
pub fn bundle_curvature(cd: &ConnectionData) -> Option<Vec<Vec<PolyMat>>> {
    let chart = &cd.chart;
    let bundle = cd.bundle.as_ref()?;
    let n = chart.n_body;
    let r = bundle.rank;
    let mut f = vec![vec![PolyMat::zero(chart, r); n]; n];
    for al in 0..n {
        for be in 0..n {
            let mut m = PolyMat::zero(chart, r);
            for i in 0..r {
                for j in 0..r {
                    let mut acc = bundle.a[be][(i, j)].left_deriv(chart.y(al));
                    acc = acc
                        .sub(&bundle.a[al][(i, j)].left_deriv(chart.y(be)))
                        .expect("chart");
                    for k in 0..r {
                        acc = acc
                            .add(&bundle.a[al][(i, k)].mul(&bundle.a[be][(k, j)]).expect("chart"))
                            .expect("chart");
                        acc = acc
                            .sub(&bundle.a[be][(i, k)].mul(&bundle.a[al][(k, j)]).expect("chart"))
                            .expect("chart");
                    }
                    m[(i, j)] = acc;
                }
            }
            f[al][be] = m;
        }
    }
    Some(f)
}

/// Covariant derivative of the bundle curvature with the combined
/// connection: `∇_al F_{ga be} = ∂_al F + [A_al, F] - Γ^ρ_{al ga} F_{ρ be}
/// - Γ^ρ_{al be} F_{ga ρ}`.
pub fn nabla_f(
    cd: &ConnectionData,
    f: &[Vec<PolyMat>],
    al: usize,
    ga: usize,
    be: usize,
) -> PolyMat {
    let chart = &cd.chart;
    let bundle = cd.bundle.as_ref().expect("bundle present");
    let n = chart.n_body;
    let r = bundle.rank;
    let mut out = PolyMat::zero(chart, r);
    for i in 0..r {
        for j in 0..r {
            let mut acc = f[ga][be][(i, j)].left_deriv(chart.y(al));
            for k in 0..r {
                acc = acc
                    .add(&bundle.a[al][(i, k)].mul(&f[ga][be][(k, j)]).expect("chart"))
                    .expect("chart");
                acc = acc
                    .sub(&f[ga][be][(i, k)].mul(&bundle.a[al][(k, j)]).expect("chart"))
                    .expect("chart");
            }
            for rho in 0..n {
                acc = acc
                    .sub(&cd.gamma[rho][al][ga].mul(&f[rho][be][(i, j)]).expect("chart"))
                    .expect("chart");
                acc = acc
                    .sub(&cd.gamma[rho][al][be].mul(&f[ga][rho][(i, j)]).expect("chart"))
                    .expect("chart");
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Closed expansion of the graded block: identity on the graded flat
/// directions plus the tower `A + F ξ / 2 - ∇F ξ ξ / 6` acting through the
/// combination `w + nu`.
pub fn graded_closed_form(cd: &ConnectionData) -> Option<Vec<VectorField>> {
    let chart = &cd.chart;
    let bundle = cd.bundle.as_ref()?;
    let n = chart.n_body;
    let r = bundle.rank;
    let f = bundle_curvature(cd)?;
    let mut out = Vec::with_capacity(n);
    for ga in 0..n {
        let mut vf = VectorField::new(0);
        for a in 0..r {
            let mut acc = chart.zero();
            for b in 0..r {
                // A_ga + (1/2) ξ^be F_{be ga} - (1/6) ξ^al ξ^be ∇_al F_{ga be}
                let mut coeff = bundle.a[ga][(a, b)].clone();
                for be in 0..n {
                    coeff = coeff
                        .add(
                            &f[be][ga][(a, b)]
                                .mul(&chart.gen_poly(chart.xi(be)))
                                .expect("chart")
                                .scale(&rat(1, 2)),
                        )
                        .expect("chart");
                    for al in 0..n {
                        let nf = nabla_f(cd, &f, al, ga, be);
                        let xi2 = chart
                            .gen_poly(chart.xi(al))
                            .mul(&chart.gen_poly(chart.xi(be)))
                            .expect("chart");
                        coeff = coeff
                            .sub(&nf[(a, b)].mul(&xi2).expect("chart").scale(&rat(1, 6)))
                            .expect("chart");
                    }
                }
                let combo = super::exp::graded_combo(chart, b);
                acc = acc.add(&coeff.mul(&combo).expect("chart")).expect("chart");
            }
            vf.set(chart.nu(a), acc);
        }
        out.push(vf);
    }
    Some(out)
}
