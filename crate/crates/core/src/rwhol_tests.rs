//! Holomorphic-sector identity suite: the cubic vertex reproduces the
//! curvature contraction, the moment vertex carries the corrected
//! third-order coefficient, the connection-variation identity holds, and
//! the bundle vertex matches its curvature expansion.

use crate::graded::GradedPoly;
use crate::jets::rwhol::*;
use crate::jets::{JetChart, Orders, CLASS_Y};
use crate::num::rat;
use num_traits::Zero;

fn orders() -> Orders {
    Orders { xi: 3, y: 2, graded: 2 }
}

fn at_base(chart: &JetChart, p: &GradedPoly) -> GradedPoly {
    chart.clip(p, &[(CLASS_Y, chart.orders.y)])
}

/// Expected cubic vertex: `(1/6) vbar^ibar R_{ibar i}^{..l}_{..k} Ω_{lj}
/// ξ^i ξ^j ξ^k` from the curvature of the holomorphic Christoffels.
fn expected_v_theta3(data: &HolData) -> GradedPoly {
    let hc = &data.hc;
    let chart = &hc.chart;
    let d = hc.d;
    let cd = data.connection().unwrap();
    let riem = cd.riemann();
    let mut acc = chart.zero();
    for ibar in 0..d {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut coeff = chart.zero();
                    for l in 0..d {
                        if data.omega[(l, j)].is_zero() {
                            continue;
                        }
                        coeff = coeff
                            .add(&riem[d + ibar][i][l][k].scale(&data.omega[(l, j)]))
                            .unwrap();
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    let term = chart
                        .gen_poly(hc.vbar(ibar))
                        .mul(&coeff)
                        .unwrap()
                        .mul(&chart.gen_poly(hc.xi_hol(i)))
                        .unwrap()
                        .mul(&chart.gen_poly(hc.xi_hol(j)))
                        .unwrap()
                        .mul(&chart.gen_poly(hc.xi_hol(k)))
                        .unwrap();
                    acc = acc.add(&term).unwrap();
                }
            }
        }
    }
    acc.scale(&rat(1, 6))
}

#[test]
fn cubic_vertex_is_curvature_contraction() {
    for seed in 0..3u64 {
        let mut rng = crate::random::seeded(2100 + seed);
        let data = random_hol_data(2, 0, 0, orders(), &mut rng);
        let jets = rw_jets(&data).unwrap();
        let chart = &data.hc.chart;
        let got = at_base(chart, &data.xi_weight_part(&jets.v_theta, 3));
        let want = at_base(chart, &expected_v_theta3(&data));
        assert_eq!(got, want, "cubic coefficient mismatch, seed {seed}");
        // and nothing of lower flat weight survives
        for k in 0..3 {
            assert!(
                at_base(chart, &data.xi_weight_part(&jets.v_theta, k)).is_zero(),
                "unexpected weight-{k} part, seed {seed}"
            );
        }
    }
}

/// Expected moment vertex through third order:
/// `ell^al ((1/2) ∂∂mu ξξ + (1/6)(∇∇∂mu - (∂mu) R) ξ^3)`.
fn expected_ell_m(data: &HolData) -> GradedPoly {
    let hc = &data.hc;
    let chart = &hc.chart;
    let d = hc.d;
    let cd = data.connection().unwrap();
    let riem = cd.riemann();
    let inv = data.omega.inverse().unwrap();
    // sfr^l_{ijk} = (Ω^{-1})^{ml} R_{mi}^{..p}_{..k} Ω_{pj}
    let sfr = |l: usize, i: usize, j: usize, k: usize| -> GradedPoly {
        let mut acc = chart.zero();
        for m in 0..d {
            for p in 0..d {
                let w = &inv[(m, l)] * &data.omega[(p, j)];
                if w.is_zero() || riem[m][i][p][k].is_zero() {
                    continue;
                }
                acc = acc.add(&riem[m][i][p][k].scale(&w)).unwrap();
            }
        }
        acc
    };
    let nabla_d = |mu: &GradedPoly, j: usize, k: usize| -> GradedPoly {
        // ∇_j ∂_k mu
        let mut acc = mu.left_deriv(hc.y_hol(k)).left_deriv(hc.y_hol(j));
        for l in 0..d {
            acc = acc
                .sub(&data.gamma_hol[l][j][k].mul(&mu.left_deriv(hc.y_hol(l))).unwrap())
                .unwrap();
        }
        acc
    };
    let nabla2_d = |mu: &GradedPoly, i: usize, j: usize, k: usize| -> GradedPoly {
        // ∇_i (∇∂mu)_{jk}
        let mut acc = nabla_d(mu, j, k).left_deriv(hc.y_hol(i));
        for l in 0..d {
            acc = acc.sub(&data.gamma_hol[l][i][j].mul(&nabla_d(mu, l, k)).unwrap()).unwrap();
            acc = acc.sub(&data.gamma_hol[l][i][k].mul(&nabla_d(mu, j, l)).unwrap()).unwrap();
        }
        acc
    };
    let mut total = chart.zero();
    for (al, mu) in data.moments.iter().enumerate() {
        let mut m_al = chart.zero();
        for i in 0..d {
            for j in 0..d {
                let xi2 = chart
                    .gen_poly(hc.xi_hol(i))
                    .mul(&chart.gen_poly(hc.xi_hol(j)))
                    .unwrap();
                let h = mu.left_deriv(hc.y_hol(j)).left_deriv(hc.y_hol(i));
                m_al = m_al.add(&h.mul(&xi2).unwrap().scale(&rat(1, 2))).unwrap();
                for k in 0..d {
                    let xi3 = xi2.mul(&chart.gen_poly(hc.xi_hol(k))).unwrap();
                    let mut c = nabla2_d(mu, i, j, k);
                    for l in 0..d {
                        c = c
                            .sub(&mu.left_deriv(hc.y_hol(l)).mul(&sfr(l, i, j, k)).unwrap())
                            .unwrap();
                    }
                    m_al = m_al.add(&c.mul(&xi3).unwrap().scale(&rat(1, 6))).unwrap();
                }
            }
        }
        total = total.add(&chart.gen_poly(hc.ell(al)).mul(&m_al).unwrap()).unwrap();
    }
    total
}

#[test]
fn moment_vertex_matches_corrected_expansion() {
    for seed in 0..3u64 {
        let mut rng = crate::random::seeded(2200 + seed);
        let data = random_hol_data(2, 0, 2, orders(), &mut rng);
        let jets = rw_jets(&data).unwrap();
        let chart = &data.hc.chart;
        let got = at_base(chart, &jets.ell_m);
        let want = at_base(chart, &expected_ell_m(&data));
        assert_eq!(got, want, "moment vertex mismatch, seed {seed}");
    }
}

#[test]
fn moment_vertex_with_flat_connection() {
    // vanishing curvature: the third-order term is the bare symmetrized
    // triple derivative
    let mut rng = crate::random::seeded(2300);
    let mut data = random_hol_data(2, 0, 1, orders(), &mut rng);
    let chart = data.hc.chart.clone();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                data.gamma_hol[i][j][k] = chart.zero();
            }
        }
    }
    let jets = rw_jets(&data).unwrap();
    let got = at_base(&chart, &jets.ell_m);
    let want = at_base(&chart, &expected_ell_m(&data));
    assert_eq!(got, want);
    assert!(!got.is_zero());
}

#[test]
fn delta_gamma_identity() {
    for seed in 0..3u64 {
        let mut rng = crate::random::seeded(2400 + seed);
        let data = random_hol_data(2, 0, 2, orders(), &mut rng);
        // compatible variation: totally symmetric lowered tensor
        let chart = data.hc.chart.clone();
        let d = 2usize;
        let inv = data.omega.inverse().unwrap();
        let mut s = std::collections::BTreeMap::new();
        for a in 0..d {
            for b in a..d {
                for c in b..d {
                    s.insert(
                        (a, b, c),
                        crate::jets::data::random_y_series_capped(&chart, &mut rng, true, 2),
                    );
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
        let mut gvar = vec![vec![vec![chart.zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut acc = chart.zero();
                    for l in 0..d {
                        if inv[(i, l)].is_zero() {
                            continue;
                        }
                        acc = acc.add(&sym(l, j, k).scale(&inv[(i, l)])).unwrap();
                    }
                    gvar[i][j][k] = acc;
                }
            }
        }
        let rep = check_delta_gamma(&data, &gvar).unwrap();
        assert!(rep.ok, "variation identity fails, seed {seed}");
    }
}

#[test]
fn bundle_vertex_matches_curvature_expansion() {
    for seed in 0..2u64 {
        let mut rng = crate::random::seeded(2500 + seed);
        let data = random_hol_data(2, 2, 0, orders(), &mut rng);
        let hc = &data.hc;
        let chart = &hc.chart;
        let d = hc.d;
        let r = hc.rank;
        let jets = rw_jets(&data).unwrap();
        // K_{ibar j} = ∂_{ybar} A_j in the holomorphic gauge
        let kcurv = |ibar: usize, j: usize, a: usize, b: usize| -> GradedPoly {
            data.a_hol[j][(a, b)].left_deriv(hc.y_bar(ibar))
        };
        for ibar in 0..d {
            for a in 0..r {
                for b in 0..r {
                    let got1 = at_base(chart, &data.xi_weight_part(&jets.k_matrices[ibar][a][b], 1));
                    let mut want1 = chart.zero();
                    for j in 0..d {
                        want1 = want1
                            .add(&kcurv(ibar, j, a, b).mul(&chart.gen_poly(hc.xi_hol(j))).unwrap())
                            .unwrap();
                    }
                    assert_eq!(got1, at_base(chart, &want1), "first order, seed {seed}");

                    // second order: (1/2) ∇_j K_{ibar k} ξ^j ξ^k
                    let got2 = at_base(chart, &data.xi_weight_part(&jets.k_matrices[ibar][a][b], 2));
                    let mut want2 = chart.zero();
                    for j in 0..d {
                        for k in 0..d {
                            // ∇_j K = ∂_j K + [A_j, K] - Γ^l_{jk} K_l
                            let mut c = kcurv(ibar, k, a, b).left_deriv(hc.y_hol(j));
                            for e in 0..r {
                                c = c
                                    .add(&data.a_hol[j][(a, e)].mul(&kcurv(ibar, k, e, b)).unwrap())
                                    .unwrap();
                                c = c
                                    .sub(&kcurv(ibar, k, a, e).mul(&data.a_hol[j][(e, b)]).unwrap())
                                    .unwrap();
                            }
                            for l in 0..d {
                                c = c
                                    .sub(&data.gamma_hol[l][j][k].mul(&kcurv(ibar, l, a, b)).unwrap())
                                    .unwrap();
                            }
                            let xi2 = chart
                                .gen_poly(hc.xi_hol(j))
                                .mul(&chart.gen_poly(hc.xi_hol(k)))
                                .unwrap();
                            want2 = want2.add(&c.mul(&xi2).unwrap().scale(&rat(1, 2))).unwrap();
                        }
                    }
                    assert_eq!(got2, at_base(chart, &want2), "second order, seed {seed}");
                }
            }
        }

        // antisymmetrized covariant derivative vanishes at first order
        for ibar in 0..d {
            for jbar in 0..d {
                for a in 0..r {
                    for b in 0..r {
                        let d1 = jets.k_matrices[jbar][a][b].left_deriv(hc.y_bar(ibar));
                        let d2 = jets.k_matrices[ibar][a][b].left_deriv(hc.y_bar(jbar));
                        let anti = d1.sub(&d2).unwrap();
                        let lin = at_base(chart, &data.xi_weight_part(&anti, 1));
                        let lin = chart.clip(&lin, &[(CLASS_Y, 1)]);
                        assert!(lin.is_zero(), "neat relation at first order, seed {seed}");
                    }
                }
            }
        }
    }
}
