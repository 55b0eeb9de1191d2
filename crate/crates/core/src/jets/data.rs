//! Seeded jet data: random connections, compatible symplectic pairs,
//! vielbeins, bundle connections and vector fields, all with
//! small-denominator rational coefficients.

use super::chart::{BundleData, ConnectionData, JetChart, PolyMat};
use super::vf::VectorField;
use crate::graded::GradedPoly;
use crate::linalg::RatMat;
use crate::num::{rat, rat_int};
use rand_chacha::ChaCha8Rng;

/// Random series in the base offset alone, with terms up to the chart's
/// `y`-budget.
pub fn random_y_series(chart: &JetChart, rng: &mut ChaCha8Rng, with_constant: bool) -> GradedPoly {
    random_y_series_capped(chart, rng, with_constant, chart.orders.y)
}

/// As `random_y_series` with an explicit weight cap; keeping data below the
/// budget keeps derived brackets exact.
pub fn random_y_series_capped(
    chart: &JetChart,
    rng: &mut ChaCha8Rng,
    with_constant: bool,
    max_w: u32,
) -> GradedPoly {
    let mut p = chart.zero();
    let n = chart.n_body;
    // dense enough in low orders, sparse above
    let mut exps = vec![0u32; n];
    fn rec(
        chart: &JetChart,
        p: &mut GradedPoly,
        exps: &mut Vec<u32>,
        i: usize,
        remaining: u32,
        rng: &mut ChaCha8Rng,
        with_constant: bool,
    ) {
        if i == exps.len() {
            let w: u32 = exps.iter().sum();
            if w == 0 && !with_constant {
                return;
            }
            if rand::Rng::random_bool(rng, 0.6) {
                let mut full = vec![0u32; chart.space().dim()];
                for (k, &e) in exps.iter().enumerate() {
                    full[chart.y(k)] = e;
                }
                p.add_term(
                    crate::graded::Mono::from_exps(&full),
                    crate::random::small_rat(rng),
                );
            }
            return;
        }
        for e in 0..=remaining {
            exps[i] = e;
            rec(chart, p, exps, i + 1, remaining - e, rng, with_constant);
            exps[i] = 0;
        }
    }
    rec(chart, &mut p, &mut exps, 0, max_w, rng, with_constant);
    p
}

/// Random torsionless body connection jets.
pub fn random_gamma(chart: &JetChart, rng: &mut ChaCha8Rng) -> Vec<Vec<Vec<GradedPoly>>> {
    random_gamma_capped(chart, rng, chart.orders.y)
}

pub fn random_gamma_capped(
    chart: &JetChart,
    rng: &mut ChaCha8Rng,
    max_w: u32,
) -> Vec<Vec<Vec<GradedPoly>>> {
    random_gamma_full(chart, rng, max_w, true)
}

/// Connection jets vanishing at the base point (coordinates normal there).
pub fn random_gamma_normal(
    chart: &JetChart,
    rng: &mut ChaCha8Rng,
    max_w: u32,
) -> Vec<Vec<Vec<GradedPoly>>> {
    random_gamma_full(chart, rng, max_w, false)
}

fn random_gamma_full(
    chart: &JetChart,
    rng: &mut ChaCha8Rng,
    max_w: u32,
    with_constant: bool,
) -> Vec<Vec<Vec<GradedPoly>>> {
    let n = chart.n_body;
    let mut g = vec![vec![vec![chart.zero(); n]; n]; n];
    for mu in 0..n {
        for al in 0..n {
            for be in al..n {
                let p = random_y_series_capped(chart, rng, with_constant, max_w);
                g[mu][al][be] = p.clone();
                g[mu][be][al] = p;
            }
        }
    }
    g
}

/// Random symmetric variation of a body connection.
pub fn random_gamma_variation(
    chart: &JetChart,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Vec<GradedPoly>>> {
    random_gamma(chart, rng)
}

/// Random invertible vielbein jets: identity plus offset terms.
pub fn random_vielbein(chart: &JetChart, rng: &mut ChaCha8Rng) -> PolyMat {
    let n = chart.n_body;
    let mut e = PolyMat::zero(chart, n);
    for mu in 0..n {
        for a in 0..n {
            let mut p = random_y_series(chart, rng, false);
            if mu == a {
                p = p.add(&chart.one()).expect("chart");
            }
            e[(mu, a)] = p;
        }
    }
    e
}

/// Random bundle connection of the given rank.
pub fn random_bundle(chart: &JetChart, rank: usize, rng: &mut ChaCha8Rng) -> BundleData {
    let n = chart.n_body;
    let mut a = Vec::with_capacity(n);
    for _ in 0..n {
        let mut m = PolyMat::zero(chart, rank);
        for i in 0..rank {
            for j in 0..rank {
                m[(i, j)] = random_y_series(chart, rng, true);
            }
        }
        a.push(m);
    }
    BundleData { rank, a }
}

/// Random body vector field; `vanishing_at_base` drops the constant term.
pub fn random_body_field(
    chart: &JetChart,
    rng: &mut ChaCha8Rng,
    vanishing_at_base: bool,
) -> VectorField {
    random_body_field_capped(chart, rng, vanishing_at_base, chart.orders.y)
}

pub fn random_body_field_capped(
    chart: &JetChart,
    rng: &mut ChaCha8Rng,
    vanishing_at_base: bool,
    max_w: u32,
) -> VectorField {
    let mut u = VectorField::new(0);
    for mu in 0..chart.n_body {
        u.set(chart.y(mu), random_y_series_capped(chart, rng, !vanishing_at_base, max_w));
    }
    u
}

/// A closed, antisymmetric, invertible symplectic series together with a
/// compatible torsionless connection: the series comes from a potential,
/// the connection from the canonical compatible choice plus a random
/// totally symmetric lowered shift.
pub fn random_symplectic_pair(
    chart: &JetChart,
    rng: &mut ChaCha8Rng,
) -> (PolyMat, Vec<Vec<Vec<GradedPoly>>>) {
    let n = chart.n_body;
    assert!(n % 2 == 0, "even body dimension");
    // standard block at the base
    let mut j = RatMat::zero(n, n);
    for k in 0..n / 2 {
        j[(k, n / 2 + k)] = rat_int(1);
        j[(n / 2 + k, k)] = rat_int(-1);
    }
    // omega = J + d(theta) for a random potential
    let theta: Vec<GradedPoly> = (0..n).map(|_| random_y_series(chart, rng, false)).collect();
    let mut omega = PolyMat::from_ratmat(chart, &j);
    for mu in 0..n {
        for nu in 0..n {
            let d = theta[nu]
                .left_deriv(chart.y(mu))
                .sub(&theta[mu].left_deriv(chart.y(nu)))
                .expect("chart");
            omega[(mu, nu)] = omega[(mu, nu)].add(&d).expect("chart");
        }
    }
    let omega_inv = omega.inverse(chart).expect("invertible near the base");
    // canonical compatible lowered connection
    // gamma_{al mu be} = (1/3)(d_mu omega_{al be} + d_be omega_{al mu}) + s_{al mu be}
    let mut s = std::collections::BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                s.insert((a, b, c), random_y_series(chart, rng, true));
            }
        }
    }
    let sym = |mut a: usize, mut b: usize, mut c: usize| -> GradedPoly {
        // total symmetrization by sorted lookup
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
    let mut gamma = vec![vec![vec![chart.zero(); n]; n]; n];
    for rho in 0..n {
        for mu in 0..n {
            for be in 0..n {
                let mut acc = chart.zero();
                for al in 0..n {
                    let mut low = omega[(al, be)]
                        .left_deriv(chart.y(mu))
                        .add(&omega[(al, mu)].left_deriv(chart.y(be)))
                        .expect("chart")
                        .scale(&rat(1, 3));
                    low = low.add(&sym(al, mu, be)).expect("chart");
                    if low.is_zero() {
                        continue;
                    }
                    // gamma^rho_{mu be} = (omega^{-1})^{rho al} low_{al mu be}
                    // with the inverse acting from the left on the first slot
                    let w = inverse_entry(&omega_inv, rho, al);
                    acc = acc.add(&w.mul(&low).expect("chart")).expect("chart");
                }
                gamma[rho][mu][be] = acc;
            }
        }
    }
    (omega, gamma)
}

fn inverse_entry(omega_inv: &PolyMat, rho: usize, al: usize) -> GradedPoly {
    // convention: Ω_{al rho} X^rho = Y_al  =>  X^rho = (Ω^{-1})^{rho al} Y_al
    // with Ω^{-1} the matrix inverse, (Ω^{-1} Ω = 1)
    omega_inv[(rho, al)].clone()
}

/// Quick validation helper: residual of `∇Ω` within the budget.
pub fn omega_parallel_residual(cd: &ConnectionData, omega: &PolyMat) -> Option<GradedPoly> {
    let chart = &cd.chart;
    let n = chart.n_body;
    for mu in 0..n {
        for al in 0..n {
            for be in 0..n {
                let mut r = omega[(al, be)].left_deriv(chart.y(mu));
                for l in 0..n {
                    r = r.sub(&cd.gamma[l][mu][al].mul(&omega[(l, be)]).expect("chart")).expect("chart");
                    r = r.sub(&cd.gamma[l][mu][be].mul(&omega[(al, l)]).expect("chart")).expect("chart");
                }
                let r = chart.clip(&r, &[(super::chart::CLASS_Y, 1)]);
                if !r.is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Scales a connection variation onto the nilpotent parameter:
/// `Γ + eps γ`.
pub fn vary_gamma(
    chart: &JetChart,
    gamma: &[Vec<Vec<GradedPoly>>],
    var: &[Vec<Vec<GradedPoly>>],
) -> Vec<Vec<Vec<GradedPoly>>> {
    let n = chart.n_body;
    let eps = chart.gen_poly(chart.eps());
    let mut out = vec![vec![vec![chart.zero(); n]; n]; n];
    for mu in 0..n {
        for al in 0..n {
            for be in 0..n {
                out[mu][al][be] = gamma[mu][al][be]
                    .add(&eps.mul(&var[mu][al][be]).expect("chart"))
                    .expect("chart");
            }
        }
    }
    out
}

/// `A + eps a` for bundle variations.
pub fn vary_bundle(chart: &JetChart, bundle: &BundleData, var: &[PolyMat]) -> BundleData {
    let eps = chart.gen_poly(chart.eps());
    let mut a = Vec::with_capacity(bundle.a.len());
    for (m, v) in bundle.a.iter().zip(var.iter()) {
        let mut out = m.clone();
        for i in 0..bundle.rank {
            for jj in 0..bundle.rank {
                out[(i, jj)] = out[(i, jj)]
                    .add(&eps.mul(&v[(i, jj)]).expect("chart"))
                    .expect("chart");
            }
        }
        a.push(out);
    }
    BundleData { rank: bundle.rank, a }
}

/// Random totally symmetric variation compatible with a symplectic pair:
/// `γ^l_{ik} = (Ω^{-1})^{l a} S_{a i k}` for totally symmetric `S`.
pub fn random_omega_compatible_variation(
    chart: &JetChart,
    omega: &PolyMat,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Vec<GradedPoly>>> {
    let n = chart.n_body;
    let omega_inv = omega.inverse(chart).expect("invertible");
    let mut s = std::collections::BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                s.insert((a, b, c), random_y_series(chart, rng, true));
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
    let mut gamma = vec![vec![vec![chart.zero(); n]; n]; n];
    for rho in 0..n {
        for mu in 0..n {
            for be in 0..n {
                let mut acc = chart.zero();
                for al in 0..n {
                    let low = sym(al, mu, be);
                    if low.is_zero() {
                        continue;
                    }
                    acc = acc
                        .add(&omega_inv[(rho, al)].mul(&low).expect("chart"))
                        .expect("chart");
                }
                gamma[rho][mu][be] = acc;
            }
        }
    }
    gamma
}

