#[cfg(test)]
mod t {
use crate::jets::rwhol::*;
use crate::jets::{JetChart, Orders, CLASS_Y};
use crate::graded::GradedPoly;

fn at_base(chart: &JetChart, p: &GradedPoly) -> GradedPoly {
    chart.clip(p, &[(CLASS_Y, chart.orders.y)])
}

#[test]
fn debug_cubic() {
    let mut rng = crate::random::seeded(2100);
    let mut data = random_hol_data(2, 0, 0, Orders { xi: 3, y: 2, graded: 2 }, &mut rng);
    let chart = data.hc.chart.clone();
    let hc = HolChart::new(2, 0, 0, Orders { xi: 3, y: 2, graded: 2 });
    // single totally symmetric entry S_{000} = ybar1: gamma = inv*S
    let ybar = chart.gen_poly(hc.y_bar(0));
    for i in 0..2 { for j in 0..2 { for k in 0..2 { data.gamma_hol[i][j][k] = chart.zero(); } } }
    // omega^{-1} = [[0,-1],[1,0]]: gamma[1][0][0] = +S_{000} = ybar; gamma[0][..] with S_{0jk}=0
    data.gamma_hol[1][0][0] = ybar;
    let jets = rw_jets(&data).unwrap();
    let got = at_base(&chart, &data.xi_weight_part(&jets.v_theta, 3));
    eprintln!("got xi^3:\n{}", got);
    // expected: (1/6) vbar^ib R_{ib i}^{..l}_{..k} Om_{l j} xi^i xi^j xi^k
    let cd = data.connection().unwrap();
    let riem = cd.riemann();
    let mut want = chart.zero();
    for ib in 0..2 { for i in 0..2 { for j in 0..2 { for k in 0..2 {
        let mut coeff = chart.zero();
        for l in 0..2 {
            if data.omega[(l, j)].is_zero() { continue; }
            coeff = coeff.add(&riem[2 + ib][i][l][k].scale(&data.omega[(l, j)])).unwrap();
        }
        if coeff.is_zero() { continue; }
        let term = chart.gen_poly(hc.vbar(ib)).mul(&coeff).unwrap()
            .mul(&chart.gen_poly(hc.xi_hol(i))).unwrap()
            .mul(&chart.gen_poly(hc.xi_hol(j))).unwrap()
            .mul(&chart.gen_poly(hc.xi_hol(k))).unwrap();
        want = want.add(&term).unwrap();
    }}}}
    let want = at_base(&chart, &want.scale(&crate::num::rat(1,6)));
    eprintln!("want:\n{}", want);
}
}
