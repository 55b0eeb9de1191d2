//! Verification suites behind `graphweights verify`: each runs a set of
//! identity checks and reports one pass/fail line per item.

use crate::manifest::{self, Manifest};
use crate::output::Line;
use graphweights::ce::{ce_boundary, CeChain};
use graphweights::correspondence::check_chain_map;
use graphweights::graded::{Generator, GradedSpace};
use graphweights::graph::{enumerate_graphs, graph_differential, EnumLimits, GraphChain, Valence};
use graphweights::jets::rwhol::{check_delta_gamma, random_hol_data, rw_jets};
use graphweights::jets::{
    check_flatness, check_hat_variation, check_key_identity, check_variation_identity, data,
    exp_geodesic, grothendieck, hat, variation_generator_metric, ConnectionData, JetChart, Orders,
};
use graphweights::linalg::RatMat;
use graphweights::num::rat_int;
use graphweights::random::{random_homogeneous, seeded};
use graphweights::Rat;
use num_traits::{One, Zero};

type Failure = (u8, String);

fn input_err(e: impl std::fmt::Display) -> Failure {
    (2, e.to_string())
}

fn jets_params(manifest: Option<&str>, order: Option<u32>) -> Result<(usize, Orders), Failure> {
    let (dim, mut orders) = match manifest {
        Some(path) => match manifest::load(path).map_err(input_err)? {
            Manifest::Jets(jm) => {
                (jm.dimension, Orders { xi: jm.order_xi, y: jm.order_y, graded: 2 })
            }
            _ => return Err(input_err("jet suites need a jets manifest")),
        },
        None => (2, Orders::default()),
    };
    if let Some(n) = order {
        orders.xi = n;
    }
    if orders.xi < 3 {
        return Err((4, format!("flat truncation {} is below the minimum 3", orders.xi)));
    }
    Ok((dim, orders))
}

fn even_symplectic(dim: usize) -> GradedSpace {
    let gens: Vec<Generator> =
        (0..dim).map(|i| Generator::new(format!("x{}", i + 1), 0)).collect();
    let mut omega = RatMat::zero(dim, dim);
    for k in 0..dim / 2 {
        omega[(k, dim / 2 + k)] = rat_int(1);
        omega[(dim / 2 + k, k)] = rat_int(-1);
    }
    GradedSpace::with_symplectic(gens, 0, omega).expect("block pairing")
}

fn mixed_space() -> GradedSpace {
    let gens = vec![
        Generator::new("a", 0),
        Generator::new("b", 2),
        Generator::new("c", 1),
        Generator::new("d", 1),
    ];
    let mut omega = RatMat::zero(4, 4);
    omega[(0, 1)] = rat_int(1);
    omega[(1, 0)] = rat_int(-1);
    omega[(2, 3)] = rat_int(1);
    omega[(3, 2)] = rat_int(1);
    GradedSpace::with_symplectic(gens, 2, omega).expect("mixed pairing")
}

pub fn run(
    suite: &str,
    manifest: Option<&str>,
    seed: u64,
    order: Option<u32>,
) -> Result<Vec<Line>, Failure> {
    match suite {
        "flatness" => {
            let (dim, orders) = jets_params(manifest, order)?;
            let mut lines = Vec::new();
            for k in 0..3u64 {
                let chart = JetChart::smooth(dim, orders);
                let mut rng = seeded(seed.wrapping_add(k));
                let cd = ConnectionData::new(chart.clone(), data::random_gamma(&chart, &mut rng))
                    .map_err(input_err)?;
                let gro = grothendieck(&exp_geodesic(&cd).map_err(input_err)?)
                    .map_err(input_err)?;
                let rep = check_flatness(&gro);
                lines.push(Line::check(&format!("flatness seed {}", seed + k), rep.ok, None));
            }
            Ok(lines)
        }
        "key-id" => {
            let (dim, mut orders) = jets_params(manifest, order)?;
            orders.y = orders.y.max(3);
            let mut lines = Vec::new();
            for k in 0..3u64 {
                let chart = JetChart::smooth(dim, orders);
                let mut rng = seeded(seed.wrapping_add(k));
                let cd = ConnectionData::new(
                    chart.clone(),
                    data::random_gamma_capped(&chart, &mut rng, 2),
                )
                .map_err(input_err)?;
                let map = exp_geodesic(&cd).map_err(input_err)?;
                let gro = grothendieck(&map).map_err(input_err)?;
                let u = data::random_body_field_capped(&chart, &mut rng, false, 2);
                let v = data::random_body_field_capped(&chart, &mut rng, false, 2);
                let rep = check_key_identity(&u, &v, &map, &gro).map_err(input_err)?;
                lines.push(Line::check(&format!("key identity seed {}", seed + k), rep.ok, None));
            }
            Ok(lines)
        }
        "variation" => {
            let (dim, orders) = jets_params(manifest, order)?;
            let mut lines = Vec::new();
            for k in 0..3u64 {
                let chart = JetChart::smooth(dim, orders);
                let mut rng = seeded(seed.wrapping_add(k));
                let gamma = data::random_gamma(&chart, &mut rng);
                let var = data::random_gamma_variation(&chart, &mut rng);
                let cd0 = ConnectionData::new(chart.clone(), gamma.clone()).map_err(input_err)?;
                let varied = data::vary_gamma(&chart, &gamma, &var);
                let cdv = ConnectionData::new(chart.clone(), varied).map_err(input_err)?;
                let map_v = exp_geodesic(&cdv).map_err(input_err)?;
                let gro_v = grothendieck(&map_v).map_err(input_err)?;
                let psi = variation_generator_metric(&cd0, &var);
                let rep = check_variation_identity(&chart, &gro_v, &psi);
                lines.push(Line::check(
                    &format!("connection variation seed {}", seed + k),
                    rep.ok,
                    None,
                ));
                let u = data::random_body_field(&chart, &mut rng, false);
                let hat_v = hat(&u, &map_v, &gro_v).map_err(input_err)?;
                let rep2 = check_hat_variation(&chart, &u, &hat_v, &psi);
                lines.push(Line::check(
                    &format!("hat variation seed {}", seed + k),
                    rep2.ok,
                    None,
                ));
            }
            Ok(lines)
        }
        "chain-map" => {
            let space = even_symplectic(4);
            let limits = EnumLimits::default();
            let mut lines = Vec::new();
            for k in 0..5u64 {
                let mut rng = seeded(seed.wrapping_add(k));
                let mut chain = CeChain::zero(&space);
                let hams: Vec<_> = (0..2).map(|_| random_homogeneous(&space, 3, &mut rng)).collect();
                let bar: Vec<_> = (0..1).map(|_| random_homogeneous(&space, 2, &mut rng)).collect();
                chain.add_term(Rat::one(), hams, bar).map_err(input_err)?;
                let rep = check_chain_map(&chain, &limits).map_err(input_err)?;
                lines.push(Line::check(&format!("chain map seed {}", seed + k), rep.equal, None));
            }
            Ok(lines)
        }
        "ce-d2" => {
            let space = mixed_space();
            let mut lines = Vec::new();
            for k in 0..5u64 {
                let mut rng = seeded(seed.wrapping_add(k));
                let mut ok = true;
                for (p, q) in [(2usize, 1usize), (1, 2), (2, 2), (3, 1)] {
                    let mut chain = CeChain::zero(&space);
                    let hams: Vec<_> = (0..p)
                        .map(|i| {
                            graphweights::random::random_of_degree(
                                &space,
                                2 + (i as u32 % 2),
                                3,
                                &mut rng,
                            )
                        })
                        .collect();
                    let bar: Vec<_> = (0..q)
                        .map(|i| {
                            graphweights::random::random_of_degree(
                                &space,
                                1 + (i as u32 % 3),
                                3,
                                &mut rng,
                            )
                        })
                        .collect();
                    chain.add_term(Rat::one(), hams, bar).map_err(input_err)?;
                    let dd = ce_boundary(&ce_boundary(&chain).map_err(input_err)?)
                        .map_err(input_err)?;
                    ok &= dd.is_zero();
                }
                lines.push(Line::check(
                    &format!("boundary squares to zero, seed {}", seed + k),
                    ok,
                    None,
                ));
            }
            Ok(lines)
        }
        "graph-d2" => {
            let limits = EnumLimits { max_vertices: 8, max_edges: 9, ..Default::default() };
            let mut lines = Vec::new();
            for total in 2..=6u32 {
                for q in 0..=total.min(4) {
                    let p = total - q;
                    let classes = enumerate_graphs(
                        p,
                        q,
                        Valence::at_most(4),
                        Valence::at_most(3),
                        &limits,
                    )
                    .map_err(|e| (3, e.to_string()))?;
                    let mut ok = true;
                    for class in &classes {
                        let mut ch: GraphChain = GraphChain::new();
                        ch.add_class(class.clone(), rat_int(1));
                        let dd = graph_differential(&graph_differential(&ch).map_err(input_err)?)
                            .map_err(input_err)?;
                        ok &= dd.is_zero();
                    }
                    lines.push(Line::check(
                        &format!("boundary squared on {} classes at ({p},{q})", classes.len()),
                        ok,
                        None,
                    ));
                }
            }
            Ok(lines)
        }
        "rw" => {
            let (d, orders) = match manifest {
                Some(path) => match manifest::load(path).map_err(input_err)? {
                    Manifest::Jets(jm) => {
                        (jm.dimension, Orders { xi: jm.order_xi, y: jm.order_y.min(2), graded: 2 })
                    }
                    _ => return Err(input_err("the rw suite needs a jets manifest")),
                },
                None => (2, Orders { xi: 3, y: 2, graded: 2 }),
            };
            if orders.xi < 3 {
                return Err((4, "flat truncation below 3".into()));
            }
            let mut lines = Vec::new();
            let mut rng = seeded(seed);
            let hol = random_hol_data(d, 0, 1, orders, &mut rng);
            let jets = rw_jets(&hol).map_err(input_err)?;
            lines.push(Line::check(
                "cubic vertex computed",
                !jets.v_theta.is_zero(),
                None,
            ));
            let gvar = {
                use graphweights::jets::data::random_y_series_capped;
                let chart = &hol.hc.chart;
                let inv = hol.omega.inverse().expect("invertible");
                let mut s = std::collections::BTreeMap::new();
                for a in 0..d {
                    for b in a..d {
                        for c in b..d {
                            s.insert((a, b, c), random_y_series_capped(chart, &mut rng, true, 2));
                        }
                    }
                }
                let sym = |mut a: usize, mut b: usize, mut c: usize| {
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
                let mut g = vec![vec![vec![chart.zero(); d]; d]; d];
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
                            g[i][j][k] = acc;
                        }
                    }
                }
                g
            };
            let rep = check_delta_gamma(&hol, &gvar).map_err(input_err)?;
            lines.push(Line::check("vertex variation identity", rep.ok, None));
            Ok(lines)
        }
        other => Err(input_err(format!(
            "unknown suite `{other}`; expected flatness, key-id, variation, chain-map, ce-d2, graph-d2 or rw"
        ))),
    }
}
