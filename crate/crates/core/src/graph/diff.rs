//! The graph boundary: shrink an internal edge `i -> j` (sign `(-1)^j`),
//! shrink a peripheral-to-internal edge onto the circle (sign `(-1)^j` with
//! `j` the internal label), collapse the adjacent peripheral pair `(j, j+1)`
//! (sign `(-1)^{I+j+1}`), and merge the last peripheral vertex into the
//! first with sign `(-1)^{I+q+1}`. An edge pointing against the reference
//! orientation is flipped first at the cost of a sign.

use super::canon::canonicalize;
use super::chain::{pair_rat, Coefficient, GraphChain, GraphCochain};
use super::enumerate::{enumerate_graphs, EnumLimits, Valence};
use super::{End, ExtGraph, GraphClass, GraphError};
use crate::num::Rat;
use num_traits::Zero;

fn relabel_after_internal_removal(e: End, removed: u32) -> End {
    match e {
        End::Int(i) if i > removed => End::Int(i - 1),
        other => other,
    }
}

/// Boundary of a single canonical graph as (class, integer coefficient)
/// pairs; zero classes produced by contractions are dropped.
pub fn class_differential(g: &ExtGraph) -> Result<Vec<(GraphClass, i64)>, GraphError> {
    let mut out: Vec<(GraphClass, i64)> = Vec::new();
    let push = |acc: &mut Vec<(GraphClass, i64)>, g2: &ExtGraph, sign: i64| {
        let canon = canonicalize(g2)?;
        if let Some(class) = canon.class {
            acc.push((class, sign * canon.sign as i64));
        }
        Ok::<(), GraphError>(())
    };

    // internal-internal contractions
    for (k, &(a, b)) in g.edges.iter().enumerate() {
        let (End::Int(x), End::Int(y)) = (a, b) else {
            continue;
        };
        if x == y {
            continue;
        }
        let (i, j, flip) = if x < y { (x, y, 1i64) } else { (y, x, -1i64) };
        let mut edges = Vec::with_capacity(g.edges.len() - 1);
        for (k2, &(p, q)) in g.edges.iter().enumerate() {
            if k2 == k {
                continue;
            }
            let sub = |e: End| -> End {
                let e = if e == End::Int(j) { End::Int(i) } else { e };
                relabel_after_internal_removal(e, j)
            };
            edges.push((sub(p), sub(q)));
        }
        let g2 = ExtGraph { n_int: g.n_int - 1, n_per: g.n_per, edges };
        let sign = flip * if j % 2 == 0 { 1 } else { -1 };
        push(&mut out, &g2, sign)?;
    }

    // peripheral-internal contractions: reference orientation Per -> Int
    for (k, &(a, b)) in g.edges.iter().enumerate() {
        let (pvert, ivert, flip) = match (a, b) {
            (End::Per(p), End::Int(i)) => (p, i, 1i64),
            (End::Int(i), End::Per(p)) => (p, i, -1i64),
            _ => continue,
        };
        let mut edges = Vec::with_capacity(g.edges.len() - 1);
        for (k2, &(p, q)) in g.edges.iter().enumerate() {
            if k2 == k {
                continue;
            }
            let sub = |e: End| -> End {
                let e = if e == End::Int(ivert) { End::Per(pvert) } else { e };
                relabel_after_internal_removal(e, ivert)
            };
            edges.push((sub(p), sub(q)));
        }
        let g2 = ExtGraph { n_int: g.n_int - 1, n_per: g.n_per, edges };
        let sign = flip * if ivert % 2 == 0 { 1 } else { -1 };
        push(&mut out, &g2, sign)?;
    }

    // adjacent peripheral collapses; the circle needs at least two vertices
    if g.n_per >= 2 {
        let i_count = g.n_int;
        for j in 1..=g.n_per {
            let wrap = j == g.n_per;
            // (j, j+1) -> j, or (q, 1) -> 1
            let (keep, gone) = if wrap { (1, g.n_per) } else { (j, j + 1) };
            let edges: Vec<(End, End)> = g
                .edges
                .iter()
                .map(|&(p, q)| {
                    let sub = |e: End| -> End {
                        match e {
                            End::Per(t) if t == gone => End::Per(keep),
                            End::Per(t) if !wrap && t > gone => End::Per(t - 1),
                            other => other,
                        }
                    };
                    (sub(p), sub(q))
                })
                .collect();
            let g2 = ExtGraph { n_int: g.n_int, n_per: g.n_per - 1, edges };
            let exp = i_count + j + 1;
            let sign = if exp % 2 == 0 { 1i64 } else { -1 };
            push(&mut out, &g2, sign)?;
        }
    }

    Ok(out)
}

/// Linear extension of the boundary to chains.
pub fn graph_differential<C: Coefficient>(
    chain: &GraphChain<C>,
) -> Result<GraphChain<C>, GraphError> {
    let mut out = GraphChain::new();
    for (class, c) in chain.terms() {
        for (target, k) in class_differential(class.graph())? {
            out.add_class(target, c.scale_int(k));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CocycleReport {
    pub is_cocycle: bool,
    /// A graph whose boundary the cochain fails to annihilate, with the
    /// offending pairing value.
    pub violation: Option<(GraphClass, Rat)>,
}

/// Checks `⟨b, ∂Γ⟩ = 0` over every graph `Γ` whose boundary can reach the
/// support of `b`, within the complex generated by at-least-trivalent
/// internal vertices and at-least-univalent peripheral vertices (vertex
/// valence matches the polynomial weight of the dual picture, where
/// internal entries start at cubic order). Contractions drop one edge and
/// one internal vertex; peripheral collapses keep the edge count.
pub fn is_trivalent_cocycle(
    b: &GraphCochain,
    limits: &EnumLimits,
) -> Result<CocycleReport, GraphError> {
    if b.is_empty() {
        return Ok(CocycleReport { is_cocycle: true, violation: None });
    }
    let mut shapes: Vec<(u32, u32, usize)> = Vec::new();
    for (class, _) in b.terms() {
        let g = class.graph();
        shapes.push((g.n_int + 1, g.n_per, g.n_edges() + 1));
        shapes.push((g.n_int, g.n_per + 1, g.n_edges()));
    }
    shapes.sort();
    shapes.dedup();
    for (p, q, e) in shapes {
        let graphs = enumerate_graphs(
            p,
            q,
            Valence::between(3, 2 * (e as u32)),
            Valence::between(1, 2 * (e as u32)),
            &EnumLimits { exact_edges: Some(e), ..limits.clone() },
        )?;
        for class in graphs {
            let mut boundary: GraphChain<Rat> = GraphChain::new();
            for (target, k) in class_differential(class.graph())? {
                boundary.add_class(target, crate::num::rat_int(k));
            }
            let val = pair_rat(b, &boundary);
            if !val.is_zero() {
                return Ok(CocycleReport { is_cocycle: false, violation: Some((class, val)) });
            }
        }
    }
    Ok(CocycleReport { is_cocycle: true, violation: None })
}
