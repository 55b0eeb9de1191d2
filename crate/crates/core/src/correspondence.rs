//! Contraction maps between the extended Chevalley-Eilenberg complex and the
//! graph complex. A chain entry sits at a vertex together with an odd
//! suspension parameter (`t` of degree `n+1` at internal vertices, `s` of
//! degree `1` at peripheral ones); every edge applies the inverse pairing
//! as a second-order derivative across its two endpoint copies; parallel
//! edges divide by the factorial of their multiplicity; finally the
//! suspension parameters are stripped in order and everything is evaluated
//! at the origin. Unpaired base generators ride along as spectators and end
//! up in the coefficients.

use crate::ce::{ce_boundary, CeChain, CeError, CeTerm};
use crate::graded::{GradedPoly, GradedSpace, Generator, PolyError, Trunc};
use crate::graph::{
    aut_order, enumerate_graphs, graph_differential, End, EnumLimits, ExtGraph, GraphChain,
    GraphClass, GraphCochain, GraphError, Valence,
};
use crate::num::{rat_int, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BetaError {
    #[error("the base space carries no symplectic pairing")]
    NoSymplectic,
    #[error("chain entry has a nonzero constant term")]
    ConstantTerm,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertex data controlling a contraction run: the base space fixes the
/// pairing, the coefficient space collects the spectators.
pub struct Contractor {
    base: GradedSpace,
    paired: Vec<usize>,
    spect_base: Vec<usize>,
    coeff_space: GradedSpace,
}

impl Contractor {
    pub fn new(base: &GradedSpace) -> Result<Self, BetaError> {
        let sym = base.symplectic().ok_or(BetaError::NoSymplectic)?;
        let paired = sym.paired.clone();
        let spect_base: Vec<usize> =
            (0..base.dim()).filter(|i| !paired.contains(i)).collect();
        let coeff_gens: Vec<Generator> =
            spect_base.iter().map(|&i| base.gen(i).clone()).collect();
        let coeff_space = GradedSpace::new(coeff_gens, base.form_degree())
            .expect("spectator space inherits validity");
        Ok(Contractor { base: base.clone(), paired, spect_base, coeff_space })
    }

    pub fn coeff_space(&self) -> &GradedSpace {
        &self.coeff_space
    }

    fn workspace(&self, p: usize, q: usize) -> Workspace {
        let n = self.base.form_degree();
        let mut gens: Vec<Generator> = Vec::new();
        let mut t = Vec::new();
        let mut xi = Vec::new();
        for i in 0..p {
            t.push(gens.len());
            gens.push(Generator::new(format!("t{}", i + 1), n + 1));
            let mut copies = Vec::new();
            for &a in &self.paired {
                copies.push(gens.len());
                gens.push(Generator::new(
                    format!("x{}.{}", i + 1, self.base.gen(a).name),
                    self.base.gen(a).degree,
                ));
            }
            xi.push(copies);
        }
        let mut s = Vec::new();
        let mut eta = Vec::new();
        for j in 0..q {
            s.push(gens.len());
            gens.push(Generator::new(format!("s{}", j + 1), 1));
            let mut copies = Vec::new();
            for &a in &self.paired {
                copies.push(gens.len());
                gens.push(Generator::new(
                    format!("e{}.{}", j + 1, self.base.gen(a).name),
                    self.base.gen(a).degree,
                ));
            }
            eta.push(copies);
        }
        let first_spect = gens.len();
        for &i in &self.spect_base {
            gens.push(self.base.gen(i).clone());
        }
        let space = GradedSpace::new(gens, n).expect("workspace generators are distinct");
        Workspace { space, t, s, xi, eta, first_spect }
    }

    fn embed(
        &self,
        ws: &Workspace,
        f: &GradedPoly,
        copies: &[usize],
    ) -> Result<GradedPoly, PolyError> {
        f.subst(&ws.space, &Trunc::none(), |g| {
            if let Some(k) = self.paired.iter().position(|&a| a == g) {
                GradedPoly::gen(&ws.space, copies[k])
            } else {
                let k = self.spect_base.iter().position(|&a| a == g).expect("spectator");
                GradedPoly::gen(&ws.space, ws.first_spect + k)
            }
        })
    }

    /// The bare contraction of one listed term against one canonical graph
    /// (no automorphism factor, no permutation sum). Returns a polynomial in
    /// the spectator generators.
    pub fn contract(
        &self,
        graph: &ExtGraph,
        fs: &[GradedPoly],
        gs: &[GradedPoly],
    ) -> Result<GradedPoly, BetaError> {
        let p = fs.len();
        let q = gs.len();
        assert_eq!(graph.n_int as usize, p, "internal vertex count");
        assert_eq!(graph.n_per as usize, q, "peripheral vertex count");
        let ws = self.workspace(p, q);
        let sym = self.base.symplectic().expect("checked at construction");

        // F = (t_1 f_1)(t_2 f_2)...(s_1 g_1)...
        let mut big = GradedPoly::one(&ws.space);
        for i in 0..p {
            if !fs[i].constant_term().is_zero() {
                return Err(BetaError::ConstantTerm);
            }
            let factor = GradedPoly::gen(&ws.space, ws.t[i]).mul(&self.embed(&ws, &fs[i], &ws.xi[i])?)?;
            big = big.mul(&factor)?;
        }
        for j in 0..q {
            if !gs[j].constant_term().is_zero() {
                return Err(BetaError::ConstantTerm);
            }
            let factor =
                GradedPoly::gen(&ws.space, ws.s[j]).mul(&self.embed(&ws, &gs[j], &ws.eta[j])?)?;
            big = big.mul(&factor)?;
        }

        // edge operators, one group of parallel edges at a time
        let mut groups: BTreeMap<(End, End), u32> = BTreeMap::new();
        for &e in &graph.edges {
            *groups.entry(e).or_insert(0) += 1;
        }
        let copies_of = |e: End| -> &[usize] {
            match e {
                End::Int(i) => &ws.xi[(i - 1) as usize],
                End::Per(j) => &ws.eta[(j - 1) as usize],
            }
        };
        for (&(a, b), &mult) in &groups {
            let ca = copies_of(a);
            let cb = copies_of(b);
            for _ in 0..mult {
                let mut acc = GradedPoly::zero(&ws.space);
                for (ia, &ga) in ca.iter().enumerate() {
                    for (ib, &gb) in cb.iter().enumerate() {
                        let w = sym.omega_inv[(ia, ib)].clone();
                        if w.is_zero() {
                            continue;
                        }
                        let d = big.left_deriv(gb).left_deriv(ga);
                        if d.is_zero() {
                            continue;
                        }
                        acc = acc.add(&d.scale(&w))?;
                    }
                }
                big = acc;
                if big.is_zero() {
                    break;
                }
            }
            let mut fact = Rat::one();
            for k in 2..=mult {
                fact *= rat_int(k as i64);
            }
            big = big.scale(&(Rat::one() / fact));
            if big.is_zero() {
                break;
            }
        }

        // strip suspension parameters in order t_1..t_p, s_1..s_q
        for i in 0..p {
            big = big.left_deriv(ws.t[i]);
        }
        for j in 0..q {
            big = big.left_deriv(ws.s[j]);
        }

        // evaluate at zero: keep pure-spectator monomials
        let mut out = GradedPoly::zero(&self.coeff_space);
        'terms: for (m, c) in big.terms() {
            for k in 0..ws.first_spect {
                if m.get(k) != 0 {
                    continue 'terms;
                }
            }
            let exps: Vec<u32> =
                (ws.first_spect..ws.space.dim()).map(|k| m.get(k)).collect();
            out.add_term(crate::graded::Mono::from_exps(&exps), c.clone());
        }
        Ok(out)
    }
}

struct Workspace {
    space: GradedSpace,
    t: Vec<usize>,
    s: Vec<usize>,
    xi: Vec<Vec<usize>>,
    eta: Vec<Vec<usize>>,
    first_spect: usize,
}

/// Koszul sign for listing the entries in the order `order` instead of
/// `0..len`, counting inversions of odd suspended parities.
fn perm_sign(parities: &[u32], order: &[usize]) -> i64 {
    let mut sign = 1i64;
    for a in 0..order.len() {
        for b in (a + 1)..order.len() {
            if order[a] > order[b] && parities[order[a]] == 1 && parities[order[b]] == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Sign for rotating the bar word left by `r` steps.
fn rot_sign(parities: &[u32], r: usize) -> i64 {
    let q = parities.len();
    let mut sign = 1i64;
    for step in 0..r {
        let lead = (step) % q;
        let rest: u32 = (0..q).filter(|&k| k != lead).map(|k| parities[k]).sum();
        if parities[lead] == 1 && rest % 2 == 1 {
            sign = -sign;
        }
    }
    sign
}

fn parities_of(
    polys: &[GradedPoly],
    shift: u32,
) -> Result<Vec<u32>, CeError> {
    polys
        .iter()
        .map(|p| p.parity().map(|d| (d + shift) % 2).map_err(|_| CeError::Inhomogeneous))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn valence_range(paired: &[usize], polys: &[GradedPoly]) -> Option<(u32, u32)> {
    let mut range: Option<(u32, u32)> = None;
    for p in polys {
        let (lo, hi) = p.min_max_weight_filtered(|i| paired.contains(&i))?;
        range = Some(match range {
            None => (lo, hi),
            Some((a, b)) => (a.min(lo), b.max(hi)),
        });
    }
    range
}

/// Graph classes a `(p, q)` term can hit, by valence bounds over the paired
/// generators (spectator factors do not bind edges).
fn candidate_graphs(
    ctx: &Contractor,
    term: &CeTerm,
    limits: &EnumLimits,
) -> Result<Vec<GraphClass>, BetaError> {
    let p = term.hams.len() as u32;
    let q = term.bar.len() as u32;
    if p + q == 0 {
        return Ok(Vec::new());
    }
    let iv = valence_range(&ctx.paired, &term.hams).unwrap_or((1, 0));
    let pv = valence_range(&ctx.paired, &term.bar).unwrap_or((1, 0));
    if (p > 0 && iv.1 == 0) || (q > 0 && pv.1 == 0) {
        return Ok(Vec::new());
    }
    let max_edges = ((p * iv.1 + q * pv.1) / 2) as usize;
    let classes = enumerate_graphs(
        p,
        q,
        Valence::between(iv.0.max(1), iv.1),
        Valence::between(pv.0.max(1), pv.1),
        &EnumLimits {
            max_vertices: limits.max_vertices,
            max_edges: max_edges.min(limits.max_edges),
            max_multiplicity: iv.1.max(pv.1),
            exact_edges: None,
        },
    )?;
    Ok(classes)
}

/// Full contraction of one term against one graph: the permutation sum over
/// the symmetric word and the cyclic rotations of the bar word, with their
/// exchange signs.
fn term_weight(
    ctx: &Contractor,
    class: &GraphClass,
    term: &CeTerm,
) -> Result<GradedPoly, BetaError> {
    let n = ctx.base.form_degree();
    let fpar = parities_of(&term.hams, n + 1)?;
    let gpar = parities_of(&term.bar, 1)?;
    let p = term.hams.len();
    let q = term.bar.len();
    let mut acc = GradedPoly::zero(ctx.coeff_space());
    let rots = if q == 0 { 1 } else { q };
    for order in permutations(p) {
        let psign = perm_sign(&fpar, &order);
        let fs: Vec<GradedPoly> = order.iter().map(|&i| term.hams[i].clone()).collect();
        for r in 0..rots {
            let rsign = rot_sign(&gpar, r);
            let gs: Vec<GradedPoly> = (0..q).map(|k| term.bar[(k + r) % q].clone()).collect();
            let val = ctx.contract(class.graph(), &fs, &gs)?;
            if !val.is_zero() {
                acc = acc.add(&val.scale(&rat_int(psign * rsign)))?;
            }
        }
    }
    Ok(acc.scale(&term.coeff))
}

/// The chain-to-graph map: for every graph shape the contraction of the
/// permutation-symmetrized term, divided by the order of the vertex
/// automorphism group.
pub fn beta(chain: &CeChain, limits: &EnumLimits) -> Result<GraphChain<GradedPoly>, BetaError> {
    let ctx = Contractor::new(chain.space())?;
    let mut out: GraphChain<GradedPoly> = GraphChain::new();
    for term in chain.terms() {
        for class in candidate_graphs(&ctx, &term, limits)? {
            let w = term_weight(&ctx, &class, &term)?;
            if w.is_zero() {
                continue;
            }
            let aut = aut_order(class.graph());
            out.add_class(class, w.scale(&(Rat::one() / rat_int(aut as i64))));
        }
    }
    Ok(out)
}

/// `beta` specialized to chains whose contraction values are scalars.
pub fn beta_rat(chain: &CeChain, limits: &EnumLimits) -> Result<GraphChain<Rat>, BetaError> {
    let full = beta(chain, limits)?;
    let mut out = GraphChain::new();
    for (class, c) in full.terms() {
        out.add_class(class.clone(), c.constant_term());
    }
    Ok(out)
}

/// The dual map: evaluation of a graph cochain on a chain. No automorphism
/// factor and no permutation sum enter here.
pub fn beta_dagger(
    b: &GraphCochain,
    chain: &CeChain,
) -> Result<GradedPoly, BetaError> {
    let ctx = Contractor::new(chain.space())?;
    let mut acc = GradedPoly::zero(ctx.coeff_space());
    for (class, w) in b.terms() {
        let g = class.graph();
        for term in chain.terms().iter() {
            if term.hams.len() as u32 != g.n_int || term.bar.len() as u32 != g.n_per {
                continue;
            }
            let val = ctx.contract(g, &term.hams, &term.bar)?;
            if !val.is_zero() {
                acc = acc.add(&val.scale(&(w * &term.coeff)))?;
            }
        }
    }
    Ok(acc)
}

/// `beta_dagger` when the result is a scalar.
pub fn beta_dagger_rat(b: &GraphCochain, chain: &CeChain) -> Result<Rat, BetaError> {
    Ok(beta_dagger(b, chain)?.constant_term())
}

#[derive(Debug, Clone)]
pub struct ChainMapReport {
    pub equal: bool,
    /// Classes where the two routes differ, with both coefficients.
    pub mismatches: Vec<(GraphClass, GradedPoly, GradedPoly)>,
}

/// Verifies `∂(β c) = β(∂ c)` on one chain, reporting the differing graph
/// coefficients when it fails.
pub fn check_chain_map(chain: &CeChain, limits: &EnumLimits) -> Result<ChainMapReport, BetaError> {
    let lhs = graph_differential(&beta(chain, limits)?)?;
    let rhs = beta(&ce_boundary(chain)?, limits)?;
    let mut mismatches = Vec::new();
    let mut classes: Vec<GraphClass> = lhs.terms().map(|(c, _)| c.clone()).collect();
    classes.extend(rhs.terms().map(|(c, _)| c.clone()));
    classes.sort();
    classes.dedup();
    let ctx = Contractor::new(chain.space())?;
    let zero = GradedPoly::zero(ctx.coeff_space());
    for class in classes {
        let a = lhs.coeff(&class).cloned().unwrap_or_else(|| zero.clone());
        let b = rhs.coeff(&class).cloned().unwrap_or_else(|| zero.clone());
        if a != b {
            mismatches.push((class, a, b));
        }
    }
    Ok(ChainMapReport { equal: mismatches.is_empty(), mismatches })
}

/// Basic-ness of a graph-backed cochain with respect to the quadratic
/// Hamiltonians: evaluation must vanish whenever any slot carries one.
/// Other slots are filled with seeded random entries of the weights the
/// cochain's graphs expect.
pub fn check_basic(b: &GraphCochain, space: &GradedSpace, seed: u64) -> Result<bool, BetaError> {
    let sym = space.symplectic().ok_or(BetaError::NoSymplectic)?;
    let mut rng = crate::random::seeded(seed);
    // quadratic basis over the paired generators
    let mut quads: Vec<GradedPoly> = Vec::new();
    for (a, &ga) in sym.paired.iter().enumerate() {
        for &gb in sym.paired.iter().skip(a) {
            let m = GradedPoly::gen(space, ga).mul(&GradedPoly::gen(space, gb))?;
            if !m.is_zero() {
                quads.push(m);
            }
        }
    }
    for (class, _) in b.terms() {
        let g = class.graph();
        let p = g.n_int as usize;
        let ivals = g.internal_valences();
        let pvals = g.peripheral_valences();
        for slot in 0..p {
            for quad in &quads {
                let mut hams: Vec<GradedPoly> = Vec::new();
                for (i, &v) in ivals.iter().enumerate() {
                    if i == slot {
                        hams.push(quad.clone());
                    } else {
                        hams.push(crate::random::random_homogeneous(space, v, &mut rng));
                    }
                }
                let bar: Vec<GradedPoly> = pvals
                    .iter()
                    .map(|&v| crate::random::random_homogeneous(space, v, &mut rng))
                    .collect();
                let mut chain = CeChain::zero(space);
                chain.add_term(Rat::one(), hams, bar)?;
                let val = beta_dagger(b, &chain)?;
                if !val.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
