//! The extended Chevalley-Eilenberg chain complex: symmetric words of
//! Hamiltonians suspended by `n+1` tensored with cyclic bar words suspended
//! by `1`, the boundary `∂ = ∂_I + ∂_V + ∂_H`, and evaluation of cochains.
//!
//! Chains are multilinear in every slot, so terms are stored fully expanded:
//! each slot holds one monic monomial and the numeric part lives in the
//! coefficient. Hamiltonian slots are kept sorted and bar words rotated to
//! their minimal cyclic form, with all exchange signs absorbed, so equality
//! is syntactic and cancellation is exact.

use crate::graded::{poisson_bracket, GradedPoly, GradedSpace, Mono, PolyError};
use crate::num::{rat_int, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CeError {
    #[error("chain entries must be homogeneous in graded degree")]
    Inhomogeneous,
    #[error("chain entries live on different spaces")]
    MismatchedSpaces,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One normalized summand `coeff * (f_1, ..., f_p) ⊗ [g_1 | ... | g_q]`
/// with monic monomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct CeTerm {
    pub coeff: Rat,
    pub hams: Vec<GradedPoly>,
    pub bar: Vec<GradedPoly>,
}

type TermKey = (Vec<Mono>, Vec<Mono>);

#[derive(Clone, Debug, PartialEq)]
pub struct CeChain {
    space: GradedSpace,
    terms: BTreeMap<TermKey, Rat>,
}

fn mono_degree(space: &GradedSpace, m: &Mono) -> u32 {
    (0..space.dim()).map(|i| m.get(i) * space.gen(i).degree).sum()
}

impl CeChain {
    pub fn zero(space: &GradedSpace) -> Self {
        CeChain { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Materializes the summands with monic monomial entries.
    pub fn terms(&self) -> Vec<CeTerm> {
        self.terms
            .iter()
            .map(|((hs, bs), c)| CeTerm {
                coeff: c.clone(),
                hams: hs.iter().map(|m| GradedPoly::monomial(&self.space, &m.exps(self.space.dim()), Rat::new(1.into(), 1.into()))).collect(),
                bar: bs.iter().map(|m| GradedPoly::monomial(&self.space, &m.exps(self.space.dim()), Rat::new(1.into(), 1.into()))).collect(),
            })
            .collect()
    }

    fn push_normalized(&mut self, key: TermKey, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `coeff * (hams) ⊗ [bar]`, expanding multilinearly and
    /// normalizing order, rotation, and signs.
    pub fn add_term(
        &mut self,
        coeff: Rat,
        hams: Vec<GradedPoly>,
        bar: Vec<GradedPoly>,
    ) -> Result<(), CeError> {
        if coeff.is_zero() || hams.iter().chain(bar.iter()).any(|p| p.is_zero()) {
            return Ok(());
        }
        for p in hams.iter().chain(bar.iter()) {
            if p.space() != &self.space {
                return Err(CeError::MismatchedSpaces);
            }
        }
        let n = self.space.form_degree();
        // expand each slot into its monomials
        let hlists: Vec<Vec<(Mono, Rat)>> = hams
            .iter()
            .map(|p| p.terms().map(|(m, c)| (*m, c.clone())).collect())
            .collect();
        let blists: Vec<Vec<(Mono, Rat)>> = bar
            .iter()
            .map(|p| p.terms().map(|(m, c)| (*m, c.clone())).collect())
            .collect();
        let mut idx = vec![0usize; hlists.len() + blists.len()];
        loop {
            let mut c = coeff.clone();
            let hs: Vec<Mono> = hlists
                .iter()
                .enumerate()
                .map(|(k, l)| {
                    let (m, cc) = &l[idx[k]];
                    c *= cc;
                    *m
                })
                .collect();
            let bs: Vec<Mono> = blists
                .iter()
                .enumerate()
                .map(|(k, l)| {
                    let (m, cc) = &l[idx[hlists.len() + k]];
                    c *= cc;
                    m.clone()
                })
                .collect();
            if let Some((key, sign)) = normalize(&self.space, hs, bs, n) {
                self.push_normalized(key, c * rat_int(sign));
            }
            // bump the mixed-radix index
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                let len = if k < hlists.len() { hlists[k].len() } else { blists[k - hlists.len()].len() };
                if idx[k] < len {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
        Ok(())
    }

    pub fn add_chain(&mut self, other: &CeChain) -> Result<(), CeError> {
        if other.space != self.space {
            return Err(CeError::MismatchedSpaces);
        }
        for (key, c) in &other.terms {
            self.push_normalized(key.clone(), c.clone());
        }
        Ok(())
    }

    pub fn scale(&self, r: &Rat) -> CeChain {
        let mut out = CeChain::zero(&self.space);
        if r.is_zero() {
            return out;
        }
        for (key, c) in &self.terms {
            out.terms.insert(key.clone(), c * r);
        }
        out
    }

    pub fn sub(&self, other: &CeChain) -> Result<CeChain, CeError> {
        let mut out = self.clone();
        out.add_chain(&other.scale(&rat_int(-1)))?;
        Ok(out)
    }
}

/// Sorts Hamiltonian monomials (with exchange signs) and rotates the bar
/// word to its minimal cyclic form (with rotation signs); `None` when the
/// term vanishes by symmetry. Monomials have definite degree, so no
/// homogeneity questions arise here.
fn normalize(space: &GradedSpace, mut hams: Vec<Mono>, bar: Vec<Mono>, n: u32) -> Option<(TermKey, i64)> {
    let hpar: Vec<u32> = hams.iter().map(|m| (mono_degree(space, m) + n + 1) % 2).collect();
    let mut order: Vec<usize> = (0..hams.len()).collect();
    let mut sign = 1i64;
    for i in 1..order.len() {
        let mut j = i;
        while j > 0 && hams[order[j]] < hams[order[j - 1]] {
            if hpar[order[j]] == 1 && hpar[order[j - 1]] == 1 {
                sign = -sign;
            }
            order.swap(j, j - 1);
            j -= 1;
        }
    }
    for w in order.windows(2) {
        if hams[w[0]] == hams[w[1]] && hpar[w[0]] == 1 {
            return None;
        }
    }
    hams = order.iter().map(|&i| hams[i]).collect();

    let q = bar.len();
    if q > 1 {
        let bpar: Vec<u32> = bar.iter().map(|m| (mono_degree(space, m) + 1) % 2).collect();
        let mut best: Option<(Vec<Mono>, i64)> = None;
        let mut zero = false;
        let mut rot_sign = 1i64;
        for r in 0..q {
            let word: Vec<Mono> = (0..q).map(|k| bar[(k + r) % q]).collect();
            match &best {
                None => best = Some((word, rot_sign)),
                Some((bw, bs)) => {
                    if word < *bw {
                        zero = false;
                        best = Some((word, rot_sign));
                    } else if word == *bw && rot_sign != *bs {
                        zero = true;
                    }
                }
            }
            let rest: u32 = (0..q).filter(|&k| k != r).map(|k| bpar[k]).sum();
            if bpar[r] == 1 && rest % 2 == 1 {
                rot_sign = -rot_sign;
            }
        }
        if zero {
            return None;
        }
        let (word, s) = best.unwrap();
        return Some(((hams, word), sign * s));
    }
    Some(((hams, bar), sign))
}

fn monic(space: &GradedSpace, m: &Mono) -> GradedPoly {
    GradedPoly::monomial(space, &m.exps(space.dim()), Rat::new(1.into(), 1.into()))
}

/// Boundary `∂ = ∂_I + ∂_V + ∂_H` with the combined sign exponents; inner
/// brackets are Poisson brackets and the action on a bar entry is the
/// Hamiltonian vector field of the entry acting on it.
pub fn ce_boundary(chain: &CeChain) -> Result<CeChain, CeError> {
    let space = chain.space().clone();
    if space.symplectic().is_none() {
        return Err(CeError::Poly(PolyError::NoSymplectic));
    }
    let n = space.form_degree();
    let mut out = CeChain::zero(&space);
    for ((hs, bs), coeff) in &chain.terms {
        let p = hs.len();
        let q = bs.len();
        let fbar: Vec<u32> = hs.iter().map(|m| (mono_degree(&space, m) + n + 1) % 2).collect();
        let gbar: Vec<u32> = bs.iter().map(|m| (mono_degree(&space, m) + 1) % 2).collect();
        let fpar: Vec<u32> = hs.iter().map(|m| mono_degree(&space, m) % 2).collect();

        // internal part: bracket two Hamiltonians to the front
        for i in 0..p {
            for j in (i + 1)..p {
                let s_ij = fbar[i] * fbar[..i].iter().sum::<u32>()
                    + fbar[j] * fbar[..j].iter().sum::<u32>()
                    + fbar[i] * fbar[j];
                let inner_sign = if fpar[i] == 1 { -1 } else { 1 };
                let br = poisson_bracket(&monic(&space, &hs[i]), &monic(&space, &hs[j]))?
                    .scale(&rat_int(inner_sign));
                if br.is_zero() {
                    continue;
                }
                let mut hams = vec![br];
                for (k, m) in hs.iter().enumerate() {
                    if k != i && k != j {
                        hams.push(monic(&space, m));
                    }
                }
                let sgn = if s_ij % 2 == 0 { 1 } else { -1 };
                out.add_term(
                    coeff * rat_int(sgn),
                    hams,
                    bs.iter().map(|m| monic(&space, m)).collect(),
                )?;
            }
        }

        // action part: a Hamiltonian acts on one bar entry
        for i in 0..p {
            for j in 0..q {
                let t_ij = fbar[i]
                    * (fbar[i + 1..].iter().sum::<u32>() + gbar[..j].iter().sum::<u32>())
                    + fbar.iter().sum::<u32>()
                    + gbar[..j].iter().sum::<u32>();
                let acted = poisson_bracket(&monic(&space, &hs[i]), &monic(&space, &bs[j]))?;
                if acted.is_zero() {
                    continue;
                }
                let hams: Vec<GradedPoly> = hs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, m)| monic(&space, m))
                    .collect();
                let mut bar: Vec<GradedPoly> = bs.iter().map(|m| monic(&space, m)).collect();
                bar[j] = acted;
                let sgn = if t_ij % 2 == 0 { -1 } else { 1 };
                out.add_term(coeff * rat_int(sgn), hams, bar)?;
            }
        }

        // bar part: multiply cyclically adjacent entries
        if q >= 2 {
            for j in 0..q {
                let jn = (j + 1) % q;
                let u_j = fbar.iter().sum::<u32>()
                    + gbar[j]
                    + gbar[..j].iter().sum::<u32>() * gbar[j..].iter().sum::<u32>();
                let prod = monic(&space, &bs[j]).mul(&monic(&space, &bs[jn]))?;
                if prod.is_zero() {
                    continue;
                }
                let mut bar = vec![prod];
                let mut k = (jn + 1) % q;
                while k != j {
                    bar.push(monic(&space, &bs[k]));
                    k = (k + 1) % q;
                }
                let sgn = if u_j % 2 == 0 { -1 } else { 1 };
                out.add_term(
                    coeff * rat_int(sgn),
                    hs.iter().map(|m| monic(&space, m)).collect(),
                    bar,
                )?;
            }
        }
    }
    Ok(out)
}

/// Anti-action of a Hamiltonian on the bar factors of a chain.
pub fn bar_anti_action(u: &GradedPoly, chain: &CeChain) -> Result<CeChain, CeError> {
    let space = chain.space().clone();
    let n = space.form_degree();
    let upar = u.parity().map_err(|_| CeError::Inhomogeneous)?;
    let mut out = CeChain::zero(&space);
    for term in chain.terms() {
        let gbar: Vec<u32> = term
            .bar
            .iter()
            .map(|g| g.parity().map(|d| (d + 1) % 2).map_err(|_| CeError::Inhomogeneous))
            .collect::<Result<_, _>>()?;
        for j in 0..term.bar.len() {
            let w_j = (upar + n) * gbar[..j].iter().sum::<u32>();
            let exp = w_j + upar * n + upar + n;
            let acted = poisson_bracket(u, &term.bar[j])?;
            if acted.is_zero() {
                continue;
            }
            let mut bar = term.bar.clone();
            bar[j] = acted;
            let sgn = if exp % 2 == 0 { -1 } else { 1 };
            out.add_term(&term.coeff * rat_int(sgn), term.hams.clone(), bar)?;
        }
    }
    Ok(out)
}

/// A cochain: a linear functional on chains with a declared degree. For a
/// functional arising from a graph with `E` edges and `V` vertices the
/// degree is `n E - (n+1) V`.
#[derive(Clone)]
pub struct CeCochain {
    pub degree: i64,
    eval: Arc<dyn Fn(&CeChain) -> Rat + Send + Sync>,
}

impl CeCochain {
    pub fn from_fn(
        degree: i64,
        eval: impl Fn(&CeChain) -> Rat + Send + Sync + 'static,
    ) -> Self {
        CeCochain { degree, eval: Arc::new(eval) }
    }

    pub fn eval(&self, chain: &CeChain) -> Rat {
        (self.eval)(chain)
    }
}

impl std::fmt::Debug for CeCochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CeCochain").field("degree", &self.degree).finish()
    }
}

/// Degree of a graph-backed cochain: `n E - (n+1) V`.
pub fn cochain_degree(n: u32, edges: u32, vertices: u32) -> i64 {
    n as i64 * edges as i64 - (n as i64 + 1) * vertices as i64
}

/// Coboundary against the trivial module: `(δc)(ch) = c(∂ch)`; the module
/// action terms vanish on constant coefficients.
pub fn ce_coboundary_eval(c: &CeCochain, chain: &CeChain) -> Result<Rat, CeError> {
    Ok(c.eval(&ce_boundary(chain)?))
}

/// Counts terms by `(p, q)` shape, for reporting.
pub fn shape_census(chain: &CeChain) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for (key, _) in &chain.terms {
        *m.entry((key.0.len(), key.1.len())).or_insert(0) += 1;
    }
    m
}
