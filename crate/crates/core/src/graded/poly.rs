//! Truncated polynomials on a graded space with exact rational coefficients
//! and Koszul-sign multiplication. Odd generators square to zero; signs are
//! accumulated by counting odd transpositions against the fixed generator
//! order. All derivatives are left derivatives.

use super::space::{GradedSpace, WeightClass};
use crate::num::{rat_int, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands live on different graded spaces")]
    MismatchedSpaces,
    #[error("space carries no symplectic form")]
    NoSymplectic,
    #[error("vector field does not preserve the symplectic form")]
    NotSymplectic,
    #[error("polynomial is not homogeneous of a single graded degree")]
    Inhomogeneous,
    #[error("substitution parity mismatch for generator `{0}`")]
    ParityMismatch(String),
}

/// Exponent vector over the generators of one space, stored inline.
/// Spaces are desk-scale: at most `MAX_GENS` generators, exponents below
/// 256.
pub const MAX_GENS: usize = 40;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono {
    e: [u8; MAX_GENS],
}

impl Mono {
    pub fn unit(_dim: usize) -> Self {
        Mono { e: [0; MAX_GENS] }
    }

    pub fn gen(dim: usize, i: usize) -> Self {
        let mut m = Mono::unit(dim);
        m.set(i, 1);
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_GENS, "space exceeds the generator cap");
        let mut m = Mono { e: [0; MAX_GENS] };
        for (i, &x) in exps.iter().enumerate() {
            assert!(x < 256, "exponent exceeds the monomial cap");
            m.e[i] = x as u8;
        }
        m
    }

    pub fn get(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn set(&mut self, i: usize, v: u32) {
        assert!(v < 256);
        self.e[i] = v as u8;
    }

    pub fn bump(&mut self, i: usize, by: u32) {
        self.set(i, self.get(i) + by);
    }

    pub fn weight(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn exps(&self, dim: usize) -> Vec<u32> {
        (0..dim).map(|i| self.get(i)).collect()
    }
}

/// Per-class total-weight budgets; classes absent from the map are unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Trunc(pub BTreeMap<WeightClass, u32>);

impl Trunc {
    pub fn none() -> Self {
        Trunc::default()
    }

    pub fn total(limit: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert(0, limit);
        Trunc(m)
    }

    pub fn with(mut self, class: WeightClass, limit: u32) -> Self {
        self.0.insert(class, limit);
        self
    }

    /// Intersection: the tighter of each class budget.
    pub fn meet(&self, other: &Trunc) -> Trunc {
        let mut out = self.0.clone();
        for (&c, &l) in &other.0 {
            out.entry(c).and_modify(|x| *x = (*x).min(l)).or_insert(l);
        }
        Trunc(out)
    }

    fn admits(&self, space: &GradedSpace, m: &Mono) -> bool {
        if self.0.is_empty() {
            return true;
        }
        let mut totals: BTreeMap<WeightClass, u32> = BTreeMap::new();
        for i in 0..space.dim() {
            let e = m.get(i);
            if e > 0 {
                *totals.entry(space.gen(i).class).or_insert(0) += e;
            }
        }
        totals.iter().all(|(c, t)| self.0.get(c).map_or(true, |l| t <= l))
    }
}

#[derive(Clone, Debug)]
pub struct GradedPoly {
    space: GradedSpace,
    trunc: Trunc,
    terms: BTreeMap<Mono, Rat>,
}

/// Equality is on content; the truncation budget is operational metadata.
impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.terms == other.terms
    }
}
impl Eq for GradedPoly {}

impl GradedPoly {
    pub fn zero(space: &GradedSpace) -> Self {
        GradedPoly { space: space.clone(), trunc: Trunc::none(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &GradedSpace, c: Rat) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Mono::unit(space.dim()), c);
        p
    }

    pub fn one(space: &GradedSpace) -> Self {
        Self::constant(space, Rat::one())
    }

    pub fn gen(space: &GradedSpace, i: usize) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Mono::gen(space.dim(), i), Rat::one());
        p
    }

    pub fn monomial(space: &GradedSpace, exps: &[u32], c: Rat) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Mono::from_exps(exps), c);
        p
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn trunc(&self) -> &Trunc {
        &self.trunc
    }

    pub fn truncated(mut self, trunc: Trunc) -> Self {
        self.trunc = self.trunc.meet(&trunc);
        self.terms.retain(|m, _| self.trunc.admits(&self.space, m));
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Mono::unit(self.space.dim()))
    }

    /// Inserts `c * m`, dropping truncated, odd-squared and zero results.
    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.space.dim() {
            let e = m.get(i);
            let g = self.space.gen(i);
            if e > 1 && g.is_odd() {
                return;
            }
            if let Some(cap) = g.cap {
                if e > cap {
                    return;
                }
            }
        }
        if !self.trunc.admits(&self.space, &m) {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(&self.space);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn neg(&self) -> GradedPoly {
        self.scale(&rat_int(-1))
    }

    fn check_space(&self, other: &GradedPoly) -> Result<(), PolyError> {
        if self.space != other.space {
            return Err(PolyError::MismatchedSpaces);
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        self.check_space(other)?;
        let mut out = self.clone();
        out.trunc = self.trunc.meet(&other.trunc);
        out.terms.retain(|m, _| out.trunc.admits(&out.space, m));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        self.add(&other.neg())
    }

    /// Koszul sign (as ±1) for multiplying monomial `a` by `b`, or `None`
    /// when an odd generator would square.
    fn mono_mul_sign(space: &GradedSpace, a: &Mono, b: &Mono) -> Option<i32> {
        // each odd factor of `b` at slot j crosses the odd factors of `a`
        // sitting at slots > j
        let mut odd_after: u32 = 0;
        let mut crossings: u32 = 0;
        for j in (0..space.dim()).rev() {
            let odd = space.gen(j).is_odd();
            if odd && b.get(j) > 0 {
                if a.get(j) > 0 {
                    return None;
                }
                crossings += odd_after;
            }
            if odd && a.get(j) > 0 {
                odd_after += 1;
            }
        }
        Some(if crossings % 2 == 0 { 1 } else { -1 })
    }

    pub fn mul(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        self.check_space(other)?;
        let mut out = GradedPoly::zero(&self.space);
        out.trunc = self.trunc.meet(&other.trunc);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some(sign) = Self::mono_mul_sign(&self.space, ma, mb) else {
                    continue;
                };
                let mut m = *ma;
                for i in 0..self.space.dim() {
                    let add = mb.get(i);
                    if add > 0 {
                        m.bump(i, add);
                    }
                }
                out.add_term(m, ca * cb * rat_int(sign as i64));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<GradedPoly, PolyError> {
        let mut out = GradedPoly::one(&self.space).truncated(self.trunc.clone());
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Left derivative with respect to generator `i`.
    pub fn left_deriv(&self, i: usize) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.space);
        out.trunc = self.trunc.clone();
        let gi_odd = self.space.gen(i).is_odd();
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e == 0 {
                continue;
            }
            let mut sign = 1i64;
            if gi_odd {
                let crossings: u32 = (0..i)
                    .filter(|&j| self.space.gen(j).is_odd())
                    .map(|j| m.get(j))
                    .sum();
                if crossings % 2 == 1 {
                    sign = -1;
                }
            }
            let mut m2 = *m;
            m2.set(i, e - 1);
            out.add_term(m2, c * rat_int(e as i64) * rat_int(sign));
        }
        out
    }

    /// Right derivative, expressed through the left one termwise:
    /// `f ∂⃖_i = (-1)^{|g_i| (|f| + 1)} ∂_i f` for homogeneous terms.
    pub fn right_deriv(&self, i: usize) -> GradedPoly {
        if !self.space.gen(i).is_odd() {
            return self.left_deriv(i);
        }
        let mut out = GradedPoly::zero(&self.space);
        out.trunc = self.trunc.clone();
        for (m, c) in &self.terms {
            let single =
                GradedPoly { space: self.space.clone(), trunc: Trunc::none(), terms: [(*m, c.clone())].into() };
            let deg = self.term_degree(m);
            let sign = if (deg + 1) % 2 == 1 { -1 } else { 1 };
            for (m2, c2) in single.left_deriv(i).terms {
                out.add_term(m2, c2 * rat_int(sign));
            }
        }
        out
    }

    pub fn term_degree(&self, m: &Mono) -> u32 {
        (0..self.space.dim()).map(|i| m.get(i) * self.space.gen(i).degree).sum()
    }

    /// Graded degree when every term agrees; zero polynomial reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (m, _) in &self.terms {
            let d = self.term_degree(m);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Parity (mod 2 degree); errors when mixed.
    pub fn parity(&self) -> Result<u32, PolyError> {
        let mut p = None;
        for (m, _) in &self.terms {
            let d = self.term_degree(m) % 2;
            match p {
                None => p = Some(d),
                Some(p0) if p0 != d => return Err(PolyError::Inhomogeneous),
                _ => {}
            }
        }
        Ok(p.unwrap_or(0))
    }

    /// Polynomial weight (number of generator factors) when uniform.
    pub fn uniform_weight(&self) -> Option<u32> {
        let mut w = None;
        for (m, _) in &self.terms {
            match w {
                None => w = Some(m.weight()),
                Some(w0) if w0 != m.weight() => return None,
                _ => {}
            }
        }
        w
    }

    pub fn min_max_weight(&self) -> Option<(u32, u32)> {
        self.min_max_weight_filtered(|_| true)
    }

    /// Weight range counting only the generators accepted by `keep`.
    pub fn min_max_weight_filtered(
        &self,
        keep: impl Fn(usize) -> bool,
    ) -> Option<(u32, u32)> {
        let mut mm: Option<(u32, u32)> = None;
        for (m, _) in &self.terms {
            let w: u32 =
                (0..self.space.dim()).filter(|&i| keep(i)).map(|i| m.get(i)).sum();
            mm = Some(match mm {
                None => (w, w),
                Some((lo, hi)) => (lo.min(w), hi.max(w)),
            });
        }
        mm
    }

    /// Uniform weight over a generator subset, when it exists.
    pub fn uniform_weight_filtered(&self, keep: impl Fn(usize) -> bool) -> Option<u32> {
        match self.min_max_weight_filtered(keep) {
            Some((lo, hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    /// Keeps the terms whose exponent of generator `i` equals `e`, dividing
    /// that generator out.
    pub fn coeff_of_power(&self, i: usize, e: u32) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.space);
        out.trunc = self.trunc.clone();
        for (m, c) in &self.terms {
            if m.get(i) == e {
                let mut m2 = *m;
                m2.set(i, 0);
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Sets generator `i` to zero.
    pub fn set_gen_zero(&self, i: usize) -> GradedPoly {
        self.coeff_of_power(i, 0)
    }

    /// Substitutes every generator by `map(i)` (polynomials on a target
    /// space), multiplying replacements left to right in generator order.
    /// Odd generators must map to odd polynomials.
    pub fn subst(
        &self,
        target: &GradedSpace,
        trunc: &Trunc,
        map: impl Fn(usize) -> GradedPoly,
    ) -> Result<GradedPoly, PolyError> {
        let reps: Vec<GradedPoly> = (0..self.space.dim()).map(&map).collect();
        for (i, r) in reps.iter().enumerate() {
            if self.space.gen(i).is_odd() {
                if r.parity().map_err(|_| PolyError::ParityMismatch(self.space.gen(i).name.clone()))? != 1
                    && !r.is_zero()
                {
                    return Err(PolyError::ParityMismatch(self.space.gen(i).name.clone()));
                }
            }
        }
        let mut out = GradedPoly::zero(target).truncated(trunc.clone());
        for (m, c) in &self.terms {
            let mut acc = GradedPoly::constant(target, c.clone()).truncated(trunc.clone());
            for i in 0..self.space.dim() {
                let e = m.get(i);
                for _ in 0..e {
                    acc = acc.mul(&reps[i])?;
                    if acc.is_zero() {
                        break;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Euler reweighting: picks out the piece of uniform weight `k`.
    pub fn weight_part(&self, k: u32) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.space);
        out.trunc = self.trunc.clone();
        for (m, c) in &self.terms {
            if m.weight() == k {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|m| m.weight()).max().unwrap_or(0)
    }
}

/// Graded-commutative product; fails on mismatched spaces.
pub fn poly_mul(a: &GradedPoly, b: &GradedPoly) -> Result<GradedPoly, PolyError> {
    a.mul(b)
}

/// Poisson bracket `{a, b} = (a ∂⃖_A) (Ω^{-1})^{AB} (∂_B b)` over the paired
/// generators. Degree drops by the form degree.
pub fn poisson_bracket(a: &GradedPoly, b: &GradedPoly) -> Result<GradedPoly, PolyError> {
    if a.space() != b.space() {
        return Err(PolyError::MismatchedSpaces);
    }
    let space = a.space().clone();
    let sym = space.symplectic().ok_or(PolyError::NoSymplectic)?;
    let mut out = GradedPoly::zero(&space).truncated(a.trunc().meet(b.trunc()));
    for (ai, &gi) in sym.paired.iter().enumerate() {
        let da = a.right_deriv(gi);
        if da.is_zero() {
            continue;
        }
        for (bi, &gj) in sym.paired.iter().enumerate() {
            let w = sym.omega_inv[(ai, bi)].clone();
            if w.is_zero() {
                continue;
            }
            let db = b.left_deriv(gj);
            if db.is_zero() {
                continue;
            }
            out = out.add(&da.scale(&w).mul(&db)?)?;
        }
    }
    Ok(out)
}

/// Hamiltonian of a symplectic vector field `v = v^A ∂_A` (components over
/// the paired generators, listed in pairing order): returns `Θ` with
/// `{Θ, ξ^A} = v^A` and zero constant term. The symplectic condition is
/// checked by reconstructing and comparing.
pub fn hamiltonian_lift(space: &GradedSpace, v: &[GradedPoly]) -> Result<GradedPoly, PolyError> {
    let sym = space.symplectic().ok_or(PolyError::NoSymplectic)?;
    assert_eq!(v.len(), sym.paired.len(), "one component per paired generator");
    // Θ ∂⃖_B = v^A Ω_{AB}; then ∂_B Θ = (-1)^{|B| (|Θ|+1)} (Θ ∂⃖_B) termwise,
    // and Euler reconstruction sums ξ^B ∂_B Θ / weight.
    let trunc = v.iter().fold(Trunc::none(), |t, p| t.meet(p.trunc()));
    let mut w: Vec<GradedPoly> = Vec::with_capacity(sym.paired.len());
    for (b, _) in sym.paired.iter().enumerate() {
        let mut acc = GradedPoly::zero(space).truncated(trunc.clone());
        for (a, _) in sym.paired.iter().enumerate() {
            let c = sym.omega[(a, b)].clone();
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&v[a].scale(&c))?;
        }
        w.push(acc);
    }
    let mut theta = GradedPoly::zero(space).truncated(trunc);
    let max_w = w.iter().map(|p| p.max_weight()).max().unwrap_or(0);
    for k in 1..=(max_w + 1) {
        let mut part = GradedPoly::zero(space);
        for (b, &gb) in sym.paired.iter().enumerate() {
            let right = &w[b]; // Θ ∂⃖_{gb}
            // left derivative = sign * right derivative, sign depends on the
            // term degree of Θ which is term degree of right + |gb|.
            let gb_odd = space.gen(gb).is_odd();
            let piece = right.weight_part(k - 1);
            if piece.is_zero() {
                continue;
            }
            let mut signed = GradedPoly::zero(space);
            for (m, c) in piece.terms() {
                let theta_deg = piece.term_degree(m) + space.gen(gb).degree;
                let sign = if gb_odd && (theta_deg + 1) % 2 == 1 { -1 } else { 1 };
                signed.add_term(m.clone(), c * rat_int(sign));
            }
            let xi_b = GradedPoly::gen(space, gb);
            part = part.add(&xi_b.mul(&signed)?)?;
        }
        theta = theta.add(&part.scale(&Rat::new(1.into(), k.into())))?;
    }
    // verify {Θ, ξ^A} = v^A on every paired generator
    for (a, &ga) in sym.paired.iter().enumerate() {
        let xi = GradedPoly::gen(space, ga);
        let got = poisson_bracket(&theta, &xi)?;
        if got != v[a] {
            return Err(PolyError::NotSymplectic);
        }
    }
    Ok(theta)
}
