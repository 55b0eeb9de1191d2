//! Formal linear combinations of graph classes over a coefficient ring, and
//! the pairing with cochains.

use super::canon::canonicalize;
use super::{ExtGraph, GraphClass, GraphError};
use crate::graded::GradedPoly;
use crate::num::{rat_int, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Coefficient rings for graph chains: rationals for Lie data, graded
/// polynomials (tensor representatives) for curvature data.
pub trait Coefficient: Clone + PartialEq {
    fn add_assign(&mut self, other: &Self);
    fn scale_int(&self, k: i64) -> Self;
    fn scale_rat(&self, r: &Rat) -> Self;
    fn vanishes(&self) -> bool;
}

impl Coefficient for Rat {
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn scale_int(&self, k: i64) -> Self {
        self * rat_int(k)
    }
    fn scale_rat(&self, r: &Rat) -> Self {
        self * r
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Coefficient for GradedPoly {
    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other).expect("chain coefficients share a space");
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale(&rat_int(k))
    }
    fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(r)
    }
    fn vanishes(&self) -> bool {
        GradedPoly::is_zero(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphChain<C: Coefficient = Rat> {
    terms: BTreeMap<GraphClass, C>,
}

impl<C: Coefficient> Default for GraphChain<C> {
    fn default() -> Self {
        GraphChain { terms: BTreeMap::new() }
    }
}

impl<C: Coefficient> GraphChain<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GraphClass, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, class: &GraphClass) -> Option<&C> {
        self.terms.get(class)
    }

    pub fn add_class(&mut self, class: GraphClass, c: C) {
        if c.vanishes() {
            return;
        }
        match self.terms.entry(class) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c);
                if o.get().vanishes() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c * [g]`, canonicalizing and dropping zero classes.
    pub fn add_graph(&mut self, g: &ExtGraph, c: C) -> Result<(), GraphError> {
        let canon = canonicalize(g)?;
        if let Some(class) = canon.class {
            self.add_class(class, c.scale_int(canon.sign as i64));
        }
        Ok(())
    }

    pub fn add_chain(&mut self, other: &GraphChain<C>) {
        for (class, c) in &other.terms {
            self.add_class(class.clone(), c.clone());
        }
    }

    pub fn scale_int(&self, k: i64) -> GraphChain<C> {
        let mut out = GraphChain::new();
        for (class, c) in &self.terms {
            out.add_class(class.clone(), c.scale_int(k));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> GraphChain<C> {
        let mut out = GraphChain::new();
        for (class, c) in &self.terms {
            out.add_class(class.clone(), c.scale_rat(r));
        }
        out
    }

    pub fn sub(&self, other: &GraphChain<C>) -> GraphChain<C> {
        let mut out = self.clone();
        out.add_chain(&other.scale_int(-1));
        out
    }
}

/// A graph cochain: finitely many dual classes with rational weights. The
/// pairing against a representative graph includes the canonical sign.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphCochain {
    terms: BTreeMap<GraphClass, Rat>,
}

impl GraphCochain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Dual of (the class of) a representative graph: `⟨[g]*, [g]⟩ = 1`.
    pub fn dual_of(g: &ExtGraph) -> Result<Self, GraphError> {
        let mut c = Self::new();
        c.add_dual(g, rat_int(1))?;
        Ok(c)
    }

    pub fn add_dual(&mut self, g: &ExtGraph, w: Rat) -> Result<(), GraphError> {
        let canon = canonicalize(g)?;
        if let Some(class) = canon.class {
            let signed = w * rat_int(canon.sign as i64);
            match self.terms.entry(class) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    if !signed.is_zero() {
                        v.insert(signed);
                    }
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += signed;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GraphClass, &Rat)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sizes(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self
            .terms
            .keys()
            .map(|c| (c.graph().n_int, c.graph().n_per))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Bilinear pairing `⟨b, chain⟩` through canonical signs.
pub fn pair<C: Coefficient>(b: &GraphCochain, chain: &GraphChain<C>) -> Option<C> {
    let mut acc: Option<C> = None;
    for (class, w) in b.terms() {
        if let Some(c) = chain.coeff(class) {
            let piece = c.scale_rat(w);
            match &mut acc {
                None => acc = Some(piece),
                Some(a) => a.add_assign(&piece),
            }
        }
    }
    acc
}

/// Pairing specialized to rational chains; empty pairings are zero.
pub fn pair_rat(b: &GraphCochain, chain: &GraphChain<Rat>) -> Rat {
    pair(b, chain).unwrap_or_else(Rat::zero)
}
