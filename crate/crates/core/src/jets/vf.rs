//! Vector fields on a jet chart: finitely many directional components with
//! a declared parity, the graded bracket, and directional application.

use super::chart::JetChart;
use crate::graded::GradedPoly;
use crate::num::{rat_int, Rat};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub parity: u32,
    comps: BTreeMap<usize, GradedPoly>,
}

impl VectorField {
    pub fn new(parity: u32) -> Self {
        VectorField { parity, comps: BTreeMap::new() }
    }

    pub fn set(&mut self, dir: usize, p: GradedPoly) {
        if p.is_zero() {
            self.comps.remove(&dir);
        } else {
            self.comps.insert(dir, p);
        }
    }

    pub fn comp(&self, dir: usize) -> Option<&GradedPoly> {
        self.comps.get(&dir)
    }

    pub fn comps(&self) -> impl Iterator<Item = (&usize, &GradedPoly)> {
        self.comps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let mut out = self.clone();
        for (&d, p) in &other.comps {
            let cur = match out.comps.get(&d) {
                Some(q) => q.add(p).expect("same chart"),
                None => p.clone(),
            };
            out.set(d, cur);
        }
        out
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> VectorField {
        let mut out = VectorField::new(self.parity);
        for (&d, p) in &self.comps {
            out.set(d, p.scale(c));
        }
        out
    }

    /// Applies the field to a function: `X(f) = sum X^e d_e f`.
    pub fn apply(&self, f: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero(f.space());
        for (&d, p) in &self.comps {
            out = out.add(&p.mul(&f.left_deriv(d)).expect("same chart")).expect("same chart");
        }
        out
    }

    /// Graded bracket `[u, v]^c = u^e d_e v^c - (-1)^{|u||v|} v^e d_e u^c`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let sign = if self.parity * other.parity % 2 == 1 { -1 } else { 1 };
        let mut out = VectorField::new((self.parity + other.parity) % 2);
        let mut dirs: Vec<usize> = self.comps.keys().chain(other.comps.keys()).copied().collect();
        dirs.sort_unstable();
        dirs.dedup();
        for &c in &dirs {
            let mut acc: Option<GradedPoly> = None;
            if let Some(vc) = other.comps.get(&c) {
                let t = self.apply(vc);
                acc = Some(t);
            }
            if let Some(uc) = self.comps.get(&c) {
                let t = other.apply(uc).scale(&rat_int(-sign));
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t).expect("same chart"),
                });
            }
            if let Some(a) = acc {
                out.set(c, a);
            }
        }
        out
    }

    /// Clips each component to the reduced budgets of the chart.
    pub fn clipped(&self, chart: &JetChart, drop: &[(u8, u32)]) -> VectorField {
        let mut out = VectorField::new(self.parity);
        for (&d, p) in &self.comps {
            out.set(d, chart.clip(p, drop));
        }
        out
    }

    /// Keeps only the first-order variation of every component.
    pub fn variation_part(&self, chart: &JetChart) -> VectorField {
        let mut out = VectorField::new(self.parity);
        for (&d, p) in &self.comps {
            out.set(d, chart.variation_part(p));
        }
        out
    }

    pub fn base_part(&self, chart: &JetChart) -> VectorField {
        let mut out = VectorField::new(self.parity);
        for (&d, p) in &self.comps {
            out.set(d, chart.base_part(p));
        }
        out
    }

    /// Components with every flat coordinate set to zero.
    pub fn at_flat_origin(&self, chart: &JetChart) -> VectorField {
        let mut out = VectorField::new(self.parity);
        for (&d, p) in &self.comps {
            let mut q = p.clone();
            for f in chart.flat() {
                q = q.set_gen_zero(f);
            }
            out.set(d, q);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::chart::Orders;

    #[test]
    fn bracket_of_coordinate_fields_vanishes() {
        let chart = JetChart::smooth(2, Orders::default());
        let mut u = VectorField::new(0);
        u.set(chart.y(0), chart.one());
        let mut v = VectorField::new(0);
        v.set(chart.y(1), chart.one());
        assert!(u.bracket(&v).is_zero());
    }

    #[test]
    fn bracket_jacobi_random() {
        let chart = JetChart::smooth(2, Orders { xi: 3, y: 3, graded: 0 });
        let mut rng = crate::random::seeded(5);
        let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut u = VectorField::new(0);
            for i in 0..2 {
                let p = crate::random::random_poly(chart.space(), 2, rng)
                    .truncated(chart.trunc());
                u.set(chart.y(i), p);
            }
            u
        };
        let u = mk(&mut rng);
        let v = mk(&mut rng);
        let w = mk(&mut rng);
        let lhs = u.bracket(&v.bracket(&w));
        let rhs = u.bracket(&v).bracket(&w).add(&v.bracket(&u.bracket(&w)));
        // budgets shrink by the two derivatives taken
        let l = lhs.clipped(&chart, &[(super::super::chart::CLASS_Y, 2)]);
        let r = rhs.clipped(&chart, &[(super::super::chart::CLASS_Y, 2)]);
        assert_eq!(l, r);
    }
}
