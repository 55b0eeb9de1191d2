//! Seeded generators for reproducible test data: small-denominator rationals,
//! homogeneous polynomials and tensor jets.

use crate::graded::{GradedPoly, GradedSpace, Mono};
use crate::num::{rat, Rat};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small-denominator rational in `[-3, 3]`, biased away from zero.
pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = rng.random_range(-3i64..=3);
    let den = rng.random_range(1i64..=2);
    rat(num, den)
}

pub fn small_rat_nonzero(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = small_rat(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

fn monomials_of_weight(space: &GradedSpace, weight: u32) -> Vec<Mono> {
    let dim = space.dim();
    let mut out = Vec::new();
    let mut stack = vec![(Mono::unit(dim), 0usize, weight)];
    while let Some((m, i, rem)) = stack.pop() {
        if rem == 0 {
            out.push(m);
            continue;
        }
        if i >= dim {
            continue;
        }
        let cap = if space.gen(i).is_odd() { 1 } else { space.gen(i).cap.unwrap_or(rem) };
        for e in 0..=cap.min(rem) {
            let mut m2 = m;
            m2.set(i, e);
            stack.push((m2, i + 1, rem - e));
        }
    }
    out.sort();
    out
}

/// Random polynomial of uniform weight `w`; sparse (roughly half the
/// monomials carry a coefficient).
pub fn random_homogeneous(space: &GradedSpace, w: u32, rng: &mut ChaCha8Rng) -> GradedPoly {
    let mut p = GradedPoly::zero(space);
    for m in monomials_of_weight(space, w) {
        if rng.random_bool(0.5) {
            p.add_term(m, small_rat(rng));
        }
    }
    if p.is_zero() {
        // keep tests meaningful on unlucky draws
        if let Some(m) = monomials_of_weight(space, w).into_iter().next() {
            p.add_term(m, rat(1, 1));
        }
    }
    p
}

/// Random polynomial of uniform graded degree `deg`, with monomial weights
/// in `1..=max_w`.
pub fn random_of_degree(
    space: &GradedSpace,
    deg: u32,
    max_w: u32,
    rng: &mut ChaCha8Rng,
) -> GradedPoly {
    let mut p = GradedPoly::zero(space);
    let mut candidates = Vec::new();
    for w in 1..=max_w {
        for m in monomials_of_weight(space, w) {
            let d: u32 = (0..space.dim()).map(|i| m.get(i) * space.gen(i).degree).sum();
            if d == deg {
                candidates.push(m);
            }
        }
    }
    for m in &candidates {
        if rng.random_bool(0.5) {
            p.add_term(*m, small_rat(rng));
        }
    }
    if p.is_zero() {
        if let Some(m) = candidates.into_iter().next() {
            p.add_term(m, rat(1, 1));
        }
    }
    p
}

/// Random polynomial with terms of weight `1..=max_w`.
pub fn random_poly(space: &GradedSpace, max_w: u32, rng: &mut ChaCha8Rng) -> GradedPoly {
    let mut p = GradedPoly::zero(space);
    for w in 1..=max_w {
        for m in monomials_of_weight(space, w) {
            if rng.random_bool(0.3) {
                p.add_term(m, small_rat(rng));
            }
        }
    }
    p
}
