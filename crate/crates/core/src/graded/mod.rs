//! Exact-arithmetic graded polynomial algebra with Koszul signs, constant
//! graded symplectic forms and Poisson brackets. All values are immutable
//! after construction and all operations are pure.

mod mat;
mod poly;
mod space;
mod text;

pub use mat::MatPoly;
pub use poly::{hamiltonian_lift, poisson_bracket, poly_mul, GradedPoly, Mono, PolyError, Trunc};
pub use space::{Generator, GradedSpace, SpaceError, Symplectic, WeightClass};
pub use text::{parse_poly, ParseError};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMat;
    use crate::num::{rat, rat_int, Rat};
    use num_traits::Zero;

    fn odd_pair_space() -> GradedSpace {
        // two odd generators paired by a symmetric form, form degree 2
        GradedSpace::with_symplectic(
            vec![Generator::new("a", 1), Generator::new("b", 1)],
            2,
            RatMat::from_i64(&[&[0, 1], &[1, 0]]),
        )
        .unwrap()
    }

    fn darboux2() -> GradedSpace {
        GradedSpace::with_symplectic(
            vec![Generator::new("q", 0), Generator::new("p", 0)],
            0,
            RatMat::from_i64(&[&[0, 1], &[-1, 0]]),
        )
        .unwrap()
    }

    #[test]
    fn odd_square_is_zero() {
        let sp = odd_pair_space();
        let a = GradedPoly::gen(&sp, 0);
        assert!(a.mul(&a).unwrap().is_zero());
    }

    #[test]
    fn odd_generators_anticommute() {
        let sp = odd_pair_space();
        let a = GradedPoly::gen(&sp, 0);
        let b = GradedPoly::gen(&sp, 1);
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert_eq!(ab, ba.neg());
    }

    #[test]
    fn distributive_expansion() {
        // (1 + a)(1 + b) = 1 + a + b + ab for odd a, b
        let sp = odd_pair_space();
        let one = GradedPoly::one(&sp);
        let a = GradedPoly::gen(&sp, 0);
        let b = GradedPoly::gen(&sp, 1);
        let lhs = one.add(&a).unwrap().mul(&one.add(&b).unwrap()).unwrap();
        let rhs = one
            .add(&a)
            .unwrap()
            .add(&b)
            .unwrap()
            .add(&a.mul(&b).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_on_generators_is_inverse_pairing() {
        let sp = darboux2();
        let q = GradedPoly::gen(&sp, 0);
        let p = GradedPoly::gen(&sp, 1);
        assert_eq!(poisson_bracket(&q, &p).unwrap(), GradedPoly::constant(&sp, rat_int(-1)));
        assert_eq!(poisson_bracket(&p, &q).unwrap(), GradedPoly::one(&sp));

        let sp = odd_pair_space();
        let a = GradedPoly::gen(&sp, 0);
        let b = GradedPoly::gen(&sp, 1);
        assert_eq!(poisson_bracket(&a, &b).unwrap(), GradedPoly::one(&sp));
        assert_eq!(poisson_bracket(&b, &a).unwrap(), GradedPoly::one(&sp));
    }

    #[test]
    fn bracket_without_form_errors() {
        let sp = GradedSpace::new(vec![Generator::new("x", 0)], 0).unwrap();
        let x = GradedPoly::gen(&sp, 0);
        assert_eq!(poisson_bracket(&x, &x).unwrap_err(), PolyError::NoSymplectic);
    }

    fn rand_poly(sp: &GradedSpace, weight: u32, seed: u64) -> GradedPoly {
        crate::random::random_homogeneous(sp, weight, &mut crate::random::seeded(seed))
    }

    #[test]
    fn bracket_graded_antisymmetry_and_jacobi() {
        for seed in 0..4u64 {
            for sp in [darboux2(), odd_pair_space()] {
                let n = sp.form_degree();
                let f = rand_poly(&sp, 2, seed * 3 + 1);
                let g = rand_poly(&sp, 1, seed * 3 + 2);
                let h = rand_poly(&sp, 2, seed * 3 + 3);
                let pf = f.parity().unwrap();
                let pg = g.parity().unwrap();
                let _ph = h.parity().unwrap();
                // {f,g} = -(-1)^{(|f|+n)(|g|+n)} {g,f}
                let sign = if (pf + n) * (pg + n) % 2 == 1 { 1 } else { -1 };
                let lhs = poisson_bracket(&f, &g).unwrap();
                let rhs = poisson_bracket(&g, &f).unwrap().scale(&rat_int(sign));
                assert_eq!(lhs, rhs, "antisymmetry seed {seed}");
                // graded Jacobi: {f,{g,h}} = {{f,g},h} + (-1)^{(|f|+n)(|g|+n)} {g,{f,h}}
                let l = poisson_bracket(&f, &poisson_bracket(&g, &h).unwrap()).unwrap();
                let r1 = poisson_bracket(&poisson_bracket(&f, &g).unwrap(), &h).unwrap();
                let s = if (pf + n) * (pg + n) % 2 == 1 { -1 } else { 1 };
                let r2 = poisson_bracket(&g, &poisson_bracket(&f, &h).unwrap())
                    .unwrap()
                    .scale(&rat_int(s));
                assert_eq!(l, r1.add(&r2).unwrap(), "jacobi seed {seed}");
            }
        }
    }

    #[test]
    fn jacobi_brute_force_dim4() {
        // three random cubics over a 4-dimensional even symplectic space
        let sp = GradedSpace::with_symplectic(
            (0..4).map(|i| Generator::new(format!("x{i}"), 0)).collect(),
            0,
            RatMat::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]),
        )
        .unwrap();
        let mut rng = crate::random::seeded(7);
        let f = crate::random::random_homogeneous(&sp, 3, &mut rng);
        let g = crate::random::random_homogeneous(&sp, 3, &mut rng);
        let h = crate::random::random_homogeneous(&sp, 3, &mut rng);
        let mut total = GradedPoly::zero(&sp);
        // cyclic sum {f,{g,h}} + {g,{h,f}} + {h,{f,g}} expanded to all six
        // nested brackets via antisymmetry
        for (a, b, c) in [(&f, &g, &h), (&g, &h, &f), (&h, &f, &g)] {
            total = total
                .add(&poisson_bracket(a, &poisson_bracket(b, c).unwrap()).unwrap())
                .unwrap();
        }
        assert!(total.is_zero());
    }

    #[test]
    fn truncation_cuts_products() {
        let sp = darboux2();
        let q = GradedPoly::gen(&sp, 0).truncated(Trunc::total(2));
        let q2 = q.mul(&q).unwrap();
        assert_eq!(q2.num_terms(), 1);
        assert!(q2.mul(&q).unwrap().is_zero());
    }

    #[test]
    fn lift_of_zero_is_zero() {
        let sp = darboux2();
        let z = GradedPoly::zero(&sp);
        let theta = hamiltonian_lift(&sp, &[z.clone(), z]).unwrap();
        assert!(theta.is_zero());
    }

    #[test]
    fn lift_of_linear_symplectic_field() {
        // v = {H, .} for H = q p: recover H up to the checked identity
        let sp = darboux2();
        let q = GradedPoly::gen(&sp, 0);
        let p = GradedPoly::gen(&sp, 1);
        let h = q.mul(&p).unwrap();
        let vq = poisson_bracket(&h, &q).unwrap();
        let vp = poisson_bracket(&h, &p).unwrap();
        let theta = hamiltonian_lift(&sp, &[vq, vp]).unwrap();
        assert_eq!(theta, h);
    }

    #[test]
    fn lift_rejects_non_symplectic() {
        // v = q ∂/∂q alone does not preserve dq ∧ dp
        let sp = darboux2();
        let q = GradedPoly::gen(&sp, 0);
        let err = hamiltonian_lift(&sp, &[q, GradedPoly::zero(&sp)]).unwrap_err();
        assert_eq!(err, PolyError::NotSymplectic);
    }

    #[test]
    fn lift_inverts_bracket_on_random_hamiltonians() {
        let sp = odd_pair_space();
        for seed in 0..5u64 {
            let mut rng = crate::random::seeded(seed);
            let h = crate::random::random_homogeneous(&sp, 2, &mut rng);
            let comps: Vec<GradedPoly> = sp
                .symplectic()
                .unwrap()
                .paired
                .iter()
                .map(|&g| poisson_bracket(&h, &GradedPoly::gen(&sp, g)).unwrap())
                .collect();
            let theta = hamiltonian_lift(&sp, &comps).unwrap();
            // agrees with h up to a constant, and the constant is zero
            assert_eq!(theta, h.sub(&GradedPoly::constant(&sp, h.constant_term())).unwrap());
        }
    }

    #[test]
    fn mul_associative_random() {
        let sp = odd_pair_space();
        for seed in 0..6u64 {
            let mut rng = crate::random::seeded(100 + seed);
            let f = crate::random::random_poly(&sp, 2, &mut rng);
            let g = crate::random::random_poly(&sp, 2, &mut rng);
            let h = crate::random::random_poly(&sp, 2, &mut rng);
            let l = f.mul(&g).unwrap().mul(&h).unwrap();
            let r = f.mul(&g.mul(&h).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn graded_commutativity_random() {
        let sp = odd_pair_space();
        for seed in 0..6u64 {
            let mut rng = crate::random::seeded(200 + seed);
            let f = crate::random::random_homogeneous(&sp, 1, &mut rng);
            let g = crate::random::random_homogeneous(&sp, 1, &mut rng);
            let fg = f.mul(&g).unwrap();
            let gf = g.mul(&f).unwrap();
            // both odd of degree 1
            assert_eq!(fg, gf.neg());
        }
    }

    #[test]
    fn right_derivative_sign() {
        // (ab) ∂⃖_a = -b for odd a, b
        let sp = odd_pair_space();
        let a = GradedPoly::gen(&sp, 0);
        let b = GradedPoly::gen(&sp, 1);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.right_deriv(0), b.neg());
        assert_eq!(ab.right_deriv(1), a);
        assert_eq!(ab.left_deriv(0), b);
        assert_eq!(ab.left_deriv(1), a.neg());
    }

    #[test]
    fn bracket_degree_drops_by_form_degree() {
        let sp = odd_pair_space();
        let mut rng = crate::random::seeded(3);
        let f = crate::random::random_homogeneous(&sp, 2, &mut rng);
        let g = crate::random::random_homogeneous(&sp, 2, &mut rng);
        let br = poisson_bracket(&f, &g).unwrap();
        if !br.is_zero() {
            assert_eq!(
                br.homogeneous_degree().unwrap() as i64,
                f.homogeneous_degree().unwrap() as i64 + g.homogeneous_degree().unwrap() as i64
                    - sp.form_degree() as i64
            );
        }
    }

    #[test]
    fn odd_form_degree_rejected() {
        let err = GradedSpace::new(vec![Generator::new("x", 0)], 1).unwrap_err();
        assert_eq!(err, SpaceError::OddFormDegree(1));
    }

    #[test]
    fn mismatched_spaces_error() {
        let sp1 = darboux2();
        let sp2 = odd_pair_space();
        let x = GradedPoly::gen(&sp1, 0);
        let y = GradedPoly::gen(&sp2, 0);
        assert_eq!(x.mul(&y).unwrap_err(), PolyError::MismatchedSpaces);
    }

    #[test]
    fn matpoly_trace_and_product() {
        let sp = darboux2();
        let mut m = MatPoly::zero(&sp, vec![0, 0]);
        m.entries[0][1] = GradedPoly::gen(&sp, 0);
        m.entries[1][0] = GradedPoly::gen(&sp, 1);
        let m2 = m.mul(&m).unwrap();
        let tr = m2.trace().unwrap();
        let qp = GradedPoly::gen(&sp, 0).mul(&GradedPoly::gen(&sp, 1)).unwrap();
        assert_eq!(tr, qp.scale(&rat(2, 1)));
        assert!(m.check_homogeneous(0));
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let sp = darboux2();
        let mut p = GradedPoly::zero(&sp);
        p.add_term(Mono::from_exps(&[1, 0]), rat_int(2));
        p.add_term(Mono::from_exps(&[1, 0]), rat_int(-2));
        assert!(p.is_zero());
        assert_eq!(p.coeff(&Mono::from_exps(&[1, 0])), Rat::zero());
    }
}
