use std::collections::HashMap;

use coble_core::arith::{ConstField, Eisenstein, Field, PrimeField, Rational};
use coble_core::hesse::{
    cusp_orbit_check, cusp_system_residuals, dual_sextic_closed_form, dual_sextic_from_cusp_system, duality_scan,
    eval_eisenstein, finite_field_duality_oracle, gradient_map, hesse_cubic_formal, hessian_determinant,
    inflection_orbit, projectively_equal, HesseError,
};
use coble_core::heisenberg::PlaneHeisenberg;
use coble_core::poly::{Poly, VariableId};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::integer(n)
}

#[test]
fn closed_form_solves_cusp_system_identically() {
    assert!(cusp_system_residuals().iter().all(Poly::is_zero));
}

#[test]
fn cusp_point_is_singular_with_triple_tangent() {
    let rep = cusp_orbit_check();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn inflection_orbit_on_curve_and_hessian() {
    let f = hesse_cubic_formal();
    let h = hessian_determinant();
    for l in [q(0), q(2), Rational::new(-7, 3)] {
        let orbit = inflection_orbit(&l).unwrap();
        assert_eq!(orbit.len(), 9);
        assert!(orbit.contains(&[Eisenstein::zero(), Eisenstein::one(), -Eisenstein::one()]));
        for pt in &orbit {
            assert!(eval_eisenstein(&f, &l, pt).is_zero());
            assert!(eval_eisenstein(&h, &l, pt).is_zero());
        }
    }
}

#[test]
fn cusps_lie_on_the_dual() {
    for l in [q(2), q(-1), Rational::new(1, 2)] {
        let dual = dual_sextic_closed_form(Some(&l)).poly;
        let le = Eisenstein::from_rational(l.clone());
        for pt in inflection_orbit(&l).unwrap() {
            let g = gradient_map(&le, &pt).unwrap();
            assert!(eval_eisenstein(&dual, &l, &g).is_zero());
        }
    }
}

#[test]
fn dual_is_plane_heisenberg_invariant() {
    let dual = dual_sextic_closed_form(None).poly.map_coeffs(|r| Eisenstein::from_rational(r.clone()));
    for g in PlaneHeisenberg::all() {
        let mut asg = HashMap::new();
        for b in 0..3u8 {
            let src = (b + g.x) % 3;
            let scale = Eisenstein::omega_pow(((g.t + g.xstar * b) % 3) as i64);
            asg.insert(VariableId::y(b), Poly::var(VariableId::y(src)).scalar_mul(&scale));
        }
        let moved = dual.substitute(&asg);
        assert!((0..3).any(|k| moved == dual.scalar_mul(&Eisenstein::omega_pow(k))));
    }
}

#[test]
fn dual_is_symmetric() {
    let dual = dual_sextic_closed_form(None).poly;
    let mut swap = HashMap::new();
    swap.insert(VariableId::y(0), Poly::var(VariableId::y(1)));
    swap.insert(VariableId::y(1), Poly::var(VariableId::y(0)));
    assert_eq!(dual.substitute(&swap), dual);
}

#[test]
fn oracle_grid() {
    // (λ, p, point count)
    let expected = [
        (2, 13, 18),
        (2, 31, 36),
        (2, 997, 1008),
        (3, 31, 27),
        (3, 997, 954),
        (5, 13, 18),
        (5, 997, 1053),
        (0, 13, 9),
    ];
    for (l, p, n) in expected {
        let rep = finite_field_duality_oracle(&q(l), p).unwrap();
        assert_eq!(rep.points, n, "λ={l} p={p}");
        assert_eq!(rep.singular_points, 0);
        assert!(rep.passed());
        rep.verify().unwrap();
    }
}

#[test]
fn singular_members_of_the_grid() {
    // 3³ ≡ 1 mod 13 and 5³ ≡ 1 mod 31: the cubic splits into three lines.
    for (l, p) in [(3, 13u64), (5, 31)] {
        assert!(matches!(finite_field_duality_oracle(&q(l), p), Err(HesseError::SingularMember { .. })));
        let rep = duality_scan(&q(l), &PrimeField::new(p).unwrap()).unwrap();
        assert_eq!(rep.points, 3 * p);
        assert_eq!(rep.singular_points, 3);
        assert!(rep.counterexamples.is_empty());
        assert!(!rep.hasse_ok);
    }
}

#[test]
fn wrong_sextic_is_caught() {
    // Perturbing a coefficient must produce counterexamples.
    let k = PrimeField::new(31).unwrap();
    let l = k.elem(2);
    let wrong = &dual_sextic_closed_form(Some(&q(2))).poly + &Poly::var(VariableId::y(0)).pow(6);
    let mut bad = 0;
    for a in 0..31 {
        for b in 0..31 {
            let pt = [k.one(), k.elem(a), k.elem(b)];
            let f = pt[0] * pt[0] * pt[0] + pt[1] * pt[1] * pt[1] + pt[2] * pt[2] * pt[2] - k.elem(6) * pt[0] * pt[1] * pt[2];
            if !f.is_zero() {
                continue;
            }
            let g = gradient_map(&l, &pt).unwrap();
            let v = wrong
                .evaluate_with(|r| k.reduce_rational(r), |var| g[(0..3u8).position(|i| var == VariableId::y(i)).unwrap()], k.zero())
                .unwrap();
            if !v.is_zero() {
                bad += 1;
            }
        }
    }
    assert!(bad > 0);
}

#[test]
fn degenerate_lambda() {
    assert_eq!(dual_sextic_from_cusp_system(&q(0)), Err(HesseError::SingularSystem(q(0))));
    assert_eq!(dual_sextic_from_cusp_system(&q(1)), Err(HesseError::SingularSystem(q(1))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn system_matches_closed_form(n in -40i64..40, d in 1i64..12) {
        let l = Rational::new(n, d);
        let closed = coble_core::hesse::closed_form_at(&l);
        match dual_sextic_from_cusp_system(&l) {
            Ok(sol) => prop_assert_eq!(sol, closed),
            // Among rationals the system degenerates only at λ = 0 and λ = 1.
            Err(HesseError::SingularSystem(_)) => prop_assert!(n == 0 || n == d),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn gradient_of_base_point(n in -40i64..40, d in 1i64..12) {
        let l = Rational::new(n, d);
        let g = gradient_map(&l, &[q(0), q(1), q(-1)]).unwrap();
        prop_assert!(projectively_equal(&g, &[l, q(1), q(1)]));
    }
}
