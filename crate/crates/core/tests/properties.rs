use coble_core::arith::{Eisenstein, ExactMatrix, PrimeField, Rational};
use coble_core::heisenberg::HeisenbergElement;
use coble_core::poly::{Monomial, Poly, VariableId};
use coble_core::properties::{
    action_composition, eigen_multiplicity, euler, field_axioms, leibniz, norm_multiplicative, rank_nullity,
    run_suite,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d))
}

fn eisenstein() -> impl Strategy<Value = Eisenstein> {
    (rational(), rational()).prop_map(|(a, b)| Eisenstein::new(a, b))
}

fn element() -> impl Strategy<Value = HeisenbergElement> {
    (0u8..3, 0u8..3, 0u8..3, 0u8..3, 0u8..3).prop_map(|(t, a, b, c, d)| HeisenbergElement::new(t, [a, b], [c, d]))
}

fn theta_poly(d: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec((prop::collection::vec((0u8..3, 0u8..3), d), -6i64..6), 1..6).prop_map(|terms| {
        let mut p = Poly::zero();
        for (idx, c) in terms {
            p.add_term(Monomial::theta_product(&idx), Rational::integer(c));
        }
        p
    })
}

fn matrix() -> impl Strategy<Value = ExactMatrix<Rational>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![Just(Rational::integer(0)), rational()], c), r)
            .prop_map(|rows| ExactMatrix::from_rows(rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rational_field(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(field_axioms(&a, &b, &c), Ok(()));
    }

    #[test]
    fn eisenstein_field(a in eisenstein(), b in eisenstein(), c in eisenstein()) {
        prop_assert_eq!(field_axioms(&a, &b, &c), Ok(()));
        prop_assert_eq!(norm_multiplicative(&a, &b), Ok(()));
    }

    #[test]
    fn prime_field(p in prop::sample::select(vec![7u64, 13, 31, 997]), a in 0i64..1000, b in 0i64..1000, c in 0i64..1000) {
        let k = PrimeField::new(p).unwrap();
        prop_assert_eq!(field_axioms(&k.elem(a), &k.elem(b), &k.elem(c)), Ok(()));
    }

    #[test]
    fn leibniz_rule(p in theta_poly(3), q in theta_poly(2), v in 0usize..9) {
        prop_assert_eq!(leibniz(&p, &q, VariableId::from_index(v)), Ok(()));
    }

    #[test]
    fn euler_identity(d in 1usize..5, seed in theta_poly(4)) {
        // Truncate to the requested degree by taking derivatives.
        let mut p = seed;
        for _ in d..4 {
            p = p.partial_derivative(VariableId::theta(0, 0)) + p.partial_derivative(VariableId::theta(1, 2));
        }
        prop_assert_eq!(euler(&p, d as u32), Ok(()));
    }

    #[test]
    fn action_is_a_homomorphism(g in element(), h in element(), p in theta_poly(3)) {
        let pe = p.map_coeffs(|c| Eisenstein::from_rational(c.clone()));
        prop_assert_eq!(action_composition(&g, &h, &pe), Ok(()));
    }

    #[test]
    fn eigenvalues_have_multiplicity_three(g in element()) {
        prop_assert_eq!(eigen_multiplicity(&g), Ok(()));
    }

    #[test]
    fn rank_plus_nullity(m in matrix()) {
        prop_assert_eq!(rank_nullity(&m), Ok(()));
    }
}

#[test]
fn seeded_suite_passes() {
    for outcome in run_suite(7, 200) {
        assert!(outcome.passed(), "{}: {:?}", outcome.name, outcome.first_failure);
        assert_eq!(outcome.cases, 200);
    }
}
