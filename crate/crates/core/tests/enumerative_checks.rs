use coble_core::arith::{bernoulli, binomial, Rational};
use coble_core::enumerative::{
    degree_from_zagier, derived_table, dual_degree_class, dual_degree_computation, finite_differences,
    quadric_dimension_count, ramification_degree, theta_degree_from_verlinde, verlinde_dimension,
    zagier_leading_coefficient, EnumError, PRINTED_TABLE,
};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn dual_degree_is_six() {
    assert_eq!(dual_degree_computation(), BigInt::from(6));
    let t = derived_table();
    assert_eq!(t, [-810, -162, -18, 0, 0, 0, 0, 0, 1]);
    for (r, v) in PRINTED_TABLE {
        assert_eq!(t[r], v);
    }
    let c = dual_degree_class();
    assert_eq!(c.coeffs[1], BigInt::from(-31));
}

#[test]
fn verlinde_sequence() {
    let dims: Vec<i64> = (0..=12).map(|k| verlinde_dimension(k).unwrap().nearest).collect();
    assert_eq!(
        dims,
        vec![1, 9, 45, 166, 504, 1332, 3168, 6930, 14157, 27313, 50193, 88452, 150280]
    );
    // Polynomial of degree 8: the 9th differences vanish along the whole range.
    assert!(finite_differences(&dims)[9].iter().all(|&d| d == 0));
}

#[test]
fn theta_degree_two() {
    let td = theta_degree_from_verlinde().unwrap();
    assert_eq!(td.degree, 2);
    assert_eq!(td.eighth_difference, 2);
    assert_eq!(td.ninth_difference, 0);
    // Leading coefficient 2/8! matches 3·v/8² from the Bernoulli route.
    let lead = Rational::new(td.eighth_difference, 40320);
    let v = zagier_leading_coefficient(1).unwrap();
    assert_eq!(lead, &Rational::new(3, 64) * &v);
    assert_eq!(degree_from_zagier(), Rational::integer(2));
}

#[test]
fn zagier_values() {
    assert_eq!(zagier_leading_coefficient(1).unwrap(), Rational::new(16, 3 * 5040));
    assert_eq!(zagier_leading_coefficient(2).unwrap(), Rational::new(19, 91216125));
    assert_eq!(zagier_leading_coefficient(3).unwrap(), Rational::new(2062, 38979295480125));
    assert_eq!(zagier_leading_coefficient(0), Err(EnumError::InvalidLevel(0)));
}

#[test]
fn small_counts() {
    assert_eq!(quadric_dimension_count(), 9);
    assert_eq!(binomial(10, 2), BigInt::from(45));
    assert_eq!(ramification_degree(), (3, 6));
    assert_eq!(BigInt::from(ramification_degree().1), dual_degree_computation());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // Σ_{k<n} C(n, k) B_k = 0 for n ≥ 2 with B₁ = −1/2.
    #[test]
    fn bernoulli_recurrence(n in 2usize..40) {
        let mut acc = Rational::integer(0);
        for k in 0..n {
            acc = &acc + &(&Rational::from_bigint(binomial(n as u64, k as u64)) * &bernoulli(k));
        }
        prop_assert_eq!(acc, Rational::integer(0));
    }

    #[test]
    fn odd_bernoulli_vanish(n in 1usize..30) {
        prop_assert_eq!(bernoulli(2 * n + 1), Rational::integer(0));
    }
}
