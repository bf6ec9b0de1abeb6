use coble_core::prym::{
    dihedral_identities, generated_group, genus_of_quotient, j_matrix, phi, polarization_report,
    prym_dimension_match, CoverParams, IntMatrix2, PrymError, T,
};
use proptest::prelude::*;

#[test]
fn dihedral_relations() {
    for c in dihedral_identities() {
        assert!(c.pass, "{}", c.name);
    }
}

#[test]
fn group_is_s3() {
    let g = generated_group();
    assert_eq!(g.len(), 6);
    let j = j_matrix();
    let elements: Vec<IntMatrix2> = vec![
        IntMatrix2::IDENTITY,
        T,
        T.pow(2),
        j,
        j * T,
        j * T.pow(2),
    ];
    for e in elements {
        assert!(g.contains(&e));
    }
    // Non-abelian.
    assert_ne!(T * j, j * T);
}

#[test]
fn polarization() {
    let rep = polarization_report().unwrap();
    assert_eq!(rep.beta, -1);
    assert_eq!(rep.det, 3);
    assert_eq!(rep.kernel_mod3, vec![[0, 0], [1, 2], [2, 1]]);
    assert!(rep.kernel_is_antidiagonal);
    assert!(rep.kernel_is_fix_t);
    assert_eq!(phi(-1) * T.pow(2), T.transpose() * phi(-1));
}

#[test]
fn genus_grid() {
    for n in (3..=9).step_by(2) {
        for g in 2..=6 {
            let genus = genus_of_quotient(CoverParams { n, g, t_size: 0 }).unwrap();
            assert_eq!(2 * genus, (n as i64 - 1) * (g as i64 - 1));
            assert!(prym_dimension_match(n, g).unwrap().pass);
        }
    }
}

#[test]
fn dimension_examples() {
    let m = prym_dimension_match(3, 2).unwrap();
    assert_eq!((m.prym_dim, m.twice_genus), (2, 2));
    assert_eq!(prym_dimension_match(7, 2).unwrap().prym_dim, 6);
    assert_eq!(prym_dimension_match(3, 5).unwrap().prym_dim, 8);
    assert!(matches!(prym_dimension_match(4, 2), Err(PrymError::InvalidParams(_))));
}

#[test]
fn even_covers() {
    let gp = |n, g, t| genus_of_quotient(CoverParams { n, g, t_size: t });
    assert_eq!(gp(2, 3, 2), Ok(2));
    assert_eq!(gp(4, 2, 0), Ok(3));
    assert!(matches!(gp(2, 2, 3), Err(PrymError::InvalidParams(_))));
    assert_eq!(gp(2, 2, 6), Err(PrymError::InadmissibleT { t: 6, genus: -1 }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn det_is_multiplicative(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9,
                             e in -9i64..9, f in -9i64..9, g in -9i64..9, h in -9i64..9) {
        let m = IntMatrix2::new(a, b, c, d);
        let n = IntMatrix2::new(e, f, g, h);
        prop_assert_eq!((m * n).det(), m.det() * n.det());
    }

    #[test]
    fn odd_genus_is_integral(k in 1u32..20, g in 2u32..30) {
        let n = 2 * k + 1;
        let genus = genus_of_quotient(CoverParams { n, g, t_size: 0 });
        prop_assert!(genus.is_ok());
    }
}
