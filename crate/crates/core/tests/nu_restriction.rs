use coble_core::arith::{ConstField, Eisenstein, Field};
use coble_core::invariants::{iota_act, sextic_basis};
use coble_core::nu::{
    table_charts, assemble_nu, assemble_nu_with, analyse, filter_replication, fixed_plane_charts, induced_plane_action,
    is_fixed_by_lift, k_eta_reps, matching_lifts, pull_back, rank_for_lifts, restrict_sextic, same_plane,
    symbolic_w, Coordinatization, Mode, Verdict,
};

#[test]
fn chart_counts() {
    assert_eq!(fixed_plane_charts(Mode::Annexe).unwrap().len(), 40);
    let all = fixed_plane_charts(Mode::AllLifts).unwrap();
    assert_eq!(all.len(), 120);
    assert!(all.iter().all(is_fixed_by_lift));
}

#[test]
fn table_charts_are_the_t0_lifts() {
    assert!(matching_lifts().unwrap().iter().all(|m| m == &[0]));
}

#[test]
fn distinct_lifts_give_distinct_planes() {
    let all = fixed_plane_charts(Mode::AllLifts).unwrap();
    for trio in all.chunks(3) {
        assert!(!same_plane(&trio[0], &trio[1]));
        assert!(!same_plane(&trio[1], &trio[2]));
        assert!(!same_plane(&trio[0], &trio[2]));
    }
}

#[test]
fn restrictions_are_k_eta_invariant() {
    let t = sextic_basis();
    for chart in table_charts().iter().step_by(7) {
        for a in k_eta_reps(&chart.eta) {
            let m = induced_plane_action(chart, &a).unwrap();
            for p in t.iter().step_by(5) {
                let r = chart.restrict(p);
                let moved = pull_back(&r, &m);
                // Invariant up to a cube root of unity.
                let ok = (0..3).any(|k| moved == r.scalar_mul(&Eisenstein::omega_pow(k)));
                assert!(ok, "{}", chart.label());
            }
        }
    }
}

#[test]
fn every_restriction_lies_in_the_plane_basis() {
    let t = sextic_basis();
    for chart in table_charts() {
        for p in &t {
            restrict_sextic(p, &chart).unwrap();
        }
    }
}

#[test]
fn filter_pipeline() {
    let rep = filter_replication().unwrap();
    assert_eq!(rep.counts, vec![39, 36, 33, 30]);
    assert_eq!(rep.diagonal_block_rank, 13);
    // With ω reduced exactly, T8 − T7 is also killed by every shift chart.
    assert_eq!(rep.sub_rank, 26);
    assert_eq!(rep.sub_extraction_rank, 26);
    assert_eq!(rep.sub_kernel.len(), 4);
    assert!(!rep.sub_kernel_matches);
}

#[test]
fn symbolic_w_replay() {
    let rep = symbolic_w::replicate().unwrap();
    assert_eq!(rep.counts, vec![39, 36, 33, 30]);
    assert_eq!((rep.rows, rep.cols), (144, 30));
    assert_eq!(rep.generic_rank, 26);
    assert_eq!(rep.candidates_in_kernel, [true; 4]);
}

#[test]
fn t7_and_t8_columns_coincide_on_shift_charts() {
    let t = sextic_basis();
    assert_eq!(iota_act(&t[6]), t[7]);
    for f in 0..4 {
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(symbolic_w::restrict(&t[6], f, u, v), symbolic_w::restrict(&t[7], f, u, v));
            }
        }
    }
}

#[test]
fn full_nu_on_table_charts() {
    let rep = analyse(&assemble_nu(Mode::Annexe).unwrap().matrix).unwrap();
    assert_eq!((rep.rows, rep.cols), (160, 43));
    assert_eq!(rep.rank, 39);
    assert_eq!(rep.transpose_rank, 39);
    assert_eq!(rep.kernel.len(), 4);
    assert_eq!(rep.verdict, Verdict::TextClaim);
    assert_eq!(rep.candidates_in_kernel, [true; 4]);
    assert!(rep.iota_anti_invariant);
    assert!(rep.rank_nullity);
}

#[test]
fn full_nu_all_lifts() {
    let rep = analyse(&assemble_nu(Mode::AllLifts).unwrap().matrix).unwrap();
    assert_eq!((rep.rows, rep.cols), (480, 43));
    assert_eq!(rep.rank, 39);
    assert_eq!(rep.verdict, Verdict::TextClaim);
}

#[test]
fn extraction_route_agrees() {
    let m = assemble_nu_with(Mode::Annexe, Coordinatization::Extraction).unwrap();
    let rep = analyse(&m.matrix).unwrap();
    assert_eq!(rep.rank, 39);
    assert_eq!(rep.verdict, Verdict::TextClaim);
}

#[test]
fn lift_choice_does_not_change_rank() {
    assert_eq!(rank_for_lifts(&[1; 40]).unwrap(), 39);
    let mixed: Vec<u8> = (0..40).map(|i| (i % 3) as u8).collect();
    assert_eq!(rank_for_lifts(&mixed).unwrap(), 39);
}

#[test]
fn first_diagonal_row_of_t1() {
    let t = sextic_basis();
    let c = restrict_sextic(&t[0], &table_charts()[0]).unwrap();
    assert_eq!(c[0], Eisenstein::one());
    assert!(c[1..].iter().all(Field::is_zero));
}
