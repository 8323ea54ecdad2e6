use liediam::constants::solve_beta;
use liediam::lie::{op_norm_group, rotation_so3, GroupElement, GroupKind};
use liediam::universality::{
    ball_net, coverage_check, generate_words, test_universality, GateSet, UniversalityConfig, Verdict,
};

fn beta() -> f64 {
    solve_beta(1e-12).unwrap().beta
}

#[test]
fn identity_gate_set_is_not_universal_with_order_one() {
    for kind in [GroupKind::so(3), GroupKind::su(2)] {
        let gates = GateSet::identity(&kind).unwrap();
        let store = generate_words(&gates, 3, 1e-9).unwrap();
        assert_eq!(store.len(), 1);
        assert!(store.closure_detected());
        let report = test_universality(
            &gates,
            &UniversalityConfig { max_length: 3, spacing: 0.05, spot_checks: 0, ..Default::default() },
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::NotUniversal);
        assert_eq!(report.group_order, Some(1));
    }
}

#[test]
fn dense_rotations_never_close() {
    let store = generate_words(&GateSet::two_rotations(), 8, 1e-9).unwrap();
    assert!(!store.closure_detected());
    assert!(store.level_sizes().windows(2).all(|w| w[1] > w[0]));
    let sample: Vec<usize> = (0..store.len()).step_by(97).collect();
    assert!(store.word_reproduction_error(&sample) <= 1e-8);
}

#[test]
fn net_points_lie_in_the_ball() {
    let r = 2.0 * beta();
    let net = ball_net(&GroupKind::so(3), r, 0.05).unwrap();
    assert!(net.iter().all(|p| op_norm_group(p) <= r + 1e-9));
    let trivial = ball_net(&GroupKind::so(3), 0.0, 0.05).unwrap();
    assert_eq!(trivial.len(), 1);
    assert!(op_norm_group(&trivial[0]) < 1e-15);
}

#[test]
fn identity_alone_leaves_far_points_uncovered() {
    let b = beta();
    let store = generate_words(&GateSet::identity(&GroupKind::so(3)).unwrap(), 1, 1e-9).unwrap();
    let p = rotation_so3(2, 0.24);
    let cov = coverage_check(&[GroupElement::identity(&GroupKind::so(3)), p], &store, b, 0.02).unwrap();
    assert_eq!(cov.covered, 1);
    assert!((cov.max_distance - 0.24).abs() < 1e-9);
    assert!(cov.certified_margin < 0.0);
}

#[test]
fn icosahedral_words_miss_most_of_the_ball() {
    let b = beta();
    let store = generate_words(&GateSet::icosahedral(), 12, 1e-9).unwrap();
    assert_eq!(store.group_order(), Some(60));
    let net = ball_net(&GroupKind::so(3), 2.0 * b, 0.02).unwrap();
    let cov = coverage_check(&net, &store, b, 0.02).unwrap();
    assert!(cov.covered < cov.net_size);
    // The identity is the only group element within 3β of the identity.
    let near: Vec<f64> = store.norms().into_iter().filter(|&n| n < 3.0 * b).collect();
    assert_eq!(near, vec![0.0]);
}

#[test]
fn spacing_must_stay_below_beta() {
    let cfg = UniversalityConfig { spacing: 0.2, ..Default::default() };
    assert!(test_universality(&GateSet::icosahedral(), &cfg).is_err());
}
