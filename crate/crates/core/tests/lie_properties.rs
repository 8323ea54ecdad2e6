use std::f64::consts::{FRAC_PI_2, PI};

use liediam::constants::{alpha, contraction_constant};
use liediam::lie::{
    distance, exp_map, haar_sample, log_map, op_norm_algebra, op_norm_group,
    op_norm_group_eigenphases, random_algebra_with_norm, rng_from_seed, GroupElement, GroupKind,
};
use liediam::small_subgroups::commutator;
use proptest::prelude::*;

fn kinds() -> impl Strategy<Value = GroupKind> {
    prop_oneof![
        Just(GroupKind::su(2)),
        Just(GroupKind::su(3)),
        Just(GroupKind::so(3)),
        Just(GroupKind::so(4)),
        Just(GroupKind::product(vec![GroupKind::su(2), GroupKind::so(3)])),
    ]
}

fn ball(kind: &GroupKind, radius: f64, seed: u64) -> GroupElement {
    let mut rng = rng_from_seed(seed);
    exp_map(&random_algebra_with_norm(kind, radius, &mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_conjugation_and_inverse_invariant(kind in kinds(), a in any::<u64>(), b in any::<u64>()) {
        let g = haar_sample(&kind, a);
        let h = haar_sample(&kind, b);
        let n = op_norm_group(&g);
        let conj = &(&h * &g) * &h.inverse();
        prop_assert!((op_norm_group(&conj) - n).abs() < 1e-9);
        prop_assert!((op_norm_group(&g.inverse()) - n).abs() < 1e-9);
        prop_assert!((0.0..=PI + 1e-12).contains(&n));
    }

    #[test]
    fn two_norm_formulas_agree(kind in kinds(), seed in any::<u64>()) {
        let g = haar_sample(&kind, seed);
        prop_assert!((op_norm_group(&g) - op_norm_group_eigenphases(&g)).abs() < 1e-8);
    }

    #[test]
    fn distance_is_a_bi_invariant_metric(kind in kinds(), s in any::<[u64; 4]>()) {
        let [a, b, c, x] = s.map(|i| haar_sample(&kind, i));
        let dab = distance(&a, &b).unwrap();
        prop_assert!(distance(&a, &a).unwrap() < 1e-7);
        prop_assert!((dab - distance(&b, &a).unwrap()).abs() < 1e-9);
        prop_assert!(distance(&a, &c).unwrap() <= dab + distance(&b, &c).unwrap() + 1e-9);
        prop_assert!((distance(&(&x * &a), &(&x * &b)).unwrap() - dab).abs() < 1e-9);
        prop_assert!((distance(&(&a * &x), &(&b * &x)).unwrap() - dab).abs() < 1e-9);
    }

    #[test]
    fn exp_preserves_norm_inside_the_log_domain(kind in kinds(), r in 0.0..(2.0 * PI / 3.0 - 0.05), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let x = random_algebra_with_norm(&kind, r, &mut rng);
        let g = exp_map(&x);
        prop_assert!((op_norm_algebra(&x) - r).abs() < 1e-9);
        prop_assert!((op_norm_group(&g) - r).abs() < 1e-8);
        let y = log_map(&g).unwrap();
        prop_assert!((y.matrix() - x.matrix()).camax() < 1e-8);
    }

    #[test]
    fn central_phases_do_not_change_the_norm(d in 2usize..5, seed in any::<u64>(), phase in 0.0..(2.0 * PI)) {
        let g = haar_sample(&GroupKind::su(d), seed);
        prop_assert!((op_norm_group(&g) - op_norm_group(&g.with_global_phase(phase))).abs() < 1e-10);
    }

    #[test]
    fn commutators_contract_below_alpha(
        so3 in any::<bool>(),
        rh in 0.0..(FRAC_PI_2 - 0.01),
        rk in 0.0..(alpha() - 0.01),
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let kind = if so3 { GroupKind::so(3) } else { GroupKind::su(2) };
        let h = ball(&kind, rh, a);
        let k = ball(&kind, rk, b);
        let c = contraction_constant(op_norm_group(&k)).unwrap();
        prop_assert!(c < 1.0);
        let hk = commutator(&h, &k).unwrap();
        prop_assert!(op_norm_group(&hk) <= c * op_norm_group(&h) + 1e-9);
    }
}

#[test]
fn identity_has_zero_norm_and_antipode_has_norm_pi() {
    for kind in [GroupKind::su(2), GroupKind::so(3), GroupKind::so(4)] {
        assert!(op_norm_group(&GroupElement::identity(&kind)) < 1e-12);
    }
    let half_turn = ball(&GroupKind::so(3), PI - 1e-9, 1);
    assert!((op_norm_group(&half_turn) - PI).abs() < 1e-6);
}
