use std::f64::consts::PI;

use cohom1_core::oracles::{
    b7_action_norms, b7_gram, eschenburg_oracle, eschenburg_v_norm2_formula, off_block_max, s4_action_norms,
};
use cohom1_core::profiles::{eval_profile, Space};
use proptest::prelude::*;

#[test]
fn s4_oracle_examples() {
    assert!(s4_action_norms(0.0)[0].abs() < 1e-15);
    assert!((s4_action_norms(PI / 2.0)[0] - 4.0).abs() < 1e-13);
    let f = s4_action_norms(PI / 6.0);
    for (x, y) in f.iter().zip([1.0, 1.0, 4.0]) {
        assert!((x - y).abs() < 1e-13, "{f:?}");
    }
}

#[test]
fn b7_oracle_examples() {
    let (f, g, h) = b7_action_norms(0.0);
    assert!((f - 0.2).abs() < 1e-14 && (g - 1.8).abs() < 1e-14 && (h - 0.6).abs() < 1e-14);
    let (_, _, h) = b7_action_norms(PI / 2.0);
    assert!((h + 0.2).abs() < 1e-14);
}

#[test]
fn eschenburg_oracle_examples() {
    for p in [1, 2, 10] {
        for eps in [0.5, 0.9] {
            let r = eschenburg_oracle(p, eps, 0.0).unwrap();
            assert!((r.v_norm2 - 3.0 * eps).abs() < 1e-13);
            if p == 1 {
                assert!((r.blocks.f[0] - eps).abs() < 1e-13);
            }
        }
    }
    assert!(eschenburg_oracle(0, 0.5, 0.1).is_err());
    assert!(eschenburg_oracle(2, 0.0, 0.1).is_err());
}

proptest! {
    #[test]
    fn s4_oracle_matches_closed_form(x in 0.0..1.0f64) {
        let t = x * PI / 3.0;
        let o = s4_action_norms(t);
        let c = eval_profile(Space::S4, None, None, t).unwrap();
        for i in 0..3 {
            prop_assert!((o[i] - c.f[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn b7_oracle_matches_closed_form(x in 0.0..1.0f64) {
        let t = x * PI / 3.0;
        let (f, g, h) = b7_action_norms(t);
        let c = eval_profile(Space::B7, None, None, t).unwrap();
        prop_assert!((f - c.f[0]).abs() < 1e-12 && (g - c.g[0]).abs() < 1e-12 && (h - c.h[0]).abs() < 1e-12);
        prop_assert!((f + g - 2.0 * (5.0 + 4.0 * t.sin().powi(2)) / 5.0).abs() < 1e-12);
        prop_assert!(off_block_max(&b7_gram(t)) < 1e-12);
    }

    #[test]
    fn eschenburg_oracle_matches_closed_form(
        p in prop::sample::select(vec![1i64, 2, 3, 10]),
        eps in prop::sample::select(vec![0.3, 0.5, 0.9]),
        x in 0.0..1.0f64,
    ) {
        let t = x * PI / 2.0;
        let r = eschenburg_oracle(p, eps, t).unwrap();
        let c = eval_profile(Space::Ep, Some(p), Some(eps), t).unwrap();
        prop_assert!(r.blocks.max_abs_diff(&c) < 1e-10);
        prop_assert!((r.v_norm2 - eschenburg_v_norm2_formula(p, eps, t)).abs() < 1e-12);
        prop_assert!(r.horizontality < 1e-12);
        prop_assert!((r.blocks.g[1] - eps).abs() < 1e-12);
        prop_assert!(off_block_max(&r.gram) < 1e-12);
    }
}
