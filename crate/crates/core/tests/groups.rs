use std::f64::consts::{FRAC_1_SQRT_2, PI};

use cohom1_core::groups::{
    self, catalog, in_subgroup, quat_exp, weyl_pair, weyl_rep, DiagramParams, GElem, GroupDiagram, IdentityComponent,
    Quat, MEMBER_TOL,
};
use proptest::prelude::*;

fn diagram(name: &str) -> GroupDiagram {
    let params = match name {
        "E_p" => DiagramParams::with_p(10),
        "P_k" | "Q_k" => DiagramParams::with_k(2),
        _ => DiagramParams::default(),
    };
    catalog(name, &params).unwrap()
}

fn close(a: Quat, b: Quat) -> bool {
    a.max_abs_diff(b) < 1e-12
}

#[test]
fn exp_quarter_half_and_eighth_turns() {
    assert!(close(quat_exp(Quat::I, PI / 2.0).unwrap(), Quat::I));
    assert!(close(quat_exp(Quat::J, PI).unwrap(), -Quat::ONE));
    assert!(close(quat_exp(Quat::I, PI / 4.0).unwrap(), Quat::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0)));
}

#[test]
fn exp_rejects_bad_axes() {
    assert!(quat_exp(Quat::ONE, 1.0).is_err());
    assert!(quat_exp(Quat::new(0.0, 1.0, 1.0, 0.0), 1.0).is_err());
}

#[test]
fn delta_q_membership() {
    let dq = diagram("S7").h;
    assert_eq!(dq.order(), 8);
    assert!(in_subgroup(GElem::new(Quat::I, Quat::I), &dq, 1e-12));
    assert!(in_subgroup(GElem::new(-Quat::K, -Quat::K), &dq, 1e-12));
    assert!(!in_subgroup(GElem::new(Quat::ONE, -Quat::ONE), &dq, 1e-12));
    let e = quat_exp(Quat::I, PI / 4.0).unwrap();
    assert!(!in_subgroup(GElem::new(e, e), &dq, 1e-12));
}

#[test]
fn s7_diagram() {
    let d = diagram("S7");
    let km = d.k_minus.circle_group().unwrap();
    let kp = d.k_plus.circle_group().unwrap();
    assert_eq!((km.axis_l, km.slopes()), (Quat::I, (-3, 1)));
    assert_eq!((kp.axis_l, kp.slopes()), (Quat::J, (1, 1)));
    assert_eq!(d.l, PI / 6.0);
}

#[test]
fn w2_diagram() {
    let d = diagram("W2");
    assert_eq!(d.h.order(), 8);
    assert!(d.h.contains(GElem::new(Quat::J, Quat::J), 1e-12));
    assert!(d.h.contains(GElem::new(Quat::ONE, -Quat::ONE), 1e-12));
    assert!(!d.h.contains(GElem::new(Quat::I, Quat::I), 1e-12));
    assert_eq!(d.k_minus.circle_group().unwrap().slopes(), (1, -2));
    let kp = d.k_plus.circle_group().unwrap();
    assert_eq!((kp.axis_l, kp.slopes()), (Quat::J, (1, 1)));
    assert_eq!(d.l, PI / 4.0);
}

#[test]
fn identifications_are_labels() {
    let q1 = catalog("Q_k", &DiagramParams::with_k(1)).unwrap();
    assert_eq!(q1.label.as_deref(), Some("W2"));
    let p1 = catalog("P_k", &DiagramParams::with_k(1)).unwrap();
    assert_eq!(p1.label.as_deref(), Some("S7"));
    assert_eq!(catalog("Q_k", &DiagramParams::with_k(2)).unwrap().label, None);
    for name in ["P_k", "Q_k", "R"] {
        assert_eq!(diagram(name).l, 1.0);
    }
}

#[test]
fn catalog_rejects_bad_input() {
    assert!(catalog("S5", &DiagramParams::default()).is_err());
    assert!(catalog("E_p", &DiagramParams::default()).is_err());
    assert!(catalog("E_p", &DiagramParams::with_p(0)).is_err());
    assert!(catalog("P_k", &DiagramParams::with_k(0)).is_err());
}

#[test]
fn catalog_lengths() {
    let expect = [("S4", 3.0), ("B7", 3.0), ("CP2", 4.0), ("W2", 4.0), ("S7", 6.0), ("E_p", 2.0)];
    for (name, n) in expect {
        assert!((diagram(name).l - PI / n).abs() < 1e-15, "{name}");
    }
}

#[test]
fn weyl_representatives() {
    let s4 = diagram("S4");
    let w = weyl_rep(&s4.k_minus, &s4.h).unwrap();
    let e = quat_exp(Quat::I, PI / 4.0).unwrap();
    assert!(close(w.left, e) && close(w.right, Quat::ONE), "{w}");

    let s7 = diagram("S7");
    let w = weyl_rep(&s7.k_minus, &s7.h).unwrap();
    assert!(close(w.left, -e) && close(w.right, e), "{w}");

    let ipow = |n: i64| [Quat::ONE, Quat::I, -Quat::ONE, -Quat::I][n.rem_euclid(4) as usize];
    for p in 1..=12 {
        let d = catalog("E_p", &DiagramParams::with_p(p)).unwrap();
        let (wm, wp) = weyl_pair(&d).unwrap();
        assert_eq!(wm, GElem::new(-Quat::ONE, -Quat::ONE));
        assert!(close(wp.left, ipow(p + 1)) && close(wp.right, ipow(p)), "p={p}: {wp}");
    }
}

#[test]
fn weyl_orders() {
    let expect = [("S4", 6), ("CP2", 4), ("S7", 12), ("B7", 6), ("W2", 8)];
    for (name, n) in expect {
        assert_eq!(groups::weyl_order(&diagram(name)).unwrap(), n, "{name}");
    }
    for p in 1..=20 {
        let d = catalog("E_p", &DiagramParams::with_p(p)).unwrap();
        assert_eq!(groups::weyl_order(&d).unwrap(), 4, "p={p}");
    }
}

#[test]
fn weyl_elements_square_into_h() {
    for name in groups::CATALOG_NAMES {
        let d = diagram(name);
        let (wm, wp) = weyl_pair(&d).unwrap();
        for (end, w, k) in [("minus", wm, &d.k_minus), ("plus", wp, &d.k_plus)] {
            if matches!(k.identity_component, IdentityComponent::Diagonal3Sphere) {
                continue;
            }
            assert!(d.h.contains((w * w).snapped(), 1e-9), "{name} {end}");
            assert!(!d.h.contains(w, 1e-9), "{name} {end}");
            assert!(k.contains(w, 1e-9), "{name} {end}");
        }
    }
}

#[test]
fn translation_has_exact_order() {
    for name in ["S4", "CP2", "S7", "B7", "E_p", "W2"] {
        let d = diagram(name);
        let half = groups::weyl_order(&d).unwrap() / 2;
        let (wm, wp) = weyl_pair(&d).unwrap();
        let a = (wp * wm).snapped();
        for n in 1..half {
            assert!(!d.h.contains(a.pow(n).snapped(), 1e-9), "{name} n={n}");
        }
        assert!(d.h.contains(a.pow(half).snapped(), 1e-9), "{name}");
    }
}

#[test]
fn finite_subgroups_are_groups() {
    for name in groups::CATALOG_NAMES {
        let h = diagram(name).h;
        assert!(h.contains(GElem::IDENTITY, 1e-12), "{name}");
        for &a in &h.elements {
            assert!(h.contains(a.inverse().snapped(), 1e-12), "{name}");
            for &b in &h.elements {
                assert!(h.contains((a * b).snapped(), 1e-12), "{name}");
            }
        }
    }
}

#[test]
fn diagrams_are_well_formed() {
    for name in groups::CATALOG_NAMES {
        let d = diagram(name);
        assert!(d.h_in_both(MEMBER_TOL), "{name}");
        assert!(d.l > 0.0);
        assert!(d.k_minus.reps_normalize_identity(1e-9), "{name}");
        assert!(d.k_plus.reps_normalize_identity(1e-9), "{name}");
    }
}

fn quat() -> impl Strategy<Value = Quat> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b, c, d)| Quat::new(a, b, c, d))
}

fn unit_axis() -> impl Strategy<Value = Quat> {
    (0.0..PI, 0.0..2.0 * PI).prop_map(|(th, ph)| Quat::new(0.0, th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()))
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in quat(), b in quat(), c in quat()) {
        prop_assert!(((a * b) * c).max_abs_diff(a * (b * c)) < 1e-12);
    }

    #[test]
    fn conjugation_reverses_products(a in quat(), b in quat()) {
        prop_assert!((a * b).conj().max_abs_diff(b.conj() * a.conj()) < 1e-12);
    }

    #[test]
    fn norm_is_multiplicative(a in quat(), b in quat()) {
        prop_assert!(((a * b).norm2() - a.norm2() * b.norm2()).abs() < 1e-11);
    }

    #[test]
    fn exp_is_unit_and_additive(axis in unit_axis(), s in -10.0..10.0f64, t in -10.0..10.0f64) {
        let a = quat_exp(axis, s).unwrap();
        prop_assert!((a.norm2() - 1.0).abs() < 1e-12);
        let b = quat_exp(axis, t).unwrap();
        prop_assert!((a * b).max_abs_diff(quat_exp(axis, s + t).unwrap()) < 1e-12);
    }

    #[test]
    fn inverse_is_conjugate_over_norm(a in quat()) {
        prop_assume!(a.norm2() > 1e-3);
        prop_assert!((a * a.inverse()).max_abs_diff(Quat::ONE) < 1e-12);
    }
}
