use approx::assert_relative_eq;
use proptest::prelude::*;

use darboux_thermo::actions::{fermi_action, planck_action, thermal_action, vacuum_action, Action, ActionModel, ZeroMode};
use darboux_thermo::darboux::{DarbouxFamily, FamilyOptions, Interval, Lambda};
use darboux_thermo::numerics::{integrate_adaptive, stable_expm1_ratio};

fn hbar() -> impl Strategy<Value = f64> {
    0.25f64..4.0
}

proptest! {
    #[test]
    fn fermi_action_is_odd(x in -50.0f64..50.0, h in hbar()) {
        prop_assert_eq!(fermi_action(-x, h), -fermi_action(x, h));
    }

    #[test]
    fn planck_is_vacuum_plus_thermal(x in 0.01f64..50.0, h in hbar()) {
        let p = planck_action(x, h).unwrap();
        let parts = vacuum_action(h) + thermal_action(x, h).unwrap();
        assert_relative_eq!(p, parts, max_relative = 1e-14);
    }

    #[test]
    fn planck_times_fermi_is_constant(x in 0.01f64..30.0, h in hbar()) {
        let prod = planck_action(x, h).unwrap() * fermi_action(x, h);
        assert_relative_eq!(prod, 0.25 * h * h, max_relative = 1e-13);
    }

    #[test]
    fn log_derivative_is_ratio(a in 0.1f64..3.0, b in -3.0f64..3.0, x in -20.0f64..20.0, h in hbar()) {
        let m = ZeroMode::general(a, b, h).unwrap();
        let w = m.value(x);
        prop_assume!(w.abs() > 1e-6 * m.derivative(x).abs().max(1.0));
        assert_relative_eq!(m.log_derivative(x).unwrap(), m.derivative(x) / w, max_relative = 1e-9, epsilon = 1e-12);
    }

    #[test]
    fn scale_leaves_actions_unchanged(s in prop_oneof![-100.0f64..-0.01, 0.01f64..100.0], x in 0.0f64..10.0) {
        let m = ZeroMode::symmetric(1.0).unwrap();
        let scaled = m.with_scale(s).unwrap();
        prop_assert_eq!(m.log_derivative(x).unwrap(), scaled.log_derivative(x).unwrap());
        // I0 of the symmetric mode is odd, so lambda = 1 is only admissible for x > -0.9.
        let d = Interval::new(0.0, 10.0).unwrap();
        let f1 = DarbouxFamily::new(m, Lambda::Finite(1.0), d, FamilyOptions::default()).unwrap();
        let f2 = DarbouxFamily::new(scaled, Lambda::Finite(1.0), d, FamilyOptions::default()).unwrap();
        prop_assert_eq!(f1.value(x).unwrap(), f2.value(x).unwrap());
    }

    #[test]
    // Beyond hbar x ~ 36 the thermal part drops below one ulp of hbar/2.
    fn planck_decreases(x in 0.01f64..6.0, dx in 0.01f64..3.0, h in hbar()) {
        prop_assert!(planck_action(x + dx, h).unwrap() < planck_action(x, h).unwrap());
    }

    #[test]
    fn quadrature_is_additive(a in -3.0f64..0.0, b in 0.0f64..3.0, c in 3.0f64..6.0) {
        let f = |y: f64| (0.5 * y).cosh().powi(2) + y.sin();
        let ab = integrate_adaptive(f, a, b, 1e-12).unwrap().value;
        let bc = integrate_adaptive(f, b, c, 1e-12).unwrap().value;
        let ac = integrate_adaptive(f, a, c, 1e-12).unwrap().value;
        assert_relative_eq!(ab + bc, ac, max_relative = 1e-12, epsilon = 1e-12);
    }

    #[test]
    fn expm1_ratio_reflection(u in prop_oneof![-600.0f64..-1e-6, 1e-6f64..600.0]) {
        let s = stable_expm1_ratio(u).unwrap() + stable_expm1_ratio(-u).unwrap();
        assert_relative_eq!(s, -1.0, max_relative = 1e-9);
    }

    #[test]
    fn family_satisfies_partner_equation(lambda in 0.5f64..100.0, x in 0.2f64..5.0, h in hbar()) {
        let seed = ActionModel::planck(h).unwrap();
        let fam = DarbouxFamily::new(
            ZeroMode::planck(h).unwrap(),
            Lambda::Finite(lambda),
            Interval::new(0.1, 5.5).unwrap(),
            FamilyOptions::default(),
        )
        .unwrap();
        let fp = seed.value(x).unwrap();
        let v2 = -seed.derivative(x).unwrap() + fp * fp;
        let f = fam.value(x).unwrap();
        let r = -fam.derivative(x).unwrap() + f * f - v2;
        prop_assert!(r.abs() <= 1e-9 * v2.abs().max(1.0), "residual {}", r);
    }

    #[test]
    fn hbar_scaling(x in 0.01f64..20.0, h in hbar()) {
        assert_relative_eq!(planck_action(x, h).unwrap(), h * planck_action(h * x, 1.0).unwrap(), max_relative = 1e-13);
        assert_relative_eq!(fermi_action(x, h), h * fermi_action(h * x, 1.0), max_relative = 1e-13);
    }

    #[test]
    fn vacuum_family_stays_between_branches(lambda in 1.01f64..1e6, x in -20.0f64..20.0) {
        let fam = DarbouxFamily::new(
            ZeroMode::vacuum(1.0).unwrap(),
            Lambda::Finite(lambda),
            Interval::new(-20.0, 20.0).unwrap(),
            FamilyOptions::default(),
        )
        .unwrap();
        let f = fam.value(x).unwrap();
        prop_assert!((-0.5..=0.5).contains(&f), "f = {}", f);
    }
}
