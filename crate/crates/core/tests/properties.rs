use std::f64::consts::PI;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use salpeter_wigner::field::{Definition, FieldSpec, FormChoice};
use salpeter_wigner::grid::{make_grid, Method, WignerField};
use salpeter_wigner::packets::{Packet, PacketKind};
use salpeter_wigner::params::{PhaseSpacePoint, PhysicsParams};
use salpeter_wigner::specfun::{k0, k012, k1, k2, BesselOrder, Identity};
use salpeter_wigner::transport::{
    continuity_residual, exact_density_current, transport_residual_zm, zm_massless_density_current, CurrentPair,
    H_FIRST,
};
use salpeter_wigner::wigner_std::{nonrel_wigner, std_wigner_raw};
use salpeter_wigner::wigner_zm::{
    relativistic_sum_1d, relativistic_sum_3d, zm_closed_form, zm_wigner, ZmClosed, ZmForm,
};

fn massless(a: f64) -> PhysicsParams {
    PhysicsParams::massless(a).unwrap()
}

fn massive(m: f64, a: f64) -> PhysicsParams {
    PhysicsParams::new(m, a).unwrap()
}

fn any_kind() -> impl Strategy<Value = PacketKind> {
    prop::sample::select(PacketKind::ALL.to_vec())
}

fn params_for(kind: PacketKind, m: f64, a: f64) -> PhysicsParams {
    if kind.is_massless() {
        massless(a)
    } else {
        massive(m, a)
    }
}

proptest! {
    #[test]
    fn grid_spacing_is_consistent(lo in -50.0..50.0f64, span in 1e-3..100.0f64, n in 2usize..400) {
        let g = make_grid(lo, lo + span, n, -1.0, 1.0, 3, 0.0).unwrap();
        let recon = (g.x.n - 1) as f64 * g.x.step();
        prop_assert!((recon - (g.x.max - g.x.min)).abs() <= 4.0 * f64::EPSILON * span.max(lo.abs()));
        prop_assert_eq!(g.x.node(n - 1), g.x.max);
    }

    #[test]
    fn field_rejects_non_finite(bad in prop::sample::select(vec![f64::NAN, f64::INFINITY, f64::NEG_INFINITY]), at in 0usize..6) {
        let g = make_grid(0.0, 1.0, 2, 0.0, 1.0, 3, 0.0).unwrap();
        let mut values = vec![0.1; 6];
        values[at] = bad;
        prop_assert!(WignerField::new(g, Method::ZmClosed, values, vec![0.0; 6], vec![false; 6]).is_err());
    }

    #[test]
    fn bessel_recurrence_and_monotonicity(z in 0.01..100.0f64, dz in 1e-6..1.0f64) {
        let (a0, a1, a2) = k012(z);
        prop_assert!((a2 - a0 - 2.0 / z * a1).abs() <= 1e-10 * a2);
        prop_assert!(0.0 < a0 && a0 < a1 && a1 < a2);
        let (b0, b1, b2) = k012(z + dz);
        prop_assert!(b0 < a0 && b1 < a1 && b2 < a2 && b0 > 0.0);
    }

    #[test]
    fn evolution_is_unitary(kind in any_kind(), p in -10.0..10.0f64, t in -20.0..20.0f64, m in 0.1..3.0f64, a in 0.1..3.0f64) {
        let packet = Packet::new(kind, params_for(kind, m, a)).unwrap();
        let now = packet.momentum(p, t).norm();
        let then = packet.momentum(p, 0.0).norm();
        prop_assert!((now - then).abs() <= 1e-14 * then.max(1e-300));
    }

    #[test]
    fn massive_momentum_tends_to_massless(p in -5.0..5.0f64, a in 0.2..3.0f64) {
        let heavy = Packet::new(PacketKind::MassiveLorentzian, massive(1e-4, a)).unwrap();
        let light = Packet::new(PacketKind::MasslessLorentzian, massless(a)).unwrap();
        prop_assert!((heavy.momentum(p, 0.0) - light.momentum(p, 0.0)).norm() <= 1e-3);
    }

    #[test]
    fn composed_momentum_is_on_shell(p1 in -50.0..50.0f64, p2 in -50.0..50.0f64, m in 1e-3..10.0f64) {
        let q = relativistic_sum_1d(p1, p2, m).unwrap();
        let mid = 0.5 * ((p1 / m).asinh() + (p2 / m).asinh());
        let energy = m * mid.cosh();
        prop_assert!((q.hypot(m) - energy).abs() <= 1e-12 * energy);
        prop_assert!((q - m * mid.sinh()).abs() <= 1e-12 * energy);
        let v = relativistic_sum_3d([p1, 0.0, 0.0], [p2, 0.0, 0.0], m).unwrap();
        prop_assert!((v[0] - q).abs() <= 1e-12 * q.abs().max(m));
    }

    #[test]
    fn massless_zm_functions_are_nonnegative(x in -10.0..10.0f64, p in -5.0..5.0f64, t in -5.0..5.0f64, a in 0.1..3.0f64) {
        for which in [ZmClosed::MasslessLorentzian, ZmClosed::ChiralPlus, ZmClosed::ChiralMinus] {
            prop_assert!(zm_closed_form(which, massless(a), PhaseSpacePoint::new(x, p, t)).unwrap() >= 0.0);
        }
    }

    #[test]
    fn zm_closed_forms_shift_exactly(x in -4.0..4.0f64, p in -3.0..3.0f64, t in 0.0..4.0f64, tau in -2.0..2.0f64, m in 0.2..2.0f64) {
        for (which, params) in [
            (ZmClosed::MasslessLorentzian, massless(1.0)),
            (ZmClosed::ChiralPlus, massless(0.7)),
            (ZmClosed::ChiralMinus, massless(1.3)),
            (ZmClosed::MassiveLorentzian, massive(m, 1.0)),
        ] {
            let r = transport_residual_zm(which, params, PhaseSpacePoint::new(x, p, t), H_FIRST, tau).unwrap();
            prop_assert!(r.shift <= 1e-12, "{:?} {:?}", which, r);
        }
    }

    #[test]
    fn nonrel_gaussian_is_bounded(x in -20.0..20.0f64, p in -10.0..10.0f64, t in -10.0..10.0f64, m in 0.1..5.0f64, a in 0.1..5.0f64) {
        let w = nonrel_wigner(massive(m, a), PhaseSpacePoint::new(x, p, t)).unwrap();
        prop_assert!((0.0..=1.0 / PI).contains(&w));
    }

    #[test]
    fn massless_densities_decompose(x in -10.0..10.0f64, t in -5.0..5.0f64, a in 0.1..3.0f64) {
        let params = massless(a);
        let z = zm_massless_density_current(params, x, t).unwrap();
        let plus = exact_density_current(PacketKind::ChiralPlus, params, x, t).unwrap();
        let minus = exact_density_current(PacketKind::ChiralMinus, params, x, t).unwrap();
        prop_assert!((z.rho - 0.5 * (plus.rho + minus.rho)).abs() <= 1e-12);
        prop_assert!((z.j - 0.5 * (plus.j + minus.j)).abs() <= 1e-12);
    }

    #[test]
    fn massless_pairs_satisfy_continuity(x in -4.0..4.0f64, t in 0.1..4.0f64) {
        for pair in [CurrentPair::Exact(PacketKind::MasslessLorentzian), CurrentPair::ZmMasslessLorentzian] {
            prop_assert!(continuity_residual(pair, massless(1.0), x, t, H_FIRST).unwrap() <= 1e-6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rapidity_and_kform_agree(x in -3.0..3.0f64, p in -2.0..2.0f64, t in 0.0..3.0f64, m in 0.3..2.0f64, a in 0.5..2.0f64) {
        let params = massive(m, a);
        let pt = PhaseSpacePoint::new(x, p, t);
        for kind in [PacketKind::MassiveLorentzian, PacketKind::NonrelGaussian] {
            let r = zm_wigner(ZmForm::Rapidity, kind, params, pt).unwrap();
            let k = zm_wigner(ZmForm::KForm, kind, params, pt).unwrap();
            prop_assert!((r.value - k.value).abs() <= 1e-7f64.max(10.0 * (r.err + k.err)), "{:?} {:?}", r, k);
        }
    }

    #[test]
    fn standard_integral_is_real(kind in any_kind(), x in -3.0..3.0f64, p in -2.0..2.0f64, t in 0.0..3.0f64) {
        let (re, im) = std_wigner_raw(kind, params_for(kind, 1.0, 1.0), PhaseSpacePoint::new(x, p, t)).unwrap();
        prop_assert!(re.is_converged() && im.is_converged());
        prop_assert!(im.value.abs() <= im.err + 1e-15, "{:?}", im);
    }
}

#[test]
fn small_argument_asymptotics() {
    let z = 1e-6;
    assert!((z * k1(z) - 1.0).abs() <= 1e-6);
    assert!((z * z * k2(z) - 2.0).abs() <= 2e-6);
    assert!(k0(z) > 0.0);
}

#[test]
fn full_massless_function_is_the_chiral_average_for_p_positive() {
    // The interference between the chiral halves shows up only in the density.
    let params = massless(1.0);
    let pt = PhaseSpacePoint::new(0.0, 0.5, 1.0);
    let w0 = zm_closed_form(ZmClosed::MasslessLorentzian, params, pt).unwrap();
    let plus = zm_closed_form(ZmClosed::ChiralPlus, params, pt).unwrap();
    let minus = zm_closed_form(ZmClosed::ChiralMinus, params, pt).unwrap();
    assert!((w0 - 0.5 * (plus + minus)).abs() <= 1e-15);
    let rho = exact_density_current(PacketKind::MasslessLorentzian, params, 0.0, 1.0)
        .unwrap()
        .rho;
    let rho0 = zm_massless_density_current(params, 0.0, 1.0).unwrap().rho;
    assert!((rho - rho0).abs() >= 0.15);
}

#[test]
fn error_estimates_are_honest() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut honest = 0;
    let draws = 100;
    for i in 0..draws {
        let identity = match i % 4 {
            0 => Identity::ExpRootOverRootCosine {
                alpha: rng.random_range(0.2..4.0),
                beta: rng.random_range(0.1..3.0),
                gamma: rng.random_range(-8.0..8.0),
            },
            1 => Identity::ExpRootCosine {
                alpha: rng.random_range(0.2..4.0),
                beta: rng.random_range(0.1..3.0),
                gamma: rng.random_range(-8.0..8.0),
            },
            2 => Identity::DampedCosine {
                p: rng.random_range(0.1..4.0),
                q: rng.random_range(-10.0..10.0),
                lambda: rng.random_range(-3.0..3.0),
            },
            _ => {
                let nu = [BesselOrder::K0, BesselOrder::K1, BesselOrder::K2][rng.random_range(0..3)];
                Identity::PowerBesselMoment {
                    mu: nu.order() as f64 + rng.random_range(-0.5..3.0),
                    nu,
                    a: rng.random_range(0.2..4.0),
                }
            }
        };
        let check = identity.check(1e-10).unwrap();
        // Rounding in the closed form itself is allowed for.
        if check.residual() <= check.lhs.err + 4.0 * f64::EPSILON * check.rhs.abs() {
            honest += 1;
        }
    }
    assert!(honest >= 95, "{honest}/{draws} honest error estimates");
}

#[test]
fn field_evaluation_is_deterministic() {
    let spec = FieldSpec::new(
        Definition::Zm,
        PacketKind::MassiveLorentzian,
        massive(1.0, 1.0),
        FormChoice::Rapidity,
    )
    .unwrap();
    let grid = make_grid(-2.0, 2.0, 4, -1.0, 1.0, 3, 1.0).unwrap();
    let a = spec.evaluate_field(&grid).unwrap();
    let b = spec.evaluate_field(&grid).unwrap();
    let bits = |f: &WignerField| f.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a), bits(&b));
}
