//! Fixed verification suites over the whole library.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::packets::{fourier_residual, superposition_check, Packet, PacketKind};
use crate::params::{PhaseSpacePoint, PhysicsParams};
use crate::report::VerificationReport;
use crate::specfun::{bessel_k, bessel_k_integral, k012, BesselOrder, Identity};
use crate::transport::{
    continuity_residual, derivative, marginal, nonrel_kernel_rhs, shift_residual, std_kernel_rhs,
    transport_residual_zm, wave_equation_residual, CurrentPair, KernelSlice, MarginalAxis, WaveDensity, Window,
    H_FIRST, H_SECOND,
};
use crate::wigner_std::{
    nonrel_wigner, std_closed_form_massless, std_closed_form_massless_cosine_variant, std_massive_p0, std_wigner,
};
use crate::wigner_zm::{zm_closed_form, zm_wigner, ZmClosed, ZmForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Specfun,
    Packets,
    Zm,
    Std,
    Transport,
    Kernel,
    #[default]
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Specfun,
        Suite::Packets,
        Suite::Zm,
        Suite::Std,
        Suite::Transport,
        Suite::Kernel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Packets => "packets",
            Suite::Zm => "zm",
            Suite::Std => "std",
            Suite::Transport => "transport",
            Suite::Kernel => "kernel",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| invalid("suite", format!("unknown suite `{s}`")))
    }
}

pub fn run_suite(suite: Suite) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    match suite {
        Suite::Specfun => specfun_suite(&mut report)?,
        Suite::Packets => packets_suite(&mut report)?,
        Suite::Zm => zm_suite(&mut report)?,
        Suite::Std => std_suite(&mut report)?,
        Suite::Transport => transport_suite(&mut report)?,
        Suite::Kernel => kernel_suite(&mut report)?,
        Suite::All => {
            for s in Suite::EACH {
                report.merge(run_suite(s)?);
            }
        }
    }
    Ok(report)
}

fn massless(a: f64) -> PhysicsParams {
    PhysicsParams::massless(a).expect("positive width")
}

fn massive(m: f64, a: f64) -> PhysicsParams {
    PhysicsParams::new(m, a).expect("valid parameters")
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(items: I) -> Result<f64> {
    items.into_iter().try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)))
}

fn lattice(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn log_grid(n: usize) -> impl Iterator<Item = f64> {
    let (lo, hi) = (1e-6f64.ln(), 50f64.ln());
    (0..n).map(move |i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
}

fn specfun_suite(report: &mut VerificationReport) -> Result<()> {
    for (order, name) in [
        (BesselOrder::K0, "specfun_k0_integral"),
        (BesselOrder::K1, "specfun_k1_integral"),
        (BesselOrder::K2, "specfun_k2_integral"),
    ] {
        let worst = max_over(log_grid(100).map(|z| {
            let exact = bessel_k(order, z)?;
            let oracle = bessel_k_integral(order, z)?;
            Ok((exact - oracle.value).abs() / oracle.value)
        }))?;
        report.check_within(name, worst, 1e-12);
    }
    let recurrence = log_grid(100)
        .map(|z| {
            let (k0, k1, k2) = k012(z);
            (k2 - k0 - 2.0 / z * k1).abs() / k2
        })
        .fold(0.0, f64::max);
    report.check_within("specfun_recurrence", recurrence, 1e-10);
    let identities = [
        (
            "identity_exp_root_over_root_cosine",
            Identity::ExpRootOverRootCosine {
                alpha: 2.0,
                beta: 1.0,
                gamma: 5.0,
            },
        ),
        (
            "identity_exp_root_cosine",
            Identity::ExpRootCosine {
                alpha: 2.0,
                beta: 1.0,
                gamma: 5.0,
            },
        ),
        (
            "identity_power_bessel_moment",
            Identity::PowerBesselMoment {
                mu: 1.5,
                nu: BesselOrder::K1,
                a: 2.0,
            },
        ),
        (
            "identity_damped_cosine",
            Identity::DampedCosine {
                p: 0.5,
                q: 3.0,
                lambda: 0.7,
            },
        ),
    ];
    for (name, identity) in identities {
        report.check_within(name, identity.check(1e-13)?.residual(), 1e-10);
    }
    Ok(())
}

fn params_for(kind: PacketKind) -> PhysicsParams {
    if kind.is_massless() {
        massless(1.0)
    } else {
        massive(1.0, 1.0)
    }
}

fn packets_suite(report: &mut VerificationReport) -> Result<()> {
    for kind in PacketKind::ALL {
        let packet = Packet::new(kind, params_for(kind))?;
        let norm = packet.norm_squared_quadrature(1e-13);
        report.check_within(
            format!("packet_norm_{}", kind.name().replace('-', "_")),
            norm.value - 1.0,
            1e-9,
        );
        let fourier = max_over(
            [(0.0, 0.0), (1.5, 0.5), (-2.0, 2.0)].map(|(x, t)| fourier_residual(kind, params_for(kind), x, t)),
        )?;
        report.check_within(
            format!("packet_fourier_{}", kind.name().replace('-', "_")),
            fourier,
            1e-9,
        );
    }
    // Closed form of the massive normalization: 2 N^2 m K_1(2 m a) = 1.
    let closed = Identity::ExpRootCosine {
        alpha: 2.0,
        beta: 1.0,
        gamma: 0.0,
    }
    .closed_form()?;
    let packet = Packet::new(PacketKind::MassiveLorentzian, massive(1.0, 1.0))?;
    let n0 = packet.momentum_modulus(0.0) * 1f64.exp();
    report.check_within("packet_norm_massive_closed_form", 2.0 * n0 * n0 * closed - 1.0, 1e-12);
    let split = max_over([(0.0, 0.0), (0.7, 1.3), (-3.0, 2.0)].map(|(x, t)| superposition_check(massless(1.0), x, t)))?;
    report.check_within("packet_chiral_superposition", split, 1e-14);
    Ok(())
}

fn zm_closed(which: ZmClosed, params: PhysicsParams) -> impl Fn(PhaseSpacePoint) -> f64 {
    move |q| zm_closed_form(which, params, q).unwrap_or(f64::NAN)
}

fn zm_suite(report: &mut VerificationReport) -> Result<()> {
    let params = massive(1.0, 1.0);
    let mut forms = 0.0f64;
    let mut closed = 0.0f64;
    for t in [0.0, 2.0] {
        for x in lattice(-3.0, 3.0, 3) {
            for p in lattice(-2.0, 2.0, 3) {
                let pt = PhaseSpacePoint::new(x, p, t);
                let r = zm_wigner(ZmForm::Rapidity, PacketKind::MassiveLorentzian, params, pt)?.value;
                let k = zm_wigner(ZmForm::KForm, PacketKind::MassiveLorentzian, params, pt)?.value;
                let c = zm_closed_form(ZmClosed::MassiveLorentzian, params, pt)?;
                forms = forms.max((r - k).abs());
                closed = closed.max((r - c).abs()).max((k - c).abs());
            }
        }
    }
    report.check_within("zm_rapidity_vs_kform", forms, 1e-7);
    report.check_within("zm_quadrature_vs_closed_massive", closed, 1e-7);

    let light = massive(1e-4, 1.0);
    let mut chain = 0.0f64;
    for x in lattice(-3.0, 3.0, 5) {
        for p in [-2.0, -1.0, 1.0, 2.0] {
            let pt = PhaseSpacePoint::new(x, p, 1.0);
            let w = zm_closed_form(ZmClosed::MassiveLorentzian, light, pt)?;
            let w0 = zm_closed_form(ZmClosed::MasslessLorentzian, massless(1.0), pt)?;
            chain = chain.max((w - w0).abs());
        }
    }
    report.check_within("zm_massless_limit_chain", chain, 1e-3);
    // At p = 0 the light-mass function grows like 1/(2 pi m) instead.
    let spike = zm_closed_form(ZmClosed::MassiveLorentzian, light, PhaseSpacePoint::new(0.0, 0.0, 1.0))?;
    report.check_within(
        "zm_massless_limit_zero_momentum_spike",
        spike * 2.0 * PI * light.mass() - 1.0,
        1e-3,
    );

    let zero = massless(1.0);
    let w0 = zm_closed(ZmClosed::MasslessLorentzian, zero);
    let window = Window::new(0.0, 4.0)?;
    let rho0 = marginal(MarginalAxis::OverP, &w0, 0.0, 1.0, window)?.value;
    let rho = Packet::new(PacketKind::MasslessLorentzian, zero)?.density(0.0, 1.0);
    report.check_within("zm_massless_marginal_over_p", rho0 - 0.5 / PI, 1e-6);
    report.check_exceeds("zm_massless_marginal_mismatch", rho - rho0, 0.15);
    let over_x = max_over([-1.0, 0.3, 2.0].map(|p: f64| {
        let m = marginal(MarginalAxis::OverX, &w0, p, 1.0, Window::new(p.signum(), 4.0)?)?;
        Ok((m.value - (-2.0 * p.abs()).exp()).abs())
    }))?;
    report.check_within("zm_massless_marginal_over_x", over_x, 1e-6);
    let mut limit = 0.0f64;
    for (x, p, t) in [(0.5, 0.7, 1.0), (-1.0, -0.3, 2.0), (2.0, 1.5, 0.0)] {
        let pt = PhaseSpacePoint::new(x, p, t);
        let q = zm_wigner(ZmForm::MasslessLimit, PacketKind::MasslessLorentzian, zero, pt)?.value;
        limit = limit.max((q - w0(pt)).abs());
    }
    report.check_within("zm_massless_limit_quadrature", limit, 1e-9);

    for (which, kind, name) in [
        (ZmClosed::ChiralPlus, PacketKind::ChiralPlus, "zm_chiral_plus_marginal"),
        (
            ZmClosed::ChiralMinus,
            PacketKind::ChiralMinus,
            "zm_chiral_minus_marginal",
        ),
    ] {
        let packet = Packet::new(kind, zero)?;
        let w = zm_closed(which, zero);
        let worst = max_over([(0.0, 1.0), (1.5, 0.5), (-2.0, 3.0)].map(|(x, t)| {
            let m = marginal(MarginalAxis::OverP, &w, x, t, window)?;
            Ok((m.value - packet.density(x, t)).abs())
        }))?;
        report.check_within(name, worst, 1e-6);
    }
    let mut lowest = f64::INFINITY;
    for which in [
        ZmClosed::MasslessLorentzian,
        ZmClosed::ChiralPlus,
        ZmClosed::ChiralMinus,
    ] {
        for x in lattice(-5.0, 5.0, 21) {
            for p in lattice(-3.0, 3.0, 13) {
                lowest = lowest.min(zm_closed_form(which, zero, PhaseSpacePoint::new(x, p, 1.5))?);
            }
        }
    }
    report.check_within("zm_massless_nonnegative", (-lowest).max(0.0), 0.0);

    let narrow = massive(1.0, 0.01);
    let dip = lattice(-0.5, 0.5, 1001)
        .map(|x| zm_closed_form(ZmClosed::MassiveLorentzian, narrow, PhaseSpacePoint::new(x, 0.01, 5.0)))
        .try_fold(f64::INFINITY, |acc, w| w.map(|w| acc.min(w)))?;
    report.check_exceeds("zm_massive_negativity", (-dip).max(0.0), 0.0);
    Ok(())
}

fn std_suite(report: &mut VerificationReport) -> Result<()> {
    let params = massive(1.0, 1.0);
    let kind = PacketKind::MassiveLorentzian;
    let packet = Packet::new(kind, params)?;
    let w = |q: PhaseSpacePoint| std_wigner(kind, params, q).map(|r| r.value).unwrap_or(f64::NAN);
    for t in [0.0, 2.0] {
        let over_p = max_over([-1.0, 0.5, 2.0].map(|x| {
            let m = marginal(MarginalAxis::OverP, w, x, t, Window::new(0.0, 4.0)?)?;
            Ok((m.value - packet.density(x, t)).abs())
        }))?;
        report.check_within(format!("std_marginal_over_p_t{t}"), over_p, 1e-5);
        let over_x = max_over([-1.0, 0.5].map(|p: f64| {
            let m = marginal(MarginalAxis::OverX, w, p, t, Window::new(0.0, 4.0 + t)?)?;
            Ok((m.value - packet.momentum_modulus(p).powi(2)).abs())
        }))?;
        report.check_within(format!("std_marginal_over_x_t{t}"), over_x, 1e-5);
    }
    let mut p0 = 0.0f64;
    let mut drift = 0.0f64;
    for x in [0.0, 0.7, -2.0] {
        let closed = std_massive_p0(params, x, 0.0)?;
        for t in [0.0, 3.0] {
            let q = std_wigner(kind, params, PhaseSpacePoint::new(x, 0.0, t))?.value;
            p0 = p0.max((q - closed).abs());
            drift = drift.max((q - std_wigner(kind, params, PhaseSpacePoint::new(x, 0.0, 0.0))?.value).abs());
        }
    }
    report.check_within("std_zero_momentum_closed_form", p0, 1e-7);
    report.check_within("std_zero_momentum_time_independent", drift, 1e-7);

    let zero = massless(1.0);
    let mut closed = 0.0f64;
    let mut variant = 0.0f64;
    for (x, p, t) in [(0.5, 0.4, 1.0), (-1.0, 0.8, 2.0), (0.0, -0.6, 0.5)] {
        let pt = PhaseSpacePoint::new(x, p, t);
        let q = std_wigner(PacketKind::MasslessLorentzian, zero, pt)?.value;
        closed = closed.max((q - std_closed_form_massless(zero, pt)?).abs());
        variant = variant.max((q - std_closed_form_massless_cosine_variant(zero, pt)?).abs());
    }
    report.check_within("std_massless_closed_vs_quadrature", closed, 1e-9);
    report.check_exceeds("std_massless_cosine_variant_mismatch", variant, 1e-3);

    let mut lowest = f64::INFINITY;
    for x in lattice(-1.0, 3.0, 5) {
        for p in lattice(0.0, 1.2, 7) {
            lowest = lowest.min(std_wigner(kind, params, PhaseSpacePoint::new(x, p, 5.0))?.value);
        }
    }
    report.check_exceeds("std_massive_late_negativity", (-lowest).max(0.0), 0.0);

    let mut above = 0.0f64;
    let mut below = 0.0f64;
    for t in [0.0, 1.0, 4.0] {
        for x in lattice(-6.0, 6.0, 25) {
            for p in lattice(-3.0, 3.0, 13) {
                let v = nonrel_wigner(params, PhaseSpacePoint::new(x, p, t))?;
                above = above.max(v - 1.0 / PI);
                below = below.max(-v);
            }
        }
    }
    report.check_within("nonrel_bounded_by_inverse_pi", above.max(0.0), 0.0);
    report.check_within("nonrel_nonnegative", below.max(0.0), 0.0);
    Ok(())
}

fn transport_suite(report: &mut VerificationReport) -> Result<()> {
    let zero = massless(1.0);
    let cases = [
        ("transport_shift_zm_massless", ZmClosed::MasslessLorentzian, zero),
        ("transport_shift_zm_chiral_plus", ZmClosed::ChiralPlus, zero),
        ("transport_shift_zm_chiral_minus", ZmClosed::ChiralMinus, zero),
        (
            "transport_shift_zm_massive",
            ZmClosed::MassiveLorentzian,
            massive(1.0, 1.0),
        ),
    ];
    for (name, which, params) in cases {
        let worst = max_over([(0.5, 0.4, 1.0), (-1.0, -0.7, 2.0), (0.2, 1.3, 0.0)].map(|(x, p, t)| {
            transport_residual_zm(which, params, PhaseSpacePoint::new(x, p, t), H_FIRST, 0.37).map(|r| r.shift)
        }))?;
        report.check_within(name, worst, 1e-12);
    }
    let std = |q: PhaseSpacePoint| std_closed_form_massless(zero, q).unwrap_or(f64::NAN);
    report.check_exceeds(
        "transport_shift_std_massless",
        shift_residual(std, 1.0, PhaseSpacePoint::new(0.5, 0.4, 1.0), 0.37),
        1e-3,
    );

    let pairs = [
        (
            "continuity_massless_lorentzian",
            CurrentPair::Exact(PacketKind::MasslessLorentzian),
            zero,
        ),
        (
            "continuity_chiral_plus",
            CurrentPair::Exact(PacketKind::ChiralPlus),
            zero,
        ),
        (
            "continuity_chiral_minus",
            CurrentPair::Exact(PacketKind::ChiralMinus),
            zero,
        ),
        ("continuity_zm_massless", CurrentPair::ZmMasslessLorentzian, zero),
        (
            "continuity_nonrel_gaussian",
            CurrentPair::Exact(PacketKind::NonrelGaussian),
            massive(1.0, 1.0),
        ),
    ];
    for (name, pair, params) in pairs {
        let worst = max_over(
            [(0.5, 1.0), (1.0, 1.0), (-2.0, 0.3)].map(|(x, t)| continuity_residual(pair, params, x, t, H_FIRST)),
        )?;
        report.check_within(name, worst, 1e-6);
    }
    let massive_pair = continuity_residual(
        CurrentPair::Exact(PacketKind::MassiveLorentzian),
        massive(1.0, 1.0),
        0.8,
        1.2,
        1e-3,
    )?;
    report.check_within("continuity_massive_lorentzian", massive_pair, 1e-6);

    report.check_exceeds(
        "wave_equation_exact_density",
        wave_equation_residual(WaveDensity::Exact, zero, 1.0, 1.0, H_SECOND)?,
        0.01,
    );
    report.check_within(
        "wave_equation_zm_density",
        wave_equation_residual(WaveDensity::ZmMassless, zero, 1.0, 1.0, H_SECOND)?,
        1e-5,
    );
    Ok(())
}

fn relative(rhs: f64, dt: f64) -> f64 {
    (rhs - dt).abs() / dt.abs().max(1e-300)
}

fn kernel_suite(report: &mut VerificationReport) -> Result<()> {
    let zero = massless(1.0);
    let (p, t) = (0.4, 1.0);
    let w = |x: f64| std_closed_form_massless(zero, PhaseSpacePoint::new(x, p, t)).unwrap_or(f64::NAN);
    let slice = KernelSlice::sample(w, 0.0, 500.0, 0.01, p, t)?;
    let worst = max_over([0.0, 0.5, -1.0].map(|x| {
        let rhs = std_kernel_rhs(&slice, zero, x)?;
        let dt = derivative(
            |t| std_closed_form_massless(zero, PhaseSpacePoint::new(x, p, t)).unwrap_or(f64::NAN),
            t,
            H_FIRST,
        );
        Ok(relative(rhs, dt))
    }))?;
    report.check_within("kernel_vs_dt_massless", worst, 1e-3);

    let params = massive(1.0, 1.0);
    let kind = PacketKind::MassiveLorentzian;
    let (p, t) = (0.6, 1.0);
    let at = |x: f64, t: f64| {
        std_wigner(kind, params, PhaseSpacePoint::new(x, p, t))
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
    };
    let slice = KernelSlice::sample(|x| at(x, t), 0.5, 20.0, 0.01, p, t)?;
    let rhs = std_kernel_rhs(&slice, params, 0.5)?;
    report.check_within(
        "kernel_vs_dt_massive",
        relative(rhs, derivative(|t| at(0.5, t), t, H_FIRST)),
        1e-3,
    );

    let (p, t) = (0.8, 0.5);
    let nr = |x: f64, t: f64| nonrel_wigner(params, PhaseSpacePoint::new(x, p, t)).unwrap_or(f64::NAN);
    let slice = KernelSlice::sample(|x| nr(x, t), 0.0, 10.0, 0.01, p, t)?;
    let rhs = nonrel_kernel_rhs(&slice, params, -0.3)?;
    report.check_within(
        "kernel_vs_dt_nonrel",
        relative(rhs, derivative(|t| nr(-0.3, t), t, H_FIRST)),
        1e-3,
    );
    Ok(())
}
