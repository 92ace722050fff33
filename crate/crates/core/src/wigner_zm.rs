//! The Zavialov-Malokostov Wigner function on a line. Momenta are composed on
//! the mass hyperboloid with [`relativistic_sum_1d`]; the delta function of
//! the definition is integrated out analytically, leaving a rapidity form, an
//! equivalent momentum-transfer ("k") form, and the massless limit. Closed
//! forms for the Lorentzian and chiral packets are provided as oracles.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::packets::{Packet, PacketKind};
use crate::params::{PhaseSpacePoint, PhysicsParams};
use crate::quadrature::{integrate_decaying, QuadOptions, QuadResult, QuadStatus};
use crate::specfun;

/// Default absolute tolerance of the ZM integrals.
pub const ZM_ABS_TOL: f64 = 1e-12;

fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(invalid("mass", format!("momentum composition needs m > 0, got {m}")))
    }
}

/// `E1 E2 - p1 . p2` without cancellation, given `|p1 x p2|^2`.
fn energy_product_gap(e1: f64, e2: f64, dot: f64, cross2: f64, m: f64, q2: f64) -> f64 {
    if dot > 0.0 {
        (m * m * (q2 + m * m) + cross2) / (e1 * e2 + dot)
    } else {
        e1 * e2 - dot
    }
}

/// `p1 (+) p2` on the mass hyperboloid; the rapidity midpoint of `p1` and `p2`.
pub fn relativistic_sum_1d(p1: f64, p2: f64, m: f64) -> Result<f64> {
    check_mass(m)?;
    let e1 = p1.hypot(m);
    let e2 = p2.hypot(m);
    let gap = energy_product_gap(e1, e2, p1 * p2, 0.0, m, p1 * p1 + p2 * p2);
    Ok(m * (p1 + p2) / (2.0 * (m * m + gap)).sqrt())
}

/// Three-dimensional counterpart of [`relativistic_sum_1d`].
pub fn relativistic_sum_3d(p1: [f64; 3], p2: [f64; 3], m: f64) -> Result<[f64; 3]> {
    check_mass(m)?;
    let norm2 = |v: [f64; 3]| v.iter().map(|c| c * c).sum::<f64>();
    let (n1, n2) = (norm2(p1), norm2(p2));
    let dot: f64 = p1.iter().zip(&p2).map(|(a, b)| a * b).sum();
    let cross = [
        p1[1] * p2[2] - p1[2] * p2[1],
        p1[2] * p2[0] - p1[0] * p2[2],
        p1[0] * p2[1] - p1[1] * p2[0],
    ];
    let e1 = (n1 + m * m).sqrt();
    let e2 = (n2 + m * m).sqrt();
    let gap = energy_product_gap(e1, e2, dot, norm2(cross), m, n1 + n2);
    let scale = m / (2.0 * (m * m + gap)).sqrt();
    Ok([0, 1, 2].map(|i| scale * (p1[i] + p2[i])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZmForm {
    Rapidity,
    KForm,
    /// The `m -> 0` rapidity form; requires a massless packet.
    MasslessLimit,
}

/// `W(x, p, t)` of a catalog packet by quadrature of one of the reduced forms.
/// The returned result carries the quadrature error estimate and status.
pub fn zm_wigner(form: ZmForm, kind: PacketKind, params: PhysicsParams, pt: PhaseSpacePoint) -> Result<QuadResult> {
    zm_wigner_with(
        form,
        kind,
        params,
        pt,
        QuadOptions::absolute(ZM_ABS_TOL).with_rel_tol(1e-12),
    )
}

pub fn zm_wigner_with(
    form: ZmForm,
    kind: PacketKind,
    params: PhysicsParams,
    pt: PhaseSpacePoint,
    opts: QuadOptions,
) -> Result<QuadResult> {
    if form == ZmForm::MasslessLimit && !params.is_massless() {
        return Err(Error::Unsupported {
            what: "the massless-limit form",
            requirement: "mass = 0",
        });
    }
    if !pt.is_finite() {
        return Err(invalid("point", "phase-space point must be finite"));
    }
    let packet = Packet::new(kind, params)?;
    // Both massless forms carry an explicit |p| prefactor.
    if params.is_massless() && pt.p == 0.0 {
        return Ok(QuadResult {
            value: 0.0,
            err: 0.0,
            evaluations: 0,
            status: QuadStatus::Converged,
        });
    }
    let result = match form {
        ZmForm::Rapidity | ZmForm::MasslessLimit => rapidity(&packet, pt, opts),
        ZmForm::KForm => kform(&packet, pt, opts),
    };
    Ok(result)
}

/// Integrand in `conj(phi~(p1)) phi~(p2) e^{i phase}` form, symmetric under
/// `u -> -u` up to conjugation, so twice the real half-line integral is used.
struct Reduced {
    weight: f64,
    p1: f64,
    p2: f64,
    dp1: f64,
    dp2: f64,
    phase: f64,
    phase_rate: f64,
}

fn integrate_reduced(
    packet: &Packet,
    t: f64,
    start: f64,
    opts: QuadOptions,
    at: impl Fn(f64) -> Reduced,
) -> QuadResult {
    let value = |u: f64| {
        let r = at(u);
        let amp = packet.momentum(r.p1, t).conj() * packet.momentum(r.p2, t);
        r.weight * (amp * Complex64::cis(r.phase)).re
    };
    let modulus = |u: f64| {
        let r = at(u);
        r.weight.abs() * packet.momentum_modulus(r.p1) * packet.momentum_modulus(r.p2)
    };
    let frequency = |u: f64| {
        let r = at(u);
        let v1 = packet.max_group_velocity(r.p1.abs());
        let v2 = packet.max_group_velocity(r.p2.abs());
        r.phase_rate.abs() + t.abs() * (v1 * r.dp1.abs() + v2 * r.dp2.abs())
    };
    integrate_decaying(value, modulus, frequency, start, &[], opts).scale(2.0)
}

fn rapidity(packet: &Packet, pt: PhaseSpacePoint, opts: QuadOptions) -> QuadResult {
    let PhaseSpacePoint { x, p, t } = pt;
    let m = packet.params().mass();
    let e = p.hypot(m);
    let kappa = if m > 0.0 { (p / m).asinh() } else { 0.0 };
    let sign = if p < 0.0 { -1.0 } else { 1.0 };
    let at = |beta: f64| {
        let (s, c) = (beta.sinh(), beta.cosh());
        let (p1, p2) = if m > 0.0 {
            (m * (kappa + beta).sinh(), m * (kappa - beta).sinh())
        } else {
            (p * (sign * beta).exp(), p * (-sign * beta).exp())
        };
        Reduced {
            weight: (p * p + m * m * c * c) / (PI * e),
            p1,
            p2,
            dp1: p * s + e * c,
            dp2: p * s - e * c,
            phase: -2.0 * x * e * s,
            phase_rate: 2.0 * x * e * c,
        }
    };
    integrate_reduced(packet, t, 1.0, opts, at)
}

fn kform(packet: &Packet, pt: PhaseSpacePoint, opts: QuadOptions) -> QuadResult {
    let PhaseSpacePoint { x, p, t } = pt;
    let m = packet.params().mass();
    let e = p.hypot(m);
    let at = |k: f64| {
        let root = k.hypot(2.0 * e);
        let f = p * root / e;
        // (f - k)(f + k) = (4 p^2 E^2 - m^2 k^2) / E^2
        let product = ((2.0 * p * e - m * k) * (2.0 * p * e + m * k)) / (e * e);
        let (p1, p2) = if p >= 0.0 {
            let sum = f + k;
            (if sum > 0.0 { 0.5 * product / sum } else { 0.0 }, 0.5 * sum)
        } else {
            (0.5 * (f - k), 0.5 * product / (f - k))
        };
        let df = p * k / (e * root);
        Reduced {
            weight: (m * m * k * k + 4.0 * e.powi(4)) / (4.0 * PI * e.powi(3) * root),
            p1,
            p2,
            dp1: 0.5 * (df - 1.0),
            dp2: 0.5 * (df + 1.0),
            phase: k * x,
            phase_rate: x,
        }
    };
    integrate_reduced(packet, t, 1.0 / packet.params().width(), opts, at)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZmClosed {
    MasslessLorentzian,
    ChiralPlus,
    ChiralMinus,
    MassiveLorentzian,
}

impl ZmClosed {
    pub fn packet(self) -> PacketKind {
        match self {
            ZmClosed::MasslessLorentzian => PacketKind::MasslessLorentzian,
            ZmClosed::ChiralPlus => PacketKind::ChiralPlus,
            ZmClosed::ChiralMinus => PacketKind::ChiralMinus,
            ZmClosed::MassiveLorentzian => PacketKind::MassiveLorentzian,
        }
    }

    pub fn for_packet(kind: PacketKind) -> Option<Self> {
        match kind {
            PacketKind::MasslessLorentzian => Some(ZmClosed::MasslessLorentzian),
            PacketKind::ChiralPlus => Some(ZmClosed::ChiralPlus),
            PacketKind::ChiralMinus => Some(ZmClosed::ChiralMinus),
            PacketKind::MassiveLorentzian => Some(ZmClosed::MassiveLorentzian),
            PacketKind::NonrelGaussian => None,
        }
    }
}

/// Closed-form ZM Wigner function. The massless forms vanish at `p = 0`.
pub fn zm_closed_form(which: ZmClosed, params: PhysicsParams, pt: PhaseSpacePoint) -> Result<f64> {
    let kind = which.packet();
    if !kind.compatible_with(&params) {
        return Err(Error::IncompatiblePacket {
            kind,
            mass: params.mass(),
        });
    }
    let PhaseSpacePoint { x, p, t } = pt;
    let a = params.width();
    let value = match which {
        ZmClosed::MasslessLorentzian => {
            if p == 0.0 {
                0.0
            } else {
                let q = p.abs();
                let s = p * t - x * q;
                2.0 * a * q / PI * specfun::k0(2.0 * (a * q).hypot(s))
            }
        }
        ZmClosed::ChiralPlus | ZmClosed::ChiralMinus => {
            let dir = if which == ZmClosed::ChiralPlus { 1.0 } else { -1.0 };
            if dir * p <= 0.0 {
                0.0
            } else {
                let q = p.abs();
                4.0 * a * q / PI * specfun::k0(2.0 * q * (x - dir * t).hypot(a))
            }
        }
        ZmClosed::MassiveLorentzian => {
            let m = params.mass();
            let e = p.hypot(m);
            let s = t * p - x * e;
            let ae = a * e;
            let r2 = ae * ae + s * s;
            let z = 2.0 * r2.sqrt();
            let (k0, _, k2) = specfun::k012(z);
            let norm = m / (2.0 * PI * specfun::k1(2.0 * m * a) * e);
            let ratio = (ae - s) * (ae + s) / r2;
            norm * ((1.0 + 2.0 * (p / m).powi(2)) * k0 + ratio * k2)
        }
    };
    Ok(value)
}
