//! The standard-definition Wigner function on a line, evaluated from the
//! momentum representation `W = (2 pi)^-1 int dk conj(phi~(p - k/2)) phi~(p + k/2) e^{ikx}`
//! with relativistic free evolution, plus its closed forms and the
//! nonrelativistic Gaussian reference.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::packets::{Packet, PacketKind};
use crate::params::{PhaseSpacePoint, PhysicsParams};
use crate::quadrature::{integrate_decaying, QuadOptions, QuadResult};
use crate::specfun;

pub const STD_ABS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StdMethod {
    Quadrature,
    ClosedMassless,
    ClosedMassiveP0,
    NonrelClosed,
}

impl StdMethod {
    /// Checks the packet, mass and (for the `p = 0` form) momentum requirements.
    pub fn validate(self, kind: PacketKind, params: &PhysicsParams, p: Option<f64>) -> Result<()> {
        let ok = match self {
            StdMethod::Quadrature => kind.compatible_with(params),
            StdMethod::ClosedMassless => kind == PacketKind::MasslessLorentzian && params.is_massless(),
            StdMethod::ClosedMassiveP0 => {
                if let Some(p) = p.filter(|p| *p != 0.0) {
                    return Err(invalid("p", format!("closed form holds at p = 0 only, got {p}")));
                }
                kind == PacketKind::MassiveLorentzian && !params.is_massless()
            }
            StdMethod::NonrelClosed => kind == PacketKind::NonrelGaussian && !params.is_massless(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IncompatiblePacket {
                kind,
                mass: params.mass(),
            })
        }
    }
}

/// `W(x, p, t)` by quadrature over the momentum transfer `k`.
pub fn std_wigner(kind: PacketKind, params: PhysicsParams, pt: PhaseSpacePoint) -> Result<QuadResult> {
    std_wigner_with(kind, params, pt, QuadOptions::absolute(STD_ABS_TOL).with_rel_tol(1e-12))
}

pub fn std_wigner_with(
    kind: PacketKind,
    params: PhysicsParams,
    pt: PhaseSpacePoint,
    opts: QuadOptions,
) -> Result<QuadResult> {
    if !pt.is_finite() {
        return Err(invalid("point", "phase-space point must be finite"));
    }
    let packet = Packet::new(kind, params)?;
    let PhaseSpacePoint { x, p, t } = pt;
    let start = 1.0 / params.width();
    let breaks = [2.0 * p.abs()];
    let modulus = |k: f64| packet.momentum_modulus(p - 0.5 * k) * packet.momentum_modulus(p + 0.5 * k) / PI;
    let frequency = |k: f64| {
        let v1 = packet.max_group_velocity((p - 0.5 * k).abs());
        let v2 = packet.max_group_velocity((p + 0.5 * k).abs());
        x.abs() + 0.5 * t.abs() * (v1 + v2)
    };
    let result = if kind == PacketKind::MassiveLorentzian {
        let m = params.mass();
        let a = params.width();
        let norm = 1.0 / (2.0 * PI * m * specfun::k1(2.0 * m * a));
        let cosine = |k: f64| {
            let lo = (p - 0.5 * k).hypot(m);
            let hi = (p + 0.5 * k).hypot(m);
            let gap = -2.0 * p * k / (lo + hi);
            norm * (-a * (lo + hi)).exp() * (t * gap + k * x).cos()
        };
        integrate_decaying(cosine, modulus, frequency, start, &breaks, opts)
    } else {
        let value = |k: f64| {
            let amp = packet.momentum(p - 0.5 * k, t).conj() * packet.momentum(p + 0.5 * k, t);
            (amp * Complex64::cis(k * x)).re / PI
        };
        integrate_decaying(value, modulus, frequency, start, &breaks, opts)
    };
    Ok(result)
}

/// The raw integral over the whole `k` axis without using its conjugate
/// symmetry: `(real, imaginary)` parts, each with its own error estimate.
pub fn std_wigner_raw(
    kind: PacketKind,
    params: PhysicsParams,
    pt: PhaseSpacePoint,
) -> Result<(QuadResult, QuadResult)> {
    let packet = Packet::new(kind, params)?;
    let PhaseSpacePoint { x, p, t } = pt;
    let opts = QuadOptions::absolute(STD_ABS_TOL);
    let integrand = |k: f64| {
        packet.momentum(p - 0.5 * k, t).conj() * packet.momentum(p + 0.5 * k, t) * Complex64::cis(k * x) / (2.0 * PI)
    };
    let modulus = |k: f64| packet.momentum_modulus(p - 0.5 * k) * packet.momentum_modulus(p + 0.5 * k);
    let frequency = |_: f64| x.abs() + t.abs() * packet.max_group_velocity(packet.momentum_cutoff());
    let start = 1.0 / params.width();
    let half = |sign: f64, part: fn(Complex64) -> f64| {
        integrate_decaying(
            |k| part(integrand(sign * k)),
            |k| modulus(sign * k),
            frequency,
            start,
            &[2.0 * p.abs()],
            opts,
        )
    };
    let re = half(1.0, |c| c.re).combine(half(-1.0, |c| c.re));
    let im = half(1.0, |c| c.im).combine(half(-1.0, |c| c.im));
    Ok((re, im))
}

fn require_massless(params: &PhysicsParams) -> Result<()> {
    if params.is_massless() {
        Ok(())
    } else {
        Err(Error::IncompatiblePacket {
            kind: PacketKind::MasslessLorentzian,
            mass: params.mass(),
        })
    }
}

fn require_massive(kind: PacketKind, params: &PhysicsParams) -> Result<()> {
    if params.is_massless() {
        Err(Error::IncompatiblePacket { kind, mass: 0.0 })
    } else {
        Ok(())
    }
}

/// `sin(2d) / d`, continuous through `d = 0`.
fn sin2_over(d: f64) -> f64 {
    let z = 2.0 * d;
    if z.abs() < 1e-4 {
        2.0 * (1.0 - z * z / 6.0)
    } else {
        z.sin() / d
    }
}

/// Closed form for the massless Lorentzian packet:
/// `(a/pi) e^{-2a|p|} { |p| sin(2D)/D + a/(a^2+x^2) [cos 2D + (x/a) sin 2D] }`
/// with `D = pt - x|p|`.
pub fn std_closed_form_massless(params: PhysicsParams, pt: PhaseSpacePoint) -> Result<f64> {
    require_massless(&params)?;
    let PhaseSpacePoint { x, p, t } = pt;
    let a = params.width();
    let q = p.abs();
    let d = p * t - x * q;
    let (s, c) = (2.0 * d).sin_cos();
    let envelope = a / PI * (-2.0 * a * q).exp();
    Ok(envelope * (q * sin2_over(d) + a / (a * a + x * x) * (c + x / a * s)))
}

/// The same expression with the cosine repeated in the last term instead of
/// the sine. It does not reproduce the quadrature and is kept only so the
/// discrepancy can be reported.
pub fn std_closed_form_massless_cosine_variant(params: PhysicsParams, pt: PhaseSpacePoint) -> Result<f64> {
    require_massless(&params)?;
    let PhaseSpacePoint { x, p, t } = pt;
    let a = params.width();
    let q = p.abs();
    let d = p * t - x * q;
    let c = (2.0 * d).cos();
    let envelope = a / PI * (-2.0 * a * q).exp();
    Ok(envelope * (q * sin2_over(d) + a / (a * a + x * x) * (c + x / a * c)))
}

/// Massive Lorentzian packet at `p = 0`; independent of `t`.
pub fn std_massive_p0(params: PhysicsParams, x: f64, t: f64) -> Result<f64> {
    require_massive(PacketKind::MassiveLorentzian, &params)?;
    let _ = t;
    let m = params.mass();
    let a = params.width();
    let r = a.hypot(x);
    Ok(a / (PI * specfun::k1(2.0 * m * a) * r) * specfun::k1(2.0 * m * r))
}

/// Nonrelativistic Gaussian reference `(1/pi) exp[-a p^2/m - (m/a)(x - p t/m)^2]`.
pub fn nonrel_wigner(params: PhysicsParams, pt: PhaseSpacePoint) -> Result<f64> {
    require_massive(PacketKind::NonrelGaussian, &params)?;
    let PhaseSpacePoint { x, p, t } = pt;
    let m = params.mass();
    let a = params.width();
    let drift = x - p * t / m;
    Ok((-(a * p * p / m) - m / a * drift * drift).exp() / PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn massless(a: f64) -> PhysicsParams {
        PhysicsParams::massless(a).unwrap()
    }

    fn massive(m: f64, a: f64) -> PhysicsParams {
        PhysicsParams::new(m, a).unwrap()
    }

    fn assert_close(got: f64, want: f64, tol: f64) {
        assert!((got - want).abs() <= tol, "{got} vs {want} (tol {tol})");
    }

    #[test]
    fn massive_quadrature_at_origin() {
        let q = std_wigner(
            PacketKind::MassiveLorentzian,
            massive(1.0, 1.0),
            PhaseSpacePoint::new(0.0, 0.0, 0.0),
        )
        .unwrap();
        assert!(q.is_converged());
        assert_close(q.value, 1.0 / PI, 1e-12);
    }

    #[test]
    fn massive_quadrature_matches_p0_form() {
        let params = massive(1.0, 1.0);
        for (x, t) in [(0.0, 7.0), (1.5, 3.0), (-4.0, 0.0)] {
            let q = std_wigner(PacketKind::MassiveLorentzian, params, PhaseSpacePoint::new(x, 0.0, t)).unwrap();
            assert_close(q.value, std_massive_p0(params, x, t).unwrap(), 1e-11);
        }
    }

    #[test]
    fn p0_form_examples() {
        let params = massive(1.0, 1.0);
        assert_close(std_massive_p0(params, 0.0, 0.0).unwrap(), 1.0 / PI, 1e-16);
        assert_eq!(
            std_massive_p0(params, 0.0, 0.0).unwrap(),
            std_massive_p0(params, 0.0, 7.0).unwrap()
        );
        let mut last = f64::INFINITY;
        for i in 0..200 {
            let w = std_massive_p0(params, 0.25 * i as f64, 0.0).unwrap();
            assert!(w < last && w >= 0.0);
            last = w;
        }
        assert!(std_massive_p0(massless(1.0), 0.0, 0.0).is_err());
    }

    #[test]
    fn nonrel_examples() {
        let params = massive(1.0, 1.0);
        assert_close(
            nonrel_wigner(params, PhaseSpacePoint::new(0.0, 0.0, 0.0)).unwrap(),
            1.0 / PI,
            1e-16,
        );
        let w = nonrel_wigner(params, PhaseSpacePoint::new(6.0, 2.0, 3.0)).unwrap();
        assert_close(w, 0.005_830_048_930_056_39, 1e-17);
        for (x, p, t) in [(0.3, -0.4, 2.0), (-1.0, 1.0, 0.0), (2.0, 0.7, -1.5)] {
            let pt = PhaseSpacePoint::new(x, p, t);
            let q = std_wigner(PacketKind::NonrelGaussian, params, pt).unwrap();
            assert_close(q.value, nonrel_wigner(params, pt).unwrap(), 1e-10);
        }
    }

    #[test]
    fn massless_closed_form_values() {
        // mpmath quadrature of the defining integral
        let params = massless(1.0);
        let cases = [
            ((0.0, 0.3, 0.0), 0.279_507_471_074_287_2),
            ((0.5, 0.4, 1.0), 0.239_060_962_235_124_95),
            ((10.0, 2.0, 0.0), -3.419_680_113_215_14e-5),
            ((-1.3, -0.7, 2.5), 0.099_550_055_017_194_5),
        ];
        for ((x, p, t), want) in cases {
            let pt = PhaseSpacePoint::new(x, p, t);
            assert_close(std_closed_form_massless(params, pt).unwrap(), want, 1e-14);
            let q = std_wigner(PacketKind::MasslessLorentzian, params, pt).unwrap();
            assert!(q.is_converged(), "{q:?}");
            assert_close(q.value, want, 1e-10);
        }
        assert_close(
            std_closed_form_massless(params, PhaseSpacePoint::new(0.0, 0.0, 0.0)).unwrap(),
            1.0 / PI,
            1e-16,
        );
    }

    #[test]
    fn cosine_variant_disagrees_with_quadrature() {
        let params = massless(1.0);
        let pt = PhaseSpacePoint::new(0.5, 0.4, 1.0);
        let q = std_wigner(PacketKind::MasslessLorentzian, params, pt).unwrap();
        let variant = std_closed_form_massless_cosine_variant(params, pt).unwrap();
        assert!((variant - q.value).abs() > 1e-2);
    }

    #[test]
    fn massless_origin_is_stationary() {
        let params = massless(1.0);
        for t in [0.0, 1.0, 10.0, 100.0] {
            let pt = PhaseSpacePoint::new(0.0, 0.0, t);
            assert_close(std_closed_form_massless(params, pt).unwrap(), 1.0 / PI, 1e-16);
        }
        let q = std_wigner(
            PacketKind::MasslessLorentzian,
            params,
            PhaseSpacePoint::new(0.0, 0.0, 50.0),
        )
        .unwrap();
        assert_close(q.value, 1.0 / PI, 1e-10);
    }

    #[test]
    fn chiral_quadrature_handles_step() {
        // The chiral packet is half of the Lorentzian in momentum space.
        let params = massless(1.0);
        let pt = PhaseSpacePoint::new(0.2, 0.6, 1.0);
        let q = std_wigner(PacketKind::ChiralPlus, params, pt).unwrap();
        let (re, im) = std_wigner_raw(PacketKind::ChiralPlus, params, pt).unwrap();
        assert!(q.is_converged() && re.is_converged());
        assert_close(q.value, re.value, 1e-10);
        assert!(im.value.abs() <= im.err.max(1e-12));
        let q = std_wigner(PacketKind::ChiralMinus, params, pt).unwrap();
        assert_close(q.value, 0.0, 1e-14);
    }

    #[test]
    fn raw_integral_is_real() {
        let params = massive(1.0, 1.0);
        for (x, p, t) in [(0.5, 0.6, 5.0), (-1.0, 0.2, 1.0)] {
            let pt = PhaseSpacePoint::new(x, p, t);
            let (re, im) = std_wigner_raw(PacketKind::MassiveLorentzian, params, pt).unwrap();
            let q = std_wigner(PacketKind::MassiveLorentzian, params, pt).unwrap();
            assert_close(re.value, q.value, 1e-10);
            assert!(im.value.abs() <= im.err.max(1e-12), "{im:?}");
        }
    }

    #[test]
    fn massive_goes_negative_at_late_times() {
        let params = massive(1.0, 1.0);
        let q = std_wigner(
            PacketKind::MassiveLorentzian,
            params,
            PhaseSpacePoint::new(1.0, 0.4, 10.0),
        )
        .unwrap();
        assert!(q.value < -0.1, "{q:?}");
    }

    #[test]
    fn method_validation() {
        let m0 = massless(1.0);
        let m1 = massive(1.0, 1.0);
        assert!(StdMethod::ClosedMassless
            .validate(PacketKind::MasslessLorentzian, &m0, None)
            .is_ok());
        assert!(StdMethod::ClosedMassless
            .validate(PacketKind::ChiralPlus, &m0, None)
            .is_err());
        assert!(StdMethod::ClosedMassiveP0
            .validate(PacketKind::MassiveLorentzian, &m1, Some(0.0))
            .is_ok());
        assert!(StdMethod::ClosedMassiveP0
            .validate(PacketKind::MassiveLorentzian, &m1, Some(0.1))
            .is_err());
        assert!(StdMethod::NonrelClosed
            .validate(PacketKind::MassiveLorentzian, &m1, None)
            .is_err());
        assert!(StdMethod::Quadrature
            .validate(PacketKind::NonrelGaussian, &m0, None)
            .is_err());
    }
}
