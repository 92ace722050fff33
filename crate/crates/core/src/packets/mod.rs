//! Catalog of analytic wave packets for the free Salpeter particle on a line,
//! in momentum and position representation, with free evolution applied as a
//! momentum-space phase `exp(-i E(p) t)`.
//!
//! Conventions: `phi(x) = (2 pi)^(-1/2) int e^{ipx} phi~(p) dp`, natural units.
//! With `hbar != 1` the amplitudes are left in natural units; the momentum
//! density is then `|phi~|^2 / hbar`, which front ends apply when rescaling.

mod complex_bessel;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::PhysicsParams;
use crate::quadrature::{
    integrate_damped_oscillatory, integrate_partitioned, OscillatorySpec, QuadOptions, QuadResult, ENVELOPE_CUT,
};
use crate::specfun;

pub type Amplitude = Complex64;

/// Extra e-folds beyond `1e-16` used for momentum cutoffs.
const CUTOFF_MARGIN: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PacketKind {
    MasslessLorentzian,
    ChiralPlus,
    ChiralMinus,
    MassiveLorentzian,
    NonrelGaussian,
}

impl PacketKind {
    pub const ALL: [PacketKind; 5] = [
        PacketKind::MasslessLorentzian,
        PacketKind::ChiralPlus,
        PacketKind::ChiralMinus,
        PacketKind::MassiveLorentzian,
        PacketKind::NonrelGaussian,
    ];

    pub fn is_massless(self) -> bool {
        matches!(
            self,
            PacketKind::MasslessLorentzian | PacketKind::ChiralPlus | PacketKind::ChiralMinus
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            PacketKind::MasslessLorentzian => "massless-lorentzian",
            PacketKind::ChiralPlus => "chiral-plus",
            PacketKind::ChiralMinus => "chiral-minus",
            PacketKind::MassiveLorentzian => "massive-lorentzian",
            PacketKind::NonrelGaussian => "nonrel-gaussian",
        }
    }

    pub fn compatible_with(self, params: &PhysicsParams) -> bool {
        self.is_massless() == params.is_massless()
    }
}

impl fmt::Display for PacketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PacketKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PacketKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| crate::error::invalid("packet", format!("unknown packet kind `{s}`")))
    }
}

/// A catalog packet bound to validated parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Packet {
    kind: PacketKind,
    params: PhysicsParams,
    norm: f64,
}

impl Packet {
    pub fn new(kind: PacketKind, params: PhysicsParams) -> Result<Self> {
        if !kind.compatible_with(&params) {
            return Err(Error::IncompatiblePacket {
                kind,
                mass: params.mass(),
            });
        }
        let a = params.width();
        let m = params.mass();
        let norm = match kind {
            PacketKind::MasslessLorentzian => a.sqrt(),
            PacketKind::ChiralPlus | PacketKind::ChiralMinus => (2.0 * a).sqrt(),
            PacketKind::MassiveLorentzian => (2.0 * m * specfun::k1(2.0 * m * a)).sqrt().recip(),
            PacketKind::NonrelGaussian => (a / (PI * m)).powf(0.25),
        };
        if !(norm.is_finite() && norm > 0.0) {
            return Err(crate::error::invalid(
                "width_a",
                format!("normalization underflows for m a = {}", m * a),
            ));
        }
        Ok(Packet { kind, params, norm })
    }

    pub fn kind(&self) -> PacketKind {
        self.kind
    }

    pub fn params(&self) -> &PhysicsParams {
        &self.params
    }

    /// Dispersion relation driving the time evolution.
    pub fn energy(&self, p: f64) -> f64 {
        match self.kind {
            PacketKind::MassiveLorentzian => self.params.energy(p),
            PacketKind::NonrelGaussian => p * p / (2.0 * self.params.mass()),
            _ => p.abs(),
        }
    }

    /// `|dE/dp|` bound over momenta of magnitude at most `p_abs`.
    pub fn max_group_velocity(&self, p_abs: f64) -> f64 {
        match self.kind {
            PacketKind::NonrelGaussian => p_abs / self.params.mass(),
            PacketKind::MassiveLorentzian => p_abs / self.params.energy(p_abs),
            _ => 1.0,
        }
    }

    /// `|phi~(p, t)|`, independent of time.
    pub fn momentum_modulus(&self, p: f64) -> f64 {
        let a = self.params.width();
        let m = self.params.mass();
        match self.kind {
            PacketKind::MasslessLorentzian => self.norm * (-a * p.abs()).exp(),
            PacketKind::ChiralPlus => self.norm * step(p) * (-a * p.abs()).exp(),
            PacketKind::ChiralMinus => self.norm * step(-p) * (-a * p.abs()).exp(),
            PacketKind::MassiveLorentzian => self.norm * (-a * self.params.energy(p)).exp(),
            PacketKind::NonrelGaussian => self.norm * (-a * p * p / (2.0 * m)).exp(),
        }
    }

    /// `phi~(p, t)`.
    pub fn momentum(&self, p: f64, t: f64) -> Amplitude {
        let modulus = self.momentum_modulus(p);
        if modulus == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(modulus, -self.energy(p) * t)
    }

    /// `|p|` beyond which `|phi~|` is below `1e-16` (plus a margin) of its peak.
    pub fn momentum_cutoff(&self) -> f64 {
        let a = self.params.width();
        let m = self.params.mass();
        let drop = ENVELOPE_CUT + CUTOFF_MARGIN;
        match self.kind {
            PacketKind::MassiveLorentzian => {
                let e = m + drop / a;
                ((e - m) * (e + m)).sqrt()
            }
            PacketKind::NonrelGaussian => (2.0 * m * drop / a).sqrt(),
            _ => drop / a,
        }
    }

    /// `phi(x, t)` in closed form.
    pub fn position(&self, x: f64, t: f64) -> Amplitude {
        let a = self.params.width();
        let m = self.params.mass();
        let s = Complex64::new(a, t);
        match self.kind {
            PacketKind::MasslessLorentzian => (2.0 * a / PI).sqrt() * s / (x * x + s * s),
            PacketKind::ChiralPlus => (a / PI).sqrt() / Complex64::new(a, t - x),
            PacketKind::ChiralMinus => (a / PI).sqrt() / Complex64::new(a, x + t),
            PacketKind::MassiveLorentzian => {
                // Principal branch: x^2 + s^2 stays off the negative real axis
                // for a > 0, and Re w >= a.
                let w = (x * x + s * s).sqrt();
                let amp = (m / (PI * specfun::k1(2.0 * m * a))).sqrt();
                amp * s / w * complex_bessel::k1(m * w)
            }
            PacketKind::NonrelGaussian => self.norm * (m / s).sqrt() * (-m * x * x / (2.0 * s)).exp(),
        }
    }

    /// `rho(x, t) = |phi(x, t)|^2`.
    pub fn density(&self, x: f64, t: f64) -> f64 {
        self.position(x, t).norm_sqr()
    }

    /// `int |phi~(p)|^2 dp` by quadrature.
    pub fn norm_squared_quadrature(&self, abs_tol: f64) -> QuadResult {
        let cut = self.momentum_cutoff();
        let a = self.params.width();
        let mut breaks = vec![-cut, 0.0, cut];
        for s in [0.1, 1.0, 4.0] {
            let b = s / a;
            if b < cut {
                breaks.extend([-b, b]);
            }
        }
        breaks.sort_by(f64::total_cmp);
        integrate_partitioned(
            |p| self.momentum_modulus(p).powi(2),
            &breaks,
            QuadOptions::absolute(abs_tol),
        )
    }

    /// `(2 pi)^(-1/2) int e^{ipx} phi~(p, t) dp` by quadrature, with the
    /// combined error of the real and imaginary parts.
    pub fn position_by_quadrature(&self, x: f64, t: f64, abs_tol: f64) -> (Amplitude, QuadResult) {
        let cut = self.momentum_cutoff();
        let frequency = x.abs() + t.abs() * self.max_group_velocity(cut);
        let spec = OscillatorySpec::new(ENVELOPE_CUT / cut, frequency);
        let re = integrate_damped_oscillatory(|p| (self.momentum(p, t) * Complex64::cis(p * x)).re, spec, abs_tol);
        let im = integrate_damped_oscillatory(|p| (self.momentum(p, t) * Complex64::cis(p * x)).im, spec, abs_tol);
        let scale = (2.0 * PI).sqrt().recip();
        let value = Complex64::new(re.value, im.value) * scale;
        (value, re.combine(im).scale(scale))
    }
}

fn step(p: f64) -> f64 {
    if p > 0.0 {
        1.0
    } else if p < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// `phi~(p, t)` for a catalog packet.
pub fn packet_momentum(kind: PacketKind, params: PhysicsParams, p: f64, t: f64) -> Result<Amplitude> {
    Ok(Packet::new(kind, params)?.momentum(p, t))
}

/// `phi(x, t)` for a catalog packet.
pub fn packet_position(kind: PacketKind, params: PhysicsParams, x: f64, t: f64) -> Result<Amplitude> {
    Ok(Packet::new(kind, params)?.position(x, t))
}

/// `|phi - (phi_+ + phi_-)/sqrt 2|` for the massless Lorentzian packet.
pub fn superposition_check(params: PhysicsParams, x: f64, t: f64) -> Result<f64> {
    let full = Packet::new(PacketKind::MasslessLorentzian, params)?;
    let plus = Packet::new(PacketKind::ChiralPlus, params)?;
    let minus = Packet::new(PacketKind::ChiralMinus, params)?;
    let sum = (plus.position(x, t) + minus.position(x, t)) * FRAC_1_SQRT_2;
    Ok((full.position(x, t) - sum).norm())
}

/// `|phi(x, t) - F^{-1}[phi~](x, t)|` with the transform done by quadrature.
pub fn fourier_residual(kind: PacketKind, params: PhysicsParams, x: f64, t: f64) -> Result<f64> {
    let packet = Packet::new(kind, params)?;
    let (numeric, quad) = packet.position_by_quadrature(x, t, 1e-13);
    if !quad.is_converged() {
        return Err(Error::Quadrature { err: quad.err });
    }
    Ok((packet.position(x, t) - numeric).norm())
}
