use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Physical parameters shared by every packet and Wigner evaluator.
///
/// All evaluators work in natural units (`hbar = c = 1`); `hbar` and `c` are
/// carried only so that front ends can rescale output. A mass of exactly zero
/// selects the massless code paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct PhysicsParams {
    mass: f64,
    width: f64,
    hbar: f64,
    c: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    mass: f64,
    width_a: f64,
    #[serde(default = "one")]
    hbar: f64,
    #[serde(default = "one")]
    c: f64,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<RawParams> for PhysicsParams {
    type Error = crate::Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        Self::new(raw.mass, raw.width_a)?.with_units(raw.hbar, raw.c)
    }
}

impl From<PhysicsParams> for RawParams {
    fn from(p: PhysicsParams) -> Self {
        RawParams {
            mass: p.mass,
            width_a: p.width,
            hbar: p.hbar,
            c: p.c,
        }
    }
}

impl PhysicsParams {
    pub fn new(mass: f64, width_a: f64) -> Result<Self> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(invalid("mass", format!("must be finite and >= 0, got {mass}")));
        }
        if !(width_a.is_finite() && width_a > 0.0) {
            return Err(invalid("width_a", format!("must be finite and > 0, got {width_a}")));
        }
        Ok(PhysicsParams {
            mass,
            width: width_a,
            hbar: 1.0,
            c: 1.0,
        })
    }

    pub fn massless(width_a: f64) -> Result<Self> {
        Self::new(0.0, width_a)
    }

    pub fn with_units(mut self, hbar: f64, c: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(invalid("hbar", format!("must be finite and > 0, got {hbar}")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(invalid("c", format!("must be finite and > 0, got {c}")));
        }
        self.hbar = hbar;
        self.c = c;
        Ok(self)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// The packet width parameter `a`.
    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn is_massless(&self) -> bool {
        self.mass == 0.0
    }

    /// On-shell energy `sqrt(p^2 + m^2)` in natural units.
    pub fn energy(&self, p: f64) -> f64 {
        p.hypot(self.mass)
    }

    /// Group velocity `p / p0`; `sgn(p)` on the light cone.
    pub fn velocity(&self, p: f64) -> f64 {
        if self.is_massless() {
            if p == 0.0 {
                0.0
            } else {
                p.signum()
            }
        } else {
            p / self.energy(p)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub x: f64,
    pub p: f64,
    pub t: f64,
}

impl PhaseSpacePoint {
    pub fn new(x: f64, p: f64, t: f64) -> Self {
        PhaseSpacePoint { x, p, t }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.p.is_finite() && self.t.is_finite()
    }
}
