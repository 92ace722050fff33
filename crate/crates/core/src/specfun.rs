//! Modified Bessel functions of the second kind (Macdonald functions)
//! `K_0`, `K_1`, `K_2` for real positive arguments, and the integral
//! identities the closed-form Wigner functions are built from.
//!
//! For `z <= 2` the functions come from their ascending series; above that
//! from Temme's continued fraction (Steed's algorithm). `K_2` follows from the
//! recurrence `K_2 = K_0 + (2/z) K_1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_damped_oscillatory_from, integrate_partitioned, OscillatorySpec, QuadOptions, QuadResult, ENVELOPE_CUT,
};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;
const SERIES_LIMIT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BesselOrder {
    K0,
    K1,
    K2,
}

impl BesselOrder {
    pub fn order(self) -> u32 {
        match self {
            BesselOrder::K0 => 0,
            BesselOrder::K1 => 1,
            BesselOrder::K2 => 2,
        }
    }
}

impl TryFrom<u32> for BesselOrder {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        match n {
            0 => Ok(BesselOrder::K0),
            1 => Ok(BesselOrder::K1),
            2 => Ok(BesselOrder::K2),
            _ => Err(Error::Unsupported {
                what: "bessel_k",
                requirement: "order 0, 1 or 2",
            }),
        }
    }
}

/// `K_n(z)` for `n` in {0, 1, 2}; `z` must be positive. Returns exactly
/// zero once `exp(-z)` underflows.
pub fn bessel_k(order: BesselOrder, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain {
            function: "bessel_k",
            value: z,
        });
    }
    Ok(match order {
        BesselOrder::K0 => k0(z),
        BesselOrder::K1 => k1(z),
        BesselOrder::K2 => k2(z),
    })
}

pub fn k0(z: f64) -> f64 {
    k0_k1(z).0
}

pub fn k1(z: f64) -> f64 {
    k0_k1(z).1
}

pub fn k2(z: f64) -> f64 {
    let (k0, k1) = k0_k1(z);
    if k1 == 0.0 {
        return 0.0;
    }
    k0 + 2.0 * k1 / z
}

/// `(K_0(z), K_1(z))`. NaN for `z <= 0`.
pub fn k0_k1(z: f64) -> (f64, f64) {
    if !(z > 0.0) {
        return (f64::NAN, f64::NAN);
    }
    if z == f64::INFINITY {
        return (0.0, 0.0);
    }
    if z <= SERIES_LIMIT {
        series(z)
    } else {
        let (s0, s1) = scaled_continued_fraction(z);
        ((s0.ln() - z).exp(), (s1.ln() - z).exp())
    }
}

/// `(K_0, K_1, K_2)` at once.
pub fn k012(z: f64) -> (f64, f64, f64) {
    let (k0, k1) = k0_k1(z);
    let k2 = if k1 == 0.0 { 0.0 } else { k0 + 2.0 * k1 / z };
    (k0, k1, k2)
}

fn series(z: f64) -> (f64, f64) {
    let y = 0.25 * z * z;
    let log_term = (0.5 * z).ln() + EULER_GAMMA;
    // i0 = sum y^k / (k!)^2, i1 = (z/2) sum y^k / (k!(k+1)!)
    let mut term0 = 1.0;
    let mut term1 = 1.0;
    let mut i0 = 1.0;
    let mut i1 = 1.0;
    let mut harmonic = 0.0;
    let mut s0 = 0.0;
    let mut s1 = 1.0; // k = 0: 2 H_0 + 1/(0+1)
    for k in 1..40 {
        let kf = k as f64;
        term0 *= y / (kf * kf);
        term1 *= y / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        i0 += term0;
        i1 += term1;
        s0 += harmonic * term0;
        s1 += (2.0 * harmonic + 1.0 / (kf + 1.0)) * term1;
        if term0 < 1e-18 * i0 && term1 < 1e-18 * i1 {
            break;
        }
    }
    let i1 = 0.5 * z * i1;
    let k0 = -log_term * i0 + s0;
    let k1 = 1.0 / z + log_term * i1 - 0.25 * z * s1;
    (k0, k1)
}

/// Temme's CF2 for `e^z K_0(z)` and `e^z K_1(z)`, valid for `z >= 2`.
fn scaled_continued_fraction(z: f64) -> (f64, f64) {
    const MAXIT: usize = 10_000;
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAXIT {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 0.5 * f64::EPSILON {
            break;
        }
    }
    let h = a1 * h;
    let s0 = (PI / (2.0 * z)).sqrt() / s;
    let s1 = s0 * (0.5 + z - h) / z;
    (s0, s1)
}

/// Integral identities used by the closed-form Wigner functions. Each is
/// checked by adaptive quadrature of the left side against its closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Identity {
    /// `int_0^inf exp(-alpha sqrt(x^2+beta^2)) / sqrt(x^2+beta^2) cos(gamma x) dx
    ///  = K_0(beta sqrt(alpha^2+gamma^2))`
    ExpRootOverRootCosine { alpha: f64, beta: f64, gamma: f64 },
    /// `int_0^inf x^mu K_nu(a x) dx
    ///  = 2^(mu-1) a^(-mu-1) Gamma((1+mu+nu)/2) Gamma((1+mu-nu)/2)`
    PowerBesselMoment { mu: f64, nu: BesselOrder, a: f64 },
    /// `int_0^inf exp(-p x) cos(q x + lambda) dx = (p cos(lambda) - q sin(lambda)) / (p^2+q^2)`
    DampedCosine { p: f64, q: f64, lambda: f64 },
    /// `int_0^inf exp(-alpha sqrt(x^2+beta^2)) cos(gamma x) dx
    ///  = alpha beta / sqrt(alpha^2+gamma^2) K_1(beta sqrt(alpha^2+gamma^2))`
    ExpRootCosine { alpha: f64, beta: f64, gamma: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub lhs: QuadResult,
    pub rhs: f64,
}

impl IdentityCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs.value - self.rhs).abs()
    }
}

fn require(cond: bool, what: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Unsupported {
            what: "identity",
            requirement: what,
        })
    }
}

impl Identity {
    pub fn closed_form(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            Identity::ExpRootOverRootCosine { alpha, beta, gamma } => k0(beta * alpha.hypot(gamma)),
            Identity::PowerBesselMoment { mu, nu, a } => {
                let n = nu.order() as f64;
                2f64.powf(mu - 1.0)
                    * a.powf(-mu - 1.0)
                    * libm::tgamma(0.5 * (1.0 + mu + n))
                    * libm::tgamma(0.5 * (1.0 + mu - n))
            }
            Identity::DampedCosine { p, q, lambda } => (p * lambda.cos() - q * lambda.sin()) / (p * p + q * q),
            Identity::ExpRootCosine { alpha, beta, gamma } => {
                let r = alpha.hypot(gamma);
                alpha * beta / r * k1(beta * r)
            }
        })
    }

    fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match *self {
            Identity::ExpRootOverRootCosine { alpha, beta, gamma } | Identity::ExpRootCosine { alpha, beta, gamma } => {
                require(finite(&[alpha, beta, gamma]), "finite parameters")?;
                require(alpha > 0.0 && beta > 0.0, "alpha > 0 and beta > 0")
            }
            Identity::PowerBesselMoment { mu, nu, a } => {
                require(finite(&[mu, a]), "finite parameters")?;
                let n = nu.order() as f64;
                require(mu + 1.0 - n > 0.0 && a > 0.0, "mu + 1 - nu > 0 and a > 0")
            }
            Identity::DampedCosine { p, q, lambda } => {
                require(finite(&[p, q, lambda]), "finite parameters")?;
                require(p > 0.0, "p > 0")
            }
        }
    }

    /// Left side by quadrature.
    pub fn quadrature(&self, abs_tol: f64) -> Result<QuadResult> {
        self.validate()?;
        Ok(match *self {
            Identity::ExpRootOverRootCosine { alpha, beta, gamma } => {
                let spec = OscillatorySpec::new(alpha, gamma.abs()).with_core(0.0, beta);
                integrate_damped_oscillatory_from(
                    |x: f64| {
                        let r = x.hypot(beta);
                        (-alpha * (r - beta)).exp() / r * (gamma * x).cos()
                    },
                    0.0,
                    spec,
                    abs_tol * (alpha * beta).exp(),
                )
                .scale((-alpha * beta).exp())
            }
            Identity::ExpRootCosine { alpha, beta, gamma } => {
                let spec = OscillatorySpec::new(alpha, gamma.abs()).with_core(0.0, beta);
                integrate_damped_oscillatory_from(
                    |x: f64| (-alpha * (x.hypot(beta) - beta)).exp() * (gamma * x).cos(),
                    0.0,
                    spec,
                    abs_tol * (alpha * beta).exp(),
                )
                .scale((-alpha * beta).exp())
            }
            Identity::DampedCosine { p, q, lambda } => integrate_damped_oscillatory_from(
                |x: f64| (-p * x).exp() * (q * x + lambda).cos(),
                0.0,
                OscillatorySpec::new(p, q.abs()),
                abs_tol,
            ),
            Identity::PowerBesselMoment { mu, nu, a } => {
                let hi = (ENVELOPE_CUT + 10.0 + mu.max(0.0) * 5.0) / a;
                let scale = 1.0 / a;
                let breaks = [0.0, 1e-6 * scale, 1e-3 * scale, 0.1 * scale, scale, 4.0 * scale, hi];
                integrate_partitioned(
                    |x: f64| x.powf(mu) * bessel_k(nu, a * x).unwrap_or(0.0),
                    &breaks,
                    QuadOptions::absolute(abs_tol),
                )
            }
        })
    }

    pub fn check(&self, abs_tol: f64) -> Result<IdentityCheck> {
        Ok(IdentityCheck {
            lhs: self.quadrature(abs_tol)?,
            rhs: self.closed_form()?,
        })
    }
}

/// `|LHS - RHS|` for an identity, LHS by adaptive quadrature.
pub fn identity_residual(identity: Identity) -> Result<f64> {
    identity.check(1e-12).map(|c| c.residual())
}

/// `K_n(z) = int_0^inf e^{-z cosh u} cosh(n u) du` by quadrature, an
/// independent check on [`bessel_k`].
pub fn bessel_k_integral(order: BesselOrder, z: f64) -> Result<QuadResult> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain {
            function: "bessel_k_integral",
            value: z,
        });
    }
    let n = order.order() as f64;
    // e^{-z (cosh u - 1)} falls below 1e-18 of its peak beyond this point.
    let hi = (1.0 + (ENVELOPE_CUT + 4.0 + n * 20.0) / z).acosh() + 2.0;
    let scale = (-z).exp();
    let f = |u: f64| {
        let s = (0.5 * u).sinh();
        (-2.0 * z * s * s).exp() * (n * u).cosh()
    };
    let breaks: Vec<f64> = (0..=32).map(|i| hi * i as f64 / 32.0).collect();
    let q = integrate_partitioned(f, &breaks, QuadOptions::absolute(f64::MIN_POSITIVE).with_rel_tol(1e-15));
    Ok(q.scale(scale))
}
