//! Densities, probability currents, marginals and the residuals of the
//! continuity, transport and wave equations, plus the nonlocal evolution
//! kernel of the standard-definition Wigner function.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::packets::{Packet, PacketKind};
use crate::params::{PhaseSpacePoint, PhysicsParams};
use crate::quadrature::{integrate_partitioned, kronrod_nodes, QuadOptions, QuadResult, QuadStatus};
use crate::specfun;
use crate::wigner_zm::{zm_closed_form, ZmClosed};

/// Default steps for first and second central differences.
pub const H_FIRST: f64 = 1e-4;
pub const H_SECOND: f64 = 1e-3;

const WINDOW_PANELS: usize = 16;
const WINDOW_DOUBLINGS: usize = 12;
const TAIL_TOL: f64 = 1e-10;
const DEFICIT_LIMIT: f64 = 1e-6;
const CURRENT_REFINEMENTS: usize = 4;
const CURRENT_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityPair {
    pub rho: f64,
    pub j: f64,
    /// Quadrature error of `j`; zero for closed forms.
    pub j_err: f64,
}

impl DensityPair {
    fn exact(rho: f64, j: f64) -> Self {
        DensityPair { rho, j, j_err: 0.0 }
    }
}

/// Central difference with one Richardson step.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

fn massless_lorentzian_rho(a: f64, x: f64, t: f64) -> f64 {
    let u = x * x - t * t + a * a;
    2.0 * a / PI * (a * a + t * t) / (u * u + 4.0 * a * a * t * t)
}

/// `atanh(z) - z` without cancellation for small `z`.
fn atanh_minus_identity(z: f64) -> f64 {
    if z.abs() > 0.1 {
        return z.atanh() - z;
    }
    let z2 = z * z;
    let mut term = z * z2;
    let mut sum = 0.0f64;
    let mut n = 3.0;
    while term.abs() > 1e-17 * sum.abs() {
        sum += term / n;
        term *= z2;
        n += 2.0;
    }
    sum
}

fn massless_lorentzian_j(a: f64, x: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    // The log term is 2 atanh(z); splitting off z removes the 1/t cancellation.
    let s = x * x + a * a;
    let big = s + t * t;
    let u = s - t * t;
    let d = u * u + 4.0 * a * a * t * t;
    let z = 2.0 * x * t / big;
    a / (2.0 * PI * t * t) * atanh_minus_identity(z) + 4.0 * a * x * t * (t * t + a * a) / (PI * big * d)
}

fn chiral_rho(a: f64, x: f64) -> f64 {
    a / (PI * (x * x + a * a))
}

/// Exact density and current of a catalog packet. Closed forms are used for
/// the massless packets and the nonrelativistic Gaussian; the massive
/// Lorentzian current comes from the double momentum integral.
pub fn exact_density_current(kind: PacketKind, params: PhysicsParams, x: f64, t: f64) -> Result<DensityPair> {
    let packet = Packet::new(kind, params)?;
    let a = params.width();
    let pair = match kind {
        PacketKind::MasslessLorentzian => {
            DensityPair::exact(massless_lorentzian_rho(a, x, t), massless_lorentzian_j(a, x, t))
        }
        PacketKind::ChiralPlus => {
            let rho = chiral_rho(a, x - t);
            DensityPair::exact(rho, rho)
        }
        PacketKind::ChiralMinus => {
            let rho = chiral_rho(a, x + t);
            DensityPair::exact(rho, -rho)
        }
        PacketKind::NonrelGaussian => {
            let rho = packet.density(x, t);
            DensityPair::exact(rho, rho * x * t / (a * a + t * t))
        }
        PacketKind::MassiveLorentzian => {
            let q = current_by_quadrature(kind, params, x, t)?;
            DensityPair {
                rho: packet.density(x, t),
                j: q.value,
                j_err: q.err,
            }
        }
    };
    Ok(pair)
}

/// `j(x, t) = (2 pi)^-1 int dp dk w(p, k) e^{i(k-p)x} conj(phi~(p)) phi~(k)` with
/// `w = (p+k)/(E(p)+E(k))`, or `(p+k)/2m` for the nonrelativistic packet.
/// Evaluated with a tensor-product Kronrod rule on panels spanning at most
/// `pi/4` of phase; the embedded Gauss rule gives the error estimate, and
/// panels are halved until it meets the tolerance.
pub fn current_by_quadrature(kind: PacketKind, params: PhysicsParams, x: f64, t: f64) -> Result<QuadResult> {
    let packet = Packet::new(kind, params)?;
    let nonrel = kind == PacketKind::NonrelGaussian;
    let m = params.mass();
    let cut = packet.momentum_cutoff();
    let frequency = x.abs() + t.abs() * packet.max_group_velocity(cut);
    let mut width = (FRAC_PI_4 / frequency.max(f64::MIN_POSITIVE)).min(cut / 16.0);
    let mut last = None;
    for _ in 0..CURRENT_REFINEMENTS {
        let per_side = (cut / width).ceil() as usize;
        let breaks: Vec<f64> = (-(per_side as i64)..=per_side as i64)
            .map(|i| i as f64 * cut / per_side as f64)
            .collect();
        let nodes = kronrod_nodes(&breaks);
        let amp: Vec<Complex64> = nodes
            .iter()
            .map(|n| packet.momentum(n.x, t) * Complex64::cis(n.x * x))
            .collect();
        let energy: Vec<f64> = nodes.iter().map(|n| packet.energy(n.x)).collect();
        let (mut sum_k, mut sum_g) = (0.0, 0.0);
        for (i, ni) in nodes.iter().enumerate() {
            let (mut row_k, mut row_g) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for (j, nj) in nodes.iter().enumerate() {
                let w = if nonrel {
                    (ni.x + nj.x) / (2.0 * m)
                } else {
                    let den = energy[i] + energy[j];
                    if den == 0.0 {
                        0.0
                    } else {
                        (ni.x + nj.x) / den
                    }
                };
                let term = amp[j] * w;
                row_k += term * nj.wk;
                row_g += term * nj.wg;
            }
            let left = amp[i].conj();
            sum_k += (left * row_k).re * ni.wk;
            sum_g += (left * row_g).re * ni.wg;
        }
        let value = sum_k / (2.0 * PI);
        let err = ((sum_k - sum_g) / (2.0 * PI)).abs();
        let evaluations = nodes.len() * nodes.len();
        if !value.is_finite() {
            return Ok(QuadResult {
                value,
                err: f64::INFINITY,
                evaluations,
                status: QuadStatus::NonFinite,
            });
        }
        let result = QuadResult {
            value,
            err,
            evaluations,
            status: QuadStatus::Converged,
        };
        if err <= CURRENT_TOL * value.abs().max(1.0) {
            return Ok(result);
        }
        last = Some(result);
        width *= 0.5;
    }
    Ok(QuadResult {
        status: QuadStatus::BudgetExhausted,
        ..last.expect("at least one refinement")
    })
}

/// `rho_0` and `j_0` of the massless-limit ZM function of the massless
/// Lorentzian packet: averages of the two chiral densities and currents.
pub fn zm_massless_density_current(params: PhysicsParams, x: f64, t: f64) -> Result<DensityPair> {
    if !params.is_massless() {
        return Err(Error::IncompatiblePacket {
            kind: PacketKind::MasslessLorentzian,
            mass: params.mass(),
        });
    }
    let a = params.width();
    let (r, l) = (chiral_rho(a, x - t), chiral_rho(a, x + t));
    Ok(DensityPair::exact(0.5 * (r + l), 0.5 * (r - l)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginalAxis {
    /// `int W dp` at fixed `x`: the position density.
    OverP,
    /// `int W dx` at fixed `p`: the momentum density.
    OverX,
}

/// Integration window; widened by doubling until the tails vanish.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub center: f64,
    pub half_width: f64,
}

impl Window {
    pub fn new(center: f64, half_width: f64) -> Result<Self> {
        if !(center.is_finite() && half_width > 0.0 && half_width.is_finite()) {
            return Err(invalid(
                "window",
                format!("need finite center and positive width, got {center}, {half_width}"),
            ));
        }
        Ok(Window { center, half_width })
    }
}

fn integrate_window<F: Fn(f64) -> f64>(f: F, window: Window) -> Result<QuadResult> {
    let opts = QuadOptions::absolute(1e-12).with_rel_tol(1e-12);
    let panels = |lo: f64, hi: f64| -> Vec<f64> {
        (0..=WINDOW_PANELS)
            .map(|i| lo + (hi - lo) * i as f64 / WINDOW_PANELS as f64)
            .collect()
    };
    let c = window.center;
    let mut l = window.half_width;
    let mut breaks = panels(c - l, c + l);
    breaks.push(c);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut total = integrate_partitioned(&f, &breaks, opts);
    let mut deficit = f64::INFINITY;
    for _ in 0..WINDOW_DOUBLINGS {
        let left = integrate_partitioned(&f, &panels(c - 2.0 * l, c - l), opts);
        let right = integrate_partitioned(&f, &panels(c + l, c + 2.0 * l), opts);
        let tail = left.combine(right);
        total = total.combine(tail);
        l *= 2.0;
        let edge = f(c - l).abs().max(f(c + l).abs());
        deficit = tail.value.abs() + edge * l;
        if deficit <= TAIL_TOL {
            return Ok(total);
        }
    }
    if deficit > DEFICIT_LIMIT {
        Err(Error::WindowTruncation { deficit })
    } else {
        Ok(total)
    }
}

/// Marginal of a Wigner evaluator along one axis at time `t`; `fixed` is the
/// coordinate that is held constant.
pub fn marginal<F: Fn(PhaseSpacePoint) -> f64>(
    axis: MarginalAxis,
    eval: F,
    fixed: f64,
    t: f64,
    window: Window,
) -> Result<QuadResult> {
    match axis {
        MarginalAxis::OverP => integrate_window(|p| eval(PhaseSpacePoint::new(fixed, p, t)), window),
        MarginalAxis::OverX => integrate_window(|x| eval(PhaseSpacePoint::new(x, fixed, t)), window),
    }
}

/// `int dp v(p) W(x, p, t)` with the relativistic velocity `p / p0` (`sgn p`
/// when massless).
pub fn current_from_wigner<F: Fn(PhaseSpacePoint) -> f64>(
    eval: F,
    params: PhysicsParams,
    x: f64,
    t: f64,
    window: Window,
) -> Result<QuadResult> {
    integrate_window(|p| params.velocity(p) * eval(PhaseSpacePoint::new(x, p, t)), window)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurrentPair {
    /// True density and current of the packet.
    Exact(PacketKind),
    /// Marginal density and current of the massless-limit ZM function.
    ZmMasslessLorentzian,
}

fn pair_at(pair: CurrentPair, params: PhysicsParams, x: f64, t: f64) -> Result<DensityPair> {
    match pair {
        CurrentPair::Exact(kind) => exact_density_current(kind, params, x, t),
        CurrentPair::ZmMasslessLorentzian => zm_massless_density_current(params, x, t),
    }
}

/// `|d rho/dt + dj/dx|` by central differences with step `h`.
pub fn continuity_residual(pair: CurrentPair, params: PhysicsParams, x: f64, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(invalid("h", "step must be positive"));
    }
    pair_at(pair, params, x, t)?;
    let rho = |t: f64| pair_at(pair, params, x, t).map(|d| d.rho).unwrap_or(f64::NAN);
    let j = |x: f64| pair_at(pair, params, x, t).map(|d| d.j).unwrap_or(f64::NAN);
    Ok((derivative(rho, t, h) + derivative(j, x, h)).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportResidual {
    /// `|W(x, p, t + tau) - W(x - v tau, p, t)|`.
    pub shift: f64,
    /// `|dW/dt + v dW/dx|` by central differences.
    pub pde: f64,
}

/// Shift-identity residual of an arbitrary evaluator under free streaming
/// with velocity `v`.
pub fn shift_residual<F: Fn(PhaseSpacePoint) -> f64>(eval: F, v: f64, pt: PhaseSpacePoint, tau: f64) -> f64 {
    let later = eval(PhaseSpacePoint::new(pt.x, pt.p, pt.t + tau));
    let moved = eval(PhaseSpacePoint::new(pt.x - v * tau, pt.p, pt.t));
    (later - moved).abs()
}

pub fn pde_residual<F: Fn(PhaseSpacePoint) -> f64>(eval: F, v: f64, pt: PhaseSpacePoint, h: f64) -> f64 {
    let dt = derivative(|t| eval(PhaseSpacePoint::new(pt.x, pt.p, t)), pt.t, h);
    let dx = derivative(|x| eval(PhaseSpacePoint::new(x, pt.p, pt.t)), pt.x, h);
    (dt + v * dx).abs()
}

/// Local transport residuals of a ZM closed form.
pub fn transport_residual_zm(
    which: ZmClosed,
    params: PhysicsParams,
    pt: PhaseSpacePoint,
    h: f64,
    tau: f64,
) -> Result<TransportResidual> {
    if !(h > 0.0) {
        return Err(invalid("h", "step must be positive"));
    }
    zm_closed_form(which, params, pt)?;
    let eval = |q: PhaseSpacePoint| zm_closed_form(which, params, q).unwrap_or(f64::NAN);
    let v = params.velocity(pt.p);
    Ok(TransportResidual {
        shift: shift_residual(eval, v, pt, tau),
        pde: pde_residual(eval, v, pt, h),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveDensity {
    /// `|phi|^2` of the massless Lorentzian packet.
    Exact,
    /// The p-marginal of its massless-limit ZM function.
    ZmMassless,
}

/// `d^2 rho/dt^2 - d^2 rho/dx^2` (signed) by central differences.
pub fn wave_equation_residual(which: WaveDensity, params: PhysicsParams, x: f64, t: f64, h: f64) -> Result<f64> {
    if !params.is_massless() {
        return Err(Error::Unsupported {
            what: "the wave-equation check",
            requirement: "mass = 0",
        });
    }
    if !(h > 0.0) {
        return Err(invalid("h", "step must be positive"));
    }
    let a = params.width();
    let rho = |x: f64, t: f64| match which {
        WaveDensity::Exact => massless_lorentzian_rho(a, x, t),
        WaveDensity::ZmMassless => 0.5 * (chiral_rho(a, x - t) + chiral_rho(a, x + t)),
    };
    Ok(second_derivative(|t| rho(x, t), t, h) - second_derivative(|x| rho(x, t), x, h))
}

/// Samples of `W(q, p, t)` at `q = x0 + i dx` for fixed `p` and `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSlice {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
    pub p: f64,
    pub t: f64,
}

impl KernelSlice {
    pub fn new(x0: f64, dx: f64, values: Vec<f64>, p: f64, t: f64) -> Result<Self> {
        if !(dx > 0.0 && dx.is_finite() && x0.is_finite()) {
            return Err(invalid("dx", "slice spacing must be positive and finite"));
        }
        if values.len() < 5 {
            return Err(Error::Shape {
                expected: 5,
                actual: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "kernel slice",
                index,
            });
        }
        Ok(KernelSlice { x0, dx, values, p, t })
    }

    /// Samples `eval` on `[center - reach, center + reach]` with spacing `dx`,
    /// so that `center` is a node.
    pub fn sample<F>(eval: F, center: f64, reach: f64, dx: f64, p: f64, t: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Sync,
    {
        if !(reach > 0.0 && dx > 0.0) {
            return Err(invalid("reach", "slice reach and spacing must be positive"));
        }
        let half = (reach / dx).ceil() as usize;
        let x0 = center - half as f64 * dx;
        let node = |i: usize| center + (i as f64 - half as f64) * dx;
        #[cfg(feature = "parallel")]
        let values = {
            use rayon::prelude::*;
            (0..=2 * half).into_par_iter().map(|i| eval(node(i))).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let values = (0..=2 * half).map(|i| eval(node(i))).collect();
        KernelSlice::new(x0, dx, values, p, t)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn node(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    fn index_of(&self, x: f64) -> Result<usize> {
        let r = (x - self.x0) / self.dx;
        let i = r.round();
        if (r - i).abs() > 1e-6 || i < 0.0 || i as usize >= self.values.len() {
            return Err(Error::OffLattice { x });
        }
        Ok(i as usize)
    }

    /// Five-point derivative at node `i`.
    fn slope(&self, i: usize) -> f64 {
        let w = &self.values;
        (w[i - 2] - 8.0 * w[i - 1] + 8.0 * w[i + 1] - w[i + 2]) / (12.0 * self.dx)
    }
}

/// Odd evolution kernel `K(r)`: `(2m/pi) K1(2m|r|) sin(2pr) / |r|`, or
/// `sin(2pr) / (pi r^2)` when massless.
pub fn evolution_kernel(params: &PhysicsParams, p: f64, r: f64) -> f64 {
    let m = params.mass();
    let s = (2.0 * p * r).sin();
    if params.is_massless() {
        s / (PI * r * r)
    } else {
        2.0 * m / PI * specfun::k1(2.0 * m * r.abs()) * s / r.abs()
    }
}

/// `int_R^inf |K(u)| du` bound used to judge the slice width.
fn kernel_tail(params: &PhysicsParams, reach: f64) -> f64 {
    if params.is_massless() {
        1.0 / (PI * reach)
    } else {
        let m = params.mass();
        specfun::k1(2.0 * m * reach) / (PI * reach)
    }
}

/// `dW/dt` at the slice node `x` from the nonlocal evolution law
/// `dW/dt = int dq K(x - q) W(q, p, t)`. The principal value at `q = x` is
/// taken by pairing `x - u` with `x + u`; the paired integrand is even in `u`
/// and integrated with the trapezoid rule.
pub fn std_kernel_rhs(slice: &KernelSlice, params: PhysicsParams, x: f64) -> Result<f64> {
    let i = slice.index_of(x)?;
    let n = slice.len();
    let reach_nodes = i.min(n - 1 - i);
    if reach_nodes < 2 {
        return Err(Error::SliceTooNarrow {
            tail: f64::INFINITY,
            limit: 0.0,
        });
    }
    let w = &slice.values;
    let p = slice.p;
    let dx = slice.dx;
    let peak = w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let edge_span = (n / 20).max(2);
    let edge = w[..edge_span]
        .iter()
        .chain(&w[n - edge_span..])
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let reach = reach_nodes as f64 * dx;
    let tail = edge * kernel_tail(&params, reach);
    let limit = 1e-7 * peak.max(f64::MIN_POSITIVE);
    if tail > limit {
        return Err(Error::SliceTooNarrow { tail, limit });
    }
    let mut sum = -0.5 * (4.0 * p / PI) * slice.slope(i);
    for k in 1..=reach_nodes {
        let u = k as f64 * dx;
        let term = evolution_kernel(&params, p, u) * (w[i - k] - w[i + k]);
        sum += if k == reach_nodes { 0.5 * term } else { term };
    }
    Ok(sum * dx)
}

/// The same right-hand side for an evaluator `W(q)`, using adaptive
/// principal-value quadrature over `|q - x| <= reach`.
pub fn std_kernel_rhs_fn<F: Fn(f64) -> f64>(
    eval: F,
    params: PhysicsParams,
    x: f64,
    p: f64,
    reach: f64,
) -> Result<QuadResult> {
    if !(reach > 0.0) {
        return Err(invalid("reach", "must be positive"));
    }
    let integrand = |q: f64| {
        if q == x {
            0.0
        } else {
            evolution_kernel(&params, p, x - q) * eval(q)
        }
    };
    Ok(crate::quadrature::integrate_principal_value(
        integrand,
        x,
        x - reach,
        x + reach,
        1e-12,
    ))
}

/// Nonrelativistic limit of the kernel law: `dW/dt = -(p/m) dW/dx` at node `x`.
pub fn nonrel_kernel_rhs(slice: &KernelSlice, params: PhysicsParams, x: f64) -> Result<f64> {
    if params.is_massless() {
        return Err(Error::Unsupported {
            what: "the nonrelativistic kernel",
            requirement: "mass > 0",
        });
    }
    let i = slice.index_of(x)?;
    if i < 2 || i + 2 >= slice.len() {
        return Err(Error::SliceTooNarrow {
            tail: f64::INFINITY,
            limit: 0.0,
        });
    }
    Ok(-slice.p / params.mass() * slice.slope(i))
}
