use wasm_bindgen::prelude::*;

use salpeter_wigner::field::{Definition, FieldSpec, FormChoice};
use salpeter_wigner::grid::make_grid;
use salpeter_wigner::packets::{Packet, PacketKind};
use salpeter_wigner::params::{PhaseSpacePoint, PhysicsParams};
use salpeter_wigner::transport::{shift_residual, zm_massless_density_current};
use salpeter_wigner::wigner_std::std_closed_form_massless;
use salpeter_wigner::wigner_zm::{zm_closed_form, ZmClosed};

/// A sampled field, row-major over `x` then `p`.
#[wasm_bindgen]
pub struct Heatmap {
    values: Vec<f64>,
    nx: usize,
    np: usize,
    flagged: usize,
}

#[wasm_bindgen]
impl Heatmap {
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn np(&self) -> usize {
        self.np
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn flagged(&self) -> usize {
        self.flagged
    }
}

fn definition(name: &str) -> Result<Definition, String> {
    match name {
        "zm" => Ok(Definition::Zm),
        "std" => Ok(Definition::Std),
        "nonrel" => Ok(Definition::Nonrel),
        other => Err(format!("unknown definition `{other}`")),
    }
}

fn params_for(kind: PacketKind, m: f64, a: f64) -> Result<PhysicsParams, String> {
    let mass = if kind.is_massless() { 0.0 } else { m };
    PhysicsParams::new(mass, a).map_err(|e| e.to_string())
}

#[allow(clippy::too_many_arguments)]
pub fn heatmap(
    def: &str,
    packet: &str,
    m: f64,
    a: f64,
    x_range: (f64, f64, usize),
    p_range: (f64, f64, usize),
    t: f64,
) -> Result<Heatmap, String> {
    let kind: PacketKind = packet.parse().map_err(|e: salpeter_wigner::Error| e.to_string())?;
    let spec =
        FieldSpec::new(definition(def)?, kind, params_for(kind, m, a)?, FormChoice::Auto).map_err(|e| e.to_string())?;
    let grid =
        make_grid(x_range.0, x_range.1, x_range.2, p_range.0, p_range.1, p_range.2, t).map_err(|e| e.to_string())?;
    let field = spec.evaluate_field(&grid).map_err(|e| e.to_string())?;
    Ok(Heatmap {
        values: field.values().to_vec(),
        nx: x_range.2,
        np: p_range.2,
        flagged: field.flagged_count(),
    })
}

/// Exact density and the ZM p-marginal of the massless Lorentzian packet,
/// interleaved as `[rho, rho0, rho, rho0, ...]`.
pub fn densities(a: f64, t: f64, x_lo: f64, x_hi: f64, n: usize) -> Result<Vec<f64>, String> {
    if n < 2 || !(x_lo < x_hi) {
        return Err("need n >= 2 and x_lo < x_hi".into());
    }
    let params = PhysicsParams::massless(a).map_err(|e| e.to_string())?;
    let packet = Packet::new(PacketKind::MasslessLorentzian, params).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let x = x_lo + (x_hi - x_lo) * i as f64 / (n - 1) as f64;
        out.push(packet.density(x, t));
        out.push(
            zm_massless_density_current(params, x, t)
                .map_err(|e| e.to_string())?
                .rho,
        );
    }
    Ok(out)
}

/// `|W(x, p, t + tau) - W(x - v tau, p, t)|` for the massless ZM and standard closed forms.
pub fn shift_pair(a: f64, x: f64, p: f64, t: f64, tau: f64) -> Result<Vec<f64>, String> {
    let params = PhysicsParams::massless(a).map_err(|e| e.to_string())?;
    let pt = PhaseSpacePoint::new(x, p, t);
    let zm = |q: PhaseSpacePoint| zm_closed_form(ZmClosed::MasslessLorentzian, params, q).unwrap_or(f64::NAN);
    let std = |q: PhaseSpacePoint| std_closed_form_massless(params, q).unwrap_or(f64::NAN);
    let v = params.velocity(p);
    Ok(vec![shift_residual(zm, v, pt, tau), shift_residual(std, v, pt, tau)])
}

#[wasm_bindgen(js_name = wignerHeatmap)]
#[allow(clippy::too_many_arguments)]
pub fn wigner_heatmap(
    def: &str,
    packet: &str,
    m: f64,
    a: f64,
    x_lo: f64,
    x_hi: f64,
    nx: usize,
    p_lo: f64,
    p_hi: f64,
    np: usize,
    t: f64,
) -> Result<Heatmap, JsError> {
    heatmap(def, packet, m, a, (x_lo, x_hi, nx), (p_lo, p_hi, np), t).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = densityProfile)]
pub fn density_profile(a: f64, t: f64, x_lo: f64, x_hi: f64, n: usize) -> Result<Vec<f64>, JsError> {
    densities(a, t, x_lo, x_hi, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = shiftResiduals)]
pub fn shift_residuals(a: f64, x: f64, p: f64, t: f64, tau: f64) -> Result<Vec<f64>, JsError> {
    shift_pair(a, x, p, t, tau).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heatmap_shapes_and_errors() {
        let h = heatmap(
            "zm",
            "massless-lorentzian",
            0.0,
            1.0,
            (-4.0, 4.0, 9),
            (-2.0, 2.0, 5),
            1.0,
        )
        .unwrap();
        assert_eq!(h.values().len(), 45);
        assert!(h.min() >= 0.0 && h.max() > 0.0);
        assert_eq!(h.flagged(), 0);
        let s = heatmap(
            "std",
            "massive-lorentzian",
            1.0,
            1.0,
            (-2.0, 2.0, 3),
            (0.0, 1.0, 2),
            5.0,
        )
        .unwrap();
        assert_eq!((s.nx(), s.np()), (3, 2));
        assert!(heatmap("nope", "chiral-plus", 0.0, 1.0, (-1.0, 1.0, 2), (-1.0, 1.0, 2), 0.0).is_err());
        assert!(heatmap("zm", "chiral-plus", 0.0, 1.0, (1.0, 1.0, 2), (-1.0, 1.0, 2), 0.0).is_err());
    }

    #[test]
    fn density_profile_shows_missing_interference() {
        let d = densities(1.0, 1.0, -1.0, 1.0, 3).unwrap();
        let (rho, rho0) = (d[2], d[3]);
        assert!((rho - 1.0 / std::f64::consts::PI).abs() < 1e-12);
        assert!((rho0 - 0.5 / std::f64::consts::PI).abs() < 1e-12);
        assert!(densities(1.0, 1.0, 1.0, -1.0, 3).is_err());
    }

    #[test]
    fn only_the_zm_form_shifts() {
        let r = shift_pair(1.0, 0.5, 0.4, 1.0, 0.37).unwrap();
        assert!(r[0] <= 1e-12);
        assert!(r[1] > 1e-3);
    }
}
