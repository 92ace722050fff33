//! Grid evaluation of any supported Wigner construction.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::{Method, PhaseSpaceGrid, WignerField};
use crate::packets::{Packet, PacketKind};
use crate::params::{PhaseSpacePoint, PhysicsParams};
use crate::wigner_std::{nonrel_wigner, std_closed_form_massless, std_wigner};
use crate::wigner_zm::{zm_closed_form, zm_wigner, ZmClosed, ZmForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definition {
    Zm,
    Std,
    Nonrel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FormChoice {
    /// Closed form when one exists, quadrature otherwise.
    #[default]
    Auto,
    Rapidity,
    Kform,
    Closed,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub definition: Definition,
    pub packet: PacketKind,
    pub params: PhysicsParams,
    pub form: FormChoice,
}

/// One sampled value; `flagged` marks a quadrature that missed its tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValue {
    pub value: f64,
    pub err: f64,
    pub flagged: bool,
}

impl PointValue {
    fn exact(value: f64) -> Self {
        PointValue {
            value,
            err: 0.0,
            flagged: !value.is_finite(),
        }
    }
}

impl FieldSpec {
    pub fn new(definition: Definition, packet: PacketKind, params: PhysicsParams, form: FormChoice) -> Result<Self> {
        let spec = FieldSpec {
            definition,
            packet,
            params,
            form,
        };
        spec.method()?;
        Ok(spec)
    }

    /// The concrete method selected for this definition, packet and form.
    pub fn method(&self) -> Result<Method> {
        Packet::new(self.packet, self.params)?;
        let massless = self.params.is_massless();
        let has_zm_closed = ZmClosed::for_packet(self.packet).is_some();
        let method = match (self.definition, self.form) {
            (Definition::Zm, FormChoice::Auto) if has_zm_closed => Method::ZmClosed,
            (Definition::Zm, FormChoice::Closed) if has_zm_closed => Method::ZmClosed,
            (Definition::Zm, FormChoice::Closed) => {
                return Err(Error::Unsupported {
                    what: "a closed-form ZM function for this packet",
                    requirement: "a Lorentzian or chiral packet",
                })
            }
            (Definition::Zm, FormChoice::Kform) => Method::ZmKform,
            (Definition::Zm, _) if massless => Method::ZmMasslessLimit,
            (Definition::Zm, _) => Method::ZmRapidity,
            (Definition::Std, FormChoice::Auto) if self.packet == PacketKind::MasslessLorentzian => Method::StdClosed,
            (Definition::Std, FormChoice::Closed) if self.packet == PacketKind::MasslessLorentzian => Method::StdClosed,
            (Definition::Std, FormChoice::Closed) => {
                return Err(Error::Unsupported {
                    what: "a closed-form standard Wigner function on a grid",
                    requirement: "the massless Lorentzian packet",
                })
            }
            (Definition::Std, FormChoice::Auto | FormChoice::Quadrature) => Method::StdQuadrature,
            (Definition::Nonrel, FormChoice::Auto | FormChoice::Closed)
                if self.packet == PacketKind::NonrelGaussian =>
            {
                Method::NonrelClosed
            }
            (Definition::Nonrel, FormChoice::Auto | FormChoice::Closed) => {
                return Err(Error::Unsupported {
                    what: "the nonrelativistic definition",
                    requirement: "the nonrel-gaussian packet",
                })
            }
            (def, form) => {
                return Err(invalid(
                    "form",
                    format!("{form:?} is not available for the {def:?} definition"),
                ));
            }
        };
        Ok(method)
    }

    /// Evaluates the selected method at one point.
    pub fn evaluate(&self, pt: PhaseSpacePoint) -> Result<PointValue> {
        let kind = self.packet;
        let params = self.params;
        let from_quad = |q: crate::quadrature::QuadResult| PointValue {
            value: q.value,
            err: q.err,
            flagged: !q.is_converged() || !q.value.is_finite(),
        };
        let v = match self.method()? {
            Method::ZmClosed => {
                let which = ZmClosed::for_packet(kind).expect("checked by method()");
                PointValue::exact(zm_closed_form(which, params, pt)?)
            }
            Method::ZmRapidity => from_quad(zm_wigner(ZmForm::Rapidity, kind, params, pt)?),
            Method::ZmKform => from_quad(zm_wigner(ZmForm::KForm, kind, params, pt)?),
            Method::ZmMasslessLimit => from_quad(zm_wigner(ZmForm::MasslessLimit, kind, params, pt)?),
            Method::StdClosed => PointValue::exact(std_closed_form_massless(params, pt)?),
            Method::StdQuadrature => from_quad(std_wigner(kind, params, pt)?),
            Method::NonrelClosed => PointValue::exact(nonrel_wigner(params, pt)?),
        };
        Ok(v)
    }

    /// Fills a grid, in parallel when the `parallel` feature is on. Flagged
    /// points keep their value when it is finite; otherwise they hold zero
    /// with error `f64::MAX`.
    pub fn evaluate_field(&self, grid: &PhaseSpaceGrid) -> Result<WignerField> {
        let method = self.method()?;
        let point = |k: usize| self.evaluate(grid.point(k));
        #[cfg(feature = "parallel")]
        let samples: Vec<Result<PointValue>> = {
            use rayon::prelude::*;
            (0..grid.len()).into_par_iter().map(point).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let samples: Vec<Result<PointValue>> = (0..grid.len()).map(point).collect();
        let mut values = Vec::with_capacity(grid.len());
        let mut errors = Vec::with_capacity(grid.len());
        let mut flags = Vec::with_capacity(grid.len());
        for s in samples {
            let s = s?;
            if s.value.is_finite() && s.err.is_finite() {
                values.push(s.value);
                errors.push(s.err);
            } else {
                values.push(if s.value.is_finite() { s.value } else { 0.0 });
                errors.push(f64::MAX);
            }
            flags.push(s.flagged || !s.value.is_finite());
        }
        WignerField::new(*grid, method, values, errors, flags)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn method_selection() {
        let m0 = PhysicsParams::massless(1.0).unwrap();
        let m1 = PhysicsParams::new(1.0, 1.0).unwrap();
        let sel = |d, k, p, f| FieldSpec::new(d, k, p, f).and_then(|s| s.method());
        assert_eq!(
            sel(Definition::Zm, PacketKind::MasslessLorentzian, m0, FormChoice::Auto).unwrap(),
            Method::ZmClosed
        );
        assert_eq!(
            sel(Definition::Zm, PacketKind::MasslessLorentzian, m0, FormChoice::Rapidity).unwrap(),
            Method::ZmMasslessLimit
        );
        assert_eq!(
            sel(Definition::Zm, PacketKind::MassiveLorentzian, m1, FormChoice::Rapidity).unwrap(),
            Method::ZmRapidity
        );
        assert_eq!(
            sel(Definition::Zm, PacketKind::NonrelGaussian, m1, FormChoice::Auto).unwrap(),
            Method::ZmRapidity
        );
        assert_eq!(
            sel(Definition::Std, PacketKind::MasslessLorentzian, m0, FormChoice::Auto).unwrap(),
            Method::StdClosed
        );
        assert_eq!(
            sel(Definition::Std, PacketKind::MassiveLorentzian, m1, FormChoice::Auto).unwrap(),
            Method::StdQuadrature
        );
        assert_eq!(
            sel(Definition::Nonrel, PacketKind::NonrelGaussian, m1, FormChoice::Auto).unwrap(),
            Method::NonrelClosed
        );
        assert!(sel(Definition::Nonrel, PacketKind::MassiveLorentzian, m1, FormChoice::Auto).is_err());
        assert!(sel(Definition::Std, PacketKind::MassiveLorentzian, m1, FormChoice::Closed).is_err());
        assert!(sel(Definition::Std, PacketKind::MassiveLorentzian, m1, FormChoice::Kform).is_err());
        assert!(sel(Definition::Zm, PacketKind::MassiveLorentzian, m0, FormChoice::Auto).is_err());
    }

    #[test]
    fn closed_and_quadrature_fields_agree() {
        let params = PhysicsParams::new(1.0, 1.0).unwrap();
        let grid = make_grid(-2.0, 2.0, 5, -1.0, 1.0, 4, 1.5).unwrap();
        let closed = FieldSpec::new(
            Definition::Zm,
            PacketKind::MassiveLorentzian,
            params,
            FormChoice::Closed,
        )
        .unwrap();
        let quad = FieldSpec::new(
            Definition::Zm,
            PacketKind::MassiveLorentzian,
            params,
            FormChoice::Rapidity,
        )
        .unwrap();
        let a = closed.evaluate_field(&grid).unwrap();
        let b = quad.evaluate_field(&grid).unwrap();
        assert_eq!(b.flagged_count(), 0);
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() < 1e-10);
        }
        assert!(a.errors().iter().all(|e| *e == 0.0));
    }
}
