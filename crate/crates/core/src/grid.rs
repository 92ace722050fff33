use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::PhaseSpacePoint;

/// A uniform closed interval sampled at `n >= 2` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(axis: &'static str, min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || !(min < max) || n < 2 {
            return Err(Error::DegenerateAxis { axis, min, max, n });
        }
        Ok(Axis { min, max, n })
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        if i == self.n - 1 {
            self.max
        } else {
            self.min + i as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.node(i))
    }
}

/// Rectangular `(x, p)` lattice at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpaceGrid {
    pub x: Axis,
    pub p: Axis,
    pub t: f64,
}

pub fn make_grid(
    x_min: f64,
    x_max: f64,
    n_x: usize,
    p_min: f64,
    p_max: f64,
    n_p: usize,
    t: f64,
) -> Result<PhaseSpaceGrid> {
    if !t.is_finite() {
        return Err(crate::error::invalid("t", "time must be finite"));
    }
    Ok(PhaseSpaceGrid {
        x: Axis::new("x", x_min, x_max, n_x)?,
        p: Axis::new("p", p_min, p_max, n_p)?,
        t,
    })
}

impl PhaseSpaceGrid {
    pub fn len(&self) -> usize {
        self.x.n * self.p.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at_time(&self, t: f64) -> Self {
        PhaseSpaceGrid { t, ..*self }
    }

    /// Point at flat index `k`, row-major over `x` then `p`.
    pub fn point(&self, k: usize) -> PhaseSpacePoint {
        let (i, j) = (k / self.p.n, k % self.p.n);
        PhaseSpacePoint::new(self.x.node(i), self.p.node(j), self.t)
    }

    pub fn points(&self) -> impl Iterator<Item = PhaseSpacePoint> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }
}

/// Which construction produced a [`WignerField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ZmRapidity,
    ZmKform,
    ZmMasslessLimit,
    ZmClosed,
    StdQuadrature,
    StdClosed,
    NonrelClosed,
}

impl Method {
    pub fn is_closed_form(self) -> bool {
        matches!(self, Method::ZmClosed | Method::StdClosed | Method::NonrelClosed)
    }
}

/// Samples of a Wigner function over a grid, row-major over `x` then `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerField {
    grid: PhaseSpaceGrid,
    values: Vec<f64>,
    method: Method,
    err_estimate: Vec<f64>,
    /// Points whose integral did not meet its tolerance.
    flags: Vec<bool>,
}

impl WignerField {
    pub fn new(
        grid: PhaseSpaceGrid,
        method: Method,
        values: Vec<f64>,
        err_estimate: Vec<f64>,
        flags: Vec<bool>,
    ) -> Result<Self> {
        let expected = grid.len();
        for len in [values.len(), err_estimate.len(), flags.len()] {
            if len != expected {
                return Err(Error::Shape { expected, actual: len });
            }
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "field values",
                index,
            });
        }
        if let Some(index) = err_estimate.iter().position(|e| !(e.is_finite() && *e >= 0.0)) {
            return Err(Error::NonFinite {
                what: "error estimates",
                index,
            });
        }
        Ok(WignerField {
            grid,
            values,
            method,
            err_estimate,
            flags,
        })
    }

    pub fn grid(&self) -> &PhaseSpaceGrid {
        &self.grid
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn errors(&self) -> &[f64] {
        &self.err_estimate
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn flagged_count(&self) -> usize {
        self.flags.iter().filter(|f| **f).count()
    }

    pub fn get(&self, i_x: usize, i_p: usize) -> f64 {
        self.values[i_x * self.grid.p.n + i_p]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}
