use thiserror::Error;

use crate::packets::PacketKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate {axis} range [{min}, {max}] with {n} nodes")]
    DegenerateAxis {
        axis: &'static str,
        min: f64,
        max: f64,
        n: usize,
    },

    #[error("packet {kind:?} is incompatible with mass {mass}")]
    IncompatiblePacket { kind: PacketKind, mass: f64 },

    #[error("{what} requires {requirement}")]
    Unsupported {
        what: &'static str,
        requirement: &'static str,
    },

    #[error("argument {value} outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    #[error("non-finite value at index {index} of {what}")]
    NonFinite { what: &'static str, index: usize },

    #[error("shape mismatch: expected {expected} values, got {actual}")]
    Shape { expected: usize, actual: usize },

    #[error("integration window truncation leaves mass deficit {deficit:e}")]
    WindowTruncation { deficit: f64 },

    #[error("kernel slice too narrow: estimated tail {tail:e} exceeds {limit:e}")]
    SliceTooNarrow { tail: f64, limit: f64 },

    #[error("point x = {x} does not lie on the slice lattice")]
    OffLattice { x: f64 },

    #[error("quadrature did not converge: achieved error {err:e}")]
    Quadrature { err: f64 },
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
