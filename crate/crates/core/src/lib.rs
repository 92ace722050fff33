pub mod error;
pub mod field;
pub mod grid;
pub mod packets;
pub mod params;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod transport;
pub mod verify;
pub mod wigner_std;
pub mod wigner_zm;

pub use error::{Error, Result};
