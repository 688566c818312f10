//! Numerical machinery for the Hahn–Exton q-Bessel function: q-series
//! primitives, the q-Borel/q-Laplace pair, the connection formula between
//! the solutions at the origin and at infinity, and its `p → 1⁻` limit.

pub mod borel;
pub mod classical;
pub mod connection;
pub mod error;
pub mod qbessel;
pub mod qseries;
pub mod types;

pub use error::{Error, Result};
pub use types::{Nome, Residual, SeriesValue, Tolerance};
pub use classical::LimitScanRow;
pub use qbessel::QBesselKind;
