//! Numerical core for discrete Laguerre polynomials on the lattice `{k^2/N^2}`
//! with weight `x^alpha e^{-N c x}`.
//!
//! Layers: [`quadrature`], [`equilibrium`], [`gfield`], [`specfun`] and
//! [`asymptotics`]. Values that overflow `f64` travel as [`ScaledValue`].

// `!(x > y)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod equilibrium;
pub mod error;
pub mod exec;
pub mod gfield;
pub mod quadrature;
pub mod roots;
pub mod scaled;
pub mod specfun;

pub use error::{Error, Result};
pub use exec::Exec;
pub use scaled::ScaledValue;
