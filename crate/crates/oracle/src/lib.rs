//! Extended-precision discrete Laguerre polynomials on `{k^2/N^2}`.
//!
//! [`build_recurrence`] runs the discrete Stieltjes procedure in MPFR
//! arithmetic over a truncated lattice. Tables are immutable; evaluation
//! and zero polishing may run concurrently.

// `!(x > y)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;
mod lattice;
mod recurrence;
mod zeros;

pub use error::{OracleError, Result};
pub use lattice::{LatticeMeasure, Rate, DEFAULT_PRECISION_BITS};
pub use recurrence::{build_recurrence, build_recurrence_adaptive, orthogonality_residual, RecurrenceTable};
pub use zeros::{
    continuous_laguerre_zeros, continuous_laguerre_zeros_mp, interlacing_violations, unresolved_node_ties, zeros,
    zeros_mp,
};
