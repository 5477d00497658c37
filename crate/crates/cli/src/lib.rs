//! Reporting layer: equilibrium solves, oracle tables, regime comparisons,
//! convergence studies and the Table 1 reproduction.
//!
//! Every report serialises to JSON (with a fixed `schema` / `schema_version`
//! header) and to CSV; both carry the same rows.

pub mod compare;
pub mod convergence;
pub mod equilibrium;
pub mod matching;
pub mod oracle;
pub mod report;
pub mod table1;

pub use report::{Format, Report, SCHEMA_VERSION};

use dlop_core::specfun::OuterModel;

/// Outer model selector shared by the subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outer {
    /// Outer parametrix exactly as stated.
    #[default]
    Literal,
    /// One-band outer parametrix, corrected at the origin.
    Corrected,
}

impl Outer {
    pub fn model(self, origin_node: bool) -> OuterModel {
        match self {
            Outer::Literal => OuterModel::Literal,
            Outer::Corrected => OuterModel::Corrected { origin_node },
        }
    }
}
