pub mod airy;
pub mod conformal;
pub mod gamma;
pub mod parametrix;

pub use airy::{airy, AiryValues};
pub use conformal::{eta, Edge, EdgeMap};
pub use gamma::{log_gamma, log_h, log_h_star};
pub use parametrix::{side_point, OuterModel, ParametrixContext};
