//! Scalar ingredients of the outer parametrix: the Szegő function `D`, the
//! map `gamma`, and the pair `(N1, N2)`.
//!
//! Two outer models are provided. [`OuterModel::Literal`] uses
//! `gamma(z) = z^{1/2} / ((z-a)^{1/4} (z-b)^{1/4})` and `D` as given.
//! [`OuterModel::Corrected`] uses `gamma_s(z) = (z-a)^{1/4} / (z-b)^{1/4}`
//! with `D` divided (lattice without the origin) or multiplied (lattice with
//! the origin) by `phi(z) = (sqrt(b) sqrt(z-a) + sqrt(a) sqrt(z-b)) / (sqrt(b-a) sqrt(z))`.
//! Both satisfy the same jump relations on the band; they differ in their
//! behaviour at the origin.
//!
//! Boundary values on the real axis are evaluated at `x +- i 1e-200`, which
//! selects the one-sided limit of every principal branch exactly.

use crate::equilibrium::SupportData;
use crate::error::{Error, Result};
use crate::gfield::Side;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const SIDE_OFFSET: f64 = 1e-200;

/// Point just above or below the real axis.
pub fn side_point(x: f64, side: Side) -> Complex64 {
    Complex64::new(x, side.sign() * SIDE_OFFSET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OuterModel {
    #[default]
    Literal,
    Corrected {
        /// Whether the lattice contains the node `x = 0`.
        origin_node: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParametrixContext {
    pub support: SupportData,
    pub alpha: f64,
    /// `((sqrt a + sqrt b)/2)^{alpha - 1/2}`.
    pub d_infinity: f64,
    pub model: OuterModel,
}

impl ParametrixContext {
    pub fn new(support: SupportData, alpha: f64, model: OuterModel) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidInput(format!("alpha must exceed -1, got {alpha}")));
        }
        if !(support.a > 0.0 && support.b > support.a) {
            return Err(Error::Subcritical {
                c: support.c,
                c_cr: crate::equilibrium::critical_value(),
            });
        }
        let d_infinity = (0.5 * (support.a.sqrt() + support.b.sqrt())).powf(alpha - 0.5);
        Ok(ParametrixContext {
            support,
            alpha,
            d_infinity,
            model,
        })
    }

    fn ab(&self) -> (f64, f64) {
        (self.support.a, self.support.b)
    }

    fn on_real_segment(z: Complex64, lo: f64, hi: f64) -> bool {
        z.im == 0.0 && z.re >= lo && z.re <= hi
    }

    /// `D(z)` for `z` off `[a, b]`.
    pub fn szego_d(&self, z: Complex64) -> Result<Complex64> {
        let (a, b) = self.ab();
        if Self::on_real_segment(z, a, b) {
            return Err(Error::Domain(format!("D({}) lies on the band; use szego_d_side", z.re)));
        }
        Ok(self.d_raw(z))
    }

    pub fn szego_d_side(&self, x: f64, side: Side) -> Complex64 {
        self.d_raw(side_point(x, side))
    }

    fn d_raw(&self, z: Complex64) -> Complex64 {
        let (a, b) = self.ab();
        let r = (z - a).sqrt() * (z - b).sqrt();
        let ratio = (a.sqrt() + b.sqrt()) * z / (z + (a * b).sqrt() + r);
        ratio.powf(self.alpha - 0.5)
    }

    /// `gamma(z) = z^{1/2} / ((z-a)^{1/4} (z-b)^{1/4})` for `z` off `[0, b]`.
    pub fn gamma_map(&self, z: Complex64) -> Result<Complex64> {
        if Self::on_real_segment(z, 0.0, self.support.b) {
            return Err(Error::Domain(format!(
                "gamma({}) lies on [0, b]; use gamma_map_side",
                z.re
            )));
        }
        Ok(self.gamma_raw(z))
    }

    pub fn gamma_map_side(&self, x: f64, side: Side) -> Complex64 {
        self.gamma_raw(side_point(x, side))
    }

    fn gamma_raw(&self, z: Complex64) -> Complex64 {
        let (a, b) = self.ab();
        z.sqrt() / ((z - a).powf(0.25) * (z - b).powf(0.25))
    }

    /// `phi(z)`, tending to `(sqrt a + sqrt b)/sqrt(b - a)` at infinity.
    pub fn phi_map(&self, z: Complex64) -> Complex64 {
        let (a, b) = self.ab();
        (b.sqrt() * (z - a).sqrt() + a.sqrt() * (z - b).sqrt()) / ((b - a).sqrt() * z.sqrt())
    }

    pub fn phi_infinity(&self) -> f64 {
        let (a, b) = self.ab();
        (a.sqrt() + b.sqrt()) / (b - a).sqrt()
    }

    /// `(N1, N2)` of the active model for `z` off `[0, b]`.
    pub fn script_n(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        if Self::on_real_segment(z, 0.0, self.support.b) {
            return Err(Error::Domain(format!("N({}) lies on [0, b]; use script_n_side", z.re)));
        }
        Ok(self.n_raw(z))
    }

    pub fn script_n_side(&self, x: f64, side: Side) -> (Complex64, Complex64) {
        self.n_raw(side_point(x, side))
    }

    /// `D` and `D_inf` after the model's `phi` adjustment.
    fn outer_d(&self, z: Complex64) -> (Complex64, f64) {
        let d = self.d_raw(z);
        match self.model {
            OuterModel::Literal => (d, self.d_infinity),
            OuterModel::Corrected { origin_node: false } => {
                (d / self.phi_map(z), self.d_infinity / self.phi_infinity())
            }
            OuterModel::Corrected { origin_node: true } => (d * self.phi_map(z), self.d_infinity * self.phi_infinity()),
        }
    }

    /// Limit of the model's `D` at infinity.
    pub fn outer_d_infinity(&self) -> f64 {
        self.outer_d(Complex64::new(1e300, 0.0)).1
    }

    fn n_raw(&self, z: Complex64) -> (Complex64, Complex64) {
        let (a, b) = self.ab();
        let gam = match self.model {
            OuterModel::Literal => self.gamma_raw(z),
            OuterModel::Corrected { .. } => (z - a).powf(0.25) / (z - b).powf(0.25),
        };
        let (d, dinf) = self.outer_d(z);
        let inv = 1.0 / gam;
        let n1 = dinf / d * (gam + inv) / 2.0;
        let n2 = dinf * d * (gam - inv) / Complex64::new(0.0, -2.0);
        (n1, n2)
    }
}
