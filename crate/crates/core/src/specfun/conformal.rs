//! Local variables at the band edges and the Airy combinations at `a`.
//!
//! With `Phi(z) = int_z^b rho`, `f(z) = -((3 pi / 2) Phi(z))^{2/3}`. Writing
//! `s = b - (b - z) u^2` gives `Phi(z) = (b - z)^{3/2} Q(z)` with a smooth
//! `Q`, so `f(z) = (z - b) ((3 pi / 2) Q(z))^{2/3}` is evaluated along the
//! straight segment from `b` to `z`. The map at `a` is built the same way from
//! `int_a^z (1/(2 sqrt s) - rho)`.

use super::airy::airy;
use crate::equilibrium::{h_regular, SupportData};
use crate::error::{Error, Result};
use crate::quadrature::rule;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    /// Band-void edge `b`.
    Right,
    /// Saturated-band edge `a`.
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeMap {
    pub edge: Edge,
    pub center: f64,
    pub radius: f64,
    a: f64,
    b: f64,
}

impl EdgeMap {
    /// `f` near `b`.
    pub fn right(s: &SupportData) -> Result<Self> {
        Self::new(s, Edge::Right)
    }

    /// `f~` near `a`.
    pub fn left(s: &SupportData) -> Result<Self> {
        Self::new(s, Edge::Left)
    }

    fn new(s: &SupportData, edge: Edge) -> Result<Self> {
        if !(s.a > 0.0 && s.b > s.a) {
            return Err(Error::Subcritical {
                c: s.c,
                c_cr: crate::equilibrium::critical_value(),
            });
        }
        let (center, radius) = match edge {
            Edge::Right => (s.b, 0.5 * (s.b - s.a)),
            Edge::Left => (s.a, 0.45 * s.a.min(s.b - s.a)),
        };
        Ok(EdgeMap {
            edge,
            center,
            radius,
            a: s.a,
            b: s.b,
        })
    }

    /// The map at `z`, `|z - center| <= radius`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !((z - self.center).norm() <= self.radius) {
            return Err(Error::Domain(format!(
                "{z} is outside the working radius {} around {}",
                self.radius, self.center
            )));
        }
        Ok((z - self.center) * self.scale(z))
    }

    /// Derivative at the edge point.
    pub fn derivative_at_edge(&self) -> f64 {
        self.scale(Complex64::new(self.center, 0.0)).re
    }

    /// `((3 pi / 2) Q(z))^{2/3}`.
    fn scale(&self, z: Complex64) -> Complex64 {
        let q = match self.edge {
            Edge::Right => self.q_right(z),
            Edge::Left => self.q_left(z),
        };
        (1.5 * PI * q).powf(2.0 / 3.0)
    }

    fn q_right(&self, z: Complex64) -> Complex64 {
        let (a, b) = (self.a, self.b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (u, w) in rule().composite(0.0, 1.0, 2) {
            let s = b - (b - z) * (u * u);
            let psi = (s - a).sqrt() * h_near_band(s, a, b) / (2.0 * PI);
            acc += w * 2.0 * u * u * psi;
        }
        acc
    }

    fn q_left(&self, z: Complex64) -> Complex64 {
        let (a, b) = (self.a, self.b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (u, w) in rule().composite(0.0, 1.0, 2) {
            let s = a + (z - a) * (u * u);
            let v = -(b - s).sqrt() * h_regular(s, a, b) / (2.0 * PI);
            acc += w * 2.0 * u * u * v;
        }
        acc
    }
}

// int_0^a ds / ((z - s) sqrt(s (a-s) (b-s))) for z well away from [0, a].
fn h_near_band(z: Complex64, a: f64, b: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (t, w) in rule().composite(0.0, FRAC_PI_2, 8) {
        let sn = t.sin();
        let s = a * sn * sn;
        acc += w * 2.0 / ((z - s) * (b - s).sqrt());
    }
    acc
}

/// `(eta1, eta2)` at `z`:
/// `cos(n pi sqrt z) Ai(-n^{2/3} f~) - sin(n pi sqrt z) Bi(-n^{2/3} f~)` and the
/// same with derivatives.
pub fn eta(z: Complex64, n: u32, left: &EdgeMap) -> Result<(Complex64, Complex64)> {
    if left.edge != Edge::Left {
        return Err(Error::InvalidInput("eta needs the map at a".into()));
    }
    let ft = left.eval(z)?;
    eta_from(z, n, ft)
}

pub(crate) fn eta_from(z: Complex64, n: u32, ft: Complex64) -> Result<(Complex64, Complex64)> {
    let nf = n as f64;
    let v = airy(-nf.powf(2.0 / 3.0) * ft)?;
    let arg = nf * PI * z.sqrt();
    let (c, s) = (arg.cos(), arg.sin());
    Ok((c * v.ai - s * v.bi, c * v.aip - s * v.bip))
}
