//! The g-function `g(z) = int log(z - s) rho(s) ds`, its boundary values on
//! the real line, the Lagrange constant and the variational gap.

use crate::equilibrium::{band_mass, density_unchecked, SupportData, SupportRegime};
use crate::error::{Error, Result};
use crate::quadrature::{adaptive, integrate, rule, EndpointSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

const PANELS: usize = 32;
const NEAR: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// Immutable evaluation context for the g-function.
#[derive(Debug, Clone)]
pub struct GContext {
    pub support: SupportData,
    /// Lagrange constant.
    pub l: f64,
    tol: f64,
    /// Band nodes `s_j` with weights `rho(s_j) ds_j` in the `sin^2` parametrization.
    nodes: Vec<(f64, f64)>,
}

impl GContext {
    pub fn new(support: SupportData, tol: f64) -> Result<Self> {
        let lo = band_left(&support);
        let (b, span) = (support.b, support.b - lo);
        let nodes = rule()
            .composite(0.0, FRAC_PI_2, PANELS)
            .into_iter()
            .map(|(t, w)| {
                let (sn, cs) = t.sin_cos();
                let s = lo + span * sn * sn;
                (s, w * 2.0 * span * sn * cs * density_unchecked(s.min(b), &support))
            })
            .collect();
        let mut ctx = GContext {
            support,
            l: f64::NAN,
            tol,
            nodes,
        };
        ctx.l = ctx.compute_l()?;
        Ok(ctx)
    }

    pub fn a(&self) -> f64 {
        self.support.a
    }

    pub fn b(&self) -> f64 {
        self.support.b
    }

    fn band_left(&self) -> f64 {
        band_left(&self.support)
    }

    fn near_band(&self, z: Complex64) -> bool {
        let (lo, hi) = (self.band_left(), self.support.b);
        let margin = NEAR * (hi - lo);
        let dx = if z.re < lo {
            lo - z.re
        } else if z.re > hi {
            z.re - hi
        } else {
            0.0
        };
        dx.hypot(z.im) < margin
    }

    /// `int_band F(s) rho(s) ds` with `F` smooth or log-singular at `split` in the band.
    /// `F` receives `s` and its exact distance from the left end of the band.
    fn band_integral<T, F>(&self, f: F, split: Option<f64>) -> Result<T>
    where
        T: crate::quadrature::QuadValue,
        F: Fn(f64, f64) -> T,
    {
        let lo = self.band_left();
        let span = self.support.b - lo;
        let s = &self.support;
        let g = |t: f64| {
            let (sn, cs) = t.sin_cos();
            let dx = span * sn * sn;
            let x = lo + dx;
            f(x, dx) * (2.0 * span * sn * cs * density_unchecked(x.min(s.b), s))
        };
        match split {
            Some(x) if x > lo && x < s.b => {
                let ts = ((x - lo) / span).sqrt().asin();
                let left = integrate(&g, 0.0, ts, EndpointSpec::new(0.0, -0.5), self.tol)?;
                let right = integrate(&g, ts, FRAC_PI_2, EndpointSpec::new(-0.5, 0.0), self.tol)?;
                Ok(left.value + right.value)
            }
            _ => Ok(adaptive(g, 0.0, FRAC_PI_2, self.tol)?.value),
        }
    }

    /// `g(z)` off `(-inf, b]`.
    pub fn g_value(&self, z: Complex64) -> Result<Complex64> {
        if z.im == 0.0 && z.re <= self.support.b {
            return Err(Error::Domain(format!(
                "g({}) lies on the cut (-inf, b]; use g_boundary",
                z.re
            )));
        }
        let band = if self.near_band(z) {
            let split = if z.im.abs() < NEAR * (self.support.b - self.band_left()) {
                Some(z.re)
            } else {
                None
            };
            self.band_integral(|s, _| (z - s).ln(), split)?
        } else {
            self.nodes.iter().map(|&(s, w)| (z - s).ln() * w).sum()
        };
        Ok(self.saturated_part(z) + band)
    }

    /// `int_0^a log(z - s) ds / (2 sqrt s)` in closed form.
    pub fn saturated_part(&self, z: Complex64) -> Complex64 {
        if self.support.regime == SupportRegime::Subcritical {
            return Complex64::new(0.0, 0.0);
        }
        let r = self.support.a.sqrt();
        let w = z.sqrt();
        (w + r) * (w + r).ln() - (w - r) * (w - r).ln() - 2.0 * r
    }

    /// `int_0^a log|x - s| ds / (2 sqrt s)` for real `x`.
    pub fn saturated_part_real(&self, x: f64) -> f64 {
        if self.support.regime == SupportRegime::Subcritical {
            return 0.0;
        }
        let r = self.support.a.sqrt();
        if x > 0.0 {
            let w = x.sqrt();
            let t = |v: f64| if v == 0.0 { 0.0 } else { v * v.abs().ln() };
            t(w + r) - t(w - r) - 2.0 * r
        } else {
            let w = Complex64::new(0.0, (-x).sqrt());
            ((w + r) * (w + r).ln() - (w - r) * (w - r).ln()).re - 2.0 * r
        }
    }

    /// `int log|x - s| rho(s) ds` for real `x`.
    pub fn log_potential(&self, x: f64) -> Result<f64> {
        let z = Complex64::new(x, 0.0);
        let lo = self.band_left();
        let band = if self.near_band(z) && x > lo && x < self.support.b {
            self.band_log_inside(x)?
        } else if self.near_band(z) {
            self.band_integral(|s, _| (x - s).abs().ln(), None)?
        } else {
            self.nodes.iter().map(|&(s, w)| (x - s).abs().ln() * w).sum()
        };
        Ok(self.saturated_part_real(x) + band)
    }

    // int log|x - s| (rho(s) - rho(x)) ds + rho(x) int log|x - s| ds over the band.
    fn band_log_inside(&self, x: f64) -> Result<f64> {
        let sup = &self.support;
        let (lo, b) = (self.band_left(), sup.b);
        let span = b - lo;
        let rx = density_unchecked(x, sup);
        let g = |t: f64| {
            let (sn, cs) = t.sin_cos();
            let s = lo + span * sn * sn;
            let d = (x - s).abs();
            if d == 0.0 {
                return 0.0;
            }
            d.ln() * (density_unchecked(s.min(b), sup) - rx) * 2.0 * span * sn * cs
        };
        let ts = ((x - lo) / span).sqrt().asin();
        let left = adaptive(&g, 0.0, ts, self.tol)?.value;
        let right = adaptive(&g, ts, FRAC_PI_2, self.tol)?.value;
        let (p, q) = (x - lo, b - x);
        let exact = p * p.ln() - p + q * q.ln() - q;
        Ok(left + right + rx * exact)
    }

    /// `int_x^b rho` for `x` in `(0, b)`; 1 for `x <= 0`, 0 for `x >= b`.
    pub fn band_phase(&self, x: f64) -> Result<f64> {
        let s = &self.support;
        if x <= 0.0 {
            return Ok(1.0);
        }
        if x >= s.b {
            return Ok(0.0);
        }
        match s.regime {
            SupportRegime::Supercritical if x <= s.a => Ok(1.0 - x.sqrt()),
            _ => band_mass(x, s.b, s, self.tol),
        }
    }

    /// Boundary value `g_{+/-}(x)` on the real line.
    pub fn g_boundary(&self, x: f64, side: Side) -> Result<Complex64> {
        let s = &self.support;
        let bad = x == 0.0 || x == s.b || (s.regime == SupportRegime::Supercritical && x == s.a);
        if bad || !x.is_finite() {
            return Err(Error::Domain(format!("no boundary value at the endpoint {x}")));
        }
        let re = self.log_potential(x)?;
        let im = side.sign() * PI * self.band_phase(x)?;
        Ok(Complex64::new(re, im))
    }

    /// `2 int log|x - y| rho(y) dy - c x - l`.
    pub fn variational_gap(&self, x: f64) -> Result<f64> {
        Ok(2.0 * self.log_potential(x)? - self.support.c * x - self.l)
    }

    fn compute_l(&self) -> Result<f64> {
        let s = &self.support;
        let x0 = match s.regime {
            SupportRegime::Supercritical => s.a,
            SupportRegime::Subcritical => s.b,
        };
        let sat = match s.regime {
            SupportRegime::Supercritical => {
                let r = s.a.sqrt();
                2.0 * r * (2.0 * r).ln() - 2.0 * r
            }
            SupportRegime::Subcritical => 0.0,
        };
        let band = match s.regime {
            SupportRegime::Supercritical => self.band_integral(|_, dx| dx.ln(), None)?,
            SupportRegime::Subcritical => self.band_integral(|t, _| (x0 - t).abs().ln(), None)?,
        };
        Ok(2.0 * (sat + band) - s.c * x0)
    }
}

fn band_left(s: &SupportData) -> f64 {
    match s.regime {
        SupportRegime::Supercritical => s.a,
        SupportRegime::Subcritical => 0.0,
    }
}
