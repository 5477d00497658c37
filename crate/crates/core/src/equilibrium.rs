//! Constrained equilibrium measure for the field `V(x) = c x` under the
//! upper constraint of density `1/(2 sqrt x)`.
//!
//! Above the critical value the support is `[0, b]` with a saturated region
//! `(0, a)` and a band `(a, b)`. All integrals over `(0, a)` use the
//! substitution `s = a sin^2 theta`, which removes the endpoint singularities.

use crate::error::{Error, Result};
use crate::quadrature::{self, adaptive, rule, EndpointSpec, QuadValue};
use crate::roots::brent;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

const INNER_TOL: f64 = 1e-14;

/// Weight `x^alpha e^{-N c x}` on `{k^2/N^2}`, degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha: f64,
    pub c: f64,
    pub big_n: u32,
    pub n: u32,
}

impl ModelParams {
    /// Diagonal case `N = n`.
    pub fn diagonal(alpha: f64, c: f64, n: u32) -> Result<Self> {
        let p = ModelParams { alpha, c, big_n: n, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > -1.0) {
            return Err(Error::InvalidInput(format!("alpha must exceed -1, got {}", self.alpha)));
        }
        if !(self.c > 0.0) || !self.c.is_finite() {
            return Err(Error::InvalidInput(format!("c must be positive, got {}", self.c)));
        }
        if self.big_n == 0 {
            return Err(Error::InvalidInput("N must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportRegime {
    Subcritical,
    Supercritical,
}

/// Support of the equilibrium measure and its edge constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportData {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub regime: SupportRegime,
    /// `lim (1/(2 sqrt x) - rho(x)) / sqrt(x - a)` as `x -> a+`.
    pub c1: f64,
    /// `lim rho(x) / sqrt(b - x)` as `x -> b-`.
    pub c2: f64,
}

pub fn critical_value() -> f64 {
    PI * PI / 4.0
}

pub fn classify_c(c: f64) -> SupportRegime {
    if c > critical_value() {
        SupportRegime::Supercritical
    } else {
        SupportRegime::Subcritical
    }
}

fn theta_rule(f: impl Fn(f64) -> f64) -> f64 {
    let mut acc = 0.0;
    for (t, w) in rule().composite(0.0, FRAC_PI_2, 4) {
        acc += w * f(t);
    }
    acc
}

/// `int_0^a sqrt((a-x)/(x(b-x))) dx`.
pub fn saturated_moment(a: f64, b: f64) -> f64 {
    theta_rule(|t| {
        let (s, c) = t.sin_cos();
        2.0 * a * c * c / (b - a * s * s).sqrt()
    })
}

/// `int_0^a ds / sqrt(s (a-s) (b-s))`; equals `c` exactly when the density
/// meets the constraint continuously at `a`.
pub fn regularity_integral(a: f64, b: f64) -> f64 {
    theta_rule(|t| {
        let s = t.sin();
        2.0 / (b - a * s * s).sqrt()
    })
}

/// `int_0^a sqrt((a-s)/(s(b-s))) ds/(s-x)` for `x` outside `[0, a]`.
pub fn band_kernel(x: f64, a: f64, b: f64) -> f64 {
    if x > a && x < b {
        return band_kernel_right(x, a, b);
    }
    let f = |t: f64| {
        let (sn, cs) = t.sin_cos();
        let s = a * sn * sn;
        2.0 * a * cs * cs / ((b - s).sqrt() * (s - x))
    };
    if (x - a).abs() > 0.05 * a {
        theta_rule(f)
    } else {
        adaptive(f, 0.0, FRAC_PI_2, INNER_TOL)
            .map(|q| q.value)
            .unwrap_or_else(|_| theta_rule(f))
    }
}

/// Gauss panels on `[0, pi/2]` that shrink geometrically towards `pi/2`,
/// starting from width `8 * layer`.
pub(crate) fn graded_theta<T: QuadValue>(f: impl Fn(f64) -> T, layer: f64) -> T {
    let mut acc = T::zero();
    let mut hi = FRAC_PI_2;
    let mut width = (8.0 * layer).clamp(1e-7, 0.5);
    while hi > 0.0 {
        let lo = (hi - width).max(0.0);
        for (th, w) in rule().mapped(lo, hi) {
            acc = acc + f(th) * w;
        }
        hi = lo;
        width *= 4.0;
    }
    acc
}

// With t = cos^2 theta and e = x - a the kernel is
// -J + 2e int g(t)/(a t + e) dtheta, g = (b - a + a t)^{-1/2}.
// The first two Taylor terms of g are integrated exactly.
// Returns (J, int g/(a t + e)).
fn band_kernel_parts(x: f64, a: f64, b: f64) -> (f64, f64) {
    let e = x - a;
    let d = b - a;
    let g0 = 1.0 / d.sqrt();
    let g1 = -0.5 * a / d.powf(1.5);
    let i0 = FRAC_PI_2 / (e * (a + e)).sqrt();
    let i1 = (FRAC_PI_2 - e * i0) / a;
    let rest = |th: f64| {
        let c = th.cos();
        let t = c * c;
        let g = 1.0 / (d + a * t).sqrt();
        (g - g0 - g1 * t) / (a * t + e)
    };
    let r = graded_theta(rest, (e / a).sqrt());
    (regularity_integral(a, b), g0 * i0 + g1 * i1 + r)
}

fn band_kernel_right(x: f64, a: f64, b: f64) -> f64 {
    let (j, t) = band_kernel_parts(x, a, b);
    -j + 2.0 * (x - a) * t
}

/// First endpoint equation: `c(b-a)/4 + (1/2) int_0^a sqrt((a-x)/(x(b-x))) dx - 1`.
pub fn residual_ab1(a: f64, b: f64, c: f64) -> f64 {
    c * (b - a) / 4.0 + 0.5 * saturated_moment(a, b) - 1.0
}

/// Second endpoint equation, evaluated literally as an iterated integral.
pub fn residual_ab2(a: f64, b: f64, c: f64) -> f64 {
    // x = a + (b-a) sin^2 phi turns sqrt((b-x)/(x-a)) dx into 2(b-a) cos^2 phi dphi.
    let outer = adaptive(
        |p: f64| {
            let (sn, cs) = p.sin_cos();
            let x = a + (b - a) * sn * sn;
            2.0 * (b - a) * cs * cs * band_kernel(x, a, b)
        },
        0.0,
        FRAC_PI_2,
        INNER_TOL,
    )
    .map(|q| q.value)
    .unwrap_or(f64::NAN);
    a.sqrt() + c * (b - a) / 4.0 + outer / (2.0 * PI) - 1.0
}

fn b_for_a(a: f64, c: f64) -> Result<f64> {
    // J(a, b) decreases in b, J > pi/sqrt(b) and J < pi/sqrt(b - a).
    let hi = a + 1.05 * PI * PI / (c * c) + 1e-12;
    let mut eps = 1e-6 * a.max(1e-3);
    let mut lo = a + eps;
    while regularity_integral(a, lo) <= c {
        eps *= 1e-3;
        if eps < 1e-300 {
            return Err(Error::Convergence {
                what: "band endpoint bracket",
                best: lo,
                residual: f64::NAN,
            });
        }
        lo = a + eps;
    }
    brent(|b| regularity_integral(a, b) - c, lo, hi, 1e-16, 200)
}

/// Endpoints `(a, b)` for `c > pi^2/4`.
///
/// The pair solves the first endpoint equation together with the regularity
/// condition `rho(a+) = 1/(2 sqrt a)`; the second endpoint equation is then
/// satisfied identically and is reported through [`residual_ab2`].
///
/// The band width shrinks roughly like `e^{-c}`. Up to `c` near 9 both
/// residuals stay below `1e-10`; past that the literal second residual loses
/// digits, and beyond `c` near 15 the bracket search fails.
pub fn solve_endpoints(c: f64, tol: f64) -> Result<SupportData> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let c_cr = critical_value();
    if !(c > c_cr) {
        return Err(Error::Subcritical { c, c_cr });
    }
    let f = |a: f64| match b_for_a(a, c) {
        Ok(b) => residual_ab1(a, b, c),
        Err(_) => f64::NAN,
    };
    let mut hi = 4.0 / c;
    let mut tries = 0;
    while !(f(hi) > 0.0) {
        hi *= 1.5;
        tries += 1;
        if tries > 40 {
            return Err(Error::Convergence {
                what: "saturated endpoint bracket",
                best: hi,
                residual: f(hi),
            });
        }
    }
    let mut lo = 1e-6 * hi;
    while !(f(lo) < 0.0) {
        lo *= 1e-3;
        if lo < 1e-300 {
            return Err(Error::Convergence {
                what: "saturated endpoint bracket",
                best: lo,
                residual: f(lo),
            });
        }
    }
    let a = brent(f, lo, hi, 1e-17, 300)?;
    let b = b_for_a(a, c)?;
    let r1 = residual_ab1(a, b, c);
    if !(r1.abs() <= tol) {
        return Err(Error::Convergence {
            what: "endpoint equations",
            best: a,
            residual: r1.abs(),
        });
    }
    let mut s = SupportData {
        a,
        b,
        c,
        regime: SupportRegime::Supercritical,
        c1: 0.0,
        c2: 0.0,
    };
    let (c1, c2) = edge_constants(&s)?;
    s.c1 = c1;
    s.c2 = c2;
    Ok(s)
}

/// Support for any `c > 0`: `[0, 4/c]` below the critical value.
pub fn support(c: f64, tol: f64) -> Result<SupportData> {
    if !(c > 0.0) {
        return Err(Error::InvalidInput(format!("c must be positive, got {c}")));
    }
    if c > critical_value() {
        solve_endpoints(c, tol)
    } else {
        Ok(SupportData {
            a: 0.0,
            b: 4.0 / c,
            c,
            regime: SupportRegime::Subcritical,
            c1: f64::NAN,
            c2: c.powf(1.5) / (4.0 * PI),
        })
    }
}

/// `int_0^a ds / ((z - s) sqrt(s (a-s) (b-s)))` for `z` off `[0, a]`.
pub fn h_kernel(z: Complex64, a: f64, b: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (t, w) in rule().composite(0.0, FRAC_PI_2, 4) {
        let sn = t.sin();
        let s = a * sn * sn;
        acc += w * 2.0 / ((z - s) * (b - s).sqrt());
    }
    acc
}

fn atan_ratio(u: Complex64) -> Complex64 {
    // atan(sqrt u)/sqrt u, analytic near u = 0.
    if u.norm() < 1e-4 {
        return 1.0 - u / 3.0 + u * u / 5.0 - u * u * u / 7.0;
    }
    let r = u.sqrt();
    r.atan() / r
}

/// Regular part of [`h_kernel`] near `a`:
/// `h(z) = pi / (sqrt(z-a) sqrt(z (b-z))) + h_reg(z)`, with `h_reg` analytic at `a`.
pub fn h_regular(z: Complex64, a: f64, b: f64) -> Complex64 {
    let sa = a.sqrt();
    let d = b - a;
    let e = z - a;
    let phi0 = 1.0 / (z.sqrt() * (b - z).sqrt());
    let tail = 2.0 * phi0 / sa * atan_ratio(e / a);
    if e.norm() < 0.5 * a.min(d) {
        // (A - B)/(e + a t) with A = 2/sqrt(d + a t), B = 2 sqrt(a) sin(theta) phi0.
        // A^2 - B^2 = 4 (e + a t)(d - a - e + a t) / ((d + a t)(a + e)(d - e)),
        // so the pole at e + a t = 0 cancels and the integrand is smooth.
        let den = (a + e) * (d - e);
        let f = |th: f64| {
            let (sn, cs) = th.sin_cos();
            let t = cs * cs;
            let q = d + a * t;
            let sum = 2.0 / q.sqrt() + 2.0 * sa * sn * phi0;
            4.0 * (d - a - e + a * t) / (q * den * sum)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (th, w) in rule().composite(0.0, FRAC_PI_2, 4) {
            acc += w * f(th);
        }
        return acc - tail;
    }
    let integrand = |th: f64| {
        let (sn, cs) = th.sin_cos();
        let t = cs * cs;
        (2.0 / (d + a * t).sqrt() - 2.0 * sa * sn * phi0) / (e + a * t)
    };
    graded_theta(integrand, (e.norm() / a).sqrt()) - tail
}

/// Supercritical band density, valid for real or complex `z` near the band.
///
/// Uses the regular decomposition near `a`; elsewhere
/// `rho = sqrt((b-z)(z-a)) h(z) / (2 pi)`.
pub fn band_density_complex(z: Complex64, a: f64, b: f64) -> Complex64 {
    let root = (b - z).sqrt() * (z - a).sqrt();
    if (z - a).norm() < 0.25 * (b - a) {
        0.5 / z.sqrt() + root * h_regular(z, a, b) / (2.0 * PI)
    } else {
        root * h_kernel(z, a, b) / (2.0 * PI)
    }
}

/// Equilibrium density at `x` in `(0, b)`.
pub fn density(x: f64, s: &SupportData) -> Result<f64> {
    if !(x > 0.0 && x < s.b) {
        return Err(Error::Domain(format!("density requires 0 < x < b = {}, got {x}", s.b)));
    }
    Ok(density_unchecked(x, s))
}

pub(crate) fn density_unchecked(x: f64, s: &SupportData) -> f64 {
    match s.regime {
        SupportRegime::Subcritical => {
            let c = s.c;
            c / (2.0 * PI) * ((4.0 - c * x) / (c * x)).sqrt()
        }
        SupportRegime::Supercritical => {
            let (a, b, c) = (s.a, s.b, s.c);
            if x <= a {
                0.5 / x.sqrt()
            } else {
                let (j, t) = band_kernel_parts(x, a, b);
                let e = x - a;
                ((b - x) / e).sqrt() * (c - j) / (2.0 * PI) + ((b - x) * e).sqrt() * t / PI
            }
        }
    }
}

/// Edge constants `(C1, C2)` in closed form.
///
/// `C2 = sqrt(b-a) h(b) / (2 pi)` and `C1 = -sqrt(b-a) h_reg(a) / (2 pi)`.
pub fn edge_constants(s: &SupportData) -> Result<(f64, f64)> {
    if s.regime != SupportRegime::Supercritical {
        return Err(Error::Subcritical {
            c: s.c,
            c_cr: critical_value(),
        });
    }
    let (a, b) = (s.a, s.b);
    let hb = theta_rule(|t| {
        let sn = t.sin();
        2.0 / (b - a * sn * sn).powf(1.5)
    });
    let c2 = (b - a).sqrt() * hb / (2.0 * PI);
    let c1 = -(b - a).sqrt() * h_regular(Complex64::new(a, 0.0), a, b).re / (2.0 * PI);
    if !(c1 > 0.0 && c2 > 0.0) {
        return Err(Error::Convergence {
            what: "edge constants",
            best: c1.min(c2),
            residual: f64::NAN,
        });
    }
    Ok((c1, c2))
}

/// Total mass `int_0^b rho`.
pub fn total_mass(s: &SupportData, tol: f64) -> Result<f64> {
    match s.regime {
        SupportRegime::Subcritical => {
            quadrature::quad(|x| density_unchecked(x, s), 0.0, s.b, EndpointSpec::new(-0.5, 0.5), tol)
        }
        SupportRegime::Supercritical => {
            let band = band_mass(s.a, s.b, s, tol)?;
            Ok(s.a.sqrt() + band)
        }
    }
}

/// `int_x^b rho` for `a <= x < b`.
pub(crate) fn band_mass(x: f64, _b: f64, s: &SupportData, tol: f64) -> Result<f64> {
    let left = if x <= s.a { 0.5 } else { 0.0 };
    quadrature::quad(
        |t| density_unchecked(t, s),
        x.max(s.a),
        s.b,
        EndpointSpec::new(left, 0.5),
        tol,
    )
}
