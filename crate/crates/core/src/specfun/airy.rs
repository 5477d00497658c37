//! Complex Airy functions.
//!
//! `Ai` and `Ai'` come from the Maclaurin series near the origin, from the
//! large-argument expansions far out, and from Taylor stepping of
//! `y'' = z y` along the ray in between. Stepping runs outward where `Ai` is
//! dominant and inward where it is recessive, so it is stable in every sector.
//! `Bi` is obtained from the rotation formula
//! `Bi(z) = e^{i pi/6} Ai(omega z) + e^{-i pi/6} Ai(omega^2 z)`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

/// `Ai(0)`.
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// `-Ai'(0)`.
pub const MINUS_AIP0: f64 = 0.258_819_403_792_806_8;
/// Largest supported `|z|`.
pub const MAX_ARG: f64 = 1e4;

const SERIES_RADIUS: f64 = 2.5;
const ASYMPTOTIC_RADIUS: f64 = 9.5;
const STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValues {
    pub ai: Complex64,
    pub aip: Complex64,
    pub bi: Complex64,
    pub bip: Complex64,
}

pub fn airy(z: Complex64) -> Result<AiryValues> {
    if !(z.norm() <= MAX_ARG) {
        return Err(Error::Domain(format!(
            "|z| = {} exceeds the Airy working range",
            z.norm()
        )));
    }
    let (ai, aip) = ai_pair(z);
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let (a1, d1) = ai_pair(w * z);
    let (a2, d2) = ai_pair(w.conj() * z);
    let e1 = Complex64::from_polar(1.0, PI / 6.0);
    let e5 = Complex64::from_polar(1.0, 5.0 * PI / 6.0);
    let bi = e1 * a1 + e1.conj() * a2;
    let bip = e5 * d1 + e5.conj() * d2;
    Ok(AiryValues { ai, aip, bi, bip })
}

/// `(Ai(z), Ai'(z))` for `|z| <= MAX_ARG`.
pub fn ai_pair(z: Complex64) -> (Complex64, Complex64) {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        return series(z);
    }
    if r >= ASYMPTOTIC_RADIUS {
        return asymptotic(z);
    }
    let dir = z / r;
    if z.arg().abs() < FRAC_PI_3 {
        let start = dir * ASYMPTOTIC_RADIUS;
        let (y, dy) = asymptotic(start);
        integrate_ode(start, z, y, dy)
    } else {
        let start = dir * SERIES_RADIUS;
        let (y, dy) = series(start);
        integrate_ode(start, z, y, dy)
    }
}

fn series(z: Complex64) -> (Complex64, Complex64) {
    let z3 = z * z * z;
    let one = Complex64::new(1.0, 0.0);
    // f = sum t_k, g = sum u_k and their derivatives fp, gp.
    let (mut t, mut u) = (one, z);
    let (mut tp, mut up) = (z * z / 2.0, one);
    let (mut f, mut g, mut fp, mut gp) = (one, z, tp, up);
    for k in 1..200 {
        let kf = k as f64;
        t *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        u *= z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        up *= z3 / ((3.0 * kf - 2.0) * (3.0 * kf));
        f += t;
        g += u;
        gp += up;
        if k >= 2 {
            tp *= z3 / ((3.0 * kf - 3.0) * (3.0 * kf - 1.0));
            fp += tp;
        }
        let scale = f.norm() + g.norm() + fp.norm() + gp.norm();
        if t.norm() + u.norm() + tp.norm() + up.norm() < 1e-18 * scale {
            break;
        }
    }
    (AI0 * f - MINUS_AIP0 * g, AI0 * fp - MINUS_AIP0 * gp)
}

fn uv_coefficients() -> &'static [(f64, f64)] {
    use std::sync::OnceLock;
    static C: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    C.get_or_init(|| {
        let mut out = vec![(1.0, 1.0)];
        let mut u = 1.0;
        for k in 1..60 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
            let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
            out.push((u, v));
        }
        out
    })
}

/// `sum_k (-1)^k c_k / zeta^k` (or the even/odd parts) truncated at the smallest term.
fn asym_sum(zeta: Complex64, pick: impl Fn(usize) -> Option<f64>, alternate_pairs: bool) -> Complex64 {
    let coeffs = uv_coefficients();
    let inv = 1.0 / zeta;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pw = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 0..coeffs.len() {
        if k > 0 {
            pw *= inv;
        }
        let Some(c) = pick(k) else { continue };
        let sign = if alternate_pairs {
            if (k / 2) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        } else if k % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        let term = pw * (sign * c);
        let m = term.norm();
        if m > last {
            break;
        }
        acc += term;
        last = m;
        if m < 1e-18 * acc.norm() {
            break;
        }
    }
    acc
}

fn asymptotic(z: Complex64) -> (Complex64, Complex64) {
    let coeffs = uv_coefficients();
    let sqrt_pi = PI.sqrt();
    if z.arg().abs() <= 2.0 * PI / 3.0 {
        let zeta = 2.0 / 3.0 * z.powf(1.5);
        let q = z.powf(0.25);
        let e = (-zeta).exp();
        let su = asym_sum(zeta, |k| Some(coeffs[k].0), false);
        let sv = asym_sum(zeta, |k| Some(coeffs[k].1), false);
        (e / (2.0 * sqrt_pi * q) * su, -q * e / (2.0 * sqrt_pi) * sv)
    } else {
        let w = -z;
        let zeta = 2.0 / 3.0 * w.powf(1.5);
        let q = w.powf(0.25);
        let even_u = asym_sum(zeta, |k| (k % 2 == 0).then(|| coeffs[k].0), true);
        let odd_u = asym_sum(zeta, |k| (k % 2 == 1).then(|| coeffs[k].0), true);
        let even_v = asym_sum(zeta, |k| (k % 2 == 0).then(|| coeffs[k].1), true);
        let odd_v = asym_sum(zeta, |k| (k % 2 == 1).then(|| coeffs[k].1), true);
        let ph = zeta - FRAC_PI_4;
        let (c, s) = (ph.cos(), ph.sin());
        let ai = (c * even_u + s * odd_u) / (sqrt_pi * q);
        // d/dz Ai(z) = -d/dw Ai(-w)
        let aip = q / sqrt_pi * (s * even_v - c * odd_v);
        (ai, aip)
    }
}

/// Taylor steps for `y'' = z y` along the segment from `z0` to `z1`.
fn integrate_ode(z0: Complex64, z1: Complex64, mut y: Complex64, mut dy: Complex64) -> (Complex64, Complex64) {
    let dist = (z1 - z0).norm();
    let steps = (dist / STEP).ceil().max(1.0) as usize;
    let h = (z1 - z0) / steps as f64;
    let mut zc = z0;
    for _ in 0..steps {
        // y(zc + t) = sum c_k t^k with (k+2)(k+1) c_{k+2} = zc c_k + c_{k-1}.
        let mut c = [Complex64::new(0.0, 0.0); 80];
        c[0] = y;
        c[1] = dy;
        c[2] = zc * c[0] / 2.0;
        let mut val = c[0] + c[1] * h + c[2] * h * h;
        let mut der = c[1] + 2.0 * c[2] * h;
        let mut hp = h * h;
        for k in 3..80 {
            c[k] = (zc * c[k - 2] + c[k - 3]) / ((k * (k - 1)) as f64);
            let hk1 = hp;
            hp *= h;
            let tv = c[k] * hp;
            let td = c[k] * hk1 * k as f64;
            val += tv;
            der += td;
            if tv.norm() + td.norm() < 1e-18 * (val.norm() + der.norm()) && k > 6 {
                break;
            }
        }
        y = val;
        dy = der;
        zc += h;
    }
    (y, dy)
}
