//! Complex log-Gamma by upward recurrence and the Stirling series.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

const SHIFT_TO: f64 = 12.0;

/// `B_{2k} / (2k (2k-1))` for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Tail of the Stirling series, `log Gamma(z) - [(z-1/2) log z - z + log(2 pi)/2]`, for large `|z|`.
pub fn stirling_tail(z: Complex64) -> Complex64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut pw = inv;
    let mut acc = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        acc += pw * c;
        pw *= inv2;
    }
    acc
}

fn shift_count(z: Complex64) -> usize {
    if z.re >= SHIFT_TO {
        0
    } else {
        (SHIFT_TO - z.re).ceil() as usize
    }
}

/// Principal branch of `log Gamma(z)`; on the negative real axis the limit from above.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Domain(format!("log_gamma pole at {}", z.re)));
    }
    if z.re < -1e5 {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        let rest = log_gamma(1.0 - z)?;
        return Ok(PI.ln() - (PI * z).sin().ln() - rest);
    }
    let m = shift_count(z);
    let mut logs = Complex64::new(0.0, 0.0);
    for k in 0..m {
        logs += (z + k as f64).ln();
    }
    let w = z + m as f64;
    Ok((w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + stirling_tail(w) - logs)
}

/// `log Gamma(w) - [(w-1/2) log w - w + log(2 pi)/2]` without cancellation of the large terms.
pub fn log_gamma_remainder(w: Complex64) -> Result<Complex64> {
    if w.im == 0.0 && w.re <= 0.0 && w.re == w.re.round() {
        return Err(Error::Domain(format!("log_gamma pole at {}", w.re)));
    }
    let m = shift_count(w);
    if m == 0 {
        return Ok(stirling_tail(w));
    }
    let v = w + m as f64;
    let mut logs = Complex64::new(0.0, 0.0);
    for k in 0..m {
        logs += (w + k as f64).ln();
    }
    Ok((v - 0.5) * v.ln() - (w - 0.5) * w.ln() - m as f64 + stirling_tail(v) - logs)
}

/// `z^{1/2}` with `arg z` taken in `(-pi/2, 3pi/2)`.
pub fn sqrt_rotated(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im <= 0.0 {
        return Err(Error::Domain(format!("{z} lies on the cut (-i inf, 0]")));
    }
    let mut arg = z.im.atan2(z.re);
    if arg <= -FRAC_PI_2 {
        arg += 2.0 * PI;
    }
    Ok(Complex64::from_polar(z.norm().sqrt(), 0.5 * arg))
}

/// `log H(z)` with `H(z) = e^w Gamma(w) / (sqrt(2 pi) w^{w - 1/2})`, `w = n z^{1/2}`.
pub fn log_h(z: Complex64, n: u32) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidInput("H needs n >= 1".into()));
    }
    let w = n as f64 * sqrt_rotated(z)?;
    log_gamma_remainder(w)
}

/// `log H*(z)`; the factor `1 - e^{+-2 i n pi sqrt z}` follows the half-plane of `z`.
///
/// On the negative real axis both factors coincide and the upper one is used.
pub fn log_h_star(z: Complex64, n: u32) -> Result<Complex64> {
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(Error::Domain(format!("H* is not defined on [0, inf), got {z}")));
    }
    let base = log_h(z, n)?;
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let q = (Complex64::new(0.0, sign * 2.0 * PI * n as f64) * z.sqrt()).exp();
    Ok(base + (1.0 - q).ln())
}
