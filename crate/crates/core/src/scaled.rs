//! Overflow-free representation of polynomial values.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `log|v|` plus either a phase in radians (complex values) or a sign (real values).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledValue {
    pub log_modulus: f64,
    pub phase_or_sign: f64,
    pub is_real: bool,
    pub is_zero: bool,
}

impl ScaledValue {
    pub const ZERO_REAL: ScaledValue = ScaledValue {
        log_modulus: f64::NEG_INFINITY,
        phase_or_sign: 1.0,
        is_real: true,
        is_zero: true,
    };

    pub fn from_real(v: f64) -> Self {
        if v == 0.0 {
            return Self::ZERO_REAL;
        }
        ScaledValue {
            log_modulus: v.abs().ln(),
            phase_or_sign: v.signum(),
            is_real: true,
            is_zero: false,
        }
    }

    /// Real value `sign * exp(log_modulus)`.
    pub fn real(log_modulus: f64, sign: f64) -> Self {
        if sign == 0.0 || log_modulus == f64::NEG_INFINITY {
            return Self::ZERO_REAL;
        }
        ScaledValue {
            log_modulus,
            phase_or_sign: sign.signum(),
            is_real: true,
            is_zero: false,
        }
    }

    /// Complex value `exp(log_value)`; the imaginary part is reduced to (-pi, pi].
    pub fn from_log(log_value: Complex64) -> Self {
        if log_value.re == f64::NEG_INFINITY {
            return ScaledValue {
                is_real: false,
                ..Self::ZERO_REAL
            };
        }
        ScaledValue {
            log_modulus: log_value.re,
            phase_or_sign: wrap_phase(log_value.im),
            is_real: false,
            is_zero: false,
        }
    }

    /// Collapse a complex value to a real one when its phase is within `tol` of 0 or pi.
    pub fn to_real_if(self, tol: f64) -> Option<Self> {
        if self.is_real || self.is_zero {
            return Some(ScaledValue { is_real: true, ..self });
        }
        let p = self.phase_or_sign;
        if p.abs() <= tol {
            Some(Self::real(self.log_modulus, 1.0))
        } else if (PI - p.abs()) <= tol {
            Some(Self::real(self.log_modulus, -1.0))
        } else {
            None
        }
    }

    pub fn phase(&self) -> f64 {
        if self.is_real {
            if self.phase_or_sign < 0.0 {
                PI
            } else {
                0.0
            }
        } else {
            self.phase_or_sign
        }
    }

    /// Complex log of the value (imaginary part in (-pi, pi]).
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.log_modulus, self.phase())
    }

    /// The value itself; may overflow to infinity.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_modulus.exp(), self.phase())
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero {
            0.0
        } else if self.is_real {
            self.phase_or_sign * self.log_modulus.exp()
        } else {
            self.to_complex().re
        }
    }

    /// `self / other` as an ordinary complex number.
    pub fn ratio(&self, other: &ScaledValue) -> Complex64 {
        if self.is_zero && other.is_zero {
            return Complex64::new(1.0, 0.0);
        }
        if other.is_zero {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        if self.is_zero {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(
            (self.log_modulus - other.log_modulus).exp(),
            self.phase() - other.phase(),
        )
    }

    /// `|self/other - 1|`.
    pub fn relative_error(&self, other: &ScaledValue) -> f64 {
        (self.ratio(other) - 1.0).norm()
    }

    pub fn mul(&self, other: &ScaledValue) -> ScaledValue {
        if self.is_real && other.is_real {
            return Self::real(
                self.log_modulus + other.log_modulus,
                self.phase_or_sign * other.phase_or_sign,
            );
        }
        Self::from_log(self.ln() + other.ln())
    }
}

pub fn wrap_phase(p: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = p.rem_euclid(two_pi);
    if r > PI {
        r -= two_pi;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_roundtrip() {
        let v = ScaledValue::from_real(-3.5);
        assert!((v.to_f64() + 3.5).abs() < 1e-15);
        assert_eq!(v.phase_or_sign, -1.0);
    }

    #[test]
    fn ratio_of_huge_values() {
        let a = ScaledValue::real(1000.0, 1.0);
        let b = ScaledValue::real(1000.0 - 2f64.ln(), 1.0);
        assert!((a.ratio(&b).re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn phase_wraps() {
        let v = ScaledValue::from_log(Complex64::new(0.0, 3.0 * PI));
        assert!((v.phase_or_sign.abs() - PI).abs() < 1e-12);
        assert_eq!(v.to_real_if(1e-9).unwrap().phase_or_sign, -1.0);
    }
}
