//! Large-`n` approximations of the monic polynomials in every region of the
//! plane, in log-scaled form.

use crate::equilibrium::{solve_endpoints, SupportData};
use crate::error::{Error, Result};
use crate::gfield::{GContext, Side};
use crate::roots::brent;
use crate::scaled::ScaledValue;
use crate::specfun::airy::airy;
use crate::specfun::conformal::{eta_from, EdgeMap};
use crate::specfun::gamma::{log_h, log_h_star};
use crate::specfun::parametrix::{side_point, OuterModel, ParametrixContext};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI};

const EDGE_SAMPLES: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeTag {
    Void,
    Band,
    Saturated,
    Origin,
    EdgeA,
    EdgeB,
}

impl RegimeTag {
    pub const ALL: [RegimeTag; 6] = [
        RegimeTag::Void,
        RegimeTag::Band,
        RegimeTag::Saturated,
        RegimeTag::Origin,
        RegimeTag::EdgeA,
        RegimeTag::EdgeB,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeTag::Void => "void",
            RegimeTag::Band => "band",
            RegimeTag::Saturated => "saturated",
            RegimeTag::Origin => "origin",
            RegimeTag::EdgeA => "edge-a",
            RegimeTag::EdgeB => "edge-b",
        }
    }
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RegimeTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RegimeTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown regime {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub tag: RegimeTag,
    pub delta: f64,
}

/// `0.1 min(a, b - a)`.
pub fn default_delta(s: &SupportData) -> f64 {
    0.1 * s.a.min(s.b - s.a)
}

/// Region of `z`; edge discs win ties.
pub fn classify(z: Complex64, s: &SupportData, delta: f64) -> Result<Regime> {
    let limit = 0.25 * s.a.min(s.b - s.a);
    if !(delta > 0.0 && delta < limit) {
        return Err(Error::InvalidInput(format!(
            "delta must lie in (0, {limit}), got {delta}"
        )));
    }
    Ok(Regime {
        tag: classify_unchecked(z, s, delta),
        delta,
    })
}

fn classify_unchecked(z: Complex64, s: &SupportData, delta: f64) -> RegimeTag {
    if z.norm() <= delta {
        RegimeTag::Origin
    } else if (z - s.a).norm() <= delta {
        RegimeTag::EdgeA
    } else if (z - s.b).norm() <= delta {
        RegimeTag::EdgeB
    } else if z.im.abs() <= delta && z.re > 0.0 && z.re < s.a {
        RegimeTag::Saturated
    } else if z.im.abs() <= delta && z.re > s.a && z.re < s.b {
        RegimeTag::Band
    } else {
        RegimeTag::Void
    }
}

/// Leading terms of the norm and recurrence coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymCoefficients {
    pub a: f64,
    pub b: f64,
    pub l: f64,
    pub d_infinity: f64,
    pub model: OuterModel,
    /// `h_n ~ n e^{n l} h_limit`.
    pub h_limit: f64,
    pub a2_limit: f64,
    pub b_limit: f64,
}

impl AsymCoefficients {
    pub fn new(l: f64, par: &ParametrixContext) -> Self {
        let (a, b) = (par.support.a, par.support.b);
        let dinf = par.outer_d_infinity();
        let (h_limit, a2_limit, b_limit) = match par.model {
            OuterModel::Literal => (
                PI * (a + b) / 4.0 * dinf * dinf,
                (a + b).powi(2) / 16.0,
                (a * a + b * b) / (2.0 * (a + b)),
            ),
            OuterModel::Corrected { .. } => (PI * (b - a) / 4.0 * dinf * dinf, ((b - a) / 4.0).powi(2), 0.5 * (a + b)),
        };
        AsymCoefficients {
            a,
            b,
            l,
            d_infinity: dinf,
            model: par.model,
            h_limit,
            a2_limit,
            b_limit,
        }
    }
}

/// `(h_n, A_n^2, B_n)` from the leading terms.
pub fn asym_norm_and_recurrence(n: u32, coeffs: &AsymCoefficients) -> (ScaledValue, f64, f64) {
    let nf = n as f64;
    let log_h = nf.ln() + nf * coeffs.l + coeffs.h_limit.ln();
    (ScaledValue::real(log_h, 1.0), coeffs.a2_limit, coeffs.b_limit)
}

/// Real part of `exp(lv)` in log-scaled form.
fn real_part(lv: Complex64) -> ScaledValue {
    let c = lv.im.cos();
    ScaledValue::real(lv.re + c.abs().ln(), c.signum())
}

fn real_value(log_scale: f64, v: f64) -> ScaledValue {
    if v == 0.0 {
        return ScaledValue::ZERO_REAL;
    }
    ScaledValue::real(log_scale + v.abs().ln(), v.signum())
}

/// Everything needed to evaluate the approximations for one `(c, alpha)`.
#[derive(Debug, Clone)]
pub struct AsymContext {
    pub g: GContext,
    pub par: ParametrixContext,
    pub right: EdgeMap,
    pub left: EdgeMap,
    pub coeffs: AsymCoefficients,
    pub delta: f64,
}

impl AsymContext {
    pub fn new(c: f64, alpha: f64, model: OuterModel, tol: f64) -> Result<Self> {
        let s = solve_endpoints(c, tol)?;
        Self::from_support(s, alpha, model, tol)
    }

    pub fn from_support(s: SupportData, alpha: f64, model: OuterModel, tol: f64) -> Result<Self> {
        let g = GContext::new(s, tol.min(1e-12))?;
        let par = ParametrixContext::new(s, alpha, model)?;
        let coeffs = AsymCoefficients::new(g.l, &par);
        Ok(AsymContext {
            right: EdgeMap::right(&s)?,
            left: EdgeMap::left(&s)?,
            g,
            par,
            coeffs,
            delta: default_delta(&s),
        })
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        classify(Complex64::new(0.0, 0.0), &self.par.support, delta)?;
        self.delta = delta;
        Ok(self)
    }

    pub fn support(&self) -> &SupportData {
        &self.par.support
    }

    pub fn model(&self) -> OuterModel {
        self.par.model
    }

    pub fn classify(&self, z: Complex64) -> Regime {
        Regime {
            tag: classify_unchecked(z, self.support(), self.delta),
            delta: self.delta,
        }
    }

    fn accepts(&self, tag: RegimeTag, z: Complex64) -> Result<()> {
        let s = self.support();
        let ok = match tag {
            RegimeTag::Void | RegimeTag::Band | RegimeTag::Saturated => {
                classify_unchecked(z, s, 0.5 * self.delta) == tag
                    || (tag == RegimeTag::Saturated && z.im == 0.0 && z.re > 0.0 && z.re < s.a)
            }
            RegimeTag::Origin => z.norm() <= 0.5 * s.a && z != Complex64::new(0.0, 0.0),
            RegimeTag::EdgeA => (z - s.a).norm() <= self.left.radius,
            RegimeTag::EdgeB => (z - s.b).norm() <= self.right.radius,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("{z} is outside the {tag} region")))
        }
    }

    /// Evaluate the formula of region `tag` at `z`.
    pub fn evaluate(&self, tag: RegimeTag, z: Complex64, n: u32) -> Result<ScaledValue> {
        match tag {
            RegimeTag::Void => self.pn_void(z, n),
            RegimeTag::Band => self.real_only(z).and_then(|x| self.pn_band(x, n)),
            RegimeTag::Saturated => self.real_only(z).and_then(|x| self.pn_saturated(x, n)),
            RegimeTag::Origin => self.pn_origin(z, n),
            RegimeTag::EdgeA => self.pn_edge_a(z, n),
            RegimeTag::EdgeB => self.pn_edge_b(z, n),
        }
    }

    /// Classify `z` and evaluate the matching formula.
    pub fn pn(&self, z: Complex64, n: u32) -> Result<(Regime, ScaledValue)> {
        let r = self.classify(z);
        Ok((r, self.evaluate(r.tag, z, n)?))
    }

    fn real_only(&self, z: Complex64) -> Result<f64> {
        if z.im != 0.0 {
            return Err(Error::InvalidInput(format!("this formula takes real x, got {z}")));
        }
        Ok(z.re)
    }

    fn n_side(&self, x: f64) -> (Complex64, Complex64) {
        self.par.script_n_side(x, Side::Plus)
    }

    /// `e^{n g(z)} N1(z)`.
    pub fn pn_void(&self, z: Complex64, n: u32) -> Result<ScaledValue> {
        self.accepts(RegimeTag::Void, z)?;
        let nf = n as f64;
        if z.im == 0.0 {
            let x = z.re;
            let (g, n1) = if x > self.support().b {
                (self.g.g_value(z)?, self.par.script_n(z)?.0)
            } else {
                (self.g.g_boundary(x, Side::Plus)?, self.n_side(x).0)
            };
            return Ok(real_part(nf * g + n1.ln()));
        }
        let g = self.g.g_value(z)?;
        let (n1, _) = self.par.script_n(z)?;
        Ok(ScaledValue::from_log(nf * g + n1.ln()))
    }

    /// Phase inside the literal band cosine.
    pub fn band_cosine_argument(&self, x: f64, n: u32) -> Result<f64> {
        let s = self.support();
        let (a, b, al) = (s.a, s.b, self.par.alpha);
        if !(x > a && x < b) {
            return Err(Error::Domain(format!("{x} is not in the band")));
        }
        let q = (a + b) * x - a * b;
        let t1 = ((x + (a * b).sqrt()) / ((a.sqrt() + b.sqrt()) * x.sqrt())).clamp(-1.0, 1.0);
        let t2 = (x / q.sqrt()).clamp(-1.0, 1.0);
        let phase = self.g.band_phase(x)?;
        Ok((al - 0.5) * t1.acos() + t2.acos() + n as f64 * PI * phase - FRAC_PI_4)
    }

    /// Phase `theta` with the band approximation proportional to `cos(theta)`.
    pub fn band_argument(&self, x: f64, n: u32) -> Result<f64> {
        match self.model() {
            OuterModel::Literal => self.band_cosine_argument(x, n),
            OuterModel::Corrected { .. } => {
                let s = self.support();
                if !(x > s.a && x < s.b) {
                    return Err(Error::Domain(format!("{x} is not in the band")));
                }
                // Re(N1 e^{i t} + w N2 e^{-i t}) = |M| cos(t + arg M), M = N1 + conj(w N2).
                let (n1, n2) = self.n_side(x);
                let m = n1 + (x.powf(0.5 - self.par.alpha) * n2).conj();
                Ok(n as f64 * PI * self.g.band_phase(x)? + m.arg())
            }
        }
    }

    /// Log of the amplitude in front of the band cosine.
    pub fn band_log_amplitude(&self, x: f64, n: u32) -> f64 {
        let s = self.support();
        let (a, b, c, al) = (s.a, s.b, s.c, self.par.alpha);
        self.par.d_infinity.ln() + 0.5 * n as f64 * (c * x + self.g.l) + 0.5 * ((a + b) * x - a * b).ln()
            - 0.5 * al * x.ln()
            - 0.25 * (x - a).ln()
            - 0.25 * (b - x).ln()
    }

    /// Oscillatory approximation in the band.
    pub fn pn_band(&self, x: f64, n: u32) -> Result<ScaledValue> {
        self.accepts(RegimeTag::Band, Complex64::new(x, 0.0))?;
        match self.model() {
            OuterModel::Literal => {
                let arg = self.band_cosine_argument(x, n)?;
                Ok(real_value(self.band_log_amplitude(x, n), arg.cos()))
            }
            OuterModel::Corrected { .. } => {
                let s = self.support();
                let nf = n as f64;
                let (n1, n2) = self.n_side(x);
                let ph = nf * PI * self.g.band_phase(x)?;
                let e = Complex64::from_polar(1.0, ph);
                let w = x.powf(0.5 - self.par.alpha);
                let v = (n1 * e + w * n2 * e.conj()).re;
                Ok(real_value(0.5 * nf * (s.c * x + self.g.l), v))
            }
        }
    }

    /// Approximation on the saturated interval.
    pub fn pn_saturated(&self, x: f64, n: u32) -> Result<ScaledValue> {
        self.accepts(RegimeTag::Saturated, Complex64::new(x, 0.0))?;
        let nf = n as f64;
        let big_l = self.g.log_potential(x)?;
        let sn = (nf * PI * x.sqrt()).sin();
        let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        match self.model() {
            OuterModel::Literal => {
                let s = self.support();
                let (a, b, al) = (s.a, s.b, self.par.alpha);
                let r = ((a - x) * (b - x)).sqrt();
                let alg = (x - r) / (x.sqrt() * (a - x).powf(0.25) * (b - x).powf(0.25))
                    * ((x + (a * b).sqrt() - r) / (2.0 * x)).powf(al - 0.5);
                Ok(real_value(nf * big_l, -parity * sn * alg))
            }
            OuterModel::Corrected { .. } => {
                let (n1, _) = self.n_side(x);
                Ok(real_value(nf * big_l, parity * 2.0 * sn * n1.im))
            }
        }
    }

    /// Approximation near the origin. The literal form carries `H` and
    /// `H*`; under the corrected outer model the saturated form already holds
    /// down to the origin and only `H*/H = 1 - e^{+-2 i n pi sqrt z}` remains.
    pub fn pn_origin(&self, z: Complex64, n: u32) -> Result<ScaledValue> {
        self.accepts(RegimeTag::Origin, z)?;
        let nf = n as f64;
        let literal = self.model() == OuterModel::Literal;
        if z.im == 0.0 && z.re > 0.0 {
            let x = z.re;
            let big_l = self.g.log_potential(x)?;
            let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            let sn = (nf * PI * x.sqrt()).sin();
            let (n1, _) = self.n_side(x);
            let lh = if literal { log_h(z, n)?.re } else { 0.0 };
            // 2 i (-1)^{n+1} sin(n pi sqrt x) e^{n L} N1+ H, whose real part is
            // (-1)^n 2 sin(n pi sqrt x) Im(N1+) H e^{n L} for real H.
            return Ok(real_value(nf * big_l + lh, parity * 2.0 * sn * n1.im));
        }
        let factor = |w: Complex64| -> Result<Complex64> {
            let star = log_h_star(w, n)?;
            Ok(if literal { star } else { star - log_h(w, n)? })
        };
        if z.im == 0.0 {
            let x = z.re;
            let g = self.g.g_boundary(x, Side::Plus)?;
            let (n1, _) = self.n_side(x);
            return Ok(real_part(nf * g + n1.ln() + factor(z)?));
        }
        let g = self.g.g_value(z)?;
        let (n1, _) = self.par.script_n(z)?;
        Ok(ScaledValue::from_log(nf * g + n1.ln() + factor(z)?))
    }

    fn near_edge(&self, z: Complex64, edge: f64) -> bool {
        let s = self.support();
        (z - edge).norm() < 1e-3 * s.a.min(s.b - s.a)
    }

    /// Value at `z` extrapolated from points `z + i h_k` on the side of
    /// evaluation, avoiding the cancellation right at the edge.
    fn side_extrapolate(
        &self,
        z: Complex64,
        up: bool,
        f: impl Fn(Complex64) -> Result<Complex64>,
    ) -> Result<Complex64> {
        let s = self.support();
        let step = 1e-3 * s.a.min(s.b - s.a) * if up { 1.0 } else { -1.0 };
        let hs: Vec<f64> = (1..=EDGE_SAMPLES).map(|k| step * k as f64).collect();
        let mut p = hs
            .iter()
            .map(|&h| f(z + Complex64::new(0.0, h)))
            .collect::<Result<Vec<_>>>()?;
        // Neville's scheme evaluated at h = 0.
        for m in 1..p.len() {
            for i in (m..p.len()).rev() {
                let (hi, hj) = (hs[i], hs[i - m]);
                p[i] = (hi * p[i - 1] - hj * p[i]) / (hi - hj);
            }
        }
        Ok(p[p.len() - 1])
    }

    /// Bracket of the Airy approximation at `b` (without `sqrt(pi) e^{n(cz+l)/2}`).
    fn edge_b_bracket(&self, z: Complex64, n: u32) -> Result<Complex64> {
        let nf = n as f64;
        let f = self.right.eval(z)?;
        let v = airy(nf.powf(2.0 / 3.0) * f)?;
        let (n1, n2) = self.par.script_n(z)?;
        let w = z.powf(0.5 - self.par.alpha) * n2 * Complex64::i();
        let q = f.powf(0.25);
        Ok(nf.powf(1.0 / 6.0) * q * v.ai * (n1 - w) - nf.powf(-1.0 / 6.0) / q * v.aip * (n1 + w))
    }

    fn edge_a_bracket(&self, z: Complex64, n: u32) -> Result<Complex64> {
        let nf = n as f64;
        let ft = self.left.eval(z)?;
        let (e1, e2) = eta_from(z, n, ft)?;
        let (n1, n2) = self.par.script_n(z)?;
        let i = Complex64::i();
        let w = z.powf(0.5 - self.par.alpha) * n2;
        let q = (-ft).powf(0.25);
        Ok(nf.powf(1.0 / 6.0) * q * e1 * (i * n1 + w) + nf.powf(-1.0 / 6.0) / q * e2 * (i * n1 - w))
    }

    fn edge_value(
        &self,
        z: Complex64,
        n: u32,
        edge: f64,
        sign: f64,
        bracket: impl Fn(Complex64) -> Result<Complex64>,
    ) -> Result<ScaledValue> {
        let s = self.support();
        let real_input = z.im == 0.0;
        let w = if real_input { side_point(z.re, Side::Plus) } else { z };
        let br = if self.near_edge(z, edge) {
            self.side_extrapolate(z, z.im >= 0.0, &bracket)?
        } else {
            bracket(w)?
        };
        let lv = 0.5 * PI.ln() + 0.5 * n as f64 * (s.c * z + self.g.l) + (sign * br).ln();
        Ok(if real_input {
            real_part(lv)
        } else {
            ScaledValue::from_log(lv)
        })
    }

    /// Airy approximation at the band-void edge.
    pub fn pn_edge_b(&self, z: Complex64, n: u32) -> Result<ScaledValue> {
        self.accepts(RegimeTag::EdgeB, z)?;
        self.edge_value(z, n, self.support().b, 1.0, |w| self.edge_b_bracket(w, n))
    }

    /// Airy approximation at the saturated-band edge.
    pub fn pn_edge_a(&self, z: Complex64, n: u32) -> Result<ScaledValue> {
        self.accepts(RegimeTag::EdgeA, z)?;
        let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        self.edge_value(z, n, self.support().a, parity, |w| self.edge_a_bracket(w, n))
    }

    /// Points in `(lo, hi)` inside the band where the predicted cosine is `+-1`.
    pub fn band_peaks(&self, n: u32, lo: f64, hi: f64) -> Result<Vec<f64>> {
        let s = self.support();
        let (lo, hi) = (lo.max(s.a), hi.min(s.b));
        let eps = 1e-9 * (s.b - s.a);
        let (lo, hi) = (lo + eps, hi - eps);
        if !(lo < hi) {
            return Ok(Vec::new());
        }
        let th = |x: f64| self.band_argument(x, n);
        let (t_lo, t_hi) = (th(lo)? / PI, th(hi)? / PI);
        let (k_min, k_max) = (t_lo.min(t_hi).ceil() as i64, t_lo.max(t_hi).floor() as i64);
        let mut out = Vec::new();
        for k in k_min..=k_max {
            let target = k as f64 * PI;
            let f = |x: f64| th(x).map(|t| t - target).unwrap_or(f64::NAN);
            let (fl, fh) = (f(lo), f(hi));
            if fl == 0.0 {
                out.push(lo);
            } else if fh == 0.0 {
                out.push(hi);
            } else if fl * fh < 0.0 {
                out.push(brent(f, lo, hi, 1e-15, 200)?);
            }
        }
        out.sort_by(|a, b| a.total_cmp(b));
        Ok(out)
    }
}

/// Lattice midpoints `((k + 1/2)/N)^2` inside `(lo, hi)`.
pub fn lattice_midpoints(big_n: u32, lo: f64, hi: f64) -> Vec<f64> {
    let nf = big_n as f64;
    let k0 = (lo.max(0.0).sqrt() * nf - 0.5).ceil().max(0.0) as u64;
    (k0..)
        .map(|k| ((k as f64 + 0.5) / nf).powi(2))
        .skip_while(|&x| x <= lo)
        .take_while(|&x| x < hi)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(model: OuterModel) -> AsymContext {
        AsymContext::new(4.0, 0.0, model, 1e-12).unwrap()
    }

    #[test]
    fn classify_examples() {
        let s = solve_endpoints(4.0, 1e-12).unwrap();
        let d = default_delta(&s);
        let c = |z: Complex64| classify(z, &s, d).unwrap().tag;
        assert_eq!(c(Complex64::new(s.b, 0.0)), RegimeTag::EdgeB);
        assert_eq!(c(Complex64::new(0.5 * (s.a + s.b), 0.0)), RegimeTag::Band);
        assert_eq!(c(Complex64::new(2.0 * s.b, 0.0)), RegimeTag::Void);
        assert_eq!(c(Complex64::new(0.5 * s.a, 0.0)), RegimeTag::Saturated);
        assert_eq!(c(Complex64::new(0.5 * d, 0.0)), RegimeTag::Origin);
        assert!(classify(Complex64::new(1.0, 0.0), &s, 1.0).is_err());
    }

    #[test]
    fn literal_limits() {
        let c = ctx(OuterModel::Literal);
        let (a, b) = (c.coeffs.a, c.coeffs.b);
        let (_, a2, bb) = asym_norm_and_recurrence(64, &c.coeffs);
        assert_eq!(a2, (a + b).powi(2) / 16.0);
        assert_eq!(bb, (a * a + b * b) / (2.0 * (a + b)));
    }

    #[test]
    fn void_real_positive_beyond_b() {
        let c = ctx(OuterModel::Literal);
        let v = c.pn_void(Complex64::new(2.0 * c.support().b, 0.0), 32).unwrap();
        assert!(v.is_real && v.phase_or_sign > 0.0);
    }

    #[test]
    fn void_large_z() {
        let c = ctx(OuterModel::Literal);
        let z = Complex64::new(1e5, 1e5);
        let v = c.pn_void(z, 20).unwrap();
        assert!((v.log_modulus - 20.0 * z.norm().ln()).abs() < 1e-4);
    }

    #[test]
    fn saturated_sign_alternates_across_nodes() {
        let c = ctx(OuterModel::Corrected { origin_node: false });
        let n = 40u32;
        let mids = lattice_midpoints(n, 0.2, 0.6);
        let signs: Vec<f64> = mids
            .iter()
            .map(|&x| c.pn_saturated(x, n).unwrap().phase_or_sign)
            .collect();
        assert!(signs.windows(2).all(|w| w[0] == -w[1]));
    }

    #[test]
    fn literal_saturated_factor_changes_sign() {
        // x - sqrt((a-x)(b-x)) vanishes inside (0, a).
        let c = ctx(OuterModel::Literal);
        let n = 40u32;
        let mids = lattice_midpoints(n, 0.2, 0.6);
        let signs: Vec<f64> = mids
            .iter()
            .map(|&x| c.pn_saturated(x, n).unwrap().phase_or_sign)
            .collect();
        assert_eq!(signs.windows(2).filter(|w| w[0] == w[1]).count(), 1);
    }

    #[test]
    fn band_cosine_arguments_in_range() {
        let c = ctx(OuterModel::Literal);
        let s = *c.support();
        for k in 1..20 {
            let x = s.a + (s.b - s.a) * k as f64 / 20.0;
            let t = (x + (s.a * s.b).sqrt()) / ((s.a.sqrt() + s.b.sqrt()) * x.sqrt());
            assert!((-1.0..=1.0).contains(&t));
            assert!(c.band_cosine_argument(x, 48).unwrap().is_finite());
        }
    }

    #[test]
    fn band_general_form_is_twice_real_part() {
        let c = ctx(OuterModel::Corrected { origin_node: false });
        let s = *c.support();
        let x = 0.5 * (s.a + s.b);
        let n = 30;
        let (n1, _) = c.par.script_n_side(x, Side::Plus);
        let ph = n as f64 * PI * c.g.band_phase(x).unwrap();
        let direct = 2.0 * (n1 * Complex64::from_polar(1.0, ph)).re * (0.5 * n as f64 * (s.c * x + c.g.l)).exp();
        let v = c.pn_band(x, n).unwrap().to_f64();
        assert!((v - direct).abs() < 1e-12 * direct.abs().max(1e-300), "{v} {direct}");
    }

    #[test]
    fn origin_sides_agree() {
        for model in [OuterModel::Literal, OuterModel::Corrected { origin_node: false }] {
            let c = ctx(model);
            let x = 0.01;
            let n = 24;
            let plus = c.par.script_n_side(x, Side::Plus).0;
            let minus = c.par.script_n_side(x, Side::Minus).0;
            let sn = (n as f64 * PI * x.sqrt()).sin();
            let s = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let up = Complex64::new(0.0, 2.0) * s * sn * plus;
            let down = Complex64::new(0.0, -2.0) * s * sn * minus;
            assert!((up - down).norm() < 1e-13 * up.norm());
        }
    }

    #[test]
    fn edge_values_are_finite_at_the_edges() {
        let c = ctx(OuterModel::Literal);
        let s = *c.support();
        for (tag, x) in [(RegimeTag::EdgeB, s.b), (RegimeTag::EdgeA, s.a)] {
            let v = c.evaluate(tag, Complex64::new(x, 0.0), 48).unwrap();
            assert!(v.log_modulus.is_finite(), "{tag}");
            let near = c.evaluate(tag, Complex64::new(x + 1e-5, 0.0), 48).unwrap();
            assert!((near.ratio(&v) - 1.0).norm() < 1e-2, "{tag}");
        }
    }

    #[test]
    fn lattice_midpoints_between_nodes() {
        let m = lattice_midpoints(10, 0.05, 0.5);
        assert_eq!(m.first().copied(), Some(0.0625));
        assert!(m.iter().all(|&x| x > 0.05 && x < 0.5));
    }

    #[test]
    fn band_peaks_hit_unit_cosine() {
        let c = ctx(OuterModel::Literal);
        let s = *c.support();
        let p = c.band_peaks(48, s.a + 0.03, s.b - 0.03).unwrap();
        assert!(!p.is_empty());
        for x in p {
            assert!((c.band_cosine_argument(x, 48).unwrap().cos().abs() - 1.0).abs() < 1e-12);
        }
        let c = ctx(OuterModel::Corrected { origin_node: false });
        for x in c.band_peaks(48, s.a + 0.03, s.b - 0.03).unwrap() {
            let (n1, n2) = c.par.script_n_side(x, Side::Plus);
            let m = n1 + (x.powf(0.5) * n2).conj();
            let envelope = m.norm().ln() + 24.0 * (s.c * x + c.g.l);
            assert!((c.pn_band(x, 48).unwrap().log_modulus - envelope).abs() < 1e-10);
        }
    }

    #[test]
    fn misclassified_input_rejected() {
        let c = ctx(OuterModel::Literal);
        assert!(c.pn_band(0.3, 10).is_err());
        assert!(c.pn_void(Complex64::new(0.9, 0.0), 10).is_err());
    }
}
