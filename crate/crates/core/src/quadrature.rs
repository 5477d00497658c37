//! Gauss–Legendre quadrature with algebraic endpoint substitutions.
//!
//! A singular factor `(s-L)^p`, `-1 < p < 0`, at the left end is removed by
//! `s = L + h u^{1/(1+p)}` on the left half of the interval, and likewise at the
//! right end. A branch factor `(s-L)^{1/k}` uses `s = L + h u^k`, which keeps
//! both the regular and the singular parts of the integrand smooth. Other
//! positive exponents are left to the adaptive refinement. Each half
//! is then integrated by 20-point Gauss–Legendre panels refined dyadically
//! until two successive levels agree.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

pub const DEFAULT_TOL: f64 = 1e-12;
const ORDER: usize = 20;
const MAX_DEPTH: u32 = 48;
const MAX_EVALS: usize = 2_000_000;

/// Exponents of the algebraic factors `(s-L)^p (R-s)^q` at the two ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointSpec {
    pub left_exponent: f64,
    pub right_exponent: f64,
}

impl EndpointSpec {
    pub const REGULAR: EndpointSpec = EndpointSpec::new(0.0, 0.0);

    pub const fn new(left_exponent: f64, right_exponent: f64) -> Self {
        EndpointSpec {
            left_exponent,
            right_exponent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T = f64> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Values the adaptive rule can sum.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn real_part(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn real_part(&self) -> f64 {
        *self
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn real_part(&self) -> f64 {
        self.re
    }
}

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn legendre(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    /// Nodes mapped to [lo, hi] with matching weights.
    pub fn mapped(&self, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = 0.5 * (hi - lo);
        let m = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (m + h * x, h * w))
    }

    /// Composite rule over `panels` equal panels of [lo, hi].
    pub fn composite(&self, lo: f64, hi: f64, panels: usize) -> Vec<(f64, f64)> {
        let width = (hi - lo) / panels as f64;
        (0..panels)
            .flat_map(|k| {
                let a = lo + width * k as f64;
                self.mapped(a, a + width).collect::<Vec<_>>()
            })
            .collect()
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub(crate) fn rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::legendre(ORDER))
}

fn panel<T: QuadValue, F: FnMut(f64) -> T>(g: &mut F, lo: f64, hi: f64) -> T {
    let mut acc = T::zero();
    for (x, w) in rule().mapped(lo, hi) {
        acc = acc + g(x) * w;
    }
    acc
}

struct Budget {
    evals: usize,
    // Differences below this are rounding noise in the total.
    floor: f64,
    worst: f64,
    exhausted: bool,
}

fn refine<T: QuadValue, F: FnMut(f64) -> T>(
    g: &mut F,
    lo: f64,
    hi: f64,
    whole: T,
    tol: f64,
    depth: u32,
    budget: &mut Budget,
) -> T {
    let mid = 0.5 * (lo + hi);
    let left = panel(g, lo, mid);
    let right = panel(g, mid, hi);
    budget.evals += 2 * ORDER;
    let both = left + right;
    let diff = (both - whole).magnitude();
    if diff <= tol.max(budget.floor) || !diff.is_finite() {
        return both;
    }
    if depth >= MAX_DEPTH || budget.evals >= MAX_EVALS {
        budget.exhausted = true;
        budget.worst = budget.worst.max(diff);
        return both;
    }
    refine(g, lo, mid, left, 0.5 * tol, depth + 1, budget) + refine(g, mid, hi, right, 0.5 * tol, depth + 1, budget)
}

/// Adaptive Gauss–Legendre on [lo, hi] for an integrand without endpoint singularities.
pub fn adaptive<T: QuadValue, F: FnMut(f64) -> T>(mut g: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult<T>> {
    let whole = panel(&mut g, lo, hi);
    let tol_abs = tol.max(tol * whole.magnitude());
    let mut budget = Budget {
        evals: ORDER,
        floor: 16.0 * f64::EPSILON * whole.magnitude(),
        worst: 0.0,
        exhausted: false,
    };
    let value = refine(&mut g, lo, hi, whole, tol_abs, 0, &mut budget);
    if budget.exhausted {
        return Err(Error::Convergence {
            what: "quadrature",
            best: value.real_part(),
            residual: budget.worst,
        });
    }
    Ok(QuadResult {
        value,
        error_estimate: (value - whole).magnitude().min(tol_abs),
        evaluations: budget.evals,
    })
}

// d/du of h u^m, written in terms of the rounded distance t = h u^m actually
// seen by the integrand, so the singular factor and the Jacobian cancel exactly.
fn jacobian(t: f64, h: f64, m: f64) -> f64 {
    h * m * (t / h).powf((m - 1.0) / m)
}

// Exponent m of the substitution s - L = h u^m for a factor (s - L)^p.
fn power(exponent: f64) -> f64 {
    if exponent < 0.0 {
        return 1.0 / (1.0 + exponent);
    }
    let k = (1.0 / exponent).round();
    if exponent < 1.0 && (k * exponent - 1.0).abs() < 1e-12 {
        k
    } else {
        1.0
    }
}

/// Integral of `f` over (l, r) where `f` may carry the endpoint factors given by `spec`.
pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    l: f64,
    r: f64,
    spec: EndpointSpec,
    tol: f64,
) -> Result<QuadResult<T>> {
    if !(l < r) || !l.is_finite() || !r.is_finite() {
        return Err(Error::InvalidInput(format!("bad interval ({l}, {r})")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    if spec.left_exponent <= -1.0 || spec.right_exponent <= -1.0 {
        return Err(Error::InvalidInput(format!(
            "non-integrable endpoint exponents ({}, {})",
            spec.left_exponent, spec.right_exponent
        )));
    }
    let m = 0.5 * (l + r);
    let h = m - l;
    let kl = power(spec.left_exponent);
    let kr = power(spec.right_exponent);
    let left = adaptive(
        |u: f64| {
            if kl == 1.0 {
                f(l + h * u) * h
            } else {
                let x = l + h * u.powf(kl);
                if x == l {
                    return T::zero();
                }
                f(x) * jacobian(x - l, h, kl)
            }
        },
        0.0,
        1.0,
        0.5 * tol,
    )?;
    let right = adaptive(
        |v: f64| {
            if kr == 1.0 {
                f(r - h * v) * h
            } else {
                let x = r - h * v.powf(kr);
                if x == r {
                    return T::zero();
                }
                f(x) * jacobian(r - x, h, kr)
            }
        },
        0.0,
        1.0,
        0.5 * tol,
    )?;
    Ok(QuadResult {
        value: left.value + right.value,
        error_estimate: left.error_estimate + right.error_estimate,
        evaluations: left.evaluations + right.evaluations,
    })
}

/// Shorthand for a real integral that must succeed, returning only the value.
pub fn quad<F: FnMut(f64) -> f64>(f: F, l: f64, r: f64, spec: EndpointSpec, tol: f64) -> Result<f64> {
    integrate(f, l, r, spec, tol).map(|q| q.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gauss_rule_integrates_polynomials() {
        let g = GaussRule::legendre(20);
        let s: f64 = g.mapped(0.0, 1.0).map(|(x, w)| w * x.powi(39)).sum();
        assert!((s - 1.0 / 40.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_sqrt() {
        let q = integrate(|x: f64| x.powf(-0.5), 0.0, 1.0, EndpointSpec::new(-0.5, 0.0), 1e-12).unwrap();
        assert!((q.value - 2.0).abs() < 1e-12);
        assert!(q.evaluations > 0);
    }

    #[test]
    fn beta_half_three_halves() {
        let v = quad(
            |x| ((1.0 - x) / x).sqrt(),
            0.0,
            1.0,
            EndpointSpec::new(-0.5, 0.5),
            1e-12,
        )
        .unwrap();
        assert!((v - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn subcritical_density_has_unit_mass() {
        let c = 1.0;
        let v = quad(
            |x| c / (2.0 * PI) * ((4.0 - c * x) / (c * x)).sqrt(),
            0.0,
            4.0 / c,
            EndpointSpec::new(-0.5, 0.5),
            1e-12,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_exponent() {
        assert!(integrate(|x: f64| x, 0.0, 1.0, EndpointSpec::new(-1.0, 0.0), 1e-10).is_err());
    }

    #[test]
    fn log_singularity_converges() {
        let v = quad(|x: f64| x.ln(), 0.0, 1.0, EndpointSpec::new(-0.5, 0.0), 1e-12).unwrap();
        assert!((v + 1.0).abs() < 1e-11);
    }
}
