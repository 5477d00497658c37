use crate::compare::context;
use crate::report::Report;
use anyhow::{bail, Context, Result};
use dlop_core::asymptotics::{lattice_midpoints, AsymContext, RegimeTag};
use dlop_core::specfun::OuterModel;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_PI_4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchingRow {
    pub edge: RegimeTag,
    pub neighbour: RegimeTag,
    pub re: f64,
    pub im: f64,
    pub edge_log_modulus: f64,
    pub edge_phase_or_sign: f64,
    pub neighbour_log_modulus: f64,
    pub neighbour_phase_or_sign: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchingReport {
    pub n: u32,
    pub c: f64,
    pub alpha: f64,
    pub model: OuterModel,
    pub delta: f64,
    pub threshold: f64,
    pub rows: Vec<MatchingRow>,
    pub max_err: f64,
    pub pass: bool,
}

impl Report for MatchingReport {
    const SCHEMA: &'static str = "dlop/matching";
    type Row = MatchingRow;

    fn rows(&self) -> Vec<MatchingRow> {
        self.rows.clone()
    }

    fn passed(&self) -> bool {
        self.pass
    }
}

// Point of `v` nearest to `x0` that also lies within `r` of the edge `e`.
fn nearest(v: &[f64], x0: f64, e: f64, r: f64) -> Option<f64> {
    v.iter()
        .copied()
        .filter(|x| (x - e).abs() <= r)
        .min_by(|p, q| (p - x0).abs().total_cmp(&(q - x0).abs()))
}

/// Points on each edge circle `|z - e| = delta`, paired with the region
/// on the other side. On the real axis the nearest peak (band) or lattice
/// midpoint (saturated) inside the neighbouring region and the edge disc is
/// used.
pub fn boundary_points(ctx: &AsymContext, n: u32) -> Result<Vec<(RegimeTag, RegimeTag, Complex64)>> {
    let s = *ctx.support();
    let d = ctx.delta;
    let (ra, rb) = (ctx.left.radius, ctx.right.radius);
    let on_circle = |e: f64, t: f64| e + Complex64::from_polar(d, t);
    let real = |x: f64| Complex64::new(x, 0.0);
    let peaks = ctx.band_peaks(n, s.a + d, s.b - d)?;
    let sat = lattice_midpoints(n, d, s.a - d);
    let (Some(xb), Some(xa), Some(xs)) = (
        nearest(&peaks, s.b - d, s.b, rb),
        nearest(&peaks, s.a + d, s.a, ra),
        nearest(&sat, s.a - d, s.a, ra),
    ) else {
        bail!("no band peak or lattice midpoint inside the edge discs for n = {n}; try a larger n");
    };
    use RegimeTag::*;
    Ok(vec![
        (EdgeB, Void, real(s.b + d)),
        (EdgeB, Void, on_circle(s.b, FRAC_PI_4)),
        (EdgeB, Void, on_circle(s.b, 2.0 * FRAC_PI_4)),
        (EdgeB, Band, real(xb)),
        (EdgeA, Void, on_circle(s.a, FRAC_PI_4)),
        (EdgeA, Void, on_circle(s.a, 2.0 * FRAC_PI_4)),
        (EdgeA, Void, on_circle(s.a, 3.0 * FRAC_PI_4)),
        (EdgeA, Band, real(xa)),
        (EdgeA, Saturated, real(xs)),
    ])
}

pub fn run_matching(c: f64, alpha: f64, n: u32, model: OuterModel, delta: Option<f64>) -> Result<MatchingReport> {
    if n == 0 {
        bail!("n must be at least 1");
    }
    let ctx = context(c, alpha, model, delta)?;
    let threshold = 10.0 / n as f64;
    let mut rows = Vec::new();
    for (edge, neighbour, z) in boundary_points(&ctx, n)? {
        let e = ctx.evaluate(edge, z, n).with_context(|| format!("{edge} at {z}"))?;
        let v = ctx
            .evaluate(neighbour, z, n)
            .with_context(|| format!("{neighbour} at {z}"))?;
        rows.push(MatchingRow {
            edge,
            neighbour,
            re: z.re,
            im: z.im,
            edge_log_modulus: e.log_modulus,
            edge_phase_or_sign: e.phase_or_sign,
            neighbour_log_modulus: v.log_modulus,
            neighbour_phase_or_sign: v.phase_or_sign,
            relative_error: e.relative_error(&v),
        });
    }
    let max_err = rows
        .iter()
        .map(|r| r.relative_error)
        .fold(0.0, |m: f64, e| if e.is_nan() { f64::INFINITY } else { m.max(e) });
    Ok(MatchingReport {
        n,
        c,
        alpha,
        model,
        delta: ctx.delta,
        threshold,
        pass: max_err <= threshold,
        rows,
        max_err,
    })
}
