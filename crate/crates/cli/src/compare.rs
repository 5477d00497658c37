use crate::report::{median, Report};
use anyhow::{anyhow, bail, Context, Result};
use dlop_core::asymptotics::{lattice_midpoints, AsymContext, RegimeTag};
use dlop_core::specfun::OuterModel;
use dlop_core::{Exec, ScaledValue};
use dlop_oracle::RecurrenceTable;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::oracle::OracleConfig;

pub const DEFAULT_GRID: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareConfig {
    pub regime: RegimeTag,
    pub n: u32,
    pub c: f64,
    pub alpha: f64,
    pub grid: usize,
    pub delta: Option<f64>,
    pub model: OuterModel,
    pub precision_bits: u32,
    #[serde(skip)]
    pub exec: Exec,
}

impl CompareConfig {
    pub fn new(regime: RegimeTag, n: u32, c: f64, alpha: f64) -> Self {
        CompareConfig {
            regime,
            n,
            c,
            alpha,
            grid: DEFAULT_GRID,
            delta: None,
            model: OuterModel::Literal,
            precision_bits: dlop_oracle::DEFAULT_PRECISION_BITS,
            exec: Exec::default(),
        }
    }

    pub fn with_model(mut self, model: OuterModel) -> Self {
        self.model = model;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            bail!("n must be at least 1");
        }
        if self.grid == 0 {
            bail!("grid must be at least 1");
        }
        Ok(())
    }

    fn origin_node(&self) -> bool {
        matches!(self.model, OuterModel::Corrected { origin_node: true })
    }

    pub fn oracle(&self) -> OracleConfig {
        OracleConfig {
            n: self.n,
            c: self.c,
            alpha: self.alpha,
            big_n: self.n,
            precision_bits: self.precision_bits,
            include_origin_node: self.origin_node(),
        }
    }
}

/// Acceptance threshold for the ratio test in `tag`.
pub fn threshold(tag: RegimeTag, n: u32) -> f64 {
    match tag {
        RegimeTag::Band | RegimeTag::Void => 6.0 / n as f64,
        _ => 10.0 / n as f64,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointRecord {
    pub re: f64,
    pub im: f64,
    pub regime: RegimeTag,
    pub oracle_log_modulus: f64,
    pub oracle_phase_or_sign: f64,
    pub asym_log_modulus: f64,
    pub asym_phase_or_sign: f64,
    pub relative_error: f64,
    pub sign_match: bool,
}

impl PointRecord {
    pub fn new(z: Complex64, regime: RegimeTag, oracle: ScaledValue, asym: ScaledValue) -> Self {
        let sign_match = if oracle.is_real && asym.is_real {
            oracle.phase_or_sign == asym.phase_or_sign
        } else {
            (oracle.phase() - asym.phase()).cos() > 0.0
        };
        PointRecord {
            re: z.re,
            im: z.im,
            regime,
            oracle_log_modulus: oracle.log_modulus,
            oracle_phase_or_sign: oracle.phase_or_sign,
            asym_log_modulus: asym.log_modulus,
            asym_phase_or_sign: asym.phase_or_sign,
            relative_error: oracle.relative_error(&asym),
            sign_match,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub max_err: f64,
    pub median_err: f64,
    pub threshold: f64,
    pub mismatches: usize,
    pub pass: bool,
}

impl Summary {
    pub fn from_points(points: &[PointRecord], threshold: f64) -> Self {
        let errs: Vec<f64> = points.iter().map(|p| p.relative_error).collect();
        let max_err = errs
            .iter()
            .copied()
            .fold(0.0, |m: f64, e| if e.is_nan() { f64::INFINITY } else { m.max(e) });
        let mismatches = points.iter().filter(|p| !p.sign_match).count();
        Summary {
            max_err,
            median_err: median(&errs),
            threshold,
            mismatches,
            pass: !points.is_empty() && max_err <= threshold && mismatches == 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub params: CompareConfig,
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub points: Vec<PointRecord>,
    pub summary: Summary,
}

impl Report for ComparisonReport {
    const SCHEMA: &'static str = "dlop/compare";
    type Row = PointRecord;

    fn rows(&self) -> Vec<PointRecord> {
        self.points.clone()
    }

    fn passed(&self) -> bool {
        self.summary.pass
    }
}

/// Every `len / m`-th element, `m` of them, spread over the whole range.
fn spread<T: Copy>(v: &[T], m: usize) -> Vec<T> {
    if v.len() <= m {
        return v.to_vec();
    }
    if m == 1 {
        return vec![v[v.len() / 2]];
    }
    (0..m).map(|i| v[i * (v.len() - 1) / (m - 1)]).collect()
}

fn linspace(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    match m {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => (0..m).map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64).collect(),
    }
}

/// Upper half-circle points `center + r e^{i t}`, `t` strictly inside `(0, pi)`.
fn arc(center: f64, r: f64, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|i| center + Complex64::from_polar(r, PI * (i as f64 + 0.5) / m as f64))
        .collect()
}

/// Sample points of one region: lattice midpoints where the sine factor
/// peaks, band points where the predicted cosine peaks, plain grids elsewhere.
pub fn sample_points(ctx: &AsymContext, tag: RegimeTag, n: u32, grid: usize) -> Result<Vec<Complex64>> {
    let s = *ctx.support();
    let d = ctx.delta;
    let re = |v: Vec<f64>| v.into_iter().map(|x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
    let pts = match tag {
        RegimeTag::Void => {
            // Right of b, left of 0, and a line above the support.
            let k1 = grid.div_ceil(3);
            let k2 = (grid - k1).div_ceil(2);
            let mut v = re(linspace(s.b + 2.0 * d, s.b + 1.0, k1));
            v.extend(re(linspace(-1.0, -2.0 * d, k2)));
            v.extend(
                linspace(0.25 * s.a, s.b, grid - k1 - k2)
                    .into_iter()
                    .map(|x| Complex64::new(x, 0.25)),
            );
            v
        }
        RegimeTag::Band => re(spread(&ctx.band_peaks(n, s.a + d, s.b - d)?, grid)),
        RegimeTag::Saturated => re(spread(&lattice_midpoints(n, d, s.a - d), grid)),
        RegimeTag::Origin => {
            let k = grid.div_ceil(4);
            let mut v = re(spread(&lattice_midpoints(n, 0.0, d), grid - k));
            v.extend(arc(0.0, 0.5 * d, k));
            v
        }
        RegimeTag::EdgeB => {
            // Stay right of the first Airy zero so the ratio is well defined.
            let k = grid.div_ceil(4);
            let lo = (s.b - d).max(s.b - 1.0 / ((n as f64).powf(2.0 / 3.0) * ctx.right.derivative_at_edge()));
            let mut v = re(linspace(lo, s.b + d, grid - k));
            v.extend(arc(s.b, 0.5 * d, k));
            v
        }
        RegimeTag::EdgeA => {
            let k = grid.div_ceil(4);
            let mut mids = lattice_midpoints(n, s.a - d, s.a);
            mids.push(s.a);
            let mut v = re(spread(&mids, grid - k));
            v.extend(arc(s.a, 0.5 * d, k));
            v
        }
    };
    if pts.is_empty() {
        bail!("no {tag} sample points for n = {n}; widen delta or raise n");
    }
    Ok(pts)
}

/// Oracle and asymptotic values at `points`, evaluated with formula `tag`.
pub fn compare_points(
    ctx: &AsymContext,
    table: &RecurrenceTable,
    tag: RegimeTag,
    n: u32,
    points: &[Complex64],
    exec: Exec,
) -> Result<Vec<PointRecord>> {
    exec.map(points, |&z| -> Result<PointRecord> {
        let o = table.eval_poly(n, z).with_context(|| format!("oracle at {z}"))?;
        let a = ctx
            .evaluate(tag, z, n)
            .with_context(|| format!("{tag} formula at {z}"))?;
        Ok(PointRecord::new(z, tag, o, a))
    })
    .into_iter()
    .collect()
}

pub fn context(c: f64, alpha: f64, model: OuterModel, delta: Option<f64>) -> Result<AsymContext> {
    let ctx = AsymContext::new(c, alpha, model, 1e-12)?;
    Ok(match delta {
        Some(d) => ctx.with_delta(d)?,
        None => ctx,
    })
}

pub fn run_comparison(cfg: &CompareConfig) -> Result<ComparisonReport> {
    cfg.validate()?;
    let ctx = context(cfg.c, cfg.alpha, cfg.model, cfg.delta)?;
    let table = cfg.oracle().build()?;
    let pts = sample_points(&ctx, cfg.regime, cfg.n, cfg.grid)?;
    let points = compare_points(&ctx, &table, cfg.regime, cfg.n, &pts, cfg.exec)
        .map_err(|e| anyhow!("{} comparison failed: {e:#}", cfg.regime))?;
    let summary = Summary::from_points(&points, threshold(cfg.regime, cfg.n));
    Ok(ComparisonReport {
        params: *cfg,
        a: ctx.support().a,
        b: ctx.support().b,
        delta: ctx.delta,
        points,
        summary,
    })
}
