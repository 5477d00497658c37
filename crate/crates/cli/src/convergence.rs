use crate::oracle::OracleConfig;
use crate::report::{log_log_slope, Report};
use anyhow::{bail, Context, Result};
use dlop_core::asymptotics::{asym_norm_and_recurrence, RegimeTag};
use dlop_core::specfun::OuterModel;
use dlop_core::{Exec, ScaledValue};
use num_complex::Complex64;
use serde::Serialize;

use crate::compare::context;

pub const SLOPE_RANGE: (f64, f64) = (-1.35, -0.65);
pub const DOUBLING_RATIO_RANGE: (f64, f64) = (1.5, 2.7);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
pub enum Quantity {
    #[serde(rename = "h")]
    #[value(name = "h")]
    H,
    #[serde(rename = "A2")]
    #[value(name = "A2", alias = "a2")]
    A2,
    #[serde(rename = "B")]
    #[value(name = "B", alias = "b")]
    B,
    #[serde(rename = "pn")]
    #[value(name = "pn")]
    Pn,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceConfig {
    pub quantity: Quantity,
    pub n_list: Vec<u32>,
    pub c: f64,
    pub alpha: f64,
    pub model: OuterModel,
    /// Evaluation point for `pn`.
    pub x: f64,
    pub precision_bits: u32,
    #[serde(skip)]
    pub exec: Exec,
}

impl ConvergenceConfig {
    pub fn new(quantity: Quantity, n_list: Vec<u32>, c: f64, alpha: f64) -> Self {
        ConvergenceConfig {
            quantity,
            n_list,
            c,
            alpha,
            model: OuterModel::Literal,
            x: f64::NAN,
            precision_bits: dlop_oracle::DEFAULT_PRECISION_BITS,
            exec: Exec::default(),
        }
    }

    pub fn with_model(mut self, model: OuterModel) -> Self {
        self.model = model;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.len() < 2 {
            bail!("n-list needs at least two degrees");
        }
        if !self.n_list.windows(2).all(|w| w[0] < w[1]) || self.n_list[0] == 0 {
            bail!("n-list must be positive and strictly ascending");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub oracle: f64,
    pub asym: f64,
    pub oracle_log_modulus: f64,
    pub asym_log_modulus: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceSummary {
    pub slope: f64,
    /// `err(n_i) / err(n_{i+1})` for consecutive entries.
    pub ratios: Vec<f64>,
    pub regime: Option<RegimeTag>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub params: ConvergenceConfig,
    pub rows: Vec<ConvergenceRow>,
    pub summary: ConvergenceSummary,
}

impl Report for ConvergenceReport {
    const SCHEMA: &'static str = "dlop/convergence";
    type Row = ConvergenceRow;

    fn rows(&self) -> Vec<ConvergenceRow> {
        self.rows.clone()
    }

    fn passed(&self) -> bool {
        self.summary.pass
    }
}

fn row(n: u32, o: ScaledValue, a: ScaledValue) -> ConvergenceRow {
    ConvergenceRow {
        n,
        oracle: o.to_f64(),
        asym: a.to_f64(),
        oracle_log_modulus: o.log_modulus,
        asym_log_modulus: a.log_modulus,
        relative_error: o.relative_error(&a),
    }
}

pub fn run_convergence(cfg: &ConvergenceConfig) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let origin_node = matches!(cfg.model, OuterModel::Corrected { origin_node: true });
    let ctx = context(cfg.c, cfg.alpha, cfg.model, None)?;
    let regime = match cfg.quantity {
        Quantity::Pn => {
            if !cfg.x.is_finite() {
                bail!("quantity pn needs a finite evaluation point");
            }
            Some(ctx.classify(Complex64::new(cfg.x, 0.0)).tag)
        }
        _ => None,
    };
    let rows = cfg
        .exec
        .map(&cfg.n_list, |&n| -> Result<ConvergenceRow> {
            let oc = OracleConfig {
                n,
                c: cfg.c,
                alpha: cfg.alpha,
                big_n: n,
                precision_bits: cfg.precision_bits,
                include_origin_node: origin_node,
            };
            let t = oc.build().with_context(|| format!("oracle table for n = {n}"))?;
            let (h, a2, b) = asym_norm_and_recurrence(n, &ctx.coeffs);
            let k = n as usize;
            Ok(match cfg.quantity {
                Quantity::H => row(n, ScaledValue::real(t.log_h(k), 1.0), h),
                Quantity::A2 => row(n, ScaledValue::from_real(t.a2_f64(k)), ScaledValue::from_real(a2)),
                Quantity::B => row(n, ScaledValue::from_real(t.b_f64(k)), ScaledValue::from_real(b)),
                Quantity::Pn => {
                    let z = Complex64::new(cfg.x, 0.0);
                    let tag = regime.expect("set above");
                    row(n, t.eval_poly(n, z)?, ctx.evaluate(tag, z, n)?)
                }
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let ns: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let errs: Vec<f64> = rows.iter().map(|r| r.relative_error).collect();
    let slope = log_log_slope(&ns, &errs);
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[0] / w[1]).collect();
    let doubling_ok = rows
        .windows(2)
        .zip(&ratios)
        .filter(|(w, _)| w[1].n == 2 * w[0].n)
        .all(|(_, &r)| r >= DOUBLING_RATIO_RANGE.0 && r <= DOUBLING_RATIO_RANGE.1);
    let pass = slope >= SLOPE_RANGE.0 && slope <= SLOPE_RANGE.1 && doubling_ok;
    Ok(ConvergenceReport {
        params: cfg.clone(),
        rows,
        summary: ConvergenceSummary {
            slope,
            ratios,
            regime,
            pass,
        },
    })
}
