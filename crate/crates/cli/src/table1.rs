use crate::report::{digits_for_bits, Report};
use anyhow::Result;
use dlop_core::equilibrium::ModelParams;
use dlop_oracle::{build_recurrence, continuous_laguerre_zeros_mp, zeros_mp, LatticeMeasure, Rate};
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

/// Zeros of the degree-10 discrete polynomial (weight `e^{-(pi^2/60) x}` on
/// `{k^2 : k >= 1}`) as tabulated.
pub const REFERENCE_DISCRETE: [&str; 10] = [
    "1.0312593902618079872",
    "4.3927946544706143130",
    "10.508882642411045983",
    "19.696609776199878331",
    "32.270084609499775568",
    "48.658595847104970581",
    "69.526822240006454052",
    "95.99803545442174504",
    "130.24647289010848939",
    "177.85779728345868061",
];

/// Zeros of the degree-10 Laguerre polynomial for `x^{-1/2} e^{-(pi^2/60) x}`.
pub const REFERENCE_CONTINUOUS: [&str; 10] = [
    "0.3659238650514353556",
    "3.3063179324671812008",
    "9.2583899628419669141",
    "18.374677972612339445",
    "30.912532317124747650",
    "47.281160918670718658",
    "68.137261123322616690",
    "94.600529260150193532",
    "128.84341399111556911",
    "176.45053941796852867",
];

pub const TOLERANCE: f64 = 1e-12;
const DEGREE: u32 = 10;
const RATE_DIVISOR: u32 = 60;

#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub index: usize,
    pub discrete: String,
    pub discrete_reference: &'static str,
    pub discrete_rel_dev: f64,
    pub continuous: String,
    pub continuous_reference: &'static str,
    pub continuous_rel_dev: f64,
    /// `|discrete - continuous| / discrete`.
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Params {
    pub degree: u32,
    pub rate: &'static str,
    pub big_n: u32,
    pub k_min: u32,
    pub alpha: f64,
    pub beta: f64,
    pub precision_bits: u32,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Report {
    pub params: Table1Params,
    pub rows: Vec<Table1Row>,
    pub max_rel_dev: f64,
    pub pass: bool,
}

impl Report for Table1Report {
    const SCHEMA: &'static str = "dlop/table1";
    type Row = Table1Row;

    fn rows(&self) -> Vec<Table1Row> {
        self.rows.clone()
    }

    fn passed(&self) -> bool {
        self.pass
    }
}

fn rel_dev(x: &Float, reference: &str, prec: u32) -> Result<f64> {
    let want = Float::with_val(prec, Float::parse(reference)?);
    Ok((Float::with_val(prec, x - &want) / &want).abs().to_f64())
}

pub fn run_table1(precision_bits: u32) -> Result<Table1Report> {
    let params = ModelParams {
        alpha: 0.0,
        c: std::f64::consts::PI.powi(2) / RATE_DIVISOR as f64,
        big_n: 1,
        n: DEGREE,
    };
    let measure = LatticeMeasure::new(params)
        .with_precision(precision_bits)
        .with_rate(Rate::PiSquaredOver(RATE_DIVISOR));
    let table = build_recurrence(&measure, DEGREE)?;
    let discrete = zeros_mp(&table, DEGREE)?;
    let lambda = Float::with_val(precision_bits, Constant::Pi).square() / RATE_DIVISOR;
    let continuous = continuous_laguerre_zeros_mp(DEGREE, -0.5, &lambda, precision_bits)?;
    let digits = digits_for_bits(precision_bits).min(22);
    let mut rows = Vec::new();
    for (i, (d, c)) in discrete.iter().zip(&continuous).enumerate() {
        let gap = Float::with_val(precision_bits, d - c) / d;
        rows.push(Table1Row {
            index: i + 1,
            discrete: d.to_string_radix(10, Some(digits)),
            discrete_reference: REFERENCE_DISCRETE[i],
            discrete_rel_dev: rel_dev(d, REFERENCE_DISCRETE[i], precision_bits)?,
            continuous: c.to_string_radix(10, Some(digits)),
            continuous_reference: REFERENCE_CONTINUOUS[i],
            continuous_rel_dev: rel_dev(c, REFERENCE_CONTINUOUS[i], precision_bits)?,
            gap: gap.abs().to_f64(),
        });
    }
    let max_rel_dev = rows
        .iter()
        .flat_map(|r| [r.discrete_rel_dev, r.continuous_rel_dev])
        .fold(0.0, f64::max);
    Ok(Table1Report {
        params: Table1Params {
            degree: DEGREE,
            rate: "pi^2/60",
            big_n: 1,
            k_min: 1,
            alpha: 0.0,
            beta: -0.5,
            precision_bits,
            tolerance: TOLERANCE,
        },
        pass: rows.len() == 10 && max_rel_dev <= TOLERANCE,
        rows,
        max_rel_dev,
    })
}
