use crate::report::{digits_for_bits, Report};
use anyhow::Result;
use dlop_core::equilibrium::ModelParams;
use dlop_oracle::{
    build_recurrence, interlacing_violations, unresolved_node_ties, zeros_mp, LatticeMeasure, RecurrenceTable,
};
use rug::Float;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub n: u32,
    pub c: f64,
    pub alpha: f64,
    pub big_n: u32,
    pub precision_bits: u32,
    pub include_origin_node: bool,
}

impl OracleConfig {
    pub fn measure(&self) -> Result<LatticeMeasure> {
        let p = ModelParams {
            alpha: self.alpha,
            c: self.c,
            big_n: self.big_n,
            n: self.n,
        };
        p.validate()?;
        Ok(LatticeMeasure::new(p)
            .with_precision(self.precision_bits)
            .with_origin_node(self.include_origin_node))
    }

    pub fn build(&self) -> Result<RecurrenceTable> {
        Ok(build_recurrence(&self.measure()?, self.n)?)
    }
}

fn render(x: &Float, bits: u32) -> String {
    x.to_string_radix(10, Some(digits_for_bits(bits)))
}

#[derive(Debug, Clone, Serialize)]
pub struct TableMeta {
    pub n: u32,
    pub c: f64,
    pub alpha: f64,
    pub big_n: u32,
    pub k_min: u32,
    pub precision_bits: u32,
    pub nodes: usize,
    pub adjacent_residual: f64,
}

impl TableMeta {
    fn new(cfg: &OracleConfig, t: &RecurrenceTable) -> Self {
        TableMeta {
            n: cfg.n,
            c: cfg.c,
            alpha: cfg.alpha,
            big_n: cfg.big_n,
            k_min: t.k_min,
            precision_bits: t.precision_bits,
            nodes: t.node_count(),
            adjacent_residual: t.adjacent_residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceRow {
    pub k: u32,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "A2")]
    pub a2: String,
    pub h: String,
    pub log_h: f64,
}

/// `(B_k, A2_k, h_k)` for `k <= n`.
#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceReport {
    pub params: TableMeta,
    pub rows: Vec<RecurrenceRow>,
}

pub fn run_recurrence(cfg: &OracleConfig) -> Result<RecurrenceReport> {
    let t = cfg.build()?;
    let bits = t.precision_bits;
    let rows = (0..=cfg.n as usize)
        .map(|k| RecurrenceRow {
            k: k as u32,
            b: render(&t.b[k], bits),
            a2: render(&t.a2[k], bits),
            h: render(&t.h[k], bits),
            log_h: t.log_h(k),
        })
        .collect();
    Ok(RecurrenceReport {
        params: TableMeta::new(cfg, &t),
        rows,
    })
}

impl Report for RecurrenceReport {
    const SCHEMA: &'static str = "dlop/oracle-recurrence";
    type Row = RecurrenceRow;

    fn rows(&self) -> Vec<RecurrenceRow> {
        self.rows.clone()
    }

    fn passed(&self) -> bool {
        self.params.adjacent_residual < 2f64.powf(-(self.params.precision_bits as f64) / 2.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroRow {
    pub index: usize,
    pub zero: String,
    pub value: f64,
}

/// Sorted zeros of `P_n` with the lattice interlacing check.
#[derive(Debug, Clone, Serialize)]
pub struct ZerosReport {
    pub params: TableMeta,
    pub interlacing_violations: usize,
    pub unresolved_node_ties: usize,
    pub rows: Vec<ZeroRow>,
}

pub fn run_zeros(cfg: &OracleConfig) -> Result<ZerosReport> {
    let t = cfg.build()?;
    let z = zeros_mp(&t, cfg.n)?;
    let rows = z
        .iter()
        .enumerate()
        .map(|(i, x)| ZeroRow {
            index: i + 1,
            zero: render(x, t.precision_bits),
            value: x.to_f64(),
        })
        .collect();
    Ok(ZerosReport {
        params: TableMeta::new(cfg, &t),
        interlacing_violations: interlacing_violations(&z, cfg.big_n),
        unresolved_node_ties: unresolved_node_ties(&z, cfg.big_n),
        rows,
    })
}

impl Report for ZerosReport {
    const SCHEMA: &'static str = "dlop/oracle-zeros";
    type Row = ZeroRow;

    fn rows(&self) -> Vec<ZeroRow> {
        self.rows.clone()
    }

    fn passed(&self) -> bool {
        self.interlacing_violations == 0
    }
}
