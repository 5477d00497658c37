use crate::error::{OracleError, Result};
use dlop_core::equilibrium::ModelParams;
use rug::float::Constant;
use rug::Float;

pub const DEFAULT_PRECISION_BITS: u32 = 160;

const TAIL_RUN: usize = 50;

/// Exponential rate `N c` of the weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rate {
    /// `N c` from the parameters, rounded to `f64` first.
    FromParams,
    /// `pi^2 / d`, computed at working precision.
    PiSquaredOver(u32),
}

/// Weight `x^alpha e^{-N c x}` on `x_k = k^2/N^2`, `k >= k_min`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeMeasure {
    pub params: ModelParams,
    pub k_min: u32,
    pub precision_bits: u32,
    pub rate: Rate,
}

impl LatticeMeasure {
    pub fn new(params: ModelParams) -> Self {
        LatticeMeasure {
            params,
            k_min: 1,
            precision_bits: DEFAULT_PRECISION_BITS,
            rate: Rate::FromParams,
        }
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision_bits = bits;
        self
    }

    pub fn with_origin_node(mut self, include: bool) -> Self {
        self.k_min = if include { 0 } else { 1 };
        self
    }

    pub fn with_rate(mut self, rate: Rate) -> Self {
        self.rate = rate;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.k_min > 1 {
            return Err(OracleError::InvalidInput(format!(
                "k_min must be 0 or 1, got {}",
                self.k_min
            )));
        }
        if self.k_min == 0 && self.params.alpha < 0.0 {
            return Err(OracleError::InvalidInput("the origin node needs alpha >= 0".into()));
        }
        if self.precision_bits < 53 {
            return Err(OracleError::InvalidInput(format!(
                "precision_bits must be at least 53, got {}",
                self.precision_bits
            )));
        }
        Ok(())
    }

    pub(crate) fn rate_mp(&self, prec: u32) -> Float {
        match self.rate {
            Rate::FromParams => Float::with_val(prec, self.params.big_n as f64 * self.params.c),
            Rate::PiSquaredOver(d) => {
                let pi = Float::with_val(prec, Constant::Pi);
                pi.square() / d
            }
        }
    }

    pub(crate) fn node(&self, k: u64, prec: u32) -> Float {
        let big_n = Float::with_val(prec, self.params.big_n);
        Float::with_val(prec, k * k) / big_n.square()
    }

    /// Nodes and weights, truncated once the degree-`2 n_max` moment summand
    /// stays below `2^{-bits-10}` of the running sum for 50 consecutive nodes,
    /// and at least `4 n_max` nodes are present.
    pub(crate) fn truncated(&self, n_max: u32, prec: u32) -> (Vec<Float>, Vec<Float>) {
        let rate = self.rate_mp(prec);
        let alpha = Float::with_val(prec, self.params.alpha);
        let cutoff = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 10));
        let (mut xs, mut ws) = (Vec::new(), Vec::new());
        let mut running = Float::new(prec);
        let mut quiet = 0usize;
        let mut k = self.k_min as u64;
        loop {
            let x = self.node(k, prec);
            let w = weight(&x, &alpha, &rate, prec);
            let t = if x.is_zero() {
                w.clone()
            } else {
                Float::with_val(prec, x.clone().pow_u(2 * n_max)) * &w
            };
            running += &t;
            if t < Float::with_val(prec, &running * &cutoff) {
                quiet += 1;
            } else {
                quiet = 0;
            }
            xs.push(x);
            ws.push(w);
            if quiet >= TAIL_RUN && xs.len() >= 4 * n_max as usize {
                return (xs, ws);
            }
            k += 1;
        }
    }
}

fn weight(x: &Float, alpha: &Float, rate: &Float, prec: u32) -> Float {
    let e = Float::with_val(prec, -(rate * x.clone())).exp();
    if x.is_zero() {
        return e;
    }
    let p = Float::with_val(prec, x.ln_ref()) * alpha;
    p.exp() * e
}

trait PowU {
    fn pow_u(self, n: u32) -> Self;
}

impl PowU for Float {
    fn pow_u(self, n: u32) -> Self {
        use rug::ops::Pow;
        self.pow(n)
    }
}
