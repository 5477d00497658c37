use crate::error::{OracleError, Result};
use crate::lattice::LatticeMeasure;
use dlop_core::ScaledValue;
use num_complex::Complex64;
use rug::Float;

/// `P_{k+1} = (x - B_k) P_k - A2_k P_{k-1}` with norms `h_k`, `k <= degree_max`.
#[derive(Debug, Clone)]
pub struct RecurrenceTable {
    pub b: Vec<Float>,
    /// `A2[0]` is zero and unused.
    pub a2: Vec<Float>,
    pub h: Vec<Float>,
    pub degree_max: u32,
    pub precision_bits: u32,
    pub k_min: u32,
    /// Largest normalised `<P_k, P_{k-1}>` met during construction.
    pub adjacent_residual: f64,
    nodes: Vec<Float>,
    weights: Vec<Float>,
}

impl RecurrenceTable {
    pub fn b_f64(&self, k: usize) -> f64 {
        self.b[k].to_f64()
    }

    pub fn a2_f64(&self, k: usize) -> f64 {
        self.a2[k].to_f64()
    }

    /// `ln h_k`; `h_k` itself underflows `f64` for large `k`.
    pub fn log_h(&self, k: usize) -> f64 {
        self.h[k].clone().ln().to_f64()
    }

    /// Number of lattice nodes kept after truncation.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn largest_node(&self) -> f64 {
        self.nodes.last().map(|x| x.to_f64()).unwrap_or(0.0)
    }

    pub fn nodes(&self) -> &[Float] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Float] {
        &self.weights
    }

    fn check_degree(&self, n: u32) -> Result<()> {
        if n > self.degree_max {
            return Err(OracleError::InvalidInput(format!(
                "degree {n} exceeds the table's maximum {}",
                self.degree_max
            )));
        }
        Ok(())
    }

    /// `(P_n(x), P_n'(x))` at working precision.
    pub fn eval_real_mp(&self, n: u32, x: &Float) -> Result<(Float, Float)> {
        self.check_degree(n)?;
        let prec = self.precision_bits.max(x.prec());
        let (mut p0, mut p1) = (Float::with_val(prec, 0), Float::with_val(prec, 1));
        let (mut d0, mut d1) = (Float::with_val(prec, 0), Float::with_val(prec, 0));
        for k in 0..n as usize {
            let xb = Float::with_val(prec, x - &self.b[k]);
            let p2 = Float::with_val(prec, &xb * &p1) - Float::with_val(prec, &self.a2[k] * &p0);
            let d2 = Float::with_val(prec, &xb * &d1) + &p1 - Float::with_val(prec, &self.a2[k] * &d0);
            (p0, p1) = (p1, p2);
            (d0, d1) = (d1, d2);
        }
        Ok((p1, d1))
    }

    /// `P_n(z)` in log-scaled form. MPFR's exponent range makes intermediate
    /// rescaling unnecessary.
    pub fn eval_poly(&self, n: u32, z: Complex64) -> Result<ScaledValue> {
        self.check_degree(n)?;
        let prec = self.precision_bits;
        if z.im == 0.0 {
            let x = Float::with_val(prec, z.re);
            let (p, _) = self.eval_real_mp(n, &x)?;
            return Ok(scaled_real(&p));
        }
        let zr = Float::with_val(prec, z.re);
        let zi = Float::with_val(prec, z.im);
        let (mut r0, mut i0) = (Float::with_val(prec, 0), Float::with_val(prec, 0));
        let (mut r1, mut i1) = (Float::with_val(prec, 1), Float::with_val(prec, 0));
        for k in 0..n as usize {
            let xr = Float::with_val(prec, &zr - &self.b[k]);
            let r2 = Float::with_val(prec, &xr * &r1)
                - Float::with_val(prec, &zi * &i1)
                - Float::with_val(prec, &self.a2[k] * &r0);
            let i2 = Float::with_val(prec, &xr * &i1) + Float::with_val(prec, &zi * &r1)
                - Float::with_val(prec, &self.a2[k] * &i0);
            (r0, r1) = (r1, r2);
            (i0, i1) = (i1, i2);
        }
        if r1.is_zero() && i1.is_zero() {
            return Ok(ScaledValue {
                is_real: false,
                ..ScaledValue::ZERO_REAL
            });
        }
        let modulus = Float::with_val(prec, r1.hypot_ref(&i1));
        let phase = i1.atan2(&r1).to_f64();
        Ok(ScaledValue::from_log(Complex64::new(modulus.ln().to_f64(), phase)))
    }
}

pub(crate) fn scaled_real(p: &Float) -> ScaledValue {
    if p.is_zero() {
        return ScaledValue::ZERO_REAL;
    }
    let sign = if p.is_sign_negative() { -1.0 } else { 1.0 };
    ScaledValue::real(p.clone().abs().ln().to_f64(), sign)
}

/// Discrete Stieltjes procedure up to degree `n_max`.
///
/// Fails with [`OracleError::PrecisionLoss`] once the normalised inner
/// product of neighbouring polynomials exceeds `2^{-bits/2}`.
pub fn build_recurrence(measure: &LatticeMeasure, n_max: u32) -> Result<RecurrenceTable> {
    measure.validate()?;
    let prec = measure.precision_bits;
    let (xs, ws) = measure.truncated(n_max.max(1), prec);
    let limit = 2f64.powf(-(prec as f64) / 2.0);
    let m = xs.len();
    let mut p_prev = vec![Float::with_val(prec, 0); m];
    let mut p = vec![Float::with_val(prec, 1); m];
    let (mut b, mut a2, mut h) = (Vec::new(), Vec::new(), Vec::<Float>::new());
    let mut worst = 0f64;
    for j in 0..=n_max as usize {
        let (mut hj, mut xh, mut cross) = (Float::new(prec), Float::new(prec), Float::new(prec));
        for k in 0..m {
            let pw = Float::with_val(prec, &p[k] * &ws[k]);
            let pp = Float::with_val(prec, &pw * &p[k]);
            xh += Float::with_val(prec, &pp * &xs[k]);
            hj += &pp;
            if j > 0 {
                cross += Float::with_val(prec, &pw * &p_prev[k]);
            }
        }
        if !(hj > 0) {
            return Err(OracleError::PrecisionLoss {
                bits: prec,
                residual: f64::INFINITY,
                limit,
            });
        }
        let bj = Float::with_val(prec, &xh / &hj);
        let aj = if j == 0 {
            Float::new(prec)
        } else {
            Float::with_val(prec, &hj / &h[j - 1])
        };
        if j > 0 {
            let norm = Float::with_val(prec, &hj * &h[j - 1]).sqrt();
            let r = (cross.abs() / norm).to_f64();
            worst = worst.max(r);
            if !(r < limit) {
                return Err(OracleError::PrecisionLoss {
                    bits: prec,
                    residual: r,
                    limit,
                });
            }
        }
        if j < n_max as usize {
            let next: Vec<Float> = (0..m)
                .map(|k| {
                    let xb = Float::with_val(prec, &xs[k] - &bj);
                    Float::with_val(prec, &xb * &p[k]) - Float::with_val(prec, &aj * &p_prev[k])
                })
                .collect();
            p_prev = std::mem::replace(&mut p, next);
        }
        b.push(bj);
        a2.push(aj);
        h.push(hj);
    }
    Ok(RecurrenceTable {
        b,
        a2,
        h,
        degree_max: n_max,
        precision_bits: prec,
        k_min: measure.k_min,
        adjacent_residual: worst,
        nodes: xs,
        weights: ws,
    })
}

/// [`build_recurrence`], raising the precision by half until it succeeds or
/// `max_bits` is exceeded.
pub fn build_recurrence_adaptive(measure: &LatticeMeasure, n_max: u32, max_bits: u32) -> Result<RecurrenceTable> {
    let mut m = measure.clone();
    loop {
        match build_recurrence(&m, n_max) {
            Err(OracleError::PrecisionLoss { .. }) if m.precision_bits < max_bits => {
                m.precision_bits = (m.precision_bits + m.precision_bits / 2).min(max_bits);
            }
            other => return other,
        }
    }
}

/// `max |<P_i, P_j>/sqrt(h_i h_j) - delta_ij|` over `i, j <= n`.
pub fn orthogonality_residual(table: &RecurrenceTable, n: u32) -> Result<f64> {
    table.check_degree(n)?;
    let prec = table.precision_bits;
    let m = table.nodes.len();
    let n = n as usize;
    let mut vals: Vec<Vec<Float>> = Vec::with_capacity(n + 1);
    vals.push(vec![Float::with_val(prec, 1); m]);
    for j in 0..n {
        let next: Vec<Float> = (0..m)
            .map(|k| {
                let xb = Float::with_val(prec, &table.nodes[k] - &table.b[j]);
                let t = Float::with_val(prec, &xb * &vals[j][k]);
                if j == 0 {
                    t
                } else {
                    t - Float::with_val(prec, &table.a2[j] * &vals[j - 1][k])
                }
            })
            .collect();
        vals.push(next);
    }
    let mut worst = 0f64;
    for i in 0..=n {
        for j in 0..=i {
            let mut s = Float::new(prec);
            for ((p, q), w) in vals[i].iter().zip(&vals[j]).zip(&table.weights).take(m) {
                s += Float::with_val(prec, p * q) * w;
            }
            let norm = Float::with_val(prec, &table.h[i] * &table.h[j]).sqrt();
            let mut g = s / norm;
            if i == j {
                g -= 1;
            }
            worst = worst.max(g.abs().to_f64());
        }
    }
    Ok(worst)
}
