use crate::error::{OracleError, Result};
use crate::recurrence::RecurrenceTable;
use dlop_core::Exec;
use nalgebra::{DMatrix, SymmetricEigen};
use rug::Float;

const NEWTON_STEPS: usize = 3;

/// Sorted eigenvalues of the Jacobi matrix with diagonal `b` and
/// off-diagonal `sqrt(a2[1..])`.
fn jacobi_eigenvalues(b: &[f64], a2: &[f64], degree: u32) -> Result<Vec<f64>> {
    let n = b.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = b[i];
        if i + 1 < n {
            let off = a2[i + 1].sqrt();
            m[(i, i + 1)] = off;
            m[(i + 1, i)] = off;
        }
    }
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 100_000).ok_or(OracleError::Eigen(degree))?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(|x, y| x.total_cmp(y));
    Ok(v)
}

/// Zeros of `P_n` at the table's precision: Jacobi eigenvalues followed by
/// three Newton steps on the recurrence.
pub fn zeros_mp(table: &RecurrenceTable, n: u32) -> Result<Vec<Float>> {
    if n > table.degree_max {
        return Err(OracleError::InvalidInput(format!(
            "degree {n} exceeds the table's maximum {}",
            table.degree_max
        )));
    }
    let k = n as usize;
    let b: Vec<f64> = (0..k).map(|i| table.b_f64(i)).collect();
    let a2: Vec<f64> = (0..k).map(|i| table.a2_f64(i)).collect();
    let guesses = jacobi_eigenvalues(&b, &a2, n)?;
    let prec = table.precision_bits;
    let polished = Exec::default().map(&guesses, |&x0| -> Result<Float> {
        let mut x = Float::with_val(prec, x0);
        for _ in 0..NEWTON_STEPS {
            let (p, d) = table.eval_real_mp(n, &x)?;
            if p.is_zero() || d.is_zero() {
                break;
            }
            x -= p / d;
        }
        Ok(x)
    });
    polished.into_iter().collect()
}

pub fn zeros(table: &RecurrenceTable, n: u32) -> Result<Vec<f64>> {
    Ok(zeros_mp(table, n)?.iter().map(Float::to_f64).collect())
}

/// Zeros of the monic Laguerre polynomial for `x^beta e^{-lambda x}` on
/// `(0, inf)`, as `zeros(1) / lambda`.
pub fn continuous_laguerre_zeros_mp(n: u32, beta: f64, lambda: &Float, prec: u32) -> Result<Vec<Float>> {
    if !(beta > -1.0) {
        return Err(OracleError::InvalidInput(format!("beta must exceed -1, got {beta}")));
    }
    if !(*lambda > 0) {
        return Err(OracleError::InvalidInput("lambda must be positive".into()));
    }
    let k = n as usize;
    let bt = Float::with_val(prec, beta);
    let b: Vec<Float> = (0..k).map(|i| Float::with_val(prec, 2 * i + 1) + &bt).collect();
    let a2: Vec<Float> = (0..k)
        .map(|i| Float::with_val(prec, i) * (Float::with_val(prec, i) + &bt))
        .collect();
    let bf: Vec<f64> = b.iter().map(Float::to_f64).collect();
    let af: Vec<f64> = a2.iter().map(Float::to_f64).collect();
    let guesses = jacobi_eigenvalues(&bf, &af, n)?;
    let polished = Exec::default().map(&guesses, |&x0| {
        let mut x = Float::with_val(prec, x0);
        for _ in 0..NEWTON_STEPS + 1 {
            let (mut p0, mut p1) = (Float::with_val(prec, 0), Float::with_val(prec, 1));
            let (mut d0, mut d1) = (Float::with_val(prec, 0), Float::with_val(prec, 0));
            for i in 0..k {
                let xb = Float::with_val(prec, &x - &b[i]);
                let p2 = Float::with_val(prec, &xb * &p1) - Float::with_val(prec, &a2[i] * &p0);
                let d2 = Float::with_val(prec, &xb * &d1) + &p1 - Float::with_val(prec, &a2[i] * &d0);
                (p0, p1) = (p1, p2);
                (d0, d1) = (d1, d2);
            }
            if p1.is_zero() || d1.is_zero() {
                break;
            }
            x -= p1 / d1;
        }
        x / lambda
    });
    Ok(polished)
}

pub fn continuous_laguerre_zeros(n: u32, beta: f64, lambda: f64) -> Result<Vec<f64>> {
    let l = Float::with_val(128, lambda);
    Ok(continuous_laguerre_zeros_mp(n, beta, &l, 128)?
        .iter()
        .map(Float::to_f64)
        .collect())
}

/// Pairs of consecutive zeros sharing a closed interval `[k^2, (k+1)^2]/N^2`
/// (with `k >= 0`). Zeros in the saturated region sit exponentially close to
/// the nodes, so the test runs on extended-precision zeros.
pub fn interlacing_violations(zeros: &[Float], big_n: u32) -> usize {
    let s: Vec<Float> = zeros
        .iter()
        .map(|z| {
            let r = if *z > 0 { z.clone().sqrt() } else { Float::new(z.prec()) };
            r * big_n
        })
        .collect();
    s.windows(2)
        .filter(|w| {
            // Integers strictly between the scaled roots.
            let between = w[1].clone().ceil() - 1u32 - w[0].clone().floor();
            between < 1
        })
        .count()
}

/// Zeros closer to a lattice node than the working precision resolves.
/// A nonzero count means [`interlacing_violations`] needs more bits.
pub fn unresolved_node_ties(zeros: &[Float], big_n: u32) -> usize {
    zeros
        .iter()
        .filter(|&z| {
            let prec = z.prec();
            let k = (z.clone().abs().sqrt() * big_n).round();
            let node = Float::with_val(prec, k.square()) / (big_n as f64 * big_n as f64);
            let gap = Float::with_val(prec, z - &node).abs();
            let scale = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32))
                * z.clone().abs().max(&Float::with_val(prec, 1));
            gap <= scale
        })
        .count()
}
