use anyhow::Result;
use serde::Serialize;

/// Bumped whenever a key is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A report with a JSON body and a flat row view for CSV.
pub trait Report: Serialize + Sized {
    /// Schema tag, e.g. `dlop/compare`.
    const SCHEMA: &'static str;
    type Row: Serialize;

    fn rows(&self) -> Vec<Self::Row>;

    /// Whether every threshold of the run was met.
    fn passed(&self) -> bool;

    fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Envelope<'a, T: Serialize> {
            schema: &'static str,
            schema_version: u32,
            #[serde(flatten)]
            body: &'a T,
        }
        let env = Envelope {
            schema: Self::SCHEMA,
            schema_version: SCHEMA_VERSION,
            body: self,
        };
        Ok(serde_json::to_string_pretty(&env)? + "\n")
    }

    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.rows() {
            w.serialize(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / m, ly.iter().sum::<f64>() / m);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn median(v: &[f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    let m = s.len() / 2;
    if s.len() % 2 == 1 {
        s[m]
    } else {
        0.5 * (s[m - 1] + s[m])
    }
}

/// Decimal digits carried by `bits` of mantissa.
pub fn digits_for_bits(bits: u32) -> usize {
    (bits as f64 / std::f64::consts::LOG2_10).floor() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let xs = [16.0, 32.0, 64.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-1.0)).collect();
        assert!((log_log_slope(&xs, &ys) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn digits() {
        assert_eq!(digits_for_bits(160), 48);
    }
}
