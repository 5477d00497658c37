use crate::report::Report;
use anyhow::Result;
use dlop_core::equilibrium::{residual_ab1, residual_ab2, support, total_mass, SupportRegime};
use dlop_core::gfield::GContext;
use serde::Serialize;

/// Endpoints, residuals, edge constants and the Lagrange constant for one `c`.
#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumReport {
    pub c: f64,
    pub tol: f64,
    pub regime: SupportRegime,
    pub a: f64,
    pub b: f64,
    pub residual1: Option<f64>,
    pub residual2: Option<f64>,
    #[serde(rename = "C1")]
    pub c1: Option<f64>,
    #[serde(rename = "C2")]
    pub c2: f64,
    pub l: Option<f64>,
    pub mass: f64,
    pub pass: bool,
}

pub const MASS_TOL: f64 = 1e-10;

pub fn run_equilibrium(c: f64, tol: f64) -> Result<EquilibriumReport> {
    let s = support(c, tol)?;
    let mass = total_mass(&s, 1e-12)?;
    let mass_ok = (mass - 1.0).abs() <= MASS_TOL;
    Ok(match s.regime {
        SupportRegime::Supercritical => {
            let r1 = residual_ab1(s.a, s.b, c).abs();
            let r2 = residual_ab2(s.a, s.b, c).abs();
            let g = GContext::new(s, tol.min(1e-12))?;
            EquilibriumReport {
                c,
                tol,
                regime: s.regime,
                a: s.a,
                b: s.b,
                residual1: Some(r1),
                residual2: Some(r2),
                c1: Some(s.c1),
                c2: s.c2,
                l: Some(g.l),
                mass,
                pass: r1 <= tol && r2 <= tol && mass_ok,
            }
        }
        SupportRegime::Subcritical => EquilibriumReport {
            c,
            tol,
            regime: s.regime,
            a: s.a,
            b: s.b,
            residual1: None,
            residual2: None,
            c1: None,
            c2: s.c2,
            l: None,
            mass,
            pass: mass_ok,
        },
    })
}

impl Report for EquilibriumReport {
    const SCHEMA: &'static str = "dlop/equilibrium";
    type Row = EquilibriumReport;

    fn rows(&self) -> Vec<Self::Row> {
        vec![self.clone()]
    }

    fn passed(&self) -> bool {
        self.pass
    }
}
