//! Acceptance run: one PASS/FAIL line per criterion, with the measured
//! numbers underneath.
//!
//! Criteria 3 and 4 test the asymptotic formulas taken literally; they
//! fail, and are listed in `KNOWN_FAILURES`. The same checks against the
//! corrected outer model follow as supplementary lines. The process exits
//! non-zero only when a criterion outside that list fails.

use anyhow::Result;
use dlop_cli::compare::{run_comparison, CompareConfig};
use dlop_cli::convergence::{run_convergence, ConvergenceConfig, Quantity};
use dlop_cli::equilibrium::run_equilibrium;
use dlop_cli::matching::run_matching;
use dlop_cli::table1::{run_table1, TOLERANCE};
use dlop_core::asymptotics::RegimeTag;
use dlop_core::equilibrium::{critical_value, solve_endpoints, support, ModelParams};
use dlop_core::gfield::{GContext, Side};
use dlop_core::specfun::{airy, OuterModel, ParametrixContext};
use dlop_oracle::{build_recurrence, interlacing_violations, unresolved_node_ties, zeros_mp, LatticeMeasure};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::time::Instant;

const KNOWN_FAILURES: [&str; 2] = ["3", "4"];
const CORRECTED: OuterModel = OuterModel::Corrected { origin_node: false };

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.pass &= ok;
        self.details
            .push(format!("{} {detail}", if ok { "ok  " } else { "FAIL" }));
    }
}

fn report(id: &str, title: &str, run: impl FnOnce() -> Result<Outcome>, unexpected: &mut Vec<String>) {
    let start = Instant::now();
    let out = run().unwrap_or_else(|e| Outcome {
        pass: false,
        details: vec![format!("FAIL error: {e:#}")],
    });
    let secs = start.elapsed().as_secs_f64();
    let known = KNOWN_FAILURES.contains(&id);
    let tag = match (out.pass, known) {
        (true, _) => "PASS",
        (false, true) => "FAIL (known)",
        (false, false) => "FAIL",
    };
    println!("{tag} [{id}] {title} ({secs:.1} s)");
    for d in &out.details {
        println!("      {d}");
    }
    if !out.pass && !known {
        unexpected.push(id.to_string());
    }
}

fn table1() -> Result<Outcome> {
    let r = run_table1(160)?;
    let mut o = Outcome::new();
    for row in &r.rows {
        o.check(
            row.discrete_rel_dev <= TOLERANCE && row.continuous_rel_dev <= TOLERANCE,
            format!(
                "zero {:2}: discrete {:.1e}, continuous {:.1e}",
                row.index, row.discrete_rel_dev, row.continuous_rel_dev
            ),
        );
    }
    Ok(o)
}

fn equilibrium() -> Result<Outcome> {
    let mut o = Outcome::new();
    for c in [3.0, 4.0, 8.0] {
        let start = Instant::now();
        let r = run_equilibrium(c, 1e-12)?;
        let (r1, r2) = (r.residual1.unwrap_or(f64::NAN), r.residual2.unwrap_or(f64::NAN));
        let secs = start.elapsed().as_secs_f64();
        o.check(
            r1 <= 1e-10 && r2 <= 1e-10 && (r.mass - 1.0).abs() <= 1e-10 && secs < 10.0,
            format!(
                "c = {c}: residuals {r1:.1e} {r2:.1e}, mass - 1 = {:.1e}, {secs:.2} s",
                r.mass - 1.0
            ),
        );
    }
    let c = critical_value() * (1.0 + 1e-4);
    let s = support(c, 1e-12)?;
    let db = (s.b - 16.0 / (PI * PI)).abs();
    o.check(
        s.a < 1e-2 && db < 1e-2,
        format!("c = c_cr(1 + 1e-4): a = {:.3e}, |b - 16/pi^2| = {db:.1e}", s.a),
    );
    Ok(o)
}

fn convergence(model: OuterModel) -> Result<Outcome> {
    let mut o = Outcome::new();
    for alpha in [0.0, 1.0] {
        for q in [Quantity::H, Quantity::A2, Quantity::B] {
            let cfg = ConvergenceConfig::new(q, vec![16, 32, 64], 4.0, alpha).with_model(model);
            let r = run_convergence(&cfg)?;
            let errs: Vec<String> = r.rows.iter().map(|x| format!("{:.3e}", x.relative_error)).collect();
            o.check(
                r.summary.pass,
                format!(
                    "{q:?} alpha = {alpha}: errors [{}], slope {:.3}, err(32)/err(64) {:.3}",
                    errs.join(", "),
                    r.summary.slope,
                    r.summary.ratios.last().copied().unwrap_or(f64::NAN)
                ),
            );
        }
    }
    Ok(o)
}

fn regimes(model: OuterModel) -> Result<Outcome> {
    let mut o = Outcome::new();
    for tag in RegimeTag::ALL {
        let run = |n| run_comparison(&CompareConfig::new(tag, n, 4.0, 0.0).with_model(model));
        let (r24, r48) = (run(24)?, run(48)?);
        let (e24, e48) = (r24.summary.max_err, r48.summary.max_err);
        o.check(
            r48.summary.pass && e48 < e24,
            format!(
                "{tag}: n = 48 max {e48:.4} (limit {:.4}, {} points, {} sign mismatches), n = 24 max {e24:.4}",
                r48.summary.threshold,
                r48.points.len(),
                r48.summary.mismatches
            ),
        );
    }
    Ok(o)
}

fn properties() -> Result<Outcome> {
    let mut o = Outcome::new();

    // Airy Wronskian on a spiral of 100 points with |z| <= 10. The products
    // Ai Bi' and Ai' Bi reach 1e5 near the Stokes directions, so the rounding
    // of their difference is measured against their size.
    let (mut worst, mut worst_abs) = (0.0f64, 0.0f64);
    for k in 0..100 {
        let t = k as f64 / 99.0;
        let z = Complex64::from_polar(0.05 + 9.95 * t, 2.0 * PI * 7.3 * t - PI);
        let v = airy(z)?;
        let (p, q) = (v.ai * v.bip, v.aip * v.bi);
        let err = (p - q - 1.0 / PI).norm();
        worst = worst.max(err / (p.norm() + q.norm()).max(1.0));
        worst_abs = worst_abs.max(err);
    }
    o.check(
        worst <= 1e-12,
        format!("Airy Wronskian over 100 points: max |W - 1/pi| / max(1, |Ai Bi'| + |Ai' Bi|) = {worst:.1e} (absolute {worst_abs:.1e})"),
    );

    let s = solve_endpoints(4.0, 1e-12)?;
    let (a, b) = (s.a, s.b);

    let mut worst_gamma = 0.0f64;
    let mut worst_d = 0.0f64;
    for alpha in [-0.5, 0.0, 0.5, 1.0, 2.5] {
        let p = ParametrixContext::new(s, alpha, OuterModel::Literal)?;
        for k in 0..40 {
            let z = Complex64::from_polar(0.2 + 0.1 * k as f64, 0.3 + 0.07 * k as f64);
            let (n1, n2) = p.script_n(z)?;
            let d = p.szego_d(z)?;
            let (u, v) = (n1 * d / p.d_infinity, n2 / (p.d_infinity * d));
            worst_gamma = worst_gamma.max((u * u + v * v - 1.0).norm());
        }
        for k in 1..40 {
            let x = a + (b - a) * k as f64 / 40.0;
            let prod = p.szego_d_side(x, Side::Plus) * p.szego_d_side(x, Side::Minus);
            let want = x.powf(alpha - 0.5);
            worst_d = worst_d.max((prod - want).norm() / want);
        }
    }
    o.check(
        worst_gamma <= 1e-12,
        format!("gamma identity u^2 + v^2 = 1: max deviation {worst_gamma:.1e}"),
    );
    o.check(
        worst_d <= 1e-10,
        format!("D+ D- = x^(alpha - 1/2) on the band: max relative deviation {worst_d:.1e}"),
    );

    let g = GContext::new(s, 1e-13)?;
    let jump = |x: f64| -> Result<Complex64> {
        let e = 1e-11;
        Ok(g.g_value(Complex64::new(x, e))? - g.g_value(Complex64::new(x, -e))?)
    };
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut worst_jump = [0.0f64; 4];
    for k in 1..10 {
        let t = k as f64 / 10.0;
        let xs = [-3.0 * t, t * a, a + t * (b - a), b + 2.0 * t];
        let want = [
            two_pi_i,
            two_pi_i * (1.0 - xs[1].sqrt()),
            two_pi_i * g.band_phase(xs[2])?,
            Complex64::new(0.0, 0.0),
        ];
        for i in 0..4 {
            worst_jump[i] = worst_jump[i].max((jump(xs[i])? - want[i]).norm());
        }
    }
    let max_jump = worst_jump.iter().copied().fold(0.0, f64::max);
    o.check(
        max_jump <= 1e-8,
        format!(
            "g jumps on (-inf,0), (0,a), (a,b), (b,inf): {:.1e} {:.1e} {:.1e} {:.1e}",
            worst_jump[0], worst_jump[1], worst_jump[2], worst_jump[3]
        ),
    );

    let mut sign_ok = true;
    let mut band_gap = 0.0f64;
    for k in 1..20 {
        let t = k as f64 / 20.0;
        sign_ok &= g.variational_gap(t * a)? > 0.0;
        sign_ok &= g.variational_gap(b + 3.0 * t)? < 0.0;
        band_gap = band_gap.max(g.variational_gap(a + t * (b - a))?.abs());
    }
    o.check(
        sign_ok && band_gap <= 1e-9,
        format!("variational pattern: > 0 on (0,a), < 0 past b, max |gap| on the band {band_gap:.1e}"),
    );

    // Zeros closer to a node than the working precision resolves are retried
    // with more bits.
    let measure = LatticeMeasure::new(ModelParams::diagonal(0.0, 4.0, 64)?);
    let table = build_recurrence(&measure, 64)?;
    let (mut violations, mut ties, mut escalated) = (0, 0, 0);
    for n in 1..=64 {
        let mut z = zeros_mp(&table, n)?;
        let mut bits = table.precision_bits;
        while unresolved_node_ties(&z, 64) > 0 && bits < 1280 {
            bits *= 2;
            escalated += 1;
            z = zeros_mp(&build_recurrence(&measure.clone().with_precision(bits), n)?, n)?;
        }
        violations += interlacing_violations(&z, 64);
        ties += unresolved_node_ties(&z, 64);
    }
    o.check(
        violations == 0 && ties == 0,
        format!("interlacing, degrees 1..=64 at c = 4, N = 64: {violations} violations, {ties} unresolved ties, {escalated} precision doublings"),
    );
    Ok(o)
}

fn matching(model: OuterModel) -> Result<Outcome> {
    let r = run_matching(4.0, 0.0, 48, model, None)?;
    let mut o = Outcome::new();
    for row in &r.rows {
        o.check(
            row.relative_error <= r.threshold,
            format!(
                "{} vs {} at {:.4}{:+.4}i: {:.4} (limit {:.4})",
                row.edge, row.neighbour, row.re, row.im, row.relative_error, r.threshold
            ),
        );
    }
    Ok(o)
}

fn main() {
    let mut unexpected = Vec::new();
    let u = &mut unexpected;
    report(
        "1",
        "Table 1 zeros within 1e-12 (160 bits, k from 1, rate pi^2/60)",
        table1,
        u,
    );
    report(
        "2",
        "equilibrium residuals and mass within 1e-10; near-critical limit",
        equilibrium,
        u,
    );
    report(
        "3",
        "h, A2, B convergence at c = 4, n = 16, 32, 64 (literal formulas)",
        || convergence(OuterModel::Literal),
        u,
    );
    report(
        "4",
        "regime accuracy at n = 48 and decrease from n = 24 (literal formulas)",
        || regimes(OuterModel::Literal),
        u,
    );
    report("5", "property suites", properties, u);
    report(
        "6",
        "edge formulas match their neighbours at n = 48 (literal formulas)",
        || matching(OuterModel::Literal),
        u,
    );
    report(
        "3c",
        "criterion 3 with the corrected outer model",
        || convergence(CORRECTED),
        u,
    );
    report(
        "4c",
        "criterion 4 with the corrected outer model",
        || regimes(CORRECTED),
        u,
    );
    report(
        "6c",
        "criterion 6 with the corrected outer model",
        || matching(CORRECTED),
        u,
    );
    if unexpected.is_empty() {
        println!("acceptance: no unexpected failures");
    } else {
        println!("acceptance: unexpected failures in {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
