use dlop_core::equilibrium::ModelParams;
use dlop_oracle::*;
use num_complex::Complex64;
use rug::Float;
use std::f64::consts::PI;

fn table1_measure(big_n: u32) -> LatticeMeasure {
    let p = ModelParams {
        alpha: 0.0,
        c: PI * PI / (60.0 * big_n as f64),
        big_n,
        n: 10,
    };
    LatticeMeasure::new(p).with_rate(Rate::PiSquaredOver(60))
}

fn c4(n: u32) -> LatticeMeasure {
    LatticeMeasure::new(ModelParams::diagonal(0.0, 4.0, n).unwrap())
}

#[test]
fn degree_zero_moments() {
    let t = build_recurrence(&c4(8), 8).unwrap();
    let (mut m0, mut m1) = (Float::new(160), Float::new(160));
    for (x, w) in t.nodes().iter().zip(t.weights()) {
        m0 += w;
        m1 += Float::with_val(160, x * w);
    }
    assert_eq!(t.h[0], m0);
    let b0 = Float::with_val(160, &m1 / &m0);
    assert!((Float::with_val(160, &t.b[0] - &b0) / &b0).abs() < 1e-45);
}

#[test]
fn norm_matches_direct_sum_at_double_precision() {
    let t = build_recurrence(&table1_measure(10), 10).unwrap();
    let fine = build_recurrence(&table1_measure(10).with_precision(320), 1).unwrap();
    let mut s = Float::new(320);
    for (x, w) in fine.nodes().iter().zip(fine.weights()) {
        let (p, _) = t.eval_real_mp(10, x).unwrap();
        s += Float::with_val(320, p.square() * w);
    }
    let rel = (Float::with_val(320, &s - &t.h[10]) / &s).abs().to_f64();
    assert!(rel < 1e-20, "{rel:e}");
}

#[test]
fn cross_orthogonality_of_three_and_five() {
    let t = build_recurrence(&c4(12), 6).unwrap();
    let mut s = Float::new(160);
    for (x, w) in t.nodes().iter().zip(t.weights()) {
        let (p3, _) = t.eval_real_mp(3, x).unwrap();
        let (p5, _) = t.eval_real_mp(5, x).unwrap();
        s += p3 * p5 * w;
    }
    let norm = Float::with_val(160, &t.h[3] * &t.h[5]).sqrt();
    assert!((s / norm).abs().to_f64() < 1e-25);
}

#[test]
fn full_orthogonality_residual() {
    let t = build_recurrence(&c4(32), 32).unwrap();
    assert!(orthogonality_residual(&t, 32).unwrap() < 2f64.powi(-80));
}

#[test]
fn low_degree_values() {
    let t = build_recurrence(&c4(8), 4).unwrap();
    let z = Complex64::new(0.3, -0.7);
    let p0 = t.eval_poly(0, z).unwrap();
    assert_eq!(p0.log_modulus, 0.0);
    let p1 = t.eval_poly(1, z).unwrap().to_complex();
    let want = z - t.b_f64(0);
    assert!((p1 - want).norm() < 1e-15);
    let r = t.eval_poly(3, Complex64::new(0.9, 0.0)).unwrap();
    let c = t.eval_poly(3, Complex64::new(0.9, 1e-300)).unwrap();
    assert!(r.is_real);
    assert!((r.to_complex() - c.to_complex()).norm() < 1e-14 * r.to_f64().abs());
}

#[test]
fn huge_values_stay_finite() {
    let t = build_recurrence(&c4(256), 256).unwrap();
    let v = t.eval_poly(256, Complex64::new(1e6, 0.0)).unwrap();
    assert!((v.log_modulus - 256.0 * 1e6f64.ln()).abs() < 1e-3);
    assert!(t.log_h(256).is_finite());
}

#[test]
fn table1_discrete_zeros() {
    let reference = [
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
    let t = build_recurrence(&table1_measure(1), 10).unwrap();
    for (z, p) in zeros_mp(&t, 10).unwrap().iter().zip(reference) {
        let want = Float::with_val(160, Float::parse(p).unwrap());
        let rel = (Float::with_val(160, z - &want) / &want).abs().to_f64();
        assert!(rel < 1e-18, "{p}: {rel:e}");
    }
}

#[test]
fn table1_continuous_zeros() {
    let reference = [
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
    let lambda = Float::with_val(160, rug::float::Constant::Pi).square() / 60u32;
    let zs = continuous_laguerre_zeros_mp(10, -0.5, &lambda, 160).unwrap();
    for (z, p) in zs.iter().zip(reference) {
        let want = Float::with_val(160, Float::parse(p).unwrap());
        let rel = (Float::with_val(160, z - &want) / &want).abs().to_f64();
        assert!(rel < 1e-18, "{p}: {rel:e}");
    }
}

#[test]
fn origin_node_flag_changes_table() {
    let with = build_recurrence(&table1_measure(1).with_origin_node(true), 10).unwrap();
    let z = zeros(&with, 10).unwrap();
    assert!((z[0] - 1.031_259_390_261_808).abs() > 1e-3);
    let bad = LatticeMeasure::new(ModelParams::diagonal(-0.5, 4.0, 8).unwrap()).with_origin_node(true);
    assert!(build_recurrence(&bad, 4).is_err());
}

#[test]
fn trace_identity() {
    let t = build_recurrence(&c4(20), 20).unwrap();
    let z = zeros(&t, 20).unwrap();
    let trace: f64 = (0..20).map(|k| t.b_f64(k)).sum();
    assert!((z.iter().sum::<f64>() - trace).abs() < 1e-13 * trace);
}

#[test]
fn continuous_trivial_cases() {
    assert!((continuous_laguerre_zeros(1, 0.3, 2.0).unwrap()[0] - 0.65).abs() < 1e-15);
    let one = continuous_laguerre_zeros(8, 0.5, 1.0).unwrap();
    let scaled = continuous_laguerre_zeros(8, 0.5, 4.0).unwrap();
    for (u, v) in one.iter().zip(&scaled) {
        assert!((u / 4.0 - v).abs() < 1e-14 * u);
    }
    assert!(continuous_laguerre_zeros(3, -1.0, 1.0).is_err());
}

#[test]
fn stieltjes_residual_tracks_working_precision() {
    for bits in [53u32, 96, 160] {
        let t = build_recurrence(&c4(128).with_precision(bits), 128).unwrap();
        assert!(
            t.adjacent_residual < 2f64.powi(8 - bits as i32),
            "{bits}: {:e}",
            t.adjacent_residual
        );
    }
    let t = build_recurrence_adaptive(&c4(64), 64, 1024).unwrap();
    assert_eq!(t.precision_bits, 160);
    assert!(build_recurrence(&c4(8).with_precision(40), 8).is_err());
}

#[test]
fn degree_beyond_table_rejected() {
    let t = build_recurrence(&c4(8), 4).unwrap();
    assert!(t.eval_poly(5, Complex64::new(1.0, 0.0)).is_err());
    assert!(zeros(&t, 5).is_err());
}
