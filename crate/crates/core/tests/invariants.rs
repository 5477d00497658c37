#![allow(clippy::excessive_precision)]

use dlop_core::equilibrium::{density, residual_ab1, residual_ab2, solve_endpoints, support, total_mass};
use dlop_core::gfield::{GContext, Side};
use dlop_core::quadrature::{quad, EndpointSpec};
use dlop_core::specfun::{airy, log_gamma, OuterModel, ParametrixContext};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

// Reference values from mpmath at 30 digits: Ai, Ai', Bi, Bi'.
type AiryRow = (f64, f64, [(f64, f64); 4]);

const AIRY_TABLE: [AiryRow; 7] = [
    (
        0.5,
        0.3,
        [
            (0.22634795458107735, -0.068001411096681169),
            (-0.23013706202248152, 0.03652315800475668),
            (0.83549027575840771, 0.1583392688855427),
            (0.4944923355194312, 0.12238319472309554),
        ],
    ),
    (
        -3.0,
        1.0,
        [
            (-1.0661276538021966, 0.60399360319731917),
            (1.3365082323471389, 1.6171070654740973),
            (-0.65145102970429169, -1.0099151260556288),
            (-1.7341950961267085, 1.2716893641193225),
        ],
    ),
    (
        4.0,
        -2.0,
        [
            (-0.00081129129641103827, -0.0012857063294070026),
            (0.0023053459439492297, 0.0023322335254499053),
            (-35.399912297279089, 34.624366918097708),
            (-53.217181136258673, 87.713729157630757),
        ],
    ),
    (
        -8.0,
        0.5,
        [
            (-0.10887597956894037, 0.64163344087705908),
            (2.0492622127217088, 0.23654742418590231),
            (-0.72249908490004477, -0.099112885578597407),
            (-0.27384846203642471, 1.8213682993218861),
        ],
    ),
    (
        1.0,
        7.0,
        [
            (-16.491517174347228, 153.55078649102761),
            (295.31877664249748, -281.25765217611949),
            (-153.55107007406928, -16.491781229505843),
            (281.25755279293705, 295.31774339493523),
        ],
    ),
    (
        12.0,
        5.0,
        [
            (2.1001897847642027e-13, 7.8727254711601254e-13),
            (-1.952027428958897e-13, -2.9442885933880372e-12),
            (3423551952.9596193, -54067696242.636289),
            (50686401806.062511, -187743866270.53037),
        ],
    ),
    (
        -15.0,
        -3.0,
        [
            (15515.79805213813, 4571.3119797849867),
            (-23507.957398588629, 58653.712230897363),
            (4571.3119807302066, -15515.798049806806),
            (58653.712240358306, 23507.957395842206),
        ],
    ),
];

#[test]
fn airy_reference_values() {
    for (re, im, want) in AIRY_TABLE {
        let v = airy(Complex64::new(re, im)).unwrap();
        for (got, (wr, wi)) in [v.ai, v.aip, v.bi, v.bip].into_iter().zip(want) {
            let w = Complex64::new(wr, wi);
            assert!((got - w).norm() < 1e-12 * w.norm(), "z = {re}+{im}i: {got} vs {w}");
        }
    }
}

fn beta(p: f64, q: f64) -> f64 {
    let lg = |x: f64| log_gamma(Complex64::new(x, 0.0)).unwrap().re;
    (lg(p) + lg(q) - lg(p + q)).exp()
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(64)
    })]

    #[test]
    fn airy_wronskian(re in -12.0f64..12.0, im in -12.0f64..12.0) {
        let v = airy(Complex64::new(re, im)).unwrap();
        let (p, q) = (v.ai * v.bip, v.aip * v.bi);
        // The two products can be far larger than 1/pi; rounding scales with them.
        let scale = (p.norm() + q.norm()).max(1.0 / PI);
        prop_assert!((p - q - 1.0 / PI).norm() < 1e-12 * scale, "W = {}", p - q);
    }

    #[test]
    fn beta_integrals(p in -0.9f64..1.5, q in -0.9f64..1.5) {
        // Each singular end is placed at 0, where f64 resolves it.
        let half = |p: f64, q: f64| {
            quad(|x| x.powf(p) * (1.0 - x).powf(q), 0.0, 0.5, EndpointSpec::new(p, 0.0), 1e-13).unwrap()
        };
        let got = half(p, q) + half(q, p);
        let want = beta(p + 1.0, q + 1.0);
        prop_assert!((got / want - 1.0).abs() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn gamma_identity(c in 2.6f64..9.0, alpha in -0.9f64..2.0, re in -3.0f64..3.0, im in 0.01f64..3.0) {
        let p = ParametrixContext::new(solve_endpoints(c, 1e-12).unwrap(), alpha, OuterModel::Literal).unwrap();
        let z = Complex64::new(re, im);
        let (n1, n2) = p.script_n(z).unwrap();
        let d = p.szego_d(z).unwrap();
        let u = n1 * d / p.d_infinity;
        let v = n2 / (p.d_infinity * d);
        prop_assert!((u * u + v * v - 1.0).norm() < 1e-12);
    }

    #[test]
    fn szego_boundary_product(c in 2.6f64..9.0, alpha in -0.9f64..3.0, t in 0.01f64..0.99) {
        let p = ParametrixContext::new(solve_endpoints(c, 1e-12).unwrap(), alpha, OuterModel::Literal).unwrap();
        let x = p.support.a + t * (p.support.b - p.support.a);
        let prod = p.szego_d_side(x, Side::Plus) * p.szego_d_side(x, Side::Minus);
        let want = x.powf(alpha - 0.5);
        prop_assert!((prod - want).norm() < 1e-10 * want);
    }

    #[test]
    fn endpoints_solve_both_conditions(c in 2.5f64..9.0) {
        let s = solve_endpoints(c, 1e-12).unwrap();
        prop_assert!(0.0 < s.a && s.a < 1.0 && 1.0 < s.b);
        prop_assert!(residual_ab1(s.a, s.b, c).abs() < 1e-10);
        prop_assert!(residual_ab2(s.a, s.b, c).abs() < 1e-10);
    }

    #[test]
    fn density_respects_constraint(c in 2.6f64..9.0, t in 0.001f64..0.999) {
        let s = solve_endpoints(c, 1e-12).unwrap();
        let x = s.a + t * (s.b - s.a);
        let r = density(x, &s).unwrap();
        prop_assert!(r > 0.0 && r < 0.5 / x.sqrt());
    }
}

#[test]
fn mass_is_one_across_regimes() {
    for c in [1.0, 2.0, 2.5, 3.0, 4.0, 8.0] {
        let s = support(c, 1e-12).unwrap();
        let m = total_mass(&s, 1e-12).unwrap();
        assert!((m - 1.0).abs() < 1e-10, "c = {c}: mass {m}");
    }
}

#[test]
fn near_critical_support() {
    let c = PI * PI / 4.0 * (1.0 + 1e-4);
    let s = support(c, 1e-12).unwrap();
    assert!(s.a < 1e-2);
    assert!((s.b - 16.0 / (PI * PI)).abs() < 1e-2);
}

fn g_ctx(c: f64) -> GContext {
    GContext::new(solve_endpoints(c, 1e-12).unwrap(), 1e-13).unwrap()
}

// g(x + i e) - g(x - i e) from the integral representation.
fn jump(g: &GContext, x: f64) -> Complex64 {
    let e = 1e-11;
    g.g_value(Complex64::new(x, e)).unwrap() - g.g_value(Complex64::new(x, -e)).unwrap()
}

#[test]
fn g_jumps_on_all_intervals() {
    let g = g_ctx(4.0);
    let (a, b) = (g.a(), g.b());
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    for x in [-3.0, -0.5, -0.01] {
        assert!((jump(&g, x) - two_pi_i).norm() < 1e-8, "x = {x}");
    }
    for t in [0.1, 0.5, 0.9] {
        let x = t * a;
        assert!((jump(&g, x) - two_pi_i * (1.0 - x.sqrt())).norm() < 1e-8, "x = {x}");
    }
    for t in [0.1, 0.5, 0.9] {
        let x = a + t * (b - a);
        let want = two_pi_i * g.band_phase(x).unwrap();
        assert!((jump(&g, x) - want).norm() < 1e-8, "x = {x}");
        let sum = g.g_boundary(x, Side::Plus).unwrap() + g.g_boundary(x, Side::Minus).unwrap();
        assert!((sum.re - 4.0 * x - g.l).abs() < 1e-9, "x = {x}");
    }
    for x in [b + 0.01, b + 1.0, 10.0] {
        assert!(jump(&g, x).norm() < 1e-8, "x = {x}");
    }
}

#[test]
fn boundary_values_are_limits() {
    let g = g_ctx(4.0);
    let (a, b) = (g.a(), g.b());
    for x in [-1.0, 0.3 * a, 0.5 * (a + b)] {
        for side in [Side::Plus, Side::Minus] {
            let lim = g.g_value(Complex64::new(x, side.sign() * 1e-11)).unwrap();
            assert!((lim - g.g_boundary(x, side).unwrap()).norm() < 1e-8, "x = {x}");
        }
    }
}

#[test]
fn variational_sign_pattern() {
    for c in [3.0, 4.0, 8.0] {
        let g = g_ctx(c);
        let (a, b) = (g.a(), g.b());
        for t in [0.05, 0.25, 0.5, 0.75, 0.95] {
            assert!(g.variational_gap(t * a).unwrap() > 0.0, "c = {c}, saturated");
            assert!(
                g.variational_gap(a + t * (b - a)).unwrap().abs() < 1e-9,
                "c = {c}, band"
            );
            assert!(g.variational_gap(b + t).unwrap() < 0.0, "c = {c}, void");
        }
    }
}

#[test]
fn g_minus_log_vanishes_at_infinity() {
    let g = g_ctx(4.0);
    let mut prev = f64::INFINITY;
    for r in [1e2, 1e3, 1e4] {
        let z = Complex64::from_polar(r, 0.7);
        let d = (g.g_value(z).unwrap() - z.ln()).norm();
        assert!(d < prev);
        prev = d;
    }
    assert!(prev < 1e-3);
}
