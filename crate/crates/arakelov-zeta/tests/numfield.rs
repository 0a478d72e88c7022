//! Imaginary quadratic fields: lattice data, theta series, zeta functions
//! and the sign pattern of `ξ_K(0, it)`.

mod common;

use arakelov_zeta::numfield::{self, FieldDescriptor, SUPPORTED_DISCRIMINANTS};
use arakelov_zeta::theta_kernel;
use arakelov_zeta::{zeta2, EvalContext};
use num_complex::Complex64;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn theta_direct(k: &FieldDescriptor, t: f64) -> f64 {
    let (a, b, cc) = k.norm_form;
    let scale = 2.0 * PI * t / (k.discriminant.abs() as f64).sqrt();
    let mut sum = 0.0;
    for m in -40i64..=40 {
        for n in -40i64..=40 {
            sum += (-scale * (a * m * m + b * m * n + cc * n * n) as f64).exp();
        }
    }
    sum
}

#[test]
fn representation_counts_match_brute_force() {
    for d in SUPPORTED_DISCRIMINANTS {
        let k = FieldDescriptor::new(d).unwrap();
        let counts = k.representation_counts();
        for n in 1..=40usize.min(counts.len() - 1) {
            assert_eq!(counts[n], common::lattice_count(k.norm_form, n as i64), "Δ = {d}, N = {n}");
        }
        assert_eq!(counts[1], k.w_k, "units of Δ = {d}");
    }
}

#[test]
fn unsupported_fields_are_rejected() {
    for d in [-15, -5, 5, -20, 0] {
        assert!(FieldDescriptor::new(d).is_err(), "Δ = {d}");
    }
}

#[test]
fn theta_series_match_direct_sums_and_are_isodual() {
    let ctx = EvalContext::default();
    for d in SUPPORTED_DISCRIMINANTS {
        let k = FieldDescriptor::new(d).unwrap();
        for t in [0.6, 1.0, 1.7] {
            let got = numfield::theta_k(&k, c(t, 0.0), &ctx).unwrap();
            assert!((got.re - theta_direct(&k, t)).abs() < 1e-12 && got.im.abs() < 1e-14, "Δ = {d}, t = {t}");
            let inv = numfield::theta_k(&k, c(1.0 / t, 0.0), &ctx).unwrap();
            assert!((inv - t * got).norm() < 1e-12);
        }
    }
}

#[test]
fn theta_of_sqrt_minus_two_factors() {
    // m² + 2n²: Θ(t) = θ(t/√2)θ(t√2)
    let ctx = EvalContext::default();
    let k = FieldDescriptor::new(-8).unwrap();
    let r2 = 2f64.sqrt();
    let got = numfield::theta_k(&k, c(1.0, 0.0), &ctx).unwrap().re;
    let want = common::theta_direct(1.0 / r2) * common::theta_direct(r2);
    assert!((got - want).abs() < 1e-13);
}

#[test]
fn gaussian_invariants() {
    let ctx = EvalContext::default();
    let k = FieldDescriptor::new(-4).unwrap();
    let inv = numfield::invariants(&k, &ctx).unwrap();
    // η = Θ_K(√|Δ|) = Θ_K(2) ≈ 1.0074837
    assert!((inv.eta_k - theta_direct(&k, 2.0)).abs() < 1e-13);
    assert!((inv.eta_k - 1.0074837).abs() < 1e-7);
    assert!((inv.genus_tilde - (1.0 + 2f64.ln())).abs() < 1e-14);
    assert!((inv.genus_g - (inv.eta_k * 2.0).ln()).abs() < 1e-14);
}

#[test]
fn gaussian_zeta_is_rescaled_rational_zeta() {
    let ctx = EvalContext::default();
    let k = FieldDescriptor::new(-4).unwrap();
    for (w, s) in [(c(1.5, 0.0), c(0.8, 2.0)), (c(-1.0, 0.0), c(-0.5, 3.0)), (c(0.7, 0.3), c(2.0, -1.0))] {
        let lhs = numfield::z_k(&k, w, s, &ctx).unwrap();
        let rhs = 2.0 * zeta2::z_continued(2.0 * w, 2.0 * s, &ctx).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0), "w = {w}, s = {s}");
    }
}

#[test]
fn field_zeta_functional_equation() {
    let ctx = EvalContext::default();
    let k = FieldDescriptor::new(-7).unwrap();
    for (w, s) in [(c(-1.0, 0.0), c(-0.5, 3.0)), (c(0.7, 0.2), c(0.3, 1.1)), (c(2.0, 0.0), c(-1.0, 0.5))] {
        let a = numfield::z_k(&k, w, s, &ctx).unwrap();
        let b = numfield::z_k(&k, w, w - s, &ctx).unwrap();
        assert!((a - b).norm() < 1e-11 * a.norm().max(1.0), "w = {w}, s = {s}");
    }
    assert!(numfield::z_k(&k, c(1.0, 0.0), c(0.0, 0.0), &ctx).is_err());
}

#[test]
fn gaussian_xi_matches_rational_closed_form() {
    // ξ_Q(i)(0, it) = ξ(0, 2it), and ξ(0, ·) has the Euler–Maclaurin closed form
    let ctx = EvalContext::default();
    let k = FieldDescriptor::new(-4).unwrap();
    let cfac = |u: Complex64| u * (1.0 - c(2.0, 0.0).powc(1.0 - u)) * common::completed_zeta(u);
    for t in [0.5, 3.0, 7.5, 15.0] {
        let s = c(0.0, 2.0 * t);
        let want = (0.5 * cfac(s / 2.0) * cfac(-s / 2.0)).re;
        let got = numfield::xi_k0(&k, t, &ctx).unwrap();
        assert!((got - want).abs() < 1e-12, "t = {t}: {got} vs {want}");
    }
    assert!((numfield::xi_k0(&k, 0.0, &ctx).unwrap() - 0.5).abs() < 1e-13);
}

#[test]
fn split_and_shifted_forms_agree() {
    let ctx = EvalContext::default();
    for d in SUPPORTED_DISCRIMINANTS {
        let k = FieldDescriptor::new(d).unwrap();
        for t in [2.5, 3.5] {
            let a = numfield::xi_k0_split(&k, t, &ctx).unwrap();
            let b = numfield::xi_k0_shifted(&k, t, &ctx).unwrap();
            assert!((a - b).abs() < 1e-11, "Δ = {d}, t = {t}: {a} vs {b}");
        }
    }
}

#[test]
fn sqrt_minus_two_first_sign_change() {
    let ctx = EvalContext::default();
    let k = FieldDescriptor::new(-8).unwrap();
    let brackets = numfield::sign_scan(&k, 0.0, 6.0, 0.05, &ctx).unwrap();
    let (a, b) = brackets[0];
    let t0 = PI / 2f64.ln();
    assert!(a <= t0 && t0 <= b, "{brackets:?}");
}

#[test]
fn gaussian_line_is_positive() {
    let ctx = EvalContext::default();
    let scan = numfield::critical_line_scan(&FieldDescriptor::new(-4).unwrap(), 1.0, 10.0, &ctx).unwrap();
    assert!(scan.min_value > 0.0);
}

#[test]
fn psi_two_value() {
    let ctx = EvalContext::default();
    let want = PI * PI / common::gamma_real(0.75).powi(4);
    assert!((theta_kernel::psi2(&ctx).unwrap() - want).abs() < 1e-13);
}
