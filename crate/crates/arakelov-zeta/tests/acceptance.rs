//! Acceptance report: one PASS/FAIL line per criterion, with the computed
//! values and tolerances.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed by
//! `cargo test`. The process fails when any criterion fails, except those
//! listed in [`KNOWN_UNATTAINABLE`], whose reference data cannot be matched
//! at the stated tolerance.

mod common;

use arakelov_zeta::numfield::{self, FieldDescriptor};
use arakelov_zeta::qseries::{self, RationalPolynomial};
use arakelov_zeta::semigroup;
use arakelov_zeta::theta_kernel::{self, PsiPolynomial};
use arakelov_zeta::zeroscan::{self, Rect, TrackEventKind};
use arakelov_zeta::{zeta2, EvalContext, Rational, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;
use std::time::Instant;

/// Criteria whose published reference values contain misprints larger than
/// the stated tolerance; they are reported but do not fail the run.
const KNOWN_UNATTAINABLE: [usize; 1] = [6];

/// Outcome of one criterion.
struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
    /// Whether the cross-check against independent oracles succeeded.
    oracle_ok: bool,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Self { pass, detail, notes: Vec::new(), oracle_ok: true }
    }

    fn with_oracle(mut self, ok: bool) -> Self {
        self.oracle_ok = ok;
        self
    }

    fn note(mut self, line: String) -> Self {
        self.notes.push(line);
        self
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn psi2_value() -> f64 {
    PI * (PI.powf(0.25) / common::gamma_real(0.75)).powi(4)
}

fn random_disk(rng: &mut StdRng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
}

fn constants(ctx: &EvalContext) -> Result<Outcome> {
    let theta1 = theta_kernel::theta(1.0f64, ctx)?.value;
    let theta_ref = PI.powf(0.25) / common::gamma_real(0.75);
    let e_theta = (theta1 - theta_ref).abs();
    let xi00 = zeta2::xi(c(0.0, 0.0), c(0.0, 0.0), ctx)?;
    let e_xi = (xi00 - 0.5).norm();
    let mass_ref = PI * PI * theta_ref.powi(8) / 8.0 - 0.5;
    let (mass_quad, mass_closed) = semigroup::canonical_mass(ctx)?;
    let e_mass = (mass_quad - mass_ref).abs().max((mass_closed - mass_ref).abs());
    let g0 = theta_kernel::g_kernel(0.0, ctx)?;
    let e_g = (g0 + mass_ref).abs();
    let pass = e_theta < 1e-12 && e_xi < 1e-10 && e_mass < 1e-6 && e_g < 1e-4;
    Ok(Outcome::new(
        pass,
        format!(
            "θ(1) = {theta1:.15} (err {e_theta:.1e} < 1e-12); ξ(0,0) = {:.12} (err {e_xi:.1e} < 1e-10); \
             mass = {mass_quad:.10} vs {mass_ref:.10} (err {e_mass:.1e} < 1e-6); g(0) = {g0:.10} (err {e_g:.1e} < 1e-4)",
            xi00.re
        ),
    ))
}

fn functional_equation(ctx: &EvalContext) -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let w = random_disk(&mut rng, 10.0);
        let s = random_disk(&mut rng, 10.0);
        let d = (zeta2::xi(w, s, ctx)? - zeta2::xi(w, w - s, ctx)?).norm();
        worst = worst.max(d);
    }
    Ok(Outcome::new(
        worst < 1e-8,
        format!("max |ξ(w,s) − ξ(w,w−s)| over 100 points in |w|,|s| ≤ 10 = {worst:.2e} < 1e-8"),
    ))
}

fn xi0_oracle(s: Complex64) -> Complex64 {
    let cfac = |u: Complex64| u * (1.0 - Complex64::new(2.0, 0.0).powc(1.0 - u)) * common::completed_zeta(u);
    0.5 * cfac(s / 2.0) * cfac(-s / 2.0)
}

fn closed_form_at_zero(ctx: &EvalContext) -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for _ in 0..20 {
        let s = random_disk(&mut rng, 12.0);
        let a = zeta2::xi(c(0.0, 0.0), s, ctx)?;
        let b = zeta2::xi0_closed(s, ctx)?;
        worst = worst.max((a - b).norm());
        worst_oracle = worst_oracle.max((a - xi0_oracle(s)).norm() / a.norm().max(1.0));
    }
    Ok(Outcome::new(
        worst < 1e-8,
        format!("max |ξ(0,s) − closed form| over 20 points with |s| ≤ 12 = {worst:.2e} < 1e-8"),
    )
    .note(format!("independent Euler–Maclaurin closed form: max relative deviation {worst_oracle:.2e}")))
}

fn coefficients(_ctx: &EvalContext) -> Result<Outcome> {
    let c1_ok = qseries::c_poly(1) == RationalPolynomial::from_ints(&[0, 2]);
    let c2_ok = qseries::c_poly(2) == RationalPolynomial::from_ints(&[0, -2, 2]);
    let mut star_ok = true;
    for m in 1..=200usize {
        let p = qseries::c_star(m)?;
        let lead = Rational::from_integer(BigInt::one() << m);
        if !(p.is_nonnegative_integral() && p.leading() == lead && p.coeff(0).is_zero() && p.degree() == Some(m)) {
            star_ok = false;
        }
    }
    let mut worst_a = 0.0f64;
    let mut worst_b = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for u in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let lib = qseries::c_values_f64(u, 200);
        let oracle = common::theta_power_coeffs(u, 200);
        for m in 1..=200usize {
            let cm = lib[m].abs();
            let mf = m as f64;
            if m >= 2 {
                worst_a = worst_a.max(cm / (24.0 * mf.powf(u / 2.0)));
            }
            worst_b = worst_b.max(cm / (6.0 * u * mf.powf(u / 2.0 + 1.0)));
            worst_oracle = worst_oracle.max((lib[m] - oracle[m]).abs() / oracle[m].abs().max(1.0));
        }
    }
    let pass = c1_ok && c2_ok && star_ok && worst_a <= 1.0 && worst_b <= 1.0 && worst_oracle < 1e-6;
    Ok(Outcome::new(
        pass,
        format!(
            "c₁ = 2w: {c1_ok}; c₂ = 2w(w−1): {c2_ok}; c*_m ∈ Z≥0[w], lead 2^m, c*_m(0) = 0 for m ≤ 200: {star_ok}; \
             max |c_m(u)|/(24m^(u/2)) = {worst_a:.3}, max |c_m(u)|/(6u·m^(u/2+1)) = {worst_b:.3} (both ≤ 1)"
        ),
    )
    .note(format!("coefficients vs series products (integer u) and f64 exp(u log θ) (u = 1/2): max relative deviation {worst_oracle:.1e} < 1e-6")))
}

fn euler_products(_ctx: &EvalContext) -> Result<Outcome> {
    let mut passing = Vec::new();
    let mut closed = Vec::new();
    for w in 0..=10i64 {
        let report = qseries::euler_check(&Rational::from_integer(BigInt::from(w)), 100)?;
        if report.passes() {
            passing.push(w);
        }
        if report.closed_form_match == Some(true) {
            closed.push(w);
        }
    }
    let pass = passing == [0, 1, 2, 4, 8] && closed == [0, 1, 2, 4, 6, 8];
    Ok(Outcome::new(
        pass,
        format!("Euler products up to m = 100 for w ∈ {passing:?} (expected [0, 1, 2, 4, 8]); closed forms matched for w ∈ {closed:?}"),
    ))
}

/// Reference ordinates for ζ(s) and for ζ_{Q(i)}(s/2), with the
/// rows marked as zeros of ζ(s/2).
const TABLE_ZETA: [f64; 25] = [
    14.13, 21.02, 25.01, 30.42, 32.94, 37.58, 40.91, 43.32, 48.00, 49.77, 52.77, 56.44, 59.34, 60.83, 65.11,
    67.07, 69.54, 72.06, 75.70, 77.14, 79.33, 82.91, 84.73, 87.42, 88.81,
];
const TABLE_GAUSS: [f64; 25] = [
    12.04, 20.48, 25.96, 28.26, 32.68, 36.58, 42.04, 42.90, 46.54, 50.02, 51.44, 56.78, 59.30, 60.85, 65.18,
    65.87, 68.38, 72.28, 75.16, 77.02, 80.64, 81.82, 83.60, 86.64, 89.22,
];
const TABLE_ASTERISK: [usize; 8] = [4, 7, 10, 14, 16, 19, 22, 24];

fn table_one(ctx: &EvalContext) -> Result<Outcome> {
    let ord = |u: f64| -> Result<Vec<f64>> {
        Ok(zeroscan::critical_zeros(u, 90.0, ctx)?.iter().map(|z| z.im).take(25).collect())
    };
    let col1 = ord(1.0)?;
    let col2 = ord(2.0)?;
    let misses = |got: &[f64], table: &[f64]| -> Vec<usize> {
        (0..25).filter(|&i| got.get(i).map_or(true, |g| (g - table[i]).abs() > 0.01)).map(|i| i + 1).collect()
    };
    let m1 = misses(&col1, &TABLE_ZETA);
    let m2 = misses(&col2, &TABLE_GAUSS);
    let pass = col1.len() == 25 && col2.len() == 25 && m1.is_empty() && m2.is_empty();

    let zeta_ref = common::zeta_zero_ordinates(90.0);
    let mut gauss_ref: Vec<f64> = common::zeta_zero_ordinates(45.0)
        .into_iter()
        .chain(common::l_chi4_zero_ordinates(45.0))
        .map(|g| 2.0 * g)
        .collect();
    gauss_ref.sort_by(f64::total_cmp);
    let dev = |got: &[f64], want: &[f64]| {
        got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max)
    };
    let d1 = dev(&col1, &zeta_ref);
    let d2 = dev(&col2, &gauss_ref);
    let star_dev = TABLE_ASTERISK
        .iter()
        .map(|&row| {
            let g = col2[row - 1] / 2.0;
            col1.iter().map(|z| (z - g).abs()).fold(f64::INFINITY, f64::min) * 2.0
        })
        .fold(0.0f64, f64::max);
    let oracle_ok = zeta_ref.len() >= 25 && gauss_ref.len() >= 25 && d1 < 1e-6 && d2 < 1e-6 && star_dev < 1e-6;
    Ok(Outcome::new(
        pass,
        format!(
            "{} + {} ordinates found; rows off by more than 0.01 from the printed table: ζ column {m1:?}, ζ_Q(i)(s/2) column {m2:?}",
            col1.len(),
            col2.len()
        ),
    )
    .note(format!(
        "independent oracle (sign changes of ζ̂ and of completed L(s,χ₋₄)): max deviation {d1:.1e} / {d2:.1e}; \
         starred rows = 2×(ζ ordinate) to {star_dev:.1e}: {}",
        if oracle_ok { "PASS" } else { "FAIL" }
    ))
    .with_oracle(oracle_ok))
}

fn xi0_zero_count(t: f64) -> i64 {
    // ±2 + 4πik/log 2 (k ≠ 0) and ±2ρ, ±2ρ̄
    let step = 4.0 * PI / 2f64.ln();
    let mut n = 0;
    let mut k = 1;
    while k as f64 * step <= t {
        n += 4;
        k += 1;
    }
    n + 4 * common::zeta_zero_ordinates(t / 2.0 + 1.0).iter().filter(|&&g| 2.0 * g <= t).count() as i64
}

fn zero_counting(ctx: &EvalContext) -> Result<Outcome> {
    let r = zeroscan::count_zeros(1.0, 100.0, ctx)?;
    let envelope = 5.0 * 2.0 * 103f64.ln();
    let mut pass = r.n == 58 && r.s_u_t.abs() < envelope;
    let mut zero_slice = Vec::new();
    for t in [10.0, 15.0, 20.0] {
        let got = zeroscan::count_zeros(0.0, t, ctx)?.n;
        let want = xi0_zero_count(t);
        pass &= got == want;
        zero_slice.push(format!("N₀({t}) = {got} (closed form {want})"));
    }
    Ok(Outcome::new(
        pass,
        format!(
            "½N₁(100) = {} (want 29), main term {:.4}, |S₁(100)| = {:.4} < {envelope:.2}; {}",
            r.n / 2,
            r.main_term,
            r.s_u_t.abs(),
            zero_slice.join(", ")
        ),
    ))
}

fn strip_bound(ctx: &EvalContext) -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for u in [0.0, 1.0, 2.0, 4.0, 8.0] {
        let h = u / 2.0 + 12.0;
        let zeros = zeroscan::find_zeros(u, Rect::new(u / 2.0 - h, u / 2.0 + h, 0.25, 50.0), ctx)?;
        let cert = zeroscan::strip_certificate(u, &zeros);
        let offset = zeros.iter().map(|z| (z.re - u / 2.0).abs()).fold(0.0f64, f64::max);
        pass &= cert;
        parts.push(format!("u = {u}: {} zeros, max |Re s − u/2| = {offset:.3} < {}", zeros.len(), u / 2.0 + 8.0));
    }
    Ok(Outcome::new(pass, parts.join("; ")))
}

fn off_line_at_four(ctx: &EvalContext) -> Result<Outcome> {
    let gamma1 = common::zeta_zero_ordinates(15.0)[0];
    let s = c(1.0, 2.0 * gamma1);
    let val = zeta2::z_continued(c(4.0, 0.0), s, ctx)?.value;
    let zero = zeroscan::locate_zero(4.0, c(1.0, 28.27), ctx)?;
    let off = zero.on_line == Some(false);
    let pass = val.norm() < 1e-6 && off && (zero.s() - s).norm() < 1e-6;
    let probe = c(3.3, 17.0);
    let agree = (zeta2::z_continued(c(4.0, 0.0), probe, ctx)?.value - common::z4(probe)).norm();
    Ok(Outcome::new(
        pass,
        format!(
            "|Z(4, 1 + {:.6}i)| = {:.1e} < 1e-6; located zero {:.8} + {:.6}i certified off Re s = 2: {off}",
            s.im,
            val.norm(),
            zero.re,
            zero.im
        ),
    )
    .note(format!("Z(4,·) vs independent 4π^(−s/2)Γ(s/2)(1−4^(1−s/2))ζ(s/2)ζ(s/2−1) at 3.3+17i: {agree:.1e}")))
}

fn coalescence(ctx: &EvalContext) -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for seed in [42.04, 42.90] {
        let track = zeroscan::track_zero(1.0, 2.0, c(0.5, seed), 100, ctx)?;
        let coalesce = track.events.iter().position(|e| e.kind == TrackEventKind::Coalesce);
        let off = track.events.iter().position(|e| e.kind == TrackEventKind::OffLine);
        let ordered = matches!((coalesce, off), (Some(a), Some(b)) if a <= b);
        let intervals = track.off_line_intervals();
        let covers = intervals.iter().any(|&(a, b)| a <= 1.5 && 1.5 <= b);
        pass &= ordered && covers && !track.truncated;
        let start = track.path.first().map_or(f64::NAN, |p| p.im);
        parts.push(format!(
            "seed {seed} (u = 1 zero at {start:.4}): COALESCE before OFF_LINE: {ordered}, off-line intervals {:?}",
            intervals.iter().map(|(a, b)| format!("[{a:.3}, {b:.3}]")).collect::<Vec<_>>()
        ));
    }
    Ok(Outcome::new(pass, parts.join("; ")))
}

fn positivity(ctx: &EvalContext) -> Result<Outcome> {
    let mut min_all = f64::INFINITY;
    let mut at = (0.0, 0.0);
    for u in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let r = semigroup::positivity_scan(u, 50.0, ctx)?;
        if r.min_value < min_all {
            min_all = r.min_value;
            at = (u, r.at_t);
        }
    }
    let mut min_density = f64::INFINITY;
    let mut worst = 0.0f64;
    for i in -120..=120 {
        let x = 0.5 * i as f64;
        let d = semigroup::canonical_density(x, ctx)?;
        min_density = min_density.min(d.closed_form);
        worst = worst.max((d.closed_form - d.via_xi).abs());
    }
    let pass = min_all > 0.0 && min_density >= 0.0 && worst < 1e-8;
    Ok(Outcome::new(
        pass,
        format!(
            "min Z(−u, −u/2+it) over u ∈ {{0.1,0.5,1,2,5,10}}, |t| ≤ 50 = {min_all:.3e} > 0 (u = {}, t = {}); \
             min M(x) on |x| ≤ 60 = {min_density:.3e} ≥ 0; formulas agree to {worst:.1e} < 1e-8",
            at.0, at.1
        ),
    ))
}

fn semigroup_checks(ctx: &EvalContext) -> Result<Outcome> {
    let mut mass_err = 0.0f64;
    for (u, v) in [(1.0, 0.0), (0.5, 0.2), (2.0, -1.0), (1.0, 0.5), (3.0, 1.0)] {
        let g = semigroup::density_grid(u, v, ctx)?;
        mass_err = mass_err.max((g.mass() - 1.0).norm());
    }
    let mut conv = 0.0f64;
    for (u1, v1, u2, v2, x) in [
        (1.0, 0.0, 1.0, 0.0, 0.3),
        (0.5, 0.1, 1.5, -0.2, -0.7),
        (1.0, 0.5, 2.0, 0.0, 1.1),
        (2.0, -1.0, 0.7, 0.3, 0.0),
        (0.8, 0.0, 0.8, 0.4, 2.0),
    ] {
        conv = conv.max(semigroup::convolution_check(u1, v1, u2, v2, x, ctx)?);
    }
    let mut cf = 0.0f64;
    for (u, v, r) in [(1.0, 0.0, 0.5), (0.5, 0.2, 1.0), (2.0, -1.0, 0.3), (1.0, 0.5, -0.8), (3.0, 1.0, 0.25)] {
        cf = cf.max(semigroup::char_function_check(u, v, r, ctx)?);
    }
    let pass = mass_err < 1e-6 && conv < 1e-5 && cf < 1e-6;
    Ok(Outcome::new(
        pass,
        format!(
            "max |mass − 1| = {mass_err:.1e} < 1e-6; convolution residual {conv:.1e} < 1e-5; \
             characteristic-function residual {cf:.1e} < 1e-6"
        ),
    ))
}

fn exact_algebra(ctx: &EvalContext) -> Result<Outcome> {
    let expected = [
        PsiPolynomial::from_fracs(&[(-1, 4)]),
        PsiPolynomial::from_fracs(&[(1, 8), (0, 1), (1, 32)]),
        PsiPolynomial::from_fracs(&[(-1, 8), (0, 1), (-3, 32)]),
        PsiPolynomial::from_fracs(&[(3, 16), (0, 1), (9, 32), (0, 1), (-1, 256)]),
    ];
    let mut r_ok = true;
    for (k, want) in expected.iter().enumerate() {
        r_ok &= theta_kernel::r_symbolic(k + 1)? == *want;
    }
    let table = semigroup::cumulants(4)?;
    let c2_want = PsiPolynomial::from_fracs(&[(-1, 2), (0, 1), (1, 8)]);
    let c4_want = PsiPolynomial::from_fracs(&[(-1, 1), (0, 1), (1, 1), (0, 1), (1, 16)]);
    let c2_ok = table.c(2) == Some(&c2_want);
    let c4_ok = table.c(4) == Some(&c4_want);
    // total mass π²θ(1)⁸/8 − ½ = ψ₂²/8 − ½
    let mass_poly = PsiPolynomial::from_fracs(&[(-1, 2), (0, 1), (1, 8)]);
    let k2 = &table.entries[1];
    let kappa_ok = k2.k == 2
        && k2.u_coeff.re == mass_poly
        && k2.u_coeff.im.is_zero()
        && k2.v_coeff.0.is_zero()
        && k2.v_coeff.1.is_zero();
    let (_, mass_closed) = semigroup::canonical_mass(ctx)?;
    let mass_num = (mass_poly.eval(psi2_value()) - mass_closed).abs();
    let pass = r_ok && c2_ok && c4_ok && kappa_ok && mass_num < 1e-12;
    Ok(Outcome::new(
        pass,
        format!(
            "R₁..R₄ exact: {r_ok}; c₂ = −1/2 + ψ₂²/8: {c2_ok}; c₄ = −1 + ψ₂² + ψ₂⁴/16: {c4_ok}; \
             κ₂ = u·(ψ₂²/8 − 1/2) in Q[ψ₂]: {kappa_ok} (numeric mass check {mass_num:.1e})"
        ),
    ))
}

fn feller_general(ctx: &EvalContext) -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for w in [c(0.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 1.0)] {
        let r = semigroup::feller_mean_integral(w, ctx)?;
        worst = worst.max(r.difference);
        parts.push(format!("w = {w}: {:.3e}", r.difference));
    }
    Ok(Outcome::new(worst < 1e-6, format!("quadrature vs closed form < 1e-6: {}", parts.join(", "))))
}

fn number_fields(ctx: &EvalContext) -> Result<Outcome> {
    let gauss = FieldDescriptor::new(-4)?;
    let mut rng = StdRng::seed_from_u64(15);
    let mut a112 = 0.0f64;
    for _ in 0..10 {
        let w = c(rng.gen_range(-1.5..1.5), rng.gen_range(-0.5..0.5));
        let s = c(rng.gen_range(-1.0..2.0), rng.gen_range(-3.0..3.0));
        let lhs = numfield::z_k(&gauss, w, s, ctx)?;
        let rhs = 2.0 * zeta2::z_continued(2.0 * w, 2.0 * s, ctx)?.value;
        a112 = a112.max((lhs - rhs).norm() / rhs.norm().max(1.0));
    }
    let first = |d: i64, t1: f64| -> Result<Option<(f64, f64)>> {
        Ok(numfield::sign_scan(&FieldDescriptor::new(d)?, 0.0, t1, 0.05, ctx)?.first().copied())
    };
    let b11 = first(-11, 6.0)?;
    let b19 = first(-19, 6.0)?;
    let in11 = matches!(b11, Some((a, b)) if a > 3.10 && b < 3.15);
    let in19 = matches!(b19, Some((a, b)) if a > 2.0 && b < 2.1);
    let line = numfield::critical_line_scan(&FieldDescriptor::new(-11)?, 1.0, 10.0, ctx)?;
    let line_ok = line.min_value < 0.0 && (line.at_t - 4.0).abs() < 1.0;
    let n3 = numfield::sign_scan(&FieldDescriptor::new(-3)?, 0.0, 50.0, 0.05, ctx)?.len();
    let n7 = numfield::sign_scan(&FieldDescriptor::new(-7)?, 0.0, 50.0, 0.05, ctx)?.len();

    let k8 = FieldDescriptor::new(-8)?;
    let half_log2 = 0.5 * 2f64.ln();
    let mut sign_ok = true;
    let mut value_dev = 0.0f64;
    let mut compared = 0;
    for i in 1..=80 {
        let t = 0.25 * i as f64;
        let closed = (t * half_log2).cos() * xi0_oracle(c(0.0, 2.0 * t)).re;
        let got = numfield::xi_k0(&k8, t, ctx)?;
        value_dev = value_dev.max((got - closed).abs());
        if closed.abs() > 1e-9 {
            compared += 1;
            sign_ok &= got.signum() == closed.signum();
        }
    }
    let pass = a112 < 1e-8 && in11 && in19 && line_ok && n3 == 0 && n7 == 0 && sign_ok;
    Ok(Outcome::new(
        pass,
        format!(
            "Z_Q(i)(w,s) = 2Z(2w,2s) at 10 points to {a112:.1e} < 1e-8; Q(√−11) first sign change in {b11:?}, \
             Q(√−19) in {b19:?}; Q(√−11) line minimum {:.5} at t = {:.2}; sign changes on [0,50]: Q(√−3) {n3}, Q(√−7) {n7}; \
             Q(√−2) signs agree with cos(t log√2)ξ(0,2it) at {compared} points: {sign_ok}",
            line.min_value, line.at_t
        ),
    )
    .note(format!("Q(√−2) value agreement with cos(t log√2)ξ(0,2it) on t ≤ 20: max deviation {value_dev:.1e}")))
}

fn growth_and_decay(ctx: &EvalContext) -> Result<Outcome> {
    let mut decay_ok = true;
    let mut decay_parts = Vec::new();
    for (w, sigma) in [(c(0.0, 0.0), 0.0), (c(1.0, 0.0), 0.5), (c(2.0, 0.0), 1.0), (c(-1.0, 0.0), -0.5), (c(1.0, 1.0), 0.3)] {
        let mut samples = Vec::new();
        for i in 0..=100 {
            let t = 2.0 * i as f64;
            let a = zeta2::xi(w, c(sigma, t), ctx)?.norm();
            let b = zeta2::xi(w, c(sigma, -t), ctx)?.norm();
            samples.push((t, a.max(b)));
        }
        // tail envelope E(t) = sup_{t' ≥ t} |ξ|; first t with E(t) < 1e-10
        let mut env = vec![0.0; samples.len()];
        let mut run = 0.0f64;
        for i in (0..samples.len()).rev() {
            run = run.max(samples[i].1);
            env[i] = run;
        }
        let cross = env.iter().position(|&e| e < 1e-10).map(|i| samples[i].0);
        decay_ok &= cross.is_some_and(|t| t <= 200.0);
        decay_parts.push(format!("({w}, {sigma}): below 1e-10 from |t| = {}", cross.map_or("never".into(), |t| t.to_string())));
    }

    let mut fits = Vec::new();
    for r in [8.0, 16.0, 24.0, 32.0, 40.0] {
        let mut m = f64::NEG_INFINITY;
        for k in 0..24 {
            let a = 2.0 * PI * k as f64 / 24.0;
            let e = Complex64::from_polar(r, a);
            for (w, s) in [(e, c(0.3, 0.1)), (c(0.5, 0.2), e), (e, e.conj()), (e, 0.5 * e)] {
                m = m.max(zeta2::xi(w, s, ctx)?.norm().ln());
            }
        }
        fits.push((r, m / (r * r.ln()), m / (r * r)));
    }
    let c_fit = fits.iter().map(|f| f.1).fold(f64::NEG_INFINITY, f64::max);
    let sub_gaussian = fits.windows(2).skip(1).all(|p| p[1].2 <= p[0].2);
    let growth_ok = c_fit.is_finite() && c_fit < 1.0 && sub_gaussian;
    Ok(Outcome::new(
        decay_ok && growth_ok,
        format!(
            "{}; envelope |ξ| ≤ exp(C·R log R) on shells R ≤ 40 with fitted C = {c_fit:.3}, log|ξ|/R² decreasing for R ≥ 16: {sub_gaussian}",
            decay_parts.join(", ")
        ),
    ))
}

type Criterion = fn(&EvalContext) -> Result<Outcome>;

fn main() {
    let ctx = EvalContext::default();
    let criteria: [(&str, Criterion); 16] = [
        ("constants", constants),
        ("functional equation", functional_equation),
        ("closed form at w = 0", closed_form_at_zero),
        ("coefficients", coefficients),
        ("Euler products", euler_products),
        ("zero table", table_one),
        ("zero counting", zero_counting),
        ("strip bound", strip_bound),
        ("off-line zeros at u = 4", off_line_at_four),
        ("coalescence", coalescence),
        ("positivity", positivity),
        ("semigroup", semigroup_checks),
        ("exact algebra", exact_algebra),
        ("mean integral", feller_general),
        ("number fields", number_fields),
        ("growth and decay", growth_and_decay),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let outcome = run(&ctx).unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {status} [{name}] {} ({:.1} s)",
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        for note in &outcome.notes {
            println!("             {note}");
        }
        if !outcome.pass {
            if KNOWN_UNATTAINABLE.contains(&id) && outcome.oracle_ok {
                println!("             reference values contain misprints beyond the stated tolerance; not counted as a failure");
            } else {
                unexpected.push(id);
            }
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all attainable criteria pass");
    } else {
        println!("acceptance: failing criteria {unexpected:?}");
        std::process::exit(1);
    }
}
