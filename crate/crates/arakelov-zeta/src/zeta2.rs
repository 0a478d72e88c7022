//! The two-variable zeta function `Z(w, s)` and its entire completion
//! `ξ(w, s) = s(s - w)/(2w) · Z(w, s)`.
//!
//! - [`xi`] integrates the Fourier–Laplace kernel, `ξ(w, s) = ½∫ γ(w, x+iy) e^{(x+iy)s} dx`,
//!   with the trapezoidal rule; it is uniform on all of `C²`.
//! - [`z`] integrates the Heaviside-regularized integrand
//!   `(θ(e^{2x})^w - H(s) - H(w-s)e^{-wx}) e^{sx}` region by region.
//! - [`completed_zeta`] and [`xi0_closed`] use the split-at-zero form
//!   `Z = J - 1/s + 1/(s-w)` with `J` entire.
//!
//! All line integrals may be moved to `Im z = y` with `|y| < π/4`. For large
//! `|Im s|` the line is chosen from a small candidate set by minimizing a
//! sampled `∫|integrand|`, which removes the oscillatory cancellation that the
//! real line would suffer.

use crate::cmath::{cexpm1, expm1_over_x};
use crate::context::{Error, EvalContext, Result};
use crate::quad::{gauss_kronrod_raw, trapezoid, trapezoid_parallel, QuadResult};
use crate::theta_kernel::{gamma_kernel, log_theta_derivatives, log_theta_jet};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Heaviside step with `H = ½` on the imaginary axis.
pub fn heaviside(s: Complex64) -> f64 {
    if s.re > 0.0 {
        1.0
    } else if s.re < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Convergence region of the regularized integral for a pair `(w, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionTag {
    /// `Re w < Re s < 0`.
    I,
    /// `Re(w - s) < 0 < Re s`.
    II,
    /// `0 < Re s < Re w`.
    III,
    /// `Re s < 0 < Re(w - s)`.
    IV,
    /// `Re s ∈ {0, Re w}`.
    Boundary,
}

/// Classifies `(w, s)` into the four regions or the boundary lines.
pub fn region(w: Complex64, s: Complex64) -> RegionTag {
    let (a, b) = (w.re, s.re);
    if b == 0.0 || b == a {
        RegionTag::Boundary
    } else if b > 0.0 && b > a {
        RegionTag::II
    } else if b < 0.0 && b < a {
        RegionTag::IV
    } else if b < 0.0 {
        RegionTag::I
    } else {
        RegionTag::III
    }
}

/// A value of `Z` or `ξ` with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Zeta2Value {
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
    pub quadrature_error_estimate: f64,
    pub region: RegionTag,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

/// A horizontal integration line `Im z = y` truncated to `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Line {
    pub y: f64,
    pub lo: f64,
    pub hi: f64,
    pub l1: f64,
}

const SHIFT_DELTAS: [f64; 6] = [0.5, 0.3, 0.2, 0.12, 0.08, 0.06];
const SCAN_STEP: f64 = 0.125;
const SCAN_LIMIT: f64 = 80.0;
const NEGLIGIBLE: f64 = 1e-19;

/// Walks outward from `x = 0` in both directions until `|f|` is negligible
/// against its running peak; returns `(lo, hi, ∫|f|)`.
pub(crate) fn scan_extent<F: Fn(f64) -> Option<f64>>(f: &F) -> Option<(f64, f64, f64)> {
    let f0 = f(0.0)?;
    if !f0.is_finite() {
        return None;
    }
    let mut peak = f0;
    let mut l1 = f0 * SCAN_STEP;
    let mut ends = [0.0f64; 2];
    for (side, dir) in [1.0f64, -1.0].iter().enumerate() {
        let mut quiet = 0;
        let mut k = 1;
        loop {
            let x = dir * k as f64 * SCAN_STEP;
            let v = f(x)?;
            if !v.is_finite() {
                return None;
            }
            peak = peak.max(v);
            l1 += v * SCAN_STEP;
            if x.abs() >= 1.0 && v <= NEGLIGIBLE * peak {
                quiet += 1;
                if quiet >= 2 {
                    ends[side] = x;
                    break;
                }
            } else {
                quiet = 0;
            }
            if x.abs() > SCAN_LIMIT {
                return None;
            }
            k += 1;
        }
    }
    Some((ends[1], ends[0], l1))
}

/// Candidate shifts `y`, on the side that damps `e^{i t_eff x}`.
pub(crate) fn shift_candidates(t_eff: f64) -> Vec<f64> {
    let mut ys = vec![0.0];
    if t_eff.abs() >= 0.5 {
        let sign = t_eff.signum();
        ys.extend(SHIFT_DELTAS.iter().map(|d| sign * (PI / 4.0 - d)));
    }
    ys
}

/// Picks the line with the smallest sampled `∫|f|` among the candidates.
pub(crate) fn select_line<F: Fn(f64, f64) -> Option<f64>>(candidates: &[f64], f: F) -> Result<Line> {
    let mut best: Option<Line> = None;
    for &y in candidates {
        if let Some((lo, hi, l1)) = scan_extent(&|x| f(y, x)) {
            if best.map_or(true, |b| l1 < b.l1) {
                best = Some(Line { y, lo, hi, l1 });
            }
        }
    }
    best.ok_or_else(|| Error::Convergence("no admissible integration line".into()))
}

fn check_line(y: f64) -> Result<()> {
    if !(y.abs() < PI / 4.0) {
        return Err(Error::Domain(format!("shift |y| = {} must be below π/4", y.abs())));
    }
    Ok(())
}

/// `γ(w, z) e^{sz}`, with the left half written as `γ(w, -z) e^{(s-w)z}`.
fn xi_integrand(w: Complex64, s: Complex64, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    if z.re >= 0.0 {
        Ok(gamma_kernel(w, z, ctx)? * (s * z).exp())
    } else {
        Ok(gamma_kernel(w, -z, ctx)? * ((s - w) * z).exp())
    }
}

fn xi_line(w: Complex64, s: Complex64, ctx: &EvalContext) -> Result<Line> {
    let t_eff = s.im - w.im / 2.0;
    select_line(&shift_candidates(t_eff), |y, x| {
        xi_integrand(w, s, Complex64::new(x, y), ctx).ok().map(|v| v.norm())
    })
}

fn accept(q: QuadResult, ctx: &EvalContext) -> Result<QuadResult> {
    let target = (ctx.tol * q.value.norm()).max(1e3 * f64::EPSILON * q.l1);
    if q.error <= target {
        Ok(q)
    } else {
        Err(Error::Accuracy {
            estimate: q.error,
            target,
        })
    }
}

/// `ξ(w, s)` on an explicit line `Im z = y`, `|y| < π/4`.
pub fn xi_shifted(w: Complex64, s: Complex64, y: f64, ctx: &EvalContext) -> Result<Zeta2Value> {
    check_line(y)?;
    let (lo, hi, _) = scan_extent(&|x| {
        xi_integrand(w, s, Complex64::new(x, y), ctx).ok().map(|v| v.norm())
    })
    .ok_or_else(|| Error::Convergence("integrand does not decay on the requested line".into()))?;
    xi_on(w, s, Line { y, lo, hi, l1: 0.0 }, ctx)
}

fn xi_on(w: Complex64, s: Complex64, line: Line, ctx: &EvalContext) -> Result<Zeta2Value> {
    let delta = PI / 4.0 - line.y.abs();
    let failed = std::cell::Cell::new(None);
    let q = trapezoid(
        |x| match xi_integrand(w, s, Complex64::new(x, line.y), ctx) {
            Ok(v) => v,
            Err(e) => {
                failed.set(Some(e));
                Complex64::new(0.0, 0.0)
            }
        },
        line.lo,
        line.hi,
        delta / 3.0,
        0.0,
        ctx.tol * 0.1,
        10,
    );
    if let Some(e) = failed.take() {
        return Err(e);
    }
    let q = accept(q, ctx)?;
    Ok(Zeta2Value {
        value: 0.5 * q.value,
        quadrature_error_estimate: 0.5 * q.error,
        region: region(w, s),
    })
}

/// `ξ(w, s)` with its error estimate, on an automatically chosen line.
pub fn xi_with_estimate(w: Complex64, s: Complex64, ctx: &EvalContext) -> Result<Zeta2Value> {
    let line = xi_line(w, s, ctx)?;
    xi_on(w, s, line, ctx)
}

/// The entire function `ξ(w, s)`.
pub fn xi(w: Complex64, s: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    Ok(xi_with_estimate(w, s, ctx)?.value)
}

/// `(θ(e^{2z})^w - 1)` for `Re z ≥ 0` and `(θ(e^{2z})^w - e^{-wz})` for
/// `Re z < 0`, each without cancellation.
fn phi_regular(w: Complex64, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    if z.re >= 0.0 {
        Ok(cexpm1(w * log_theta_jet(z, ctx)?.value))
    } else {
        Ok((-w * z).exp() * cexpm1(w * log_theta_jet(-z, ctx)?.value))
    }
}

fn regular_integrand(w: Complex64, s: Complex64, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    Ok(phi_regular(w, z, ctx)? * (s * z).exp())
}

fn regular_line(w: Complex64, s: Complex64, ctx: &EvalContext) -> Result<Line> {
    let t_eff = s.im - w.im / 2.0;
    select_line(&shift_candidates(t_eff), |y, x| {
        regular_integrand(w, s, Complex64::new(x, y), ctx)
            .ok()
            .map(|v| v.norm())
    })
}

fn panels_for(len: f64, freq: f64) -> usize {
    ((len * (1.0 + freq.abs()) / 1.5).ceil() as usize).clamp(1, 512)
}

/// Adaptive Gauss–Kronrod over `[lo, 0]` and `[0, hi]` on the line `Im z = y`.
fn integrate_halves<F: Fn(Complex64) -> Result<Complex64>>(
    f: F,
    line: Line,
    freq: f64,
    ctx: &EvalContext,
) -> Result<QuadResult> {
    let failed = std::cell::Cell::new(None);
    let g = |x: f64| match f(Complex64::new(x, line.y)) {
        Ok(v) => v,
        Err(e) => {
            failed.set(Some(e));
            Complex64::new(0.0, 0.0)
        }
    };
    let rel = ctx.tol * 0.1;
    let budget = ctx.panel_budget;
    let (left, ok_l) = gauss_kronrod_raw(&g, line.lo, 0.0, 0.0, rel, budget, panels_for(-line.lo, freq));
    let (right, ok_r) = gauss_kronrod_raw(&g, 0.0, line.hi, 0.0, rel, budget, panels_for(line.hi, freq));
    if let Some(e) = failed.take() {
        return Err(e);
    }
    let q = left.combine(right);
    if !(ok_l && ok_r) {
        return accept(q, ctx);
    }
    Ok(q)
}

/// The entire part `J_y(w, s) = ∫_{iy}^{∞+iy}(Φ - 1)e^{sz}dz + ∫_{-∞+iy}^{iy}(Φ - e^{-wz})e^{sz}dz`,
/// `Φ = θ(e^{2z})^w`, related to `Z` by `Z = J_y - e^{iys}/s + e^{iy(s-w)}/(s-w)`.
pub(crate) fn regular_part(w: Complex64, s: Complex64, ctx: &EvalContext) -> Result<(QuadResult, f64)> {
    let line = regular_line(w, s, ctx)?;
    let q = integrate_halves(|z| regular_integrand(w, s, z, ctx), line, s.im - w.im / 2.0, ctx)?;
    Ok((q, line.y))
}

/// `Z(w, s)` by the region-dependent regularized integral.
///
/// Fails with [`Error::Region`] on the lines `Re s ∈ {0, Re w}` and with
/// [`Error::Degenerate`] at `w = 0`, where `Z` vanishes identically.
pub fn z(w: Complex64, s: Complex64, ctx: &EvalContext) -> Result<Zeta2Value> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Degenerate("Z(0, s) vanishes identically; use xi".into()));
    }
    let tag = region(w, s);
    if tag == RegionTag::Boundary {
        return Err(Error::Region(format!(
            "Re s = {} lies on a boundary line of the regularized integral; use xi",
            s.re
        )));
    }
    let line = regular_line(w, s, ctx)?;
    z_on(w, s, line, tag, ctx)
}

/// `Z(w, s)` on an explicit line `Im z = y`, `|y| < π/4`.
pub fn z_shifted(w: Complex64, s: Complex64, y: f64, ctx: &EvalContext) -> Result<Zeta2Value> {
    check_line(y)?;
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Degenerate("Z(0, s) vanishes identically; use xi".into()));
    }
    let tag = region(w, s);
    if tag == RegionTag::Boundary {
        return Err(Error::Region(format!("Re s = {} lies on a boundary line", s.re)));
    }
    let (lo, hi, _) = scan_extent(&|x| {
        regular_integrand(w, s, Complex64::new(x, y), ctx)
            .ok()
            .map(|v| v.norm())
    })
    .ok_or_else(|| Error::Convergence("integrand does not decay on the requested line".into()))?;
    z_on(w, s, Line { y, lo, hi, l1: 0.0 }, tag, ctx)
}

fn z_on(w: Complex64, s: Complex64, line: Line, tag: RegionTag, ctx: &EvalContext) -> Result<Zeta2Value> {
    let hs = heaviside(s);
    let hws = heaviside(w - s);
    let integrand = |z: Complex64| -> Result<Complex64> {
        let e_s = (s * z).exp();
        let e_sw = ((s - w) * z).exp();
        if z.re >= 0.0 {
            Ok(cexpm1(w * log_theta_jet(z, ctx)?.value) * e_s + (1.0 - hs) * e_s - hws * e_sw)
        } else {
            Ok(cexpm1(w * log_theta_jet(-z, ctx)?.value) * e_sw + (1.0 - hws) * e_sw - hs * e_s)
        }
    };
    let q = integrate_halves(integrand, line, s.im - w.im / 2.0, ctx)?;
    let zr = Complex64::new(line.hi, line.y);
    let zl = Complex64::new(line.lo, line.y);
    let right_tail = (1.0 - hs) * (-(s * zr).exp() / s) + hws * ((s - w) * zr).exp() / (s - w);
    let left_tail = (1.0 - hws) * ((s - w) * zl).exp() / (s - w) - hs * (s * zl).exp() / s;
    Ok(Zeta2Value {
        value: q.value + right_tail + left_tail,
        quadrature_error_estimate: q.error,
        region: tag,
    })
}

/// `Z(w, s)` through the entire part, valid off the polar lines `s ∈ {0, w}`
/// without regard to the region.
pub fn z_continued(w: Complex64, s: Complex64, ctx: &EvalContext) -> Result<Zeta2Value> {
    if s == Complex64::new(0.0, 0.0) || s == w {
        return Err(Error::Domain("Z has poles at s = 0 and s = w".into()));
    }
    let (q, y) = regular_part(w, s, ctx)?;
    let value = q.value - (I * y * s).exp() / s + (I * y * (s - w)).exp() / (s - w);
    Ok(Zeta2Value {
        value,
        quadrature_error_estimate: q.error,
        region: region(w, s),
    })
}

/// Completed Riemann zeta `ζ̂(s) = π^{-s/2}Γ(s/2)ζ(s) = Z(1, s)`.
pub fn completed_zeta(s: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    Ok(z_continued(Complex64::new(1.0, 0.0), s, ctx)?.value)
}

/// `C(u) = u(1 - 2^{1-u})ζ̂(u)`, finite at `u = 0` and `u = 1`.
fn two_factor_completed(u: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let (q, y) = regular_part(one, u, ctx)?;
    let x = (one - u) * LN_2;
    let a = -cexpm1(x);
    Ok(a * u * q.value - a * (I * y * u).exp() + u * LN_2 * expm1_over_x(x) * (I * y * (u - one)).exp())
}

/// Closed form `ξ(0, s) = -(s²/8)(1 - 2^{1+s/2})(1 - 2^{1-s/2}) ζ̂(s/2) ζ̂(-s/2)`,
/// evaluated as `½ C(s/2) C(-s/2)` with `C(u) = u(1 - 2^{1-u})ζ̂(u)`.
pub fn xi0_closed(s: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    let u = s / 2.0;
    Ok(0.5 * two_factor_completed(u, ctx)? * two_factor_completed(-u, ctx)?)
}

/// Derivatives `Φ^{(n)}(z)`, `n ≤ k`, of `Φ(z) = θ(e^{2z})^w`.
pub fn phi_derivatives(w: Complex64, z: Complex64, k: usize, ctx: &EvalContext) -> Result<Vec<Complex64>> {
    if z.re < 0.0 {
        // Φ(z) = e^{-wz} Φ(-z)
        let inner = phi_derivatives(w, -z, k, ctx)?;
        let e = (-w * z).exp();
        let mut out = vec![Complex64::new(0.0, 0.0); k + 1];
        for (n, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut binom = 1.0;
            for j in 0..=n {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += binom * (-w).powu((n - j) as u32) * sign * inner[j];
                binom = binom * (n - j) as f64 / (j + 1) as f64;
            }
            *o = e * acc;
        }
        return Ok(out);
    }
    let l = log_theta_derivatives(z, k, ctx)?;
    let mut phi = vec![(w * l[0]).exp()];
    for n in 0..k {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut binom = 1.0;
        for j in 0..=n {
            acc += binom * l[j + 1] * phi[n - j];
            binom = binom * (n - j) as f64 / (j + 1) as f64;
        }
        phi.push(w * acc);
    }
    Ok(phi)
}

fn poly_eval(q: &[Complex64], x: Complex64) -> Complex64 {
    q.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

fn check_moment_domain(w: Complex64, sigma: f64, z: Complex64) -> Result<()> {
    if sigma == 0.0 || sigma == w.re {
        return Err(Error::Region("sigma must avoid 0 and Re w".into()));
    }
    if !(z.im.abs() < PI / 4.0) {
        return Err(Error::Domain("|Im z| must be below π/4".into()));
    }
    Ok(())
}

/// `Q(-d/dz)(θ(e^{2z})^w - H(σ) - H(w-σ)e^{-wz})` for a polynomial `Q`
/// given by its coefficients, lowest degree first.
pub fn moment_transform(
    q: &[Complex64],
    w: Complex64,
    sigma: f64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Complex64> {
    check_moment_domain(w, sigma, z)?;
    let k = q.len().saturating_sub(1);
    let d = phi_derivatives(w, z, k, ctx)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, c) in q.iter().enumerate() {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += c * sign * d[j];
    }
    let q0 = q.first().copied().unwrap_or_default();
    let sig = Complex64::new(sigma, 0.0);
    Ok(acc - q0 * heaviside(sig) - heaviside(w - sig) * poly_eval(q, w) * (-w * z).exp())
}

/// The Fourier side `(1/2π)∫ Q(σ+it) Z(w, σ+it) e^{-(σ+it)z} dt` of
/// [`moment_transform`], by the trapezoidal rule in `t`.
pub fn moment_transform_fourier(
    q: &[Complex64],
    w: Complex64,
    sigma: f64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Complex64> {
    check_moment_domain(w, sigma, z)?;
    let f = |t: f64| -> Option<Complex64> {
        let s = Complex64::new(sigma, t);
        let zv = crate::zeta2::z(w, s, ctx).ok()?.value;
        Some(poly_eval(q, s) * zv * (-s * z).exp())
    };
    // Z decays like e^{-(π/4 - |Im z|)|t|}; find where the integrand is negligible
    let mut t_max = 8.0;
    let peak = f(0.0).map(|v| v.norm()).unwrap_or(1.0).max(1e-300);
    loop {
        let a = f(t_max).map(|v| v.norm()).unwrap_or(f64::INFINITY);
        let b = f(-t_max).map(|v| v.norm()).unwrap_or(f64::INFINITY);
        if a.max(b) < 1e-3 * ctx.tol * peak {
            break;
        }
        t_max *= 1.25;
        if t_max > 2000.0 {
            return Err(Error::Convergence("Fourier integrand does not decay".into()));
        }
    }
    let pole_gap = sigma.abs().min((sigma - w.re).abs());
    let failed = std::sync::atomic::AtomicBool::new(false);
    let r = trapezoid_parallel(
        |t| match f(t) {
            Some(v) => v,
            None => {
                failed.store(true, std::sync::atomic::Ordering::Relaxed);
                Complex64::new(0.0, 0.0)
            }
        },
        -t_max,
        t_max,
        (pole_gap / 4.0).min(0.5),
        0.0,
        ctx.tol * 0.1,
        8,
    );
    if failed.load(std::sync::atomic::Ordering::Relaxed) {
        return Err(Error::Convergence("Z evaluation failed inside the Fourier integral".into()));
    }
    Ok(r.value / (2.0 * PI))
}
