//! Two-variable zeta functions of imaginary quadratic fields of class number one.
//!
//! The ring of integers `O_K` with the quadratic form `2N(α)/√|Δ_K|` is an
//! isodual lattice, so its theta series
//! `Θ_K(t) = Σ_{α∈O_K} exp(-2πN(α)t/√|Δ_K|)` satisfies `Θ_K(1/t) = tΘ_K(t)`.
//! With `G(v) = Θ_K(e^v)` and `F = log G`:
//!
//! - `Z_K(w, s) = ∫ G(v)^w e^{sv} dv` (regularized), evaluated as
//!   `-1/s + 1/(s-w) + ∫_0^∞ (G^w - 1)(e^{sv} + e^{(w-s)v}) dv`;
//! - `ξ_K(0, s) = (s²/2)∫ F(v) e^{sv} dv = ½∫ F''(v) e^{sv} dv`, normalized so
//!   that `ξ_K(0, 0) = ½`. For `K = Q(i)` this is `ξ(0, 2s)`.
//!
//! On `s = it` the second integral is either split at `v = 0` (small `|t|`)
//! or moved to `Im v = Y` close to `π/2`, picking up residues at the zeros of
//! `G` in `0 < Im v < Y`.

use crate::cmath::cexpm1;
use crate::context::{Error, EvalContext, Result};
use crate::quad::gauss_kronrod_raw;
use crate::theta_kernel::{norm_form_theta, theta};
use crate::zeroscan::{isolate, PhaseSource, Rect};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

/// Discriminants of the imaginary quadratic fields of class number one.
pub const SUPPORTED_DISCRIMINANTS: [i64; 9] = [-3, -4, -7, -8, -11, -19, -43, -67, -163];

/// An imaginary quadratic field with class number one.
#[derive(Debug, Clone, Serialize)]
pub struct FieldDescriptor {
    /// Field discriminant `Δ_K < 0`.
    pub discriminant: i64,
    /// Reduced norm form `(a, b, c)`, `N(m + nω) = am² + bmn + cn²`.
    pub norm_form: (i64, i64, i64),
    /// Number of roots of unity in `O_K`.
    pub w_k: u32,
    /// `√|Δ_K|`.
    pub sqrt_abs_disc: f64,
    #[serde(skip)]
    reps: Arc<Vec<u32>>,
}

impl FieldDescriptor {
    /// Descriptor for the field of discriminant `Δ`.
    pub fn new(discriminant: i64) -> Result<Self> {
        if !SUPPORTED_DISCRIMINANTS.contains(&discriminant) {
            return Err(Error::Configuration(format!(
                "discriminant {} is not one of the supported class-number-one fields {:?}",
                discriminant, SUPPORTED_DISCRIMINANTS
            )));
        }
        let b = discriminant.rem_euclid(2);
        let c = (b * b - discriminant) / 4;
        let w_k = match discriminant {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        let sqrt_abs_disc = (discriminant.unsigned_abs() as f64).sqrt();
        let n_max = (400.0 * sqrt_abs_disc) as usize + 100;
        let reps = Arc::new(count_representations((1, b, c), n_max));
        Ok(Self {
            discriminant,
            norm_form: (1, b, c),
            w_k,
            sqrt_abs_disc,
            reps,
        })
    }

    /// Descriptors of all supported fields.
    pub fn all() -> Vec<Self> {
        SUPPORTED_DISCRIMINANTS
            .iter()
            .map(|&d| Self::new(d).expect("supported discriminant"))
            .collect()
    }

    /// `N(m, n) = am² + bmn + cn²`.
    pub fn norm(&self, m: i64, n: i64) -> i64 {
        let (a, b, c) = self.norm_form;
        a * m * m + b * m * n + c * n * n
    }

    /// `r(N)`, the number of `α ∈ O_K` with `N(α) = N`, for `N` up to the
    /// tabulated bound.
    pub fn representation_counts(&self) -> &[u32] {
        &self.reps
    }

    /// Smallest eigenvalue of the Gram matrix of the norm form.
    fn lambda_min(&self) -> f64 {
        let (a, b, c) = self.norm_form;
        let (a, b, c) = (a as f64, b as f64 / 2.0, c as f64);
        let tr = a + c;
        let det = a * c - b * b;
        tr / 2.0 - ((tr / 2.0).powi(2) - det).sqrt()
    }

    /// Bound on `Σ_{N(α) > B} e^{-α_0 N(α)}` for `Re α_0 = alpha > 0`, from the box
    /// count `#{N ≤ X} ≤ 2 + 8X/λ_min`.
    pub fn tail_bound(&self, alpha: f64, bound: usize) -> f64 {
        let lam = self.lambda_min();
        let b = bound as f64 + 1.0;
        ((2.0 + 8.0 * b / lam) + 8.0 / (lam * alpha)) * (-alpha * b).exp()
    }

    /// Smallest `B` with `tail_bound(alpha, B) < tol`, within the tabulated range.
    pub fn norm_bound(&self, alpha: f64, tol: f64) -> Result<usize> {
        if !(alpha > 0.0) {
            return Err(Error::Domain("norm-form theta needs a positive real part".into()));
        }
        let cap = self.reps.len() - 1;
        let mut b = ((-tol.ln()) / alpha).ceil() as usize;
        while self.tail_bound(alpha, b) >= tol {
            b += 1 + b / 8;
            if b > cap {
                return Err(Error::Truncation { needed: b, cap });
            }
        }
        Ok(b.min(cap))
    }

    /// `2π/√|Δ_K|`, the exponent scale of `Θ_K`.
    pub fn alpha_scale(&self) -> f64 {
        2.0 * PI / self.sqrt_abs_disc
    }
}

fn count_representations(form: (i64, i64, i64), n_max: usize) -> Vec<u32> {
    let (a, b, c) = form;
    let mut reps = vec![0u32; n_max + 1];
    // N(m, n) ≥ |Δ| n²/(4a), so |n| ≤ √(4a N/|Δ|)
    let disc = (4 * a * c - b * b) as f64;
    let n_lim = ((4.0 * a as f64 * n_max as f64) / disc).sqrt().ceil() as i64;
    for n in -n_lim..=n_lim {
        let m_lim = ((n_max as f64 / a as f64).sqrt() + (b * n).abs() as f64).ceil() as i64 + 1;
        for m in -m_lim..=m_lim {
            let v = a * m * m + b * m * n + c * n * n;
            if v >= 0 && (v as usize) <= n_max {
                reps[v as usize] += 1;
            }
        }
    }
    reps
}

/// Arakelov invariants of a number field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldInvariants {
    /// `η(K) = Σ_{α∈O_K} e^{-2πN(α)}`, the theta series at the unit divisor.
    pub eta_k: f64,
    /// `g(K) = log(η(K)√|Δ_K|)`.
    pub genus_g: f64,
    /// `g̃(K) = 1 + ½ log|Δ_K|`.
    pub genus_tilde: f64,
}

/// Invariants of `K`, with `η(K) = Θ_K(√|Δ_K|)`.
pub fn invariants(k: &FieldDescriptor, ctx: &EvalContext) -> Result<FieldInvariants> {
    let eta_k = norm_form_theta(k, k.sqrt_abs_disc, ctx)?.value;
    Ok(FieldInvariants {
        eta_k,
        genus_g: (eta_k * k.sqrt_abs_disc).ln(),
        genus_tilde: 1.0 + k.sqrt_abs_disc.ln(),
    })
}

/// Invariants of the rational field: `η(Q) = θ(1)`, `g(Q) = log θ(1)`, `g̃(Q) = 1`.
pub fn rational_invariants(ctx: &EvalContext) -> Result<FieldInvariants> {
    let eta_k = theta(1.0f64, ctx)?.value;
    Ok(FieldInvariants {
        eta_k,
        genus_g: eta_k.ln(),
        genus_tilde: 1.0,
    })
}

/// `Σ r(N) N^j e^{-αNq}` for `j = 0, 1, 2` and `Re q > 0`.
fn theta_sums(k: &FieldDescriptor, q: Complex64, ctx: &EvalContext) -> Result<[Complex64; 3]> {
    let alpha = k.alpha_scale();
    if !(q.re > 0.0) {
        return Err(Error::Domain("Θ_K requires Re t > 0".into()));
    }
    let bound = k.norm_bound(alpha * q.re, ctx.tol * 1e-3)?;
    let reps = k.representation_counts();
    let step = (-alpha * q).exp();
    let mut pow = Complex64::new(1.0, 0.0);
    let mut sums = [Complex64::new(0.0, 0.0); 3];
    for (n, &r) in reps.iter().enumerate().take(bound + 1) {
        if r != 0 {
            let term = r as f64 * pow;
            let nf = n as f64;
            sums[0] += term;
            sums[1] += nf * term;
            sums[2] += nf * nf * term;
        }
        pow *= step;
        if pow.norm() < 1e-300 {
            break;
        }
    }
    Ok(sums)
}

/// `Θ_K(t)` for complex `t` with `Re t > 0`.
pub fn theta_k(k: &FieldDescriptor, t: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    if !(t.re > 0.0) {
        return Err(Error::Domain("Θ_K requires Re t > 0".into()));
    }
    if t.norm() < 1.0 {
        return Ok(theta_k(k, t.inv(), ctx)? / t);
    }
    Ok(theta_sums(k, t, ctx)?[0])
}

/// `G(v) = Θ_K(e^v)` with `F'(v)` and `F''(v)` for `F = log G`.
#[derive(Debug, Clone, Copy)]
struct LogJet {
    g: Complex64,
    d1: Complex64,
    d2: Complex64,
}

fn log_jet(k: &FieldDescriptor, v: Complex64, ctx: &EvalContext) -> Result<LogJet> {
    if v.im.abs() >= FRAC_PI_2 {
        return Err(Error::Domain("Θ_K(e^v) requires |Im v| < π/2".into()));
    }
    if v.re < 0.0 {
        // G(v) = e^{-v} G(-v)
        let j = log_jet(k, -v, ctx)?;
        return Ok(LogJet {
            g: (-v).exp() * j.g,
            d1: -1.0 - j.d1,
            d2: j.d2,
        });
    }
    let q = v.exp();
    let [s0, s1, s2] = theta_sums(k, q, ctx)?;
    let a = k.alpha_scale() * q;
    let gv = -a * s1;
    let gvv = -a * s1 + a * a * s2;
    let d1 = gv / s0;
    Ok(LogJet {
        g: s0,
        d1,
        d2: gvv / s0 - d1 * d1,
    })
}

/// `F(v) = log Θ_K(e^v)` for real `v`.
fn log_theta_real(k: &FieldDescriptor, v: f64, ctx: &EvalContext) -> Result<f64> {
    Ok(norm_form_theta(k, v.exp(), ctx)?.value.ln())
}

/// Smallest `v ≥ 0` beyond which `|F(v)| < eps`, from `F(v) ≈ w_K e^{-αe^v}`.
fn decay_point(k: &FieldDescriptor, eps: f64, re_scale: f64) -> f64 {
    let need = ((k.w_k as f64 + 1.0) / eps).ln() / (k.alpha_scale() * re_scale);
    need.max(1.0).ln().max(0.0) + 0.5
}

/// `Z_K(w, s)` for `s ∉ {0, w}`.
pub fn z_k(k: &FieldDescriptor, w: Complex64, s: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    ctx.validate()?;
    if s.norm() == 0.0 || (s - w).norm() == 0.0 {
        return Err(Error::Domain(format!("Z_K has a pole at s = {s} for w = {w}")));
    }
    let grow = s.re.max((w - s).re).max(0.0);
    // |G^w - 1| ≈ |w| w_K e^{-αe^v}, times e^{v·grow}
    let mut upper = 1.0f64;
    loop {
        let tail = (w.norm() + 1.0) * (k.w_k as f64) * (-k.alpha_scale() * upper.exp() + upper * grow).exp();
        if tail < 1e-3 * ctx.tol || upper > 30.0 {
            break;
        }
        upper += 0.25;
    }
    let failed = Mutex::new(None);
    let f = |v: f64| match log_theta_real(k, v, ctx) {
        Ok(lg) => cexpm1(w * lg) * ((s * v).exp() + ((w - s) * v).exp()),
        Err(e) => {
            *failed.lock().expect("error slot") = Some(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let (q, ok) = gauss_kronrod_raw(&f, 0.0, upper, ctx.tol * 1e-2, ctx.tol, ctx.panel_budget, 8);
    if let Some(e) = failed.into_inner().expect("error slot") {
        return Err(e);
    }
    if !ok {
        return Err(Error::Accuracy {
            estimate: q.error,
            target: ctx.tol * q.value.norm(),
        });
    }
    Ok(-1.0 / s + 1.0 / (s - w) + q.value)
}

/// `ξ_K(0, it) = ½ - t²∫_0^∞ F(v) cos(tv) dv`, accurate while `ξ_K(0, it)` is
/// not small compared with `t²∫|F|`.
pub fn xi_k0_split(k: &FieldDescriptor, t: f64, ctx: &EvalContext) -> Result<f64> {
    ctx.validate()?;
    let upper = decay_point(k, 1e-3 * ctx.tol, 1.0);
    let failed = Mutex::new(None);
    let f = |v: f64| match log_theta_real(k, v, ctx) {
        Ok(lg) => Complex64::new(lg * (t * v).cos(), 0.0),
        Err(e) => {
            *failed.lock().expect("error slot") = Some(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let (q, ok) = gauss_kronrod_raw(&f, 0.0, upper, ctx.tol * 1e-3, ctx.tol, ctx.panel_budget, 8);
    if let Some(e) = failed.into_inner().expect("error slot") {
        return Err(e);
    }
    if !ok {
        return Err(Error::Accuracy {
            estimate: q.error,
            target: ctx.tol,
        });
    }
    Ok(0.5 - t * t * q.value.re)
}

/// A zero of `Θ_K(e^v)` in the upper half of the strip `|Im v| < π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaZero {
    pub re: f64,
    pub im: f64,
    pub multiplicity: u32,
}

/// Zeros of `Θ_K(e^v)` below the integration line, and that line's height.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftedLine {
    pub y: f64,
    pub zeros: Vec<ThetaZero>,
}

/// Highest line used; `cos Y` bounds the real part of `e^v` from below.
const TOP_MARGIN: f64 = 0.15;
const LINE_CANDIDATES: [f64; 5] = [0.2, 0.25, 0.3, 0.35, 0.4];

struct ThetaSource<'a> {
    k: &'a FieldDescriptor,
    ctx: &'a EvalContext,
}

impl PhaseSource for ThetaSource<'_> {
    fn value(&self, v: Complex64) -> Result<Complex64> {
        Ok(log_jet(self.k, v, self.ctx)?.g)
    }
}

/// Horizontal extent beyond which `Θ_K(e^v)` has no zeros below height `y`.
fn zero_free_extent(k: &FieldDescriptor, y: f64) -> f64 {
    (8.0 / (k.alpha_scale() * y.cos())).ln().max(1.0)
}

/// Zeros of `Θ_K(e^v)` with `0 < Im v < π/2 - 0.15`, found by the argument
/// principle and Newton's method, and a line height that stays clear of them.
/// Cached per field.
pub fn shifted_line(k: &FieldDescriptor, ctx: &EvalContext) -> Result<Arc<ShiftedLine>> {
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<ShiftedLine>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(line) = cache.lock().expect("cache lock").get(&k.discriminant) {
        return Ok(line.clone());
    }
    let top = FRAC_PI_2 - TOP_MARGIN;
    let x = zero_free_extent(k, top);
    let src = ThetaSource { k, ctx };
    let mut last = None;
    let mut zeros = None;
    for nudge in [0.0, 0.013, -0.021, 0.034] {
        let region = Rect::new(-x - nudge, x + nudge, 0.0, top + nudge * 0.1);
        let found = src.winding(&region).and_then(|n| {
            let mut leaves = Vec::new();
            isolate(&src, region, n, 0.25, 1e-6, &mut leaves)?;
            leaves
                .into_iter()
                .map(|(leaf, m)| refine_theta_zero(k, leaf, m as u32, ctx))
                .collect::<Result<Vec<_>>>()
        });
        match found {
            Ok(z) => {
                zeros = Some(z);
                break;
            }
            Err(Error::Contour(m)) => last = Some(m),
            Err(e) => return Err(e),
        }
    }
    let mut zeros = zeros.ok_or_else(|| Error::Contour(last.unwrap_or_default()))?;
    zeros.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    let y = LINE_CANDIDATES
        .iter()
        .map(|m| FRAC_PI_2 - m)
        .max_by(|a, b| {
            let gap = |y: f64| zeros.iter().map(|z| (z.im - y).abs()).fold(f64::INFINITY, f64::min);
            gap(*a).total_cmp(&gap(*b)).then(a.total_cmp(b))
        })
        .expect("non-empty candidate list");
    let zeros = zeros.into_iter().filter(|z| z.im < y).collect();
    let line = Arc::new(ShiftedLine { y, zeros });
    cache
        .lock()
        .expect("cache lock")
        .insert(k.discriminant, line.clone());
    Ok(line)
}

fn refine_theta_zero(k: &FieldDescriptor, leaf: Rect, m: u32, ctx: &EvalContext) -> Result<ThetaZero> {
    let mut v = leaf.center();
    for _ in 0..100 {
        let j = log_jet(k, v, ctx)?;
        // G/G' = 1/F'; a zero of order m needs m times the step
        let step = m as f64 / j.d1;
        let step = if step.norm() > 0.1 { step * (0.1 / step.norm()) } else { step };
        v -= step;
        if step.norm() < 1e-14 * (1.0 + v.norm()) {
            if !leaf.contains(v) {
                break;
            }
            return Ok(ThetaZero {
                re: v.re,
                im: v.im,
                multiplicity: m,
            });
        }
    }
    Err(Error::Convergence(format!(
        "Newton's method for a zero of Θ_K(e^v) in {leaf:?} did not converge"
    )))
}

/// `ξ_K(0, it)` from the line `Im v = Y`:
/// `e^{-|t|Y} Re∫_0^∞F''(x+iY)e^{i|t|x}dx + π|t| Re Σ m_j e^{i|t|v_j}`.
pub fn xi_k0_shifted(k: &FieldDescriptor, t: f64, ctx: &EvalContext) -> Result<f64> {
    ctx.validate()?;
    let t = t.abs();
    let line = shifted_line(k, ctx)?;
    let y = line.y;
    let upper = zero_free_extent(k, y) + decay_point(k, 1e-3 * ctx.tol, y.cos());
    let failed = Mutex::new(None);
    // F''(-x + iY) = conj F''(x + iY), so the line integral is 2 Re ∫_0^X
    let f = |x: f64| match log_jet(k, Complex64::new(x, y), ctx) {
        Ok(j) => j.d2 * Complex64::new(0.0, t * x).exp(),
        Err(e) => {
            *failed.lock().expect("error slot") = Some(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let (q, ok) = gauss_kronrod_raw(&f, 0.0, upper, 0.0, ctx.tol, ctx.panel_budget, 16);
    if let Some(e) = failed.into_inner().expect("error slot") {
        return Err(e);
    }
    if !ok {
        return Err(Error::Accuracy {
            estimate: q.error,
            target: ctx.tol * q.value.norm(),
        });
    }
    let integral = (-t * y).exp() * q.value.re;
    // the zero set is symmetric under v ↦ -conj(v), so the residue sum is real
    let residues: f64 = line
        .zeros
        .iter()
        .map(|z| z.multiplicity as f64 * (t * z.re).cos() * (-t * z.im).exp())
        .sum();
    Ok(integral + PI * t * residues)
}

/// Below this `|t|` the split formula is used.
const SPLIT_LIMIT: f64 = 4.0;

/// `ξ_K(0, it)`, real and even in `t`.
pub fn xi_k0(k: &FieldDescriptor, t: f64, ctx: &EvalContext) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Domain("t must be finite".into()));
    }
    if t.abs() <= SPLIT_LIMIT {
        xi_k0_split(k, t, ctx)
    } else {
        xi_k0_shifted(k, t, ctx)
    }
}

/// Brackets `[a, b]` of width at most `10⁻³` on which `ξ_K(0, it)` changes
/// sign, from a scan of `[t0, t1]` at the given step.
pub fn sign_scan(k: &FieldDescriptor, t0: f64, t1: f64, step: f64, ctx: &EvalContext) -> Result<Vec<(f64, f64)>> {
    if !(step > 0.0) || !(t1 > t0) {
        return Err(Error::Domain("sign_scan needs step > 0 and t1 > t0".into()));
    }
    let n = ((t1 - t0) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (t0 + i as f64 * step).min(t1)).collect();
    let values = grid
        .par_iter()
        .map(|&t| xi_k0(k, t, ctx))
        .collect::<Result<Vec<f64>>>()?;
    let mut out = Vec::new();
    for i in 0..n {
        let (mut a, mut b) = (grid[i], grid[i + 1]);
        let (mut fa, fb) = (values[i], values[i + 1]);
        if fa == 0.0 || fa.signum() == fb.signum() {
            continue;
        }
        while b - a > 1e-3 {
            let m = 0.5 * (a + b);
            let fm = xi_k0(k, m, ctx)?;
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        out.push((a, b));
    }
    Ok(out)
}

/// Minimum of `Z_K(-u, -u/2 + it)` over a grid of `0 ≤ t ≤ t_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineScan {
    pub discriminant: i64,
    pub u: f64,
    pub t_max: f64,
    pub min_value: f64,
    pub at_t: f64,
    pub samples: usize,
}

/// Scans `Z_K(-u, -u/2 + it)` (real for real `t`) at step `0.05`.
pub fn critical_line_scan(k: &FieldDescriptor, u: f64, t_max: f64, ctx: &EvalContext) -> Result<LineScan> {
    if !(u > 0.0) || !(t_max > 0.0) {
        return Err(Error::Domain("critical_line_scan needs u > 0 and t_max > 0".into()));
    }
    let step = 0.05;
    let n = (t_max / step).ceil() as usize;
    let w = Complex64::new(-u, 0.0);
    let values = (0..=n)
        .into_par_iter()
        .map(|i| {
            let t = (i as f64 * step).min(t_max);
            Ok((t, z_k(k, w, Complex64::new(-u / 2.0, t), ctx)?.re))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let (at_t, min_value) = values
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one sample");
    Ok(LineScan {
        discriminant: k.discriminant,
        u,
        t_max,
        min_value,
        at_t,
        samples: n + 1,
    })
}
