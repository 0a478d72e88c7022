//! Quadrature engines for complex-valued integrands of a real variable.
//!
//! Two rules are provided:
//!
//! - [`gauss_kronrod`]: globally adaptive 7/15-point Gauss–Kronrod panels on a
//!   finite interval, refined by bisecting the panel with the largest
//!   Kronrod–Gauss discrepancy.
//! - [`trapezoid`]: the step-halving trapezoidal rule on a truncated line for
//!   integrands that are analytic in a strip and decay at both ends, where the
//!   rule converges geometrically in `1/h`.
//!
//! Both report an error estimate and the `L1` mass `∫|f|`, which bounds the
//! rounding error of the sum and is used to compare contour choices.

use crate::context::{Error, Result};
use num_complex::Complex64;
use std::collections::BinaryHeap;

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    /// Approximate integral.
    pub value: Complex64,
    /// Estimated absolute error.
    pub error: f64,
    /// Approximate `∫|f|` over the same range.
    pub l1: f64,
    /// Number of integrand evaluations.
    pub evals: usize,
}

impl QuadResult {
    /// Sum of two results over adjacent ranges.
    pub fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            error: self.error + other.error,
            l1: self.l1 + other.l1,
            evals: self.evals + other.evals,
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    l1: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut l1 = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = r * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        kron += (f1 + f2) * WGK[j];
        l1 += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kron * r;
    let error = ((kron - gauss) * r).norm();
    Panel {
        a,
        b,
        value,
        error,
        l1: l1 * r.abs(),
    }
}

/// Adaptive Gauss–Kronrod quadrature of `f` over `[a, b]`.
///
/// Stops when the summed panel error is below
/// `max(abs_tol, rel_tol·|I|, 64·ε·∫|f|)`. Returns [`Error::Accuracy`] when
/// `max_panels` is exhausted first.
pub fn gauss_kronrod<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    let (res, ok) = gauss_kronrod_raw(&f, a, b, abs_tol, rel_tol, max_panels, 1);
    if ok {
        Ok(res)
    } else {
        Err(Error::Accuracy {
            estimate: res.error,
            target: abs_tol.max(rel_tol * res.value.norm()),
        })
    }
}

/// Like [`gauss_kronrod`] but starting from `initial` equal panels and
/// returning the best estimate together with a convergence flag.
pub fn gauss_kronrod_raw<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
    initial: usize,
) -> (QuadResult, bool) {
    let n0 = initial.max(1);
    let mut heap = BinaryHeap::with_capacity(2 * n0 + 16);
    let width = (b - a) / n0 as f64;
    for k in 0..n0 {
        let lo = a + width * k as f64;
        let hi = if k + 1 == n0 { b } else { lo + width };
        heap.push(gk15(f, lo, hi));
    }
    let mut evals = 15 * n0;
    loop {
        let (value, error, l1) = heap.iter().fold(
            (Complex64::new(0.0, 0.0), 0.0, 0.0),
            |(v, e, l), p| (v + p.value, e + p.error, l + p.l1),
        );
        let target = abs_tol
            .max(rel_tol * value.norm())
            .max(64.0 * f64::EPSILON * l1);
        let done = error <= target;
        if done || heap.len() >= max_panels {
            return (
                QuadResult {
                    value,
                    error,
                    l1,
                    evals,
                },
                done,
            );
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            let (value, error, l1) = heap.iter().fold(
                (Complex64::new(0.0, 0.0), 0.0, 0.0),
                |(v, e, l), p| (v + p.value, e + p.error, l + p.l1),
            );
            return (
                QuadResult {
                    value,
                    error,
                    l1,
                    evals,
                },
                false,
            );
        }
        heap.push(gk15(f, worst.a, mid));
        heap.push(gk15(f, mid, worst.b));
        evals += 30;
    }
}

/// Step-halving trapezoidal rule over `[a, b]` for an integrand that is
/// negligible at both ends and analytic in a horizontal strip.
///
/// Starts from step `h0` and halves until the estimated error of the finest
/// sum is below `max(abs_tol, rel_tol·|I|)` or `max_levels` halvings have been
/// made. The error of the finest level is estimated as `d²/∫|f|` from the
/// difference `d` of the last two levels (geometric convergence squares the
/// relative error per halving), floored at the rounding level `32·ε·∫|f|`.
pub fn trapezoid<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    h0: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_levels: usize,
) -> QuadResult {
    let n0 = (((b - a) / h0).ceil() as usize).max(2);
    let mut h = (b - a) / n0 as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for k in 0..=n0 {
        let w = if k == 0 || k == n0 { 0.5 } else { 1.0 };
        let v = f(a + h * k as f64);
        sum += v * w;
        abs_sum += v.norm() * w;
    }
    let mut evals = n0 + 1;
    let mut n = n0;
    let mut prev = sum * h;
    let mut error = f64::INFINITY;
    for _ in 0..max_levels {
        let mut mid = Complex64::new(0.0, 0.0);
        let mut mid_abs = 0.0;
        for k in 0..n {
            let v = f(a + h * (k as f64 + 0.5));
            mid += v;
            mid_abs += v.norm();
        }
        evals += n;
        sum += mid;
        abs_sum += mid_abs;
        n *= 2;
        h *= 0.5;
        let cur = sum * h;
        let l1 = abs_sum * h;
        let d = (cur - prev).norm();
        let floor = 32.0 * f64::EPSILON * l1;
        error = if l1 > 0.0 { (d * d / l1).max(floor) } else { d };
        prev = cur;
        if error <= abs_tol.max(rel_tol * cur.norm()) || d <= floor {
            break;
        }
    }
    QuadResult {
        value: prev,
        error,
        l1: abs_sum * h,
        evals,
    }
}

/// [`trapezoid`] with the samples of each level evaluated in parallel.
pub fn trapezoid_parallel<F: Fn(f64) -> Complex64 + Sync>(
    f: F,
    a: f64,
    b: f64,
    h0: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_levels: usize,
) -> QuadResult {
    use rayon::prelude::*;
    let n0 = (((b - a) / h0).ceil() as usize).max(2);
    let mut h = (b - a) / n0 as f64;
    let first: Vec<Complex64> = (0..=n0).into_par_iter().map(|k| f(a + h * k as f64)).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for (k, v) in first.iter().enumerate() {
        let w = if k == 0 || k == n0 { 0.5 } else { 1.0 };
        sum += v * w;
        abs_sum += v.norm() * w;
    }
    let mut evals = n0 + 1;
    let mut n = n0;
    let mut prev = sum * h;
    let mut error = f64::INFINITY;
    for _ in 0..max_levels {
        let hh = h;
        let mids: Vec<Complex64> = (0..n)
            .into_par_iter()
            .map(|k| f(a + hh * (k as f64 + 0.5)))
            .collect();
        evals += n;
        for v in &mids {
            sum += v;
            abs_sum += v.norm();
        }
        n *= 2;
        h *= 0.5;
        let cur = sum * h;
        let l1 = abs_sum * h;
        let d = (cur - prev).norm();
        let floor = 32.0 * f64::EPSILON * l1;
        error = if l1 > 0.0 { (d * d / l1).max(floor) } else { d };
        prev = cur;
        if error <= abs_tol.max(rel_tol * cur.norm()) || d <= floor {
            break;
        }
    }
    QuadResult {
        value: prev,
        error,
        l1: abs_sum * h,
        evals,
    }
}
