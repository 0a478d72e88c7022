//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into the library: Γ is the Lanczos approximation,
//! `ζ(s, a)` is summed by Euler–Maclaurin, and lattice counts are brute force.

#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Γ(z)` by the Lanczos approximation with reflection for `Re z < ½`.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * z).sin() * gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// `Γ(x)` for real `x`.
pub fn gamma_real(x: f64) -> f64 {
    gamma(Complex64::new(x, 0.0)).re
}

/// `B_2, B_4, ..., B_30`.
const BERNOULLI: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Hurwitz zeta `ζ(s, a)` for `a > 0`, `s ≠ 1`, by Euler–Maclaurin.
pub fn hurwitz(s: Complex64, a: f64) -> Complex64 {
    let n = 10 + s.norm().ceil() as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += Complex64::new(k as f64 + a, 0.0).powc(-s);
    }
    let x = Complex64::new(n as f64 + a, 0.0);
    sum += x.powc(1.0 - s) / (s - 1.0) + 0.5 * x.powc(-s);
    // s(s+1)...(s+2k-2) / (2k)!
    let mut rising = s;
    let mut fact = 2.0;
    let mut xpow = x.powc(-s - 1.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = k + 1;
        sum += b / fact * rising * xpow;
        rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        xpow /= x * x;
    }
    sum
}

/// Riemann `ζ(s)`, through `ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)` when
/// `Re s < 0`.
pub fn zeta(s: Complex64) -> Complex64 {
    if s.re < 0.0 {
        let two = Complex64::new(2.0, 0.0);
        let pi = Complex64::new(PI, 0.0);
        return two.powc(s) * pi.powc(s - 1.0) * (PI * s / 2.0).sin() * gamma(1.0 - s) * hurwitz(1.0 - s, 1.0);
    }
    hurwitz(s, 1.0)
}

/// `L(s, χ₋₄) = 4^{-s}(ζ(s, ¼) - ζ(s, ¾))`.
pub fn l_chi4(s: Complex64) -> Complex64 {
    Complex64::new(4.0, 0.0).powc(-s) * (hurwitz(s, 0.25) - hurwitz(s, 0.75))
}

/// `ζ̂(s) = π^{-s/2} Γ(s/2) ζ(s)`.
pub fn completed_zeta(s: Complex64) -> Complex64 {
    Complex64::new(PI, 0.0).powc(-s / 2.0) * gamma(s / 2.0) * zeta(s)
}

/// `ξ(1, s) = s(s-1)/2 · ζ̂(s)`.
pub fn xi1(s: Complex64) -> Complex64 {
    s * (s - 1.0) / 2.0 * completed_zeta(s)
}

/// `Z(2, s) = 2π^{-s/2} Γ(s/2) ζ(s/2) L(s/2, χ₋₄)`, from `θ² = Σ r₂(n) qⁿ`.
pub fn z2(s: Complex64) -> Complex64 {
    2.0 * Complex64::new(PI, 0.0).powc(-s / 2.0) * gamma(s / 2.0) * zeta(s / 2.0) * l_chi4(s / 2.0)
}

/// `Z(4, s) = 4π^{-s/2} Γ(s/2)(1 - 4^{1-s/2}) ζ(s/2) ζ(s/2 - 1)`, from
/// `r₄(n) = 8σ(n) - 32σ(n/4)`.
pub fn z4(s: Complex64) -> Complex64 {
    let h = s / 2.0;
    4.0 * Complex64::new(PI, 0.0).powc(-h)
        * gamma(h)
        * (1.0 - Complex64::new(4.0, 0.0).powc(1.0 - h))
        * zeta(h)
        * zeta(h - 1.0)
}

/// Roots of a real function on `[a, b]` located by sign changes on a grid of
/// the given step and refined by bisection to `1e-10`.
pub fn real_roots<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, step: f64) -> Vec<f64> {
    let n = ((b - a) / step).ceil() as usize;
    let mut out = Vec::new();
    let mut x0 = a;
    let mut f0 = f(a);
    for i in 1..=n {
        let x1 = (a + i as f64 * step).min(b);
        let f1 = f(x1);
        if f0.signum() != f1.signum() {
            let (mut lo, mut hi, mut flo) = (x0, x1, f0);
            while hi - lo > 1e-10 {
                let m = 0.5 * (lo + hi);
                let fm = f(m);
                if fm.signum() == flo.signum() {
                    lo = m;
                    flo = fm;
                } else {
                    hi = m;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

/// Ordinates `0 < γ ≤ t_max` of the zeros of `ζ` on the critical line, from
/// sign changes of the real function `ζ̂(½ + it)`.
pub fn zeta_zero_ordinates(t_max: f64) -> Vec<f64> {
    real_roots(|t| completed_zeta(Complex64::new(0.5, t)).re, 1.0, t_max, 0.05)
}

/// Ordinates of the zeros of `L(s, χ₋₄)` on the critical line, from the real
/// function `(π/4)^{-(s+1)/2} Γ((s+1)/2) L(s, χ₋₄)` at `s = ½ + it`.
pub fn l_chi4_zero_ordinates(t_max: f64) -> Vec<f64> {
    real_roots(
        |t| {
            let s = Complex64::new(0.5, t);
            (Complex64::new(PI / 4.0, 0.0).powc(-(s + 1.0) / 2.0) * gamma((s + 1.0) / 2.0) * l_chi4(s)).re
        },
        1.0,
        t_max,
        0.05,
    )
}

/// `c_m(u)`, `0 ≤ m ≤ M`, the coefficients of `(Σ_n q^{n²})^u`.
///
/// Integer `u ≥ 0` uses repeated multiplication of the series; other `u`
/// compose `exp(u log θ)` with the standard power-series recurrences for
/// `log(1 + A)` and `exp(B)`.
pub fn theta_power_coeffs(u: f64, order: usize) -> Vec<f64> {
    let mut a = vec![0.0; order + 1];
    let mut n = 0usize;
    while n * n <= order {
        a[n * n] = if n == 0 { 1.0 } else { 2.0 };
        n += 1;
    }
    if u >= 0.0 && u.fract() == 0.0 {
        let mut out = vec![0.0; order + 1];
        out[0] = 1.0;
        for _ in 0..u as usize {
            let mut next = vec![0.0; order + 1];
            for (i, x) in out.iter().enumerate() {
                for (j, y) in a.iter().enumerate().take(order + 1 - i) {
                    next[i + j] += x * y;
                }
            }
            out = next;
        }
        return out;
    }
    // m L_m = m A_m - Σ_{k<m} k L_k A_{m-k}
    let mut l = vec![0.0; order + 1];
    for m in 1..=order {
        let mut acc = m as f64 * a[m];
        for k in 1..m {
            acc -= k as f64 * l[k] * a[m - k];
        }
        l[m] = acc / m as f64;
    }
    // m E_m = Σ_{k≤m} k u L_k E_{m-k}
    let mut e = vec![0.0; order + 1];
    e[0] = 1.0;
    for m in 1..=order {
        let mut acc = 0.0;
        for k in 1..=m {
            acc += k as f64 * u * l[k] * e[m - k];
        }
        e[m] = acc / m as f64;
    }
    e
}

/// `#{(m, n) ∈ Z² : am² + bmn + cn² = N}` by brute force.
pub fn lattice_count(form: (i64, i64, i64), big_n: i64) -> u32 {
    let (a, b, c) = form;
    let disc = (4 * a * c - b * b) as f64;
    let lim = ((4.0 * a.max(c) as f64 * big_n as f64) / disc).sqrt().ceil() as i64 + 2;
    let mut count = 0;
    for m in -lim..=lim {
        for n in -lim..=lim {
            if a * m * m + b * m * n + c * n * n == big_n {
                count += 1;
            }
        }
    }
    count
}

/// `θ(t) = Σ_{n∈Z} e^{-πn²t}` by direct summation.
pub fn theta_direct(t: f64) -> f64 {
    1.0 + 2.0 * (1..200).map(|n| (-PI * (n * n) as f64 * t).exp()).sum::<f64>()
}
