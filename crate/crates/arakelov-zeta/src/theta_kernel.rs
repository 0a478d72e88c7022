//! Theta function kernels.
//!
//! `θ(t) = Σ_{n∈Z} e^{-πn²t}` and everything built directly on it: powers and
//! logarithmic derivatives, the Jacobi `ϑ₃(z, q)` series and its triple
//! product, the characteristic-function kernel `f(r) = θ(1)e^{r/2}/θ(e^{-2r})`,
//! the Fourier–Laplace kernel `γ(w, z) = (∂²_z + w∂_z)h(w, z)`, the Taylor
//! coefficients `R_k` of `log θ` at `t = 1` (numerically and exactly in
//! `Q[ψ₂]`), and norm-form theta series of imaginary quadratic fields.
//!
//! The real-argument routines are generic over [`num_traits::Float`]; the
//! complex-argument kernels run in binary64.

use crate::context::{Error, EvalContext, Result};
use crate::numfield::FieldDescriptor;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

/// A theta value together with a bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue<T> {
    /// The truncated sum.
    pub value: T,
    /// Upper bound on the absolute truncation error.
    pub truncation_error_bound: T,
}

fn cast<T: FromPrimitive>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant representable in the scalar type")
}

/// `θ(t) = 1 + 2Σ_{n≥1} e^{-πn²t}` for real `t > 0`.
///
/// The number of terms `N` is the smallest with
/// `2e^{-πN²t}/(1 - e^{-π(2N+1)t}) < tol`. For `t < 1` the sum is taken at
/// `1/t` and transferred back with `θ(t) = θ(1/t)/√t`.
pub fn theta<T: Float + FromPrimitive>(t: T, ctx: &EvalContext) -> Result<ThetaValue<T>> {
    if !(t > T::zero()) {
        return Err(Error::Domain("theta requires t > 0".into()));
    }
    if t < T::one() {
        let inv = theta(T::one() / t, ctx)?;
        let s = t.sqrt();
        return Ok(ThetaValue {
            value: inv.value / s,
            truncation_error_bound: inv.truncation_error_bound / s,
        });
    }
    let pi: T = cast(PI);
    let two: T = cast(2.0);
    let tol: T = cast(ctx.tol);
    let mut sum = T::zero();
    let mut n = 1usize;
    loop {
        let nf: T = cast(n as f64);
        let bound = two * (-pi * nf * nf * t).exp()
            / (T::one() - (-pi * (two * nf + T::one()) * t).exp());
        if bound < tol {
            // terms 1..n-1 are summed; the tail starts at n
            return Ok(ThetaValue {
                value: T::one() + two * sum,
                truncation_error_bound: bound,
            });
        }
        if n > ctx.max_terms {
            return Err(Error::Truncation {
                needed: n,
                cap: ctx.max_terms,
            });
        }
        sum = sum + (-pi * nf * nf * t).exp();
        n += 1;
    }
}

/// `θ(t)` for complex `t` with `Re t > 0`.
pub fn theta_complex(t: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    if !(t.re > 0.0) {
        return Err(Error::Domain("theta requires Re t > 0".into()));
    }
    if t.norm() < 1.0 {
        let inv = theta_complex(t.inv(), ctx)?;
        return Ok(inv / t.sqrt());
    }
    let q = (-PI * t).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut n = 1usize;
    loop {
        let term = (-PI * (n * n) as f64 * t).exp();
        sum += term;
        let bound = 2.0 * term.norm() * q.norm().powi(2 * n as i32 + 1)
            / (1.0 - q.norm().powi(2 * n as i32 + 3)).max(1e-300);
        if bound < ctx.tol * 1e-3 && term.norm() < ctx.tol {
            return Ok(Complex64::new(1.0, 0.0) + 2.0 * sum);
        }
        n += 1;
        if n > ctx.max_terms {
            return Err(Error::Truncation {
                needed: n,
                cap: ctx.max_terms,
            });
        }
    }
}

/// Jacobi's `ϑ₃(z, q) = Σ_{n∈Z} e^{2πinz} q^{n²}` for `|q| < 1`.
pub fn jacobi_theta3(z: Complex64, q: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    let aq = q.norm();
    if !(aq < 1.0) {
        return Err(Error::Domain("jacobi_theta3 requires |q| < 1".into()));
    }
    if aq == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let a = (Complex64::new(0.0, 2.0 * PI) * z).exp();
    let ainv = a.inv();
    let grow = (2.0 * PI * z.im.abs()).exp();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut an = Complex64::new(1.0, 0.0);
    let mut ainvn = Complex64::new(1.0, 0.0);
    for n in 1..=ctx.max_terms {
        an *= a;
        ainvn *= ainv;
        let qn2 = q.powu((n * n) as u32);
        sum += qn2 * (an + ainvn);
        let nf = n as f64;
        let bound = 2.0 * aq.powf(nf * nf) * grow.powf(nf);
        let ratio = aq.powf(2.0 * nf + 1.0) * grow;
        if ratio < 0.5 && 2.0 * bound * ratio < ctx.tol * 1e-3 {
            return Ok(sum);
        }
    }
    Err(Error::Truncation {
        needed: ctx.max_terms + 1,
        cap: ctx.max_terms,
    })
}

/// Product side of the Jacobi triple product,
/// `Π_{n≥1}(1 - q^{2n})(1 + e^{2πiz}q^{2n-1})(1 + e^{-2πiz}q^{2n-1})`.
pub fn triple_product(z: Complex64, q: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    let aq = q.norm();
    if !(aq < 1.0) {
        return Err(Error::Domain("triple_product requires |q| < 1".into()));
    }
    let a = (Complex64::new(0.0, 2.0 * PI) * z).exp();
    let ainv = a.inv();
    let big = a.norm().max(ainv.norm());
    let q2 = q * q;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut q_odd = q;
    let mut q_even = q2;
    for n in 1..=ctx.max_terms {
        prod *= (Complex64::new(1.0, 0.0) - q_even)
            * (Complex64::new(1.0, 0.0) + a * q_odd)
            * (Complex64::new(1.0, 0.0) + ainv * q_odd);
        let next = aq.powf(2.0 * n as f64 + 1.0) * big;
        if next < ctx.tol * 1e-3 && aq < 1.0 {
            return Ok(prod);
        }
        q_odd *= q2;
        q_even *= q2;
    }
    Err(Error::Truncation {
        needed: ctx.max_terms + 1,
        cap: ctx.max_terms,
    })
}

/// Characteristic-function kernel `f(r) = θ(1)e^{r/2}/θ(e^{-2r})`.
pub fn f_char<T: Float + FromPrimitive>(r: T, ctx: &EvalContext) -> Result<T> {
    let two: T = cast(2.0);
    let half: T = cast(0.5);
    let th1 = theta(T::one(), ctx)?.value;
    // log form avoids overflow of e^{r/2} for large |r|
    let lt = theta((-two * r).exp(), ctx)?.value.ln();
    Ok((th1.ln() + half * r - lt).exp())
}

/// Symmetric form `θ(1)/√(θ(e^{-2r})θ(e^{2r}))` of [`f_char`].
pub fn f_char_symmetric<T: Float + FromPrimitive>(r: T, ctx: &EvalContext) -> Result<T> {
    let two: T = cast(2.0);
    let half: T = cast(0.5);
    let th1 = theta(T::one(), ctx)?.value;
    let a = theta((-two * r).exp(), ctx)?.value.ln();
    let b = theta((two * r).exp(), ctx)?.value.ln();
    Ok((th1.ln() - half * (a + b)).exp())
}

/// `g(r) = d²/dr² log f(r)`, the negative Fourier transform of the canonical
/// measure; equals `-L''(-r)` with `L(x) = log θ(e^{2x})`.
pub fn g_kernel(r: f64, ctx: &EvalContext) -> Result<f64> {
    // L(-x) = x + L(x), so L'' is even
    let jet = log_theta_jet(Complex64::new(r.abs(), 0.0), ctx)?;
    Ok(-jet.d2.re)
}

static LOG_THETA_COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
const LOG_THETA_TABLE: usize = 4096;

/// `σ_{-1}(n) = Σ_{d|n} 1/d` for `0 ≤ n ≤ m`, index 0 unused.
fn sigma_minus_one_table(m: usize) -> Vec<f64> {
    let mut sigma = vec![0.0f64; m + 1];
    for d in 1..=m {
        let mut k = d;
        while k <= m {
            sigma[k] += d as f64;
            k += d;
        }
    }
    (0..=m)
        .map(|n| if n == 0 { 0.0 } else { sigma[n] / n as f64 })
        .collect()
}

/// Coefficients `c'_m` of `log θ = Σ_{m≥1} c'_m e^{-πmt}` as binary64, index
/// `m` (index 0 is zero), via `c'_m = 2σ_{-1}(m) - 5σ_{-1}(m/2) + 2σ_{-1}(m/4)`.
pub fn log_theta_coeffs() -> &'static [f64] {
    LOG_THETA_COEFFS.get_or_init(|| {
        let s = sigma_minus_one_table(LOG_THETA_TABLE);
        (0..=LOG_THETA_TABLE)
            .map(|m| {
                if m == 0 {
                    return 0.0;
                }
                let mut c = 2.0 * s[m];
                if m % 2 == 0 {
                    c -= 5.0 * s[m / 2];
                }
                if m % 4 == 0 {
                    c += 2.0 * s[m / 4];
                }
                c
            })
            .collect()
    })
}

/// `L(z) = log θ(e^{2z})` and its first two `z`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogThetaJet {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

fn check_strip(z: Complex64) -> Result<()> {
    if !(z.im.abs() < PI / 4.0) {
        return Err(Error::Domain(format!(
            "|Im z| = {} must be below π/4",
            z.im.abs()
        )));
    }
    Ok(())
}

/// `L(z) = log θ(e^{2z})` with derivatives, for `Re z ≥ 0`, `|Im z| < π/4`.
///
/// Summed from the `q`-expansion `Σ c'_m q^m`, `q = e^{-πe^{2z}}`, which
/// fixes the branch continuously from the real axis.
pub fn log_theta_jet(z: Complex64, ctx: &EvalContext) -> Result<LogThetaJet> {
    check_strip(z)?;
    if z.re < 0.0 {
        return Err(Error::Domain("log_theta_jet requires Re z >= 0".into()));
    }
    let t = (2.0 * z).exp();
    let q = (-PI * t).exp();
    let aq = q.norm();
    let coeffs = log_theta_coeffs();
    let at = t.norm();
    let mut l0 = Complex64::new(0.0, 0.0);
    let mut s1 = Complex64::new(0.0, 0.0);
    let mut s2 = Complex64::new(0.0, 0.0);
    let mut qm = Complex64::new(1.0, 0.0);
    let mut first = 0.0;
    let cap = ctx.max_terms.min(LOG_THETA_TABLE);
    let mut m = 1usize;
    loop {
        qm *= q;
        let c = coeffs[m];
        let mf = m as f64;
        l0 += qm * c;
        s1 += qm * (c * mf);
        s2 += qm * (c * mf * mf);
        let mag = aq.powi(m as i32) * (1.0 + 4.0 * PI * PI * mf * mf * at * at);
        if m == 1 {
            first = mag;
        }
        let tail = 10.0 * mag * aq / (1.0 - aq).max(1e-300);
        if m >= 2 && (tail < 1e-18 * first || mag == 0.0) {
            break;
        }
        m += 1;
        if m > cap {
            return Err(Error::Truncation {
                needed: m,
                cap,
            });
        }
    }
    let d1 = -2.0 * PI * t * s1;
    let d2 = 4.0 * PI * PI * t * t * s2 - 4.0 * PI * t * s1;
    Ok(LogThetaJet { value: l0, d1, d2 })
}

/// Derivatives `L^{(j)}(z)`, `j = 0..=k_max`, of `L(z) = log θ(e^{2z})` for
/// `Re z ≥ 0`.
///
/// Uses `d^k/dz^k e^{-X} = P_k(X)e^{-X}` with `X = πm e^{2z}`,
/// `P_0 = 1`, `P_{k+1}(X) = 2X(P_k'(X) - P_k(X))`.
pub fn log_theta_derivatives(z: Complex64, k_max: usize, ctx: &EvalContext) -> Result<Vec<Complex64>> {
    check_strip(z)?;
    if z.re < 0.0 {
        return Err(Error::Domain("log_theta_derivatives requires Re z >= 0".into()));
    }
    // polynomial coefficients of P_k in X, integers
    let mut polys: Vec<Vec<f64>> = vec![vec![1.0]];
    for k in 0..k_max {
        let p = &polys[k];
        let mut next = vec![0.0; p.len() + 1];
        for (j, &c) in p.iter().enumerate() {
            if j >= 1 {
                next[j] += 2.0 * c * j as f64;
            }
            next[j + 1] -= 2.0 * c;
        }
        polys.push(next);
    }
    let t = (2.0 * z).exp();
    let q = (-PI * t).exp();
    let aq = q.norm();
    let coeffs = log_theta_coeffs();
    let cap = ctx.max_terms.min(LOG_THETA_TABLE);
    let mut out = vec![Complex64::new(0.0, 0.0); k_max + 1];
    let mut qm = Complex64::new(1.0, 0.0);
    let mut first = 0.0;
    let mut m = 1usize;
    loop {
        qm *= q;
        let x = PI * m as f64 * t;
        let ax = x.norm();
        for (k, p) in polys.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &c in p.iter().rev() {
                acc = acc * x + c;
            }
            out[k] += qm * coeffs[m] * acc;
        }
        let mag = aq.powi(m as i32) * (1.0 + ax).powi(k_max as i32) * 2f64.powi(k_max as i32);
        if m == 1 {
            first = mag;
        }
        if m >= 2 && (10.0 * mag * aq / (1.0 - aq).max(1e-300) < 1e-18 * first || mag == 0.0) {
            break;
        }
        m += 1;
        if m > cap {
            return Err(Error::Truncation { needed: m, cap });
        }
    }
    Ok(out)
}

/// The Fourier–Laplace kernel `γ(w, z) = (∂²_z + w∂_z)h(w, z)` with
/// `h = (θ(e^{2z})^w - 1)/w` (and `h = log θ(e^{2z})` at `w = 0`).
///
/// Written as `γ = e^{wL}(L'' + wL'² + wL')`, `L = log θ(e^{2z})`, which is
/// continuous in `w` through `w = 0`. For `Re z < 0` the symmetry
/// `γ(w, z) = e^{-wz}γ(w, -z)` is applied.
pub fn gamma_kernel(w: Complex64, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    check_strip(z)?;
    if z.re < 0.0 {
        return Ok((-w * z).exp() * gamma_kernel(w, -z, ctx)?);
    }
    let j = log_theta_jet(z, ctx)?;
    Ok((w * j.value).exp() * (j.d2 + w * j.d1 * j.d1 + w * j.d1))
}

/// `R_k = d^k/dt^k log θ(t)` at `t = 1`, summed termwise from the
/// `q`-expansion `log θ(t) = Σ c'_m e^{-πmt}`.
pub fn log_theta_deriv<T: Float + FromPrimitive>(k: usize, ctx: &EvalContext) -> Result<T> {
    if k == 0 {
        return Err(Error::Domain("log_theta_deriv requires k >= 1".into()));
    }
    let coeffs = log_theta_coeffs();
    let pi: T = cast(PI);
    let mut sum = T::zero();
    let mut peak = T::zero();
    let sign: T = if k % 2 == 1 { -T::one() } else { T::one() };
    for m in 1..LOG_THETA_TABLE.min(ctx.max_terms) {
        let mf: T = cast(m as f64);
        // (πm)^k e^{-πm} in log form
        let mag = (cast::<T>(k as f64) * (pi * mf).ln() - pi * mf).exp();
        let c: T = cast(coeffs[m]);
        sum = sum + c * mag;
        if mag > peak {
            peak = mag;
        }
        if m as f64 > k as f64 / PI + 2.0 && mag < cast::<T>(ctx.tol * 1e-3) * peak.max(T::one()) {
            return Ok(sign * sum);
        }
    }
    Err(Error::Truncation {
        needed: LOG_THETA_TABLE,
        cap: ctx.max_terms,
    })
}

/// `ψ₂ = πθ(1)⁴ = π²/Γ(3/4)⁴`.
pub fn psi2(ctx: &EvalContext) -> Result<f64> {
    Ok(PI * theta(1.0f64, ctx)?.value.powi(4))
}

/// Exact polynomial in `ψ₂` with rational coefficients (`coeffs[k]` multiplies
/// `ψ₂^k`). Trailing zero coefficients are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PsiPolynomial {
    pub coeffs: Vec<BigRational>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl PsiPolynomial {
    /// Builds from rational coefficients, lowest degree first.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// Builds from `(numerator, denominator)` pairs, lowest degree first.
    pub fn from_fracs(fracs: &[(i64, i64)]) -> Self {
        Self::new(fracs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// A constant polynomial.
    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `ψ₂^k`.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// True when only even powers of `ψ₂` occur.
    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Multiplication by a rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Numerical value at a given `ψ₂`.
    pub fn eval(&self, psi: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * psi + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl serde::Serialize for PsiPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl fmt::Display for PsiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                1 => write!(f, "{}·ψ₂", a)?,
                _ => write!(f, "{}·ψ₂^{}", a, k)?,
            }
        }
        Ok(())
    }
}

type Monomial = [u32; 3];
type XyzPoly = BTreeMap<Monomial, BigRational>;

fn xyz_add_term(p: &mut XyzPoly, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(m).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

fn xyz_mul(a: &XyzPoly, b: &XyzPoly) -> XyzPoly {
    let mut out = XyzPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            xyz_add_term(
                &mut out,
                [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]],
                ca * cb,
            );
        }
    }
    out
}

/// Applies `d/dt` with `x' = x(z - y)`, `y' = -y²/2 + x²/24 + z²/8`,
/// `z' = x²/6 - yz - z²/2`.
fn xyz_derive(p: &XyzPoly) -> XyzPoly {
    let mut dx = XyzPoly::new();
    xyz_add_term(&mut dx, [1, 0, 1], BigRational::one());
    xyz_add_term(&mut dx, [1, 1, 0], -BigRational::one());
    let mut dy = XyzPoly::new();
    xyz_add_term(&mut dy, [0, 2, 0], rat(-1, 2));
    xyz_add_term(&mut dy, [2, 0, 0], rat(1, 24));
    xyz_add_term(&mut dy, [0, 0, 2], rat(1, 8));
    let mut dz = XyzPoly::new();
    xyz_add_term(&mut dz, [2, 0, 0], rat(1, 6));
    xyz_add_term(&mut dz, [0, 1, 1], -BigRational::one());
    xyz_add_term(&mut dz, [0, 0, 2], rat(-1, 2));
    let rules = [dx, dy, dz];
    let mut out = XyzPoly::new();
    for (m, c) in p {
        for v in 0..3 {
            if m[v] == 0 {
                continue;
            }
            let mut reduced = *m;
            reduced[v] -= 1;
            let mut mono = XyzPoly::new();
            mono.insert(reduced, c * BigRational::from_integer(BigInt::from(m[v])));
            for (mm, cc) in xyz_mul(&mono, &rules[v]) {
                xyz_add_term(&mut out, mm, cc);
            }
        }
    }
    out
}

/// Exact `R_k ∈ Q[ψ₂]`: `d^{k-1}/dt^{k-1}` of `(z - y)/4` in `Q[x, y, z]`
/// evaluated at `(x, y, z) = (ψ₂, 1, 0)`.
pub fn r_symbolic(k: usize) -> Result<PsiPolynomial> {
    if k == 0 {
        return Err(Error::Domain("R_symbolic requires k >= 1".into()));
    }
    let mut p = XyzPoly::new();
    xyz_add_term(&mut p, [0, 0, 1], rat(1, 4));
    xyz_add_term(&mut p, [0, 1, 0], rat(-1, 4));
    for _ in 1..k {
        p = xyz_derive(&p);
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    for (m, c) in p {
        if m[2] != 0 {
            continue;
        }
        let deg = m[0] as usize;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigRational::zero());
        }
        coeffs[deg] += c;
    }
    Ok(PsiPolynomial::new(coeffs))
}

/// Norm-form theta `Θ_K(t) = Σ_{α∈O_K} exp(-2πN(α)t/√|Δ_K|)` for real `t > 0`.
///
/// Normalized so that `Θ_K(1/t) = tΘ_K(t)`; for `t < 1` the sum is taken at
/// `1/t` and transferred back.
pub fn norm_form_theta(k: &FieldDescriptor, t: f64, ctx: &EvalContext) -> Result<ThetaValue<f64>> {
    if !(t > 0.0) {
        return Err(Error::Domain("norm_form_theta requires t > 0".into()));
    }
    if t < 1.0 {
        let v = norm_form_theta(k, 1.0 / t, ctx)?;
        return Ok(ThetaValue {
            value: v.value / t,
            truncation_error_bound: v.truncation_error_bound / t,
        });
    }
    let alpha = 2.0 * PI * t / k.sqrt_abs_disc;
    let bound = k.norm_bound(alpha, ctx.tol * 1e-2)?;
    let reps = k.representation_counts();
    let mut sum = 0.0;
    for n in (0..=bound).rev() {
        if reps[n] != 0 {
            sum += reps[n] as f64 * (-alpha * n as f64).exp();
        }
    }
    Ok(ThetaValue {
        value: sum,
        truncation_error_bound: k.tail_bound(alpha, bound),
    })
}
