//! The probability semigroup carried by `Z(-u, ·)`.
//!
//! For `u > 0` and `|v| < u` the function
//! `ρ_{u,v}(x) = (1/2π) θ(1)^u Z(-u, -(u+v)/2 + ix)` is a (complex, for
//! `v ≠ 0`) density of total mass one with characteristic function
//! `f(r)^u e^{vr/2}`, `f(r) = θ(1)e^{r/2}/θ(e^{-2r})`, and
//! `ρ_{u₁,v₁} * ρ_{u₂,v₂} = ρ_{u₁+u₂,v₁+v₂}`. For `v = 0` the density is even
//! and positive. The canonical measure of the family has density
//! `M(x) = (1/π)ξ(0, ix)`.
//!
//! This module evaluates the densities on grids, checks the semigroup and
//! characteristic-function identities, produces exact cumulants and moments
//! in `Q[ψ₂][u, v]`, and scans the critical line for positivity.

use crate::context::{Error, EvalContext, Result};
use crate::quad::trapezoid_parallel;
use crate::qseries::QSeries;
use crate::theta_kernel::{f_char, psi2, r_symbolic, theta, PsiPolynomial};
use crate::zeta2::{completed_zeta, xi, xi0_closed, z};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;

pub use crate::theta_kernel::g_kernel;

fn check_cone(u: f64, v: f64) -> Result<()> {
    if !(u > 0.0 && v.abs() < u) {
        return Err(Error::Domain(format!(
            "(u, v) = ({u}, {v}) is outside the cone u > 0, |v| < u"
        )));
    }
    Ok(())
}

/// `ρ_{u,v}(x) = (1/2π) θ(1)^u Z(-u, -(u+v)/2 + ix)`.
pub fn density(u: f64, v: f64, x: f64, ctx: &EvalContext) -> Result<Complex64> {
    check_cone(u, v)?;
    let th = theta(1.0f64, ctx)?.value;
    let s = Complex64::new(-(u + v) / 2.0, x);
    let zv = z(Complex64::new(-u, 0.0), s, ctx)?.value;
    Ok(th.powf(u) * zv / (2.0 * PI))
}

/// Samples of `ρ_{u,v}` on the symmetric grid `x_k = k·h`, `|k| ≤ n`.
#[derive(Debug, Clone, Serialize)]
pub struct DensityGrid {
    pub u: f64,
    pub v: f64,
    pub spacing: f64,
    /// `(x, Re ρ, Im ρ)` for increasing `x`.
    pub samples: Vec<(f64, f64, f64)>,
}

impl DensityGrid {
    /// Number of samples on each side of the origin.
    pub fn half_width(&self) -> usize {
        self.samples.len() / 2
    }

    /// Value at grid index `k` (`-n ≤ k ≤ n`); zero outside.
    pub fn at(&self, k: i64) -> Complex64 {
        let idx = k + self.half_width() as i64;
        if idx < 0 || idx as usize >= self.samples.len() {
            return Complex64::new(0.0, 0.0);
        }
        let (_, re, im) = self.samples[idx as usize];
        Complex64::new(re, im)
    }

    /// Trapezoidal `∫ g(x) ρ(x) dx` over the grid.
    pub fn integrate<G: Fn(f64) -> Complex64>(&self, g: G) -> Complex64 {
        let n = self.samples.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &(x, re, im)) in self.samples.iter().enumerate() {
            let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
            acc += w * g(x) * Complex64::new(re, im);
        }
        acc * self.spacing
    }

    /// Total mass `∫ρ`.
    pub fn mass(&self) -> Complex64 {
        self.integrate(|_| Complex64::new(1.0, 0.0))
    }

    /// Characteristic function `∫ρ(x)e^{ixr}dx`.
    pub fn char_function(&self, r: f64) -> Complex64 {
        self.integrate(|x| Complex64::new(0.0, x * r).exp())
    }

    /// Moment `∫x^k ρ(x)dx`.
    pub fn moment(&self, k: u32) -> Complex64 {
        self.integrate(|x| Complex64::new(x.powi(k as i32), 0.0))
    }
}

/// Default grid for `(u, v)`: extent `40·max(1, √u)` and spacing
/// `min(0.05·min(1, √u), (u - |v|)/10)`.
///
/// `ρ_{u,v}` is analytic in the strip `|Im x| < (u - |v|)/2` bounded by the
/// poles of `Z(-u, ·)` at `0` and `-u`, so the trapezoidal error is about
/// `e^{-π(u - |v|)/h}`; the second bound keeps it near `10⁻¹³`.
pub fn default_grid(u: f64, v: f64) -> (f64, f64) {
    let strip = (u - v.abs()).max(0.0);
    (40.0 * u.sqrt().max(1.0), (0.05 * u.sqrt().min(1.0)).min(strip / 10.0))
}

/// Samples `ρ_{u,v}` on `x = k·h`, `|x| ≤ extent`, using `ρ(-x) = conj ρ(x)`.
pub fn density_grid_with(u: f64, v: f64, extent: f64, spacing: f64, ctx: &EvalContext) -> Result<DensityGrid> {
    check_cone(u, v)?;
    if !(spacing > 0.0 && extent > 0.0) {
        return Err(Error::Domain("grid extent and spacing must be positive".into()));
    }
    let n = (extent / spacing).round() as usize;
    let half: Vec<Result<Complex64>> = (0..=n)
        .into_par_iter()
        .map(|k| density(u, v, k as f64 * spacing, ctx))
        .collect();
    let half = half.into_iter().collect::<Result<Vec<_>>>()?;
    let mut samples = Vec::with_capacity(2 * n + 1);
    for k in (1..=n).rev() {
        let c = half[k].conj();
        samples.push((-(k as f64) * spacing, c.re, c.im));
    }
    for (k, c) in half.iter().enumerate() {
        samples.push((k as f64 * spacing, c.re, c.im));
    }
    Ok(DensityGrid {
        u,
        v,
        spacing,
        samples,
    })
}

/// [`density_grid_with`] on the default grid.
pub fn density_grid(u: f64, v: f64, ctx: &EvalContext) -> Result<DensityGrid> {
    let (e, h) = default_grid(u, v);
    density_grid_with(u, v, e, h, ctx)
}

/// `|∫ρ_{u,v}(x)e^{ixr}dx - f(r)^u e^{vr/2}|` on the default grid.
pub fn char_function_check(u: f64, v: f64, r: f64, ctx: &EvalContext) -> Result<f64> {
    let grid = density_grid(u, v, ctx)?;
    let expected = f_char(r, ctx)?.powf(u) * (v * r / 2.0).exp();
    Ok((grid.char_function(r) - expected).norm())
}

/// `|(ρ_{u₁,v₁} * ρ_{u₂,v₂})(x) - ρ_{u₁+u₂,v₁+v₂}(x)|` by grid convolution.
///
/// Both factors are sampled on a common grid whose spacing divides `x`
/// (`x` is rounded to the nearest grid point).
pub fn convolution_check(u1: f64, v1: f64, u2: f64, v2: f64, x: f64, ctx: &EvalContext) -> Result<f64> {
    check_cone(u1, v1)?;
    check_cone(u2, v2)?;
    let (e1, h1) = default_grid(u1, v1);
    let (e2, h2) = default_grid(u2, v2);
    let h = h1.min(h2);
    let k = (x / h).round() as i64;
    let extent = e1.max(e2) + (k.unsigned_abs() as f64) * h;
    let g1 = density_grid_with(u1, v1, extent, h, ctx)?;
    let g2 = density_grid_with(u2, v2, extent, h, ctx)?;
    let n = g1.half_width() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in -n..=n {
        acc += g1.at(j) * g2.at(k - j);
    }
    let conv = acc * h;
    let direct = density(u1 + u2, v1 + v2, k as f64 * h, ctx)?;
    Ok((conv - direct).norm())
}

/// Both evaluations of the canonical density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalDensity {
    /// `(1/8π) x² |1 - 2^{1+ix/2}|² |ζ̂(ix/2)|²` (its limit `1/2π` at `x = 0`).
    pub closed_form: f64,
    /// `(1/π) ξ(0, ix)`.
    pub via_xi: f64,
}

/// Canonical density `M(x)` by the closed form and by `ξ(0, ix)`.
pub fn canonical_density(x: f64, ctx: &EvalContext) -> Result<CanonicalDensity> {
    let via_xi = xi(Complex64::new(0.0, 0.0), Complex64::new(0.0, x), ctx)?.re / PI;
    let closed_form = if x == 0.0 {
        xi0_closed(Complex64::new(0.0, 0.0), ctx)?.re / PI
    } else {
        let two = Complex64::new(2.0, 0.0);
        let f = Complex64::new(1.0, 0.0) - two.powc(Complex64::new(1.0, x / 2.0));
        let zh = completed_zeta(Complex64::new(0.0, x / 2.0), ctx)?;
        x * x * f.norm_sqr() * zh.norm_sqr() / (8.0 * PI)
    };
    Ok(CanonicalDensity {
        closed_form,
        via_xi,
    })
}

/// `∫M(x)dx = (1/π)∫ξ(0, ix)dx` by quadrature, with its closed form
/// `ψ₂²/8 - 1/2`.
pub fn canonical_mass(ctx: &EvalContext) -> Result<(f64, f64)> {
    let f = feller_mean_integral(Complex64::new(0.0, 0.0), ctx)?;
    Ok((2.0 * f.quadrature.re, 2.0 * f.closed_form.re))
}

/// Both sides of `(1/2π)∫ξ(w, w/2 + ix)dx = θ(1)^w(ψ₂²/16 - w/8 - 1/4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FellerCheck {
    pub quadrature: Complex64,
    pub closed_form: Complex64,
    pub difference: f64,
}

/// Evaluates both sides of the mean-integral identity.
pub fn feller_mean_integral(w: Complex64, ctx: &EvalContext) -> Result<FellerCheck> {
    let f = |x: f64| xi(w, w / 2.0 + Complex64::new(0.0, x), ctx);
    let peak = f(0.0)?.norm().max(1e-300);
    let mut x_max: f64 = 16.0;
    loop {
        let a = f(x_max)?.norm().max(f(-x_max)?.norm());
        if a < 1e-17 * peak {
            break;
        }
        x_max *= 1.25;
        if x_max > 1000.0 {
            return Err(Error::Convergence("ξ does not decay along the line".into()));
        }
    }
    let failed = std::sync::Mutex::new(None);
    let q = trapezoid_parallel(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                *failed.lock().expect("error slot") = Some(e);
                Complex64::new(0.0, 0.0)
            }
        },
        -x_max,
        x_max,
        1.0,
        0.0,
        ctx.tol,
        8,
    );
    if let Some(e) = failed.into_inner().expect("error slot") {
        return Err(e);
    }
    let quadrature = q.value / (2.0 * PI);
    let th = theta(1.0f64, ctx)?.value;
    let psi = psi2(ctx)?;
    let closed_form =
        Complex64::new(th, 0.0).powc(w) * (psi * psi / 16.0 - w / 8.0 - 0.25);
    Ok(FellerCheck {
        quadrature,
        closed_form,
        difference: (quadrature - closed_form).norm(),
    })
}

/// `a + ib` with `a, b ∈ Q[ψ₂]`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ComplexPsi {
    pub re: PsiPolynomial,
    pub im: PsiPolynomial,
}

impl ComplexPsi {
    fn real(p: PsiPolynomial) -> Self {
        Self {
            re: p,
            im: PsiPolynomial::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn scale(&self, c: &BigRational) -> Self {
        Self {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    /// Numerical value at `ψ₂ = psi`.
    pub fn eval(&self, psi: f64) -> Complex64 {
        Complex64::new(self.re.eval(psi), self.im.eval(psi))
    }
}

/// One row of the cumulant table: `κ_k = (u-part)·u + (v-part)·v`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulantEntry {
    pub k: usize,
    /// Coefficient of `u`, complex with parts in `Q[ψ₂]`.
    pub u_coeff: ComplexPsi,
    /// Coefficient of `v`, `(re, im)` as exact rationals.
    #[serde(serialize_with = "serialize_rational_pair")]
    pub v_coeff: (BigRational, BigRational),
}

fn serialize_rational_pair<S: serde::Serializer>(
    p: &(BigRational, BigRational),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&p.0.to_string())?;
    t.serialize_element(&p.1.to_string())?;
    t.end()
}

/// Exact cumulants `κ_1..κ_K` of `ρ_{u,v}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulantTable {
    pub entries: Vec<CumulantEntry>,
}

impl CumulantTable {
    /// `c_k`, the real `u`-coefficient of `κ_k` (for even `k` it is the whole
    /// `u`-coefficient).
    pub fn c(&self, k: usize) -> Option<&PsiPolynomial> {
        self.entries.get(k.checked_sub(1)?).map(|e| &e.u_coeff.re)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: usize) -> BigRational {
    BigRational::from_integer((1..=n as u64).map(BigInt::from).product())
}

/// Cumulants from the expansion of the log characteristic function,
/// `vr/2 + u(r/2 - Σ_j R_j (e^{-2r} - 1)^j/j!)`, with `κ_k = i^{-k} k! [r^k]`.
pub fn cumulants(k_max: usize) -> Result<CumulantTable> {
    if k_max == 0 {
        return Err(Error::Domain("cumulants requires k_max >= 1".into()));
    }
    // e^{-2r} - 1 as an exact series in r
    let mut e = vec![BigRational::zero(); k_max + 1];
    for (n, c) in e.iter_mut().enumerate().skip(1) {
        *c = BigRational::from_integer(BigInt::from(-2).pow(n as u32)) / factorial(n);
    }
    let base = QSeries::new(e);
    let mut power = QSeries::one(k_max);
    // series coefficient of r^k in the u-part, as an element of Q[ψ₂]
    let mut u_part = vec![PsiPolynomial::zero(); k_max + 1];
    u_part[1] = PsiPolynomial::constant(rat(1, 2));
    for j in 1..=k_max {
        power = power.mul(&base);
        let rj = r_symbolic(j)?;
        let jf = factorial(j);
        for (k, slot) in u_part.iter_mut().enumerate().skip(j) {
            let c = power.coeff(k) / &jf;
            if !c.is_zero() {
                *slot = slot.sub(&rj.scale(&c));
            }
        }
    }
    let entries = (1..=k_max)
        .map(|k| {
            let kf = factorial(k);
            let a = u_part[k].scale(&kf);
            let v = if k == 1 { rat(1, 2) } else { BigRational::zero() };
            let zero = PsiPolynomial::zero();
            // multiply by i^{-k}
            let (u_coeff, v_coeff) = match k % 4 {
                0 => (ComplexPsi { re: a, im: zero }, (v, BigRational::zero())),
                1 => (ComplexPsi { re: zero, im: a.scale(&-BigRational::one()) }, (BigRational::zero(), -v)),
                2 => (
                    ComplexPsi { re: a.scale(&-BigRational::one()), im: zero },
                    (-v, BigRational::zero()),
                ),
                _ => (ComplexPsi { re: zero, im: a }, (BigRational::zero(), v)),
            };
            CumulantEntry { k, u_coeff, v_coeff }
        })
        .collect();
    Ok(CumulantTable { entries })
}

/// Polynomial in `u, v` with coefficients `a + ib`, `a, b ∈ Q[ψ₂]`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct MomentPolynomial {
    /// `(deg_u, deg_v) ↦ coefficient`.
    pub terms: BTreeMap<(u32, u32), ComplexPsi>,
}

impl MomentPolynomial {
    fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), ComplexPsi::real(PsiPolynomial::constant(BigRational::one())));
        Self { terms }
    }

    fn add(&mut self, other: &Self) {
        for (key, c) in &other.terms {
            let e = self.terms.entry(*key).or_default();
            *e = e.add(c);
            if e.is_zero() {
                self.terms.remove(key);
            }
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                let mut single = Self::default();
                single.terms.insert((ka.0 + kb.0, ka.1 + kb.1), a.mul(b));
                out.add(&single);
            }
        }
        out
    }

    fn scale(&self, c: &BigRational) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
        }
    }

    /// Coefficient of `u^a v^b`.
    pub fn coeff(&self, a: u32, b: u32) -> ComplexPsi {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Numerical value at `(ψ₂, u, v)`.
    pub fn eval(&self, psi: f64, u: f64, v: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|((a, b), c)| c.eval(psi) * u.powi(*a as i32) * v.powi(*b as i32))
            .sum()
    }
}

/// Exact moments `M_0..M_K` of `ρ_{u,v}` in `Q[ψ₂][u, v]`, from the cumulants
/// by `M_n = Σ_{k=1}^{n} C(n-1, k-1) κ_k M_{n-k}`.
pub fn moments(k_max: usize) -> Result<Vec<MomentPolynomial>> {
    let table = if k_max == 0 { None } else { Some(cumulants(k_max)?) };
    let kappa: Vec<MomentPolynomial> = table
        .iter()
        .flat_map(|t| t.entries.iter())
        .map(|e| {
            let mut p = MomentPolynomial::default();
            if !e.u_coeff.is_zero() {
                p.terms.insert((1, 0), e.u_coeff.clone());
            }
            let vc = ComplexPsi {
                re: PsiPolynomial::constant(e.v_coeff.0.clone()),
                im: PsiPolynomial::constant(e.v_coeff.1.clone()),
            };
            if !vc.is_zero() {
                p.terms.insert((0, 1), vc);
            }
            p
        })
        .collect();
    let mut m = vec![MomentPolynomial::one()];
    for n in 1..=k_max {
        let mut acc = MomentPolynomial::default();
        let mut binom = BigRational::one();
        for k in 1..=n {
            acc.add(&kappa[k - 1].mul(&m[n - k]).scale(&binom));
            binom = binom * rat((n - k) as i64, k as i64);
        }
        m.push(acc);
    }
    Ok(m)
}

/// Minimum of `Z(-u, -u/2 + it)` over a grid of `|t| ≤ t_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityReport {
    pub u: f64,
    pub t_max: f64,
    pub min_value: f64,
    pub at_t: f64,
    /// Largest `|Im Z|` seen, which should vanish.
    pub max_imag: f64,
    pub samples: usize,
}

impl PositivityReport {
    /// True when the minimum is strictly positive.
    pub fn positive(&self) -> bool {
        self.min_value > 0.0
    }
}

/// Scans `Z(-u, -u/2 + it)` on `t = k·step`, `0 ≤ t ≤ t_max` (the function is
/// even in `t`), and reports its minimum.
pub fn positivity_scan_with(u: f64, t_max: f64, step: f64, ctx: &EvalContext) -> Result<PositivityReport> {
    if !(u > 0.0) {
        return Err(Error::Domain("positivity_scan requires u > 0".into()));
    }
    let n = (t_max / step).ceil() as usize;
    let vals: Vec<Result<(f64, Complex64)>> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let t = (k as f64 * step).min(t_max);
            let v = z(Complex64::new(-u, 0.0), Complex64::new(-u / 2.0, t), ctx)?.value;
            Ok((t, v))
        })
        .collect();
    let mut rep = PositivityReport {
        u,
        t_max,
        min_value: f64::INFINITY,
        at_t: 0.0,
        max_imag: 0.0,
        samples: n + 1,
    };
    for r in vals {
        let (t, v) = r?;
        if v.re < rep.min_value {
            rep.min_value = v.re;
            rep.at_t = t;
        }
        rep.max_imag = rep.max_imag.max(v.im.abs());
    }
    Ok(rep)
}

/// [`positivity_scan_with`] at step `0.1`.
pub fn positivity_scan(u: f64, t_max: f64, ctx: &EvalContext) -> Result<PositivityReport> {
    positivity_scan_with(u, t_max, 0.1, ctx)
}
