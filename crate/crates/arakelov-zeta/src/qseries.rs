//! Exact formal power series over the rationals.
//!
//! Provides truncated `q`-series with `log`, `exp` and integer powers, the
//! coefficient polynomials `c_m(w)` of `θ^w = 1 + Σ c_m(w) q^m`
//! (`q = e^{-πt}`), their integer companions `c*_m(w) = (-1)^m m! c_m(-w)`,
//! the coefficients `c'_m` of `log θ`, Dirichlet series `D_u(s) = Σ c_m(u) m^{-s}`,
//! the Euler-product test on `c̃_m(w) = c_m(w)/2w`, and the modified Bessel main
//! term of `c_m(-u)`.

use crate::context::{Error, EvalContext, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, RwLock};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Truncated power series `Σ_{m≤M} a_m q^m` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Self { coeffs }
    }

    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// `θ = Σ_{n∈Z} q^{n²}` to the given order.
    pub fn theta(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        let mut n = 1usize;
        while n * n <= order {
            s.coeffs[n * n] = int(2);
            n += 1;
        }
        s
    }

    /// Truncation order `M`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^m` (zero beyond the order).
    pub fn coeff(&self, m: usize) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// All coefficients, lowest power first.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Truncates or zero-extends to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, BigRational::zero());
        Self::new(c)
    }

    /// Sum, at the smaller of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|m| &self.coeffs[m] + &other.coeffs[m]).collect())
    }

    /// Difference, at the smaller of the two orders.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|m| &self.coeffs[m] - &other.coeffs[m]).collect())
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Product, at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Domain("series inverse needs a nonzero constant term".into()));
        }
        let n = self.order();
        let a0inv = self.coeffs[0].recip();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = a0inv.clone();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &b[m - k];
                }
            }
            b[m] = -acc * &a0inv;
        }
        Ok(Self::new(b))
    }

    /// `log` of a series with constant term 1, from `m b_m = m a_m - Σ k b_k a_{m-k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Domain("series log needs constant term 1".into()));
        }
        let n = self.order();
        let mut b = vec![BigRational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = int(m as i64) * &self.coeffs[m];
            for k in 1..m {
                if !b[k].is_zero() && !self.coeffs[m - k].is_zero() {
                    acc -= int(k as i64) * &b[k] * &self.coeffs[m - k];
                }
            }
            b[m] = acc / int(m as i64);
        }
        Ok(Self::new(b))
    }

    /// `exp` of a series with constant term 0, from `m e_m = Σ k a_k e_{m-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("series exp needs constant term 0".into()));
        }
        let n = self.order();
        let mut e = vec![BigRational::zero(); n + 1];
        e[0] = BigRational::one();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += int(k as i64) * &self.coeffs[k] * &e[m - k];
                }
            }
            e[m] = acc / int(m as i64);
        }
        Ok(Self::new(e))
    }

    /// Integer power; negative exponents need a nonzero constant term.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }
}

/// Dense polynomial in `w` with exact rational coefficients, `coeffs[j]`
/// multiplying `w^j`. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RationalPolynomial {
    #[serde(serialize_with = "serialize_rationals")]
    pub coeffs: Vec<BigRational>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

impl RationalPolynomial {
    /// Builds and trims.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        while p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    /// Builds from integer coefficients, lowest degree first.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `w^j`.
    pub fn coeff(&self, j: usize) -> BigRational {
        self.coeffs.get(j).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, w: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * w + c)
    }

    /// Value at a complex point in binary64.
    pub fn eval_complex(&self, w: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * w + c.to_f64().unwrap_or(f64::NAN)
        })
    }

    /// `p(-w)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            match j {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "w")?,
                1 => write!(f, "{}w", a)?,
                _ if a.is_one() => write!(f, "w^{}", j)?,
                _ => write!(f, "{}w^{}", a, j)?,
            }
        }
        Ok(())
    }
}

/// Exact table of `c_m(w)`, `m ≤ M`, as polynomials in `w`.
///
/// Built from the integer polynomials `d_m(w) = m! c_m(w)`, which satisfy
/// `d_m = Σ_{n≥1, n²≤m} 2((w+1)n² - m) (m-1)!/(m-n²)! · d_{m-n²}` (from
/// `θ (θ^w)' = w θ' θ^w`), so no rational arithmetic is needed until the
/// final division by `m!`.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    polys: Vec<RationalPolynomial>,
}

impl CoefficientTable {
    /// Builds the table to order `M`.
    pub fn new(order: usize) -> Self {
        let mut d: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        let mut fact = BigInt::one();
        let mut polys = vec![RationalPolynomial::new(vec![BigRational::one()])];
        for m in 1..=order {
            let mut next = vec![BigInt::zero(); m + 1];
            let mut n = 1usize;
            while n * n <= m {
                let k = n * n;
                // 2(m-1)!/(m-k)!
                let falling: BigInt = ((m - k + 1)..m).map(BigInt::from).product::<BigInt>() * 2u32;
                let prev = &d[m - k];
                let lin = BigInt::from(k) * &falling;
                let con = (BigInt::from(k) - BigInt::from(m)) * &falling;
                for (j, c) in prev.iter().enumerate() {
                    next[j + 1] += &lin * c;
                    next[j] += &con * c;
                }
                n += 1;
            }
            fact *= BigInt::from(m);
            polys.push(RationalPolynomial::new(
                next.iter().map(|c| BigRational::new(c.clone(), fact.clone())).collect(),
            ));
            d.push(next);
        }
        Self { polys }
    }

    /// Order of the table.
    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    /// `c_m(w)` for `m ≤ order`.
    pub fn get(&self, m: usize) -> Option<&RationalPolynomial> {
        self.polys.get(m)
    }
}

static TABLE: RwLock<Option<Arc<CoefficientTable>>> = RwLock::new(None);

/// Shared coefficient table of at least the given order, built on demand.
pub fn coefficient_table(order: usize) -> Arc<CoefficientTable> {
    if let Some(t) = TABLE.read().expect("table lock").as_ref() {
        if t.order() >= order {
            return Arc::clone(t);
        }
    }
    let mut guard = TABLE.write().expect("table lock");
    if let Some(t) = guard.as_ref() {
        if t.order() >= order {
            return Arc::clone(t);
        }
    }
    let old = guard.as_ref().map_or(0, |t| t.order());
    let t = Arc::new(CoefficientTable::new(order.max(2 * old).max(32)));
    *guard = Some(Arc::clone(&t));
    t
}

/// The coefficient polynomial `c_m(w)` of `θ^w = 1 + Σ c_m(w) q^m`.
pub fn c_poly(m: usize) -> RationalPolynomial {
    coefficient_table(m)
        .get(m)
        .cloned()
        .expect("table covers the requested order")
}

/// `c*_m(w) = (-1)^m m! c_m(-w)`, an integer polynomial with nonnegative
/// coefficients.
pub fn c_star(m: usize) -> Result<RationalPolynomial> {
    if m == 0 {
        return Err(Error::Domain("c_star requires m >= 1".into()));
    }
    let fact: BigInt = (1..=m as u64).map(BigInt::from).product();
    let sign = if m % 2 == 0 { int(1) } else { int(-1) };
    Ok(c_poly(m)
        .reflect()
        .scale(&(sign * BigRational::from_integer(fact))))
}

/// `σ_k(n) = Σ_{d|n} d^k` for `k ≥ 0`, exactly.
pub fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

fn sigma_minus_one(n: u64) -> BigRational {
    BigRational::new(sigma(1, n), BigInt::from(n))
}

/// `c'_m = 2σ_{-1}(m) - 5σ_{-1}(m/2) + 2σ_{-1}(m/4)`, the `q^m` coefficient
/// of `log θ`.
pub fn c_prime(m: usize) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::Domain("c_prime requires m >= 1".into()));
    }
    let m = m as u64;
    let mut c = int(2) * sigma_minus_one(m);
    if m % 2 == 0 {
        c -= int(5) * sigma_minus_one(m / 2);
    }
    if m % 4 == 0 {
        c += int(2) * sigma_minus_one(m / 4);
    }
    Ok(c)
}

/// `c_m(u)` for `0 ≤ m ≤ M` at a real `u`, in binary64, by the recurrence
/// `m c_m = Σ_{n≥1} 2((u+1)n² - m) c_{m-n²}` obtained from `θ (θ^u)' = u θ' θ^u`.
///
/// For integer `u` every intermediate is an integer and binary64 is exact
/// while values stay below `2^53`. For other `u` rounding errors are
/// amplified by the parasitic solutions of the recurrence, which grow like
/// the coefficients of `θ^{-u-1}`, roughly `e^{π√((|u|+1)m)}`; the
/// recurrence then runs in fixed point with that many guard bits.
pub fn c_values_f64(u: f64, order: usize) -> Vec<f64> {
    if u.fract() == 0.0 && u.abs() < 1e6 {
        return c_values_binary64(u, order);
    }
    let growth = PI * ((u.abs() + 1.0) * order as f64).sqrt() + 2.0 * (order as f64 + 1.0).ln();
    let bits = 64 + (growth / std::f64::consts::LN_2).ceil() as usize;
    let to_fixed = |x: f64| -> BigInt {
        let r = BigRational::from_float(x).expect("finite parameter");
        (r.numer() << bits) / r.denom()
    };
    let u1 = to_fixed(u + 1.0);
    let one = BigInt::one() << bits;
    let mut c: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    c[0] = one;
    for m in 1..=order {
        let mut acc = BigInt::zero();
        let mut n = 1usize;
        while n * n <= m {
            let k = n * n;
            let coef = &u1 * BigInt::from(k) - (BigInt::from(m) << bits);
            acc += coef * &c[m - k];
            n += 1;
        }
        c[m] = (acc * 2u32 >> bits) / BigInt::from(m);
    }
    c.iter()
        .map(|x| BigRational::new(x.clone(), BigInt::one() << bits).to_f64().unwrap_or(f64::NAN))
        .collect()
}

fn c_values_binary64(u: f64, order: usize) -> Vec<f64> {
    let mut c = vec![0.0f64; order + 1];
    c[0] = 1.0;
    for m in 1..=order {
        let mut acc = 0.0;
        let mut n = 1usize;
        while n * n <= m {
            let k = n * n;
            acc += 2.0 * ((u + 1.0) * k as f64 - m as f64) * c[m - k];
            n += 1;
        }
        c[m] = acc / m as f64;
    }
    c
}

/// Exact `c_m(w)` at a rational `w` for `0 ≤ m ≤ M`, by the same recurrence.
pub fn c_values_exact(w: &BigRational, order: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); order + 1];
    c[0] = BigRational::one();
    let w1 = w + BigRational::one();
    for m in 1..=order {
        let mut acc = BigRational::zero();
        let mut n = 1usize;
        while n * n <= m {
            let k = n * n;
            acc += int(2) * (&w1 * int(k as i64) - int(m as i64)) * &c[m - k];
            n += 1;
        }
        c[m] = acc / int(m as i64);
    }
    c
}

/// `D_u(s) = Σ_{m≥1} c_m(u) m^{-s}` for real `u ≥ 0`.
///
/// The tail after `M` terms is bounded with `|c_m(u)| ≤ 24 m^{u/2}` (`m ≥ 2`),
/// which needs `Re s > u/2 + 1`; `M` is the smallest integer making the
/// bound `24 M^{u/2+1-σ}/(σ-u/2-1)` fall below `ctx.tol`.
pub fn dirichlet_d(u: f64, s: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    if !(u >= 0.0) {
        return Err(Error::Domain("dirichlet_D requires u >= 0".into()));
    }
    let gap = s.re - u / 2.0 - 1.0;
    if !(gap > 0.0) {
        return Err(Error::Convergence(format!(
            "Re s = {} is not beyond u/2 + 1 = {}",
            s.re,
            u / 2.0 + 1.0
        )));
    }
    let needed = ((24.0 / (gap * ctx.tol)).ln() / gap).exp().ceil().max(2.0);
    if !(needed <= ctx.max_terms as f64) {
        return Err(Error::Convergence(format!(
            "tail bound needs about {:e} terms, cap is {}",
            needed, ctx.max_terms
        )));
    }
    let m_max = needed as usize;
    let c = c_values_f64(u, m_max);
    let mut sum = Complex64::new(0.0, 0.0);
    for (m, cm) in c.iter().enumerate().skip(1).rev() {
        sum += cm * (-s * (m as f64).ln()).exp();
    }
    Ok(sum)
}

/// Outcome of [`euler_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerReport {
    /// The parameter `w` as a string `p/q`.
    pub w: String,
    /// Largest index tested.
    pub max_m: usize,
    /// Whether `c̃_{mn} = c̃_m c̃_n` for all coprime `m, n ≥ 2`, `mn ≤ M`.
    pub multiplicative: bool,
    /// First failing coprime pair, ordered by `mn` then `m`.
    pub first_counterexample: Option<(usize, usize)>,
    /// Comparison with the closed-form coefficients where one is known
    /// (`w ∈ {0, 1, 2, 4, 6, 8}`).
    pub closed_form_match: Option<bool>,
}

impl EulerReport {
    /// Multiplicative, and matching the closed form whenever one is known.
    pub fn passes(&self) -> bool {
        self.multiplicative && self.closed_form_match != Some(false)
    }
}

/// Kronecker symbol `(-4/m)`.
pub fn chi_minus4(m: u64) -> i64 {
    match m % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            v.push(d);
            if d != n / d {
                v.push(n / d);
            }
        }
        d += 1;
    }
    v.sort_unstable();
    v
}

/// Closed-form `c̃_m(w)` for the special parameters `w ∈ {0, 1, 2, 4, 6, 8}`.
pub fn c_tilde_closed_form(w: i64, m: u64) -> Option<BigRational> {
    if m == 0 {
        return None;
    }
    let sig = |k: u32, n: u64| -> BigRational { BigRational::from_integer(sigma(k, n)) };
    let v = match w {
        0 => {
            let mut odd = m;
            while odd % 2 == 0 {
                odd /= 2;
            }
            let s = sigma_minus_one(odd);
            if m % 2 == 0 {
                -s
            } else {
                s
            }
        }
        1 => {
            let r = (m as f64).sqrt().round() as u64;
            if r * r == m {
                int(1)
            } else {
                int(0)
            }
        }
        2 => int(divisors(m).iter().map(|&d| chi_minus4(d)).sum()),
        4 => {
            let mut v = sig(1, m);
            if m % 4 == 0 {
                v -= int(4) * sig(1, m / 4);
            }
            v
        }
        6 => {
            let mut a = BigInt::zero();
            let mut b = BigInt::zero();
            for d in divisors(m) {
                let e = m / d;
                a += BigInt::from(chi_minus4(d)) * BigInt::from(e * e);
                b += BigInt::from(chi_minus4(d)) * BigInt::from(d * d);
            }
            frac(4, 3) * BigRational::from_integer(a) - frac(1, 3) * BigRational::from_integer(b)
        }
        8 => {
            let mut v = sig(3, m);
            if m % 2 == 0 {
                v -= int(2) * sig(3, m / 2);
            }
            if m % 4 == 0 {
                v += int(16) * sig(3, m / 4);
            }
            v
        }
        _ => return None,
    };
    Some(v)
}

/// `c̃_m(w) = c_m(w)/2w`, with `c̃_m(0) = ½ c_m'(0)`, for `1 ≤ m ≤ M`
/// (index 0 unused).
pub fn c_tilde(w: &BigRational, order: usize) -> Vec<BigRational> {
    let table = coefficient_table(order);
    (0..=order)
        .map(|m| {
            if m == 0 {
                return BigRational::one();
            }
            let p = table.get(m).expect("table covers order");
            if w.is_zero() {
                p.coeff(1) / int(2)
            } else {
                p.eval(w) / (int(2) * w)
            }
        })
        .collect()
}

/// Tests the Euler-product condition on `c̃_m(w)` for `m ≤ M`.
pub fn euler_check(w: &BigRational, max_m: usize) -> Result<EulerReport> {
    if max_m < 6 {
        return Err(Error::Domain("euler_check requires M >= 6".into()));
    }
    let ct = c_tilde(w, max_m);
    let mut first = None;
    'outer: for prod in 6..=max_m {
        for m in 2..prod {
            if m * m >= prod {
                break;
            }
            if prod % m != 0 {
                continue;
            }
            let n = prod / m;
            if m.gcd(&n) != 1 {
                continue;
            }
            if ct[prod] != &ct[m] * &ct[n] {
                first = Some((m, n));
                break 'outer;
            }
        }
    }
    let closed_form_match = if w.is_integer() {
        let wi = w.to_integer().to_i64();
        match wi {
            Some(wi) if c_tilde_closed_form(wi, 1).is_some() => Some(
                (1..=max_m).all(|m| c_tilde_closed_form(wi, m as u64).as_ref() == Some(&ct[m])),
            ),
            _ => None,
        }
    } else {
        None
    };
    Ok(EulerReport {
        w: w.to_string(),
        max_m,
        multiplicative: first.is_none(),
        first_counterexample: first,
        closed_form_match,
    })
}

/// Modified Bessel function `I_α(x)` for `α ≥ 0`, `x ≥ 0`, from its power
/// series summed in log space.
pub fn bessel_i(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha >= 0.0 && x >= 0.0) {
        return Err(Error::Domain("bessel_i requires alpha >= 0 and x >= 0".into()));
    }
    if x == 0.0 {
        return Ok(if alpha == 0.0 { 1.0 } else { 0.0 });
    }
    let lh = (x / 2.0).ln();
    let log_term = |k: f64| -> f64 {
        (2.0 * k + alpha) * lh - statrs::function::gamma::ln_gamma(k + 1.0)
            - statrs::function::gamma::ln_gamma(k + alpha + 1.0)
    };
    // the terms peak near k ≈ x/2
    let k_peak = (x / 2.0).floor();
    let peak = log_term(k_peak).max(log_term(0.0));
    let mut sum = 0.0;
    let mut k = 0.0;
    loop {
        let lt = log_term(k);
        sum += (lt - peak).exp();
        if k > k_peak && lt - peak < -40.0 {
            break;
        }
        k += 1.0;
    }
    Ok(sum * peak.exp())
}

/// Main term of `c_m(-u)` from the cusp at `q = -1`,
/// `(-1)^m π 2^{-u} (u/4m)^{(u+2)/4} I_{u/2+1}(π√(um))`.
///
/// It follows from `θ(-e^{-πt})^{-u} = 2^{-u} t^{u/2} e^{uπ/4t}(1 + O(e^{-2π/t}))`
/// and the inverse Laplace transform of `t^ν e^{a/t}`; the remaining
/// contributions are exponentially smaller.
pub fn bessel_main_term(u: f64, m: usize, _ctx: &EvalContext) -> Result<f64> {
    if !(u > 0.0) || m == 0 {
        return Err(Error::Domain("bessel_main_term requires u > 0 and m >= 1".into()));
    }
    let mf = m as f64;
    let i = bessel_i(u / 2.0 + 1.0, PI * (u * mf).sqrt())?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * PI * 2f64.powf(-u) * (u / (4.0 * mf)).powf((u + 2.0) / 4.0) * i)
}
