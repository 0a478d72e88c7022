//! Zeros of `ξ(u, ·)` for real `u`.
//!
//! Zeros are counted with the argument principle: the phase of `ξ` itself is
//! accumulated along the boundary of a rectangle, with each boundary segment
//! bisected until consecutive phase increments are below `π/2`. Regions are
//! split recursively until every box holds one zero, which is then polished
//! by Newton's method with a central-difference derivative.
//!
//! For real `u`, `ξ(u, s̄) = conj ξ(u, s)` and `ξ(u, u - s) = ξ(u, s)`, so
//! `ξ` is real on the critical line `Re s = u/2` and zeros off that line come
//! in quadruples. A simple zero enclosed by a box symmetric about the line is
//! therefore certified to lie on it.

use crate::context::{Error, EvalContext, Result};
use crate::zeta2::xi;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

/// Closed rectangle `[re_min, re_max] × [im_min, im_max]` in the `s`-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    /// Rectangle from its corner coordinates.
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Self {
            re_min,
            re_max,
            im_min,
            im_max,
        }
    }

    /// Square of half-side `r` centred at `c`.
    pub fn around(c: Complex64, r: f64) -> Self {
        Self::new(c.re - r, c.re + r, c.im - r, c.im + r)
    }

    pub(crate) fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub(crate) fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub(crate) fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }

    /// True when `s` lies in the closed rectangle.
    pub fn contains(&self, s: Complex64) -> bool {
        s.re >= self.re_min && s.re <= self.re_max && s.im >= self.im_min && s.im <= self.im_max
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }

    fn validate(&self) -> Result<()> {
        if !(self.width() > 0.0 && self.height() > 0.0) || !self.width().is_finite() || !self.height().is_finite() {
            return Err(Error::Domain(format!("degenerate rectangle {self:?}")));
        }
        Ok(())
    }
}

/// A certified zero of `ξ(u, ·)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub u: f64,
    pub re: f64,
    pub im: f64,
    /// `|ξ(u, s)|` at the returned point.
    pub residual: f64,
    /// Winding number of `contour`.
    pub multiplicity: u32,
    /// Rectangle whose winding certifies the zero.
    pub contour: Rect,
    /// Whether the zero is certified on (`Some(true)`) or off
    /// (`Some(false)`) the critical line; `None` if neither certificate held.
    pub on_line: Option<bool>,
    /// False when Newton's method did not settle inside `contour`.
    pub converged: bool,
}

impl ZeroRecord {
    /// Location `re + i·im`.
    pub fn s(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Zero count `N_u(T)` over `|Im s| ≤ T` and its remainder against the
/// main term `T/2π·log(T/2π) - T/2π + 7/8` of `½N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountReport {
    pub u: f64,
    /// Height actually used, after any nudging away from zero ordinates.
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "N_u_T")]
    pub n: i64,
    pub main_term: f64,
    #[serde(rename = "S_u_T")]
    pub s_u_t: f64,
}

/// `T/2π·log(T/2π) - T/2π + 7/8`.
pub fn main_term(t: f64) -> f64 {
    let x = t / (2.0 * PI);
    x * x.ln() - x + 0.875
}

/// Largest spacing between initial boundary samples.
const MAX_SAMPLE_STEP: f64 = 0.2;
/// Bisection depth at which a boundary segment is declared to pass through a zero.
const MAX_DEPTH: u32 = 40;
/// Boxes with a single zero are refined once their longer side is below this.
const LEAF_SIZE: f64 = 0.5;
/// Boxes with several zeros are reported as one multiple zero below this size.
const MULTIPLE_LEAF_SIZE: f64 = 1e-4;

/// `ξ(u, ·)` with a cache keyed on the exact sample point, so that edges
/// shared between boxes are evaluated once, and with `ξ(u, s̄) = conj ξ(u, s)`.
struct XiEval<'a> {
    u: f64,
    ctx: &'a EvalContext,
    cache: Mutex<HashMap<(u64, u64), Complex64>>,
}

impl<'a> XiEval<'a> {
    fn new(u: f64, ctx: &'a EvalContext) -> Result<Self> {
        if !u.is_finite() {
            return Err(Error::Domain("u must be finite".into()));
        }
        ctx.validate()?;
        Ok(Self {
            u,
            ctx,
            cache: Mutex::new(HashMap::new()),
        })
    }

    fn w(&self) -> Complex64 {
        Complex64::new(self.u, 0.0)
    }

    fn raw(&self, s: Complex64) -> Result<Complex64> {
        xi(self.w(), s, self.ctx)
    }

    fn eval(&self, s: Complex64) -> Result<Complex64> {
        let flip = s.im < 0.0;
        let q = if flip { s.conj() } else { s };
        let key = (q.re.to_bits(), q.im.to_bits());
        let cached = self.cache.lock().expect("cache lock").get(&key).copied();
        let v = match cached {
            Some(v) => v,
            None => {
                let v = self.raw(q)?;
                self.cache.lock().expect("cache lock").insert(key, v);
                v
            }
        };
        Ok(if flip { v.conj() } else { v })
    }

    /// Newton's method from `s0` with a central-difference derivative.
    fn newton(&self, s0: Complex64) -> Result<(Complex64, bool)> {
        let mut s = s0;
        for _ in 0..80 {
            let h = self.ctx.tol.cbrt() * (1.0 + s.norm());
            let f = self.raw(s)?;
            if f == Complex64::new(0.0, 0.0) {
                return Ok((s, true));
            }
            let hc = Complex64::new(h, 0.0);
            let d = (self.raw(s + hc)? - self.raw(s - hc)?) / (2.0 * h);
            if d == Complex64::new(0.0, 0.0) || !d.is_finite() {
                return Ok((s, false));
            }
            let mut step = f / d;
            if step.norm() > 0.5 {
                step *= 0.5 / step.norm();
            }
            s -= step;
            if step.norm() <= 1e-12 * (1.0 + s.norm()) {
                return Ok((s, true));
            }
        }
        Ok((s, false))
    }
}

/// An analytic function whose zeros are counted by phase accumulation.
pub(crate) trait PhaseSource {
    fn value(&self, s: Complex64) -> Result<Complex64>;

    /// Phase change along the segment `a → b`.
    fn phase_along(&self, a: Complex64, b: Complex64) -> Result<f64> {
        let n = (((b - a).norm() / MAX_SAMPLE_STEP).ceil() as usize).max(1);
        let mut total = 0.0;
        let mut prev = a;
        let mut f_prev = self.value(a)?;
        for k in 1..=n {
            let next = if k == n { b } else { a + (b - a) * (k as f64 / n as f64) };
            let f_next = self.value(next)?;
            total += self.phase_segment(prev, f_prev, next, f_next, 0)?;
            prev = next;
            f_prev = f_next;
        }
        Ok(total)
    }

    fn phase_segment(&self, a: Complex64, fa: Complex64, b: Complex64, fb: Complex64, depth: u32) -> Result<f64> {
        if fa == Complex64::new(0.0, 0.0) || fb == Complex64::new(0.0, 0.0) {
            return Err(Error::Contour(format!("the function vanishes on the contour near {a}")));
        }
        let d = (fb / fa).arg();
        if d.abs() < PI / 2.0 {
            return Ok(d);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::Contour(format!(
                "contour passes too close to a zero between {a} and {b}"
            )));
        }
        let m = (a + b) * 0.5;
        let fm = self.value(m)?;
        Ok(self.phase_segment(a, fa, m, fm, depth + 1)? + self.phase_segment(m, fm, b, fb, depth + 1)?)
    }

    fn winding(&self, rect: &Rect) -> Result<i64> {
        rect.validate()?;
        let c = rect.corners();
        let mut total = 0.0;
        for k in 0..4 {
            total += self.phase_along(c[k], c[(k + 1) % 4])?;
        }
        integer_count(total / (2.0 * PI))
    }

}

impl PhaseSource for XiEval<'_> {
    fn value(&self, s: Complex64) -> Result<Complex64> {
        self.eval(s)
    }
}

/// Splits `region` (winding `n`) until each box holds one zero and is no
/// larger than `leaf_size`, or holds several and is below `multiple_leaf`.
/// Returns the leaves with their windings.
pub(crate) fn isolate<P: PhaseSource>(
    p: &P,
    region: Rect,
    n: i64,
    leaf_size: f64,
    multiple_leaf: f64,
    out: &mut Vec<(Rect, i64)>,
) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    if n < 0 {
        return Err(Error::Contour(format!("negative winding {n} in {region:?}")));
    }
    let size = region.width().max(region.height());
    if (n == 1 && size <= leaf_size) || size <= multiple_leaf {
        out.push((region, n));
        return Ok(());
    }
    let mut last_err = None;
    for frac in SPLIT_FRACTIONS {
        let (a, b) = split(&region, frac);
        match p.winding(&a) {
            Ok(na) => {
                isolate(p, a, na, leaf_size, multiple_leaf, out)?;
                return isolate(p, b, n - na, leaf_size, multiple_leaf, out);
            }
            Err(Error::Contour(m)) => last_err = Some(Error::Contour(m)),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one split attempted"))
}

fn integer_count(x: f64) -> Result<i64> {
    let n = x.round();
    if (x - n).abs() > 0.1 {
        return Err(Error::Contour(format!("winding {x} is not close to an integer")));
    }
    Ok(n as i64)
}

/// Winding number of `ξ(u, ·)` around `rect`.
pub fn winding_number(u: f64, rect: Rect, ctx: &EvalContext) -> Result<i64> {
    XiEval::new(u, ctx)?.winding(&rect)
}

/// Splits `rect` across its longer side at `frac` of the way along it.
fn split(rect: &Rect, frac: f64) -> (Rect, Rect) {
    if rect.width() >= rect.height() {
        let x = rect.re_min + frac * rect.width();
        (
            Rect::new(rect.re_min, x, rect.im_min, rect.im_max),
            Rect::new(x, rect.re_max, rect.im_min, rect.im_max),
        )
    } else {
        let y = rect.im_min + frac * rect.height();
        (
            Rect::new(rect.re_min, rect.re_max, rect.im_min, y),
            Rect::new(rect.re_min, rect.re_max, y, rect.im_max),
        )
    }
}

/// Cut positions tried in turn; none is ½, so a box symmetric about the
/// critical line is never cut along it.
const SPLIT_FRACTIONS: [f64; 5] = [0.4375, 0.5625, 0.375, 0.625, 0.3125];

/// Refines the zero(s) in a leaf box and certifies the result.
fn polish(ev: &XiEval, leaf: Rect, multiplicity: u32) -> Result<ZeroRecord> {
    let line = ev.u / 2.0;
    let c = leaf.center();
    let mut found = None;
    // on the line ξ is real and ξ' imaginary, so Newton started there stays there
    if leaf.re_min < line && line < leaf.re_max {
        let (s, ok) = ev.newton(Complex64::new(line, c.im))?;
        if ok && leaf.contains(s) {
            found = Some(s);
        }
    }
    let (s, converged) = match found {
        Some(s) => (s, true),
        None => {
            let (s, ok) = ev.newton(c)?;
            (s, ok && leaf.contains(s))
        }
    };
    let mut record = ZeroRecord {
        u: ev.u,
        re: s.re,
        im: s.im,
        residual: ev.raw(s)?.norm(),
        multiplicity,
        contour: leaf,
        on_line: None,
        converged,
    };
    if !converged {
        return Ok(record);
    }
    let off = (s.re - line).abs();
    let mut r = 0.5 * leaf.width().max(leaf.height()).min(0.25);
    for _ in 0..6 {
        let (rect, on_line) = if off < 1e-8 * (1.0 + s.norm()) {
            (Rect::around(Complex64::new(line, s.im), r), true)
        } else if r < off {
            (Rect::around(s, r), false)
        } else {
            r *= 0.5;
            continue;
        };
        match ev.winding(&rect) {
            Ok(k) if k == multiplicity as i64 => {
                record.contour = rect;
                record.on_line = Some(on_line);
                if on_line {
                    record.re = line;
                }
                break;
            }
            Ok(_) | Err(Error::Contour(_)) => r *= 0.5,
            Err(e) => return Err(e),
        }
    }
    Ok(record)
}

/// All zeros of `ξ(u, ·)` in `region`, sorted by `(Im, Re)`.
///
/// The multiplicities sum to the winding number of the region boundary.
pub fn find_zeros(u: f64, region: Rect, ctx: &EvalContext) -> Result<Vec<ZeroRecord>> {
    let ev = XiEval::new(u, ctx)?;
    let n = ev.winding(&region)?;
    let mut leaves = Vec::new();
    isolate(&ev, region, n, LEAF_SIZE, MULTIPLE_LEAF_SIZE, &mut leaves)?;
    let mut out = leaves
        .into_iter()
        .map(|(leaf, k)| polish(&ev, leaf, k as u32))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    Ok(out)
}

/// Zeros of `ξ(u, ·)` on the critical line with `0 < Im s ≤ t_max`.
///
/// Searches the box `|Re s - u/2| ≤ 1`, which is where the tabulated zeros
/// of `u = 1` and `u = 2` lie; off-line zeros in the box are returned too.
pub fn critical_zeros(u: f64, t_max: f64, ctx: &EvalContext) -> Result<Vec<ZeroRecord>> {
    find_zeros(u, Rect::new(u / 2.0 - 1.0, u / 2.0 + 1.0, 0.5, t_max), ctx)
}

/// Half-width of the strip that contains every zero of `ξ(u, ·)`.
pub fn strip_half_width(u: f64) -> f64 {
    u.abs() / 2.0 + 8.0
}

fn count_once(ev: &XiEval, t: f64) -> Result<i64> {
    let c = ev.u / 2.0;
    let a = strip_half_width(ev.u);
    let right = Complex64::new(c + a, 0.0);
    let left = Complex64::new(c - a, 0.0);
    // the lower half of the contour mirrors the upper half, and ξ is real
    // where the contour meets the real axis
    let phase = ev.phase_along(right, right + Complex64::new(0.0, t))?
        + ev.phase_along(right + Complex64::new(0.0, t), left + Complex64::new(0.0, t))?
        + ev.phase_along(left + Complex64::new(0.0, t), left)?;
    integer_count(phase / PI)
}

/// `N_u(T)`, the number of zeros in the strip `|Re s - u/2| ≤ u/2 + 8` with
/// `|Im s| ≤ T`, and the remainder `S_u(T) = ½N - main_term(T)`.
///
/// If the top edge passes too close to a zero, `T` is raised by `0.01` up to
/// five times.
pub fn count_zeros(u: f64, t: f64, ctx: &EvalContext) -> Result<CountReport> {
    if !(t > 0.0) {
        return Err(Error::Domain("count_zeros requires T > 0".into()));
    }
    let ev = XiEval::new(u, ctx)?;
    let mut height = t;
    let mut last = None;
    for _ in 0..6 {
        match count_once(&ev, height) {
            Ok(n) => {
                let m = main_term(height);
                return Ok(CountReport {
                    u,
                    t: height,
                    n,
                    main_term: m,
                    s_u_t: n as f64 / 2.0 - m,
                });
            }
            Err(Error::Contour(msg)) => {
                last = Some(msg);
                height += 0.01;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Contour(format!(
        "no zero-free top edge near T = {t}: {}",
        last.unwrap_or_default()
    )))
}

/// True iff every zero satisfies `|Re s - u/2| < u/2 + 8`.
pub fn strip_certificate(u: f64, zeros: &[ZeroRecord]) -> bool {
    zeros
        .iter()
        .all(|z| (z.re - u / 2.0).abs() < strip_half_width(u))
}

/// Kind of qualitative change seen while tracking a zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TrackEventKind {
    /// Two zeros on the critical line merged (winding 2 in a small box).
    Coalesce,
    /// The tracked zero left the critical line.
    OffLine,
    /// The tracked zero returned to the critical line.
    OnLine,
}

/// An event at parameter `u` and location `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrackEvent {
    pub kind: TrackEventKind,
    pub u: f64,
    pub re: f64,
    pub im: f64,
}

/// One point of a tracked path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrackPoint {
    pub u: f64,
    pub re: f64,
    pub im: f64,
    pub on_line: bool,
}

/// Path of a zero as `u` moves, with events.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrackResult {
    pub path: Vec<TrackPoint>,
    pub events: Vec<TrackEvent>,
    /// True when the zero was lost before reaching `u_end`.
    pub truncated: bool,
}

impl TrackResult {
    /// Interval `[u_a, u_b]` between an `OFF_LINE` event and the next
    /// `ON_LINE` event (or the path end), for each excursion.
    pub fn off_line_intervals(&self) -> Vec<(f64, f64)> {
        let end = self.path.last().map(|p| p.u).unwrap_or(f64::NAN);
        let mut out = Vec::new();
        let mut start = None;
        for e in &self.events {
            match e.kind {
                TrackEventKind::OffLine => start = Some(e.u),
                TrackEventKind::OnLine => {
                    if let Some(a) = start.take() {
                        out.push((a, e.u));
                    }
                }
                TrackEventKind::Coalesce => {}
            }
        }
        if let Some(a) = start {
            out.push((a, end));
        }
        out
    }
}

/// The certified zero of `ξ(u, ·)` nearest to `seed`, searched for in a box of
/// half-side `1.5` around it.
pub fn locate_zero(u: f64, seed: Complex64, ctx: &EvalContext) -> Result<ZeroRecord> {
    let zeros = find_zeros(u, Rect::around(seed, 1.5), ctx)?;
    zeros
        .into_iter()
        .filter(|z| z.converged)
        .min_by(|a, b| (a.s() - seed).norm().total_cmp(&(b.s() - seed).norm()))
        .ok_or_else(|| Error::Convergence(format!("no zero of ξ({u}, ·) within 1.5 of {seed}")))
}

/// Tolerance on `|Re s - u/2|` for a zero to count as on the line.
fn line_threshold(ctx: &EvalContext, s: Complex64) -> f64 {
    (10.0 * ctx.tol).max(1e-9 * (1.0 + s.norm()))
}

/// Follows a zero of `ξ(u, ·)` from `u_start` to `u_end` in `steps` equal
/// parameter steps (each halved up to eight times when the zero is lost).
///
/// On the critical line the zero is refined as a root of the real function
/// `t ↦ ξ(u, u/2 + it)`. When that root disappears the zero has met its
/// neighbour: a box of winding 2 is recorded as `COALESCE`, and the search
/// continues off the line (`OFF_LINE`). An off-line zero that comes back to
/// the line emits `ON_LINE`. Off-line, the zero with `Re s > u/2` is followed.
pub fn track_zero(u_start: f64, u_end: f64, seed: Complex64, steps: usize, ctx: &EvalContext) -> Result<TrackResult> {
    if steps == 0 {
        return Err(Error::Domain("track_zero requires at least one step".into()));
    }
    let first = locate_zero(u_start, seed, ctx)?;
    let mut s = first.s();
    let mut on_line = (s.re - u_start / 2.0).abs() <= line_threshold(ctx, s);
    let mut result = TrackResult {
        path: vec![TrackPoint {
            u: u_start,
            re: s.re,
            im: s.im,
            on_line,
        }],
        events: Vec::new(),
        truncated: false,
    };
    if u_end == u_start {
        return Ok(result);
    }
    let du = (u_end - u_start) / steps as f64;
    let mut u = u_start;
    let mut velocity = Complex64::new(0.0, 0.0);
    while (u_end - u) * du.signum() > 1e-12 {
        let mut h = du.abs().min((u_end - u).abs()) * du.signum();
        let mut advanced = false;
        for _ in 0..9 {
            let u_next = u + h;
            match track_step(u_next, s, velocity * h, on_line, ctx)? {
                Some(step) => {
                    for kind in &step.events {
                        result.events.push(TrackEvent {
                            kind: *kind,
                            u: u_next,
                            re: step.s.re,
                            im: step.s.im,
                        });
                    }
                    velocity = (step.s - s) / h;
                    s = step.s;
                    on_line = step.on_line;
                    u = u_next;
                    result.path.push(TrackPoint {
                        u,
                        re: s.re,
                        im: s.im,
                        on_line,
                    });
                    advanced = true;
                    break;
                }
                None => h *= 0.5,
            }
        }
        if !advanced {
            result.truncated = true;
            break;
        }
    }
    Ok(result)
}

struct StepOutcome {
    s: Complex64,
    on_line: bool,
    events: Vec<TrackEventKind>,
}

/// Largest accepted move of the zero in one step.
const MAX_JUMP: f64 = 0.75;

fn track_step(
    u_next: f64,
    s: Complex64,
    predicted_move: Complex64,
    on_line: bool,
    ctx: &EvalContext,
) -> Result<Option<StepOutcome>> {
    let ev = XiEval::new(u_next, ctx)?;
    let line = u_next / 2.0;
    let guess = s + predicted_move;
    if on_line {
        let start = Complex64::new(line, guess.im);
        let (z, ok) = ev.newton(start)?;
        if ok && (z - s).norm() < MAX_JUMP && (z.re - line).abs() <= line_threshold(ctx, z) {
            return Ok(Some(StepOutcome {
                s: Complex64::new(line, z.im),
                on_line: true,
                events: Vec::new(),
            }));
        }
        // the root left the line: look for the pair it formed with a neighbour
        let box_pair = Rect::new(line - 0.5, line + 0.5, s.im - MAX_JUMP, s.im + MAX_JUMP);
        let off = ev.newton(Complex64::new(line + 0.1, s.im))?;
        if let (z, true) = off {
            let z = if z.re < line { Complex64::new(u_next - z.re, z.im) } else { z };
            if (z.re - line).abs() > line_threshold(ctx, z) && (z - s).norm() < MAX_JUMP {
                let mut events = Vec::new();
                let pair = Rect::new(line - 0.5, line + 0.5, z.im - 0.25, z.im + 0.25);
                if matches!(ev.winding(&pair), Ok(2)) || matches!(ev.winding(&box_pair), Ok(2)) {
                    events.push(TrackEventKind::Coalesce);
                }
                events.push(TrackEventKind::OffLine);
                return Ok(Some(StepOutcome {
                    s: z,
                    on_line: false,
                    events,
                }));
            }
        }
        return Ok(None);
    }
    let (z, ok) = ev.newton(if guess.re > line { guess } else { Complex64::new(line + 0.05, guess.im) })?;
    if !ok || (z - s).norm() >= MAX_JUMP {
        return Ok(None);
    }
    if (z.re - line).abs() <= line_threshold(ctx, z) || z.re < line {
        // the pair has returned to the line; follow the root nearest the old ordinate
        let (r, ok) = ev.newton(Complex64::new(line, s.im))?;
        if ok && (r - s).norm() < MAX_JUMP && (r.re - line).abs() <= line_threshold(ctx, r) {
            return Ok(Some(StepOutcome {
                s: Complex64::new(line, r.im),
                on_line: true,
                events: vec![TrackEventKind::OnLine],
            }));
        }
        return Ok(None);
    }
    Ok(Some(StepOutcome {
        s: z,
        on_line: false,
        events: Vec::new(),
    }))
}
