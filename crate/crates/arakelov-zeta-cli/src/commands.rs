//! The record-producing commands.

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::output::{write_gnuplot, PlotSpec, RecordSink};
use arakelov_zeta::numfield::{self, FieldDescriptor, SUPPORTED_DISCRIMINANTS};
use arakelov_zeta::qseries;
use arakelov_zeta::semigroup;
use arakelov_zeta::zeroscan::{self, Rect, ZeroRecord};
use arakelov_zeta::zeta2::{self, RegionTag};
use arakelov_zeta::EvalContext;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

/// Where and how a command writes its records.
pub struct Output {
    format: Option<OutputFormat>,
    path: Option<PathBuf>,
    gnuplot: Option<PathBuf>,
}

impl Output {
    pub fn new(cfg: &RunConfig, gnuplot: Option<PathBuf>) -> Self {
        Self { format: cfg.output_format, path: cfg.output_path.clone(), gnuplot }
    }

    /// The configured format, or the command's natural one.
    pub fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }

    /// The format given by flag or configuration, if any.
    pub fn format_override(&self) -> Option<OutputFormat> {
        self.format
    }

    /// Plain-text writer to the output file or stdout.
    pub fn text_writer(&self) -> Result<Box<dyn Write>, CliError> {
        Ok(match &self.path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(std::io::stdout())),
        })
    }

    /// Opens a sink in the configured format.
    pub fn sink(&self, default: OutputFormat) -> Result<RecordSink, CliError> {
        RecordSink::open(self.format_or(default), self.path.as_deref())
    }

    /// Writes all records, then the gnuplot script if one was requested.
    fn emit<T: Serialize>(&self, default: OutputFormat, rows: &[T], plot: Option<PlotSpec<'_>>) -> Result<(), CliError> {
        let mut sink = self.sink(default)?;
        for r in rows {
            sink.write(r)?;
        }
        sink.finish()?;
        if let Some(script) = &self.gnuplot {
            let plot = plot.ok_or_else(|| CliError::Usage("this command has no plot".into()))?;
            let data = self
                .path
                .as_deref()
                .filter(|_| self.format_or(default) == OutputFormat::Csv)
                .ok_or_else(|| CliError::Usage("--gnuplot needs --out with CSV output".into()))?;
            write_gnuplot(script, data, &plot)?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct PointRecord {
    w_re: f64,
    w_im: f64,
    s_re: f64,
    s_im: f64,
    region: RegionTag,
    z_re: Option<f64>,
    z_im: Option<f64>,
    z_error: Option<f64>,
    z_note: Option<String>,
    xi_re: f64,
    xi_im: f64,
    xi_error: f64,
}

/// `Z(w, s)` and `ξ(w, s)` at one point; `Z` is left empty at its poles.
pub fn eval_point(out: &Output, w: Complex64, s: Complex64, ctx: &EvalContext) -> Result<(), CliError> {
    let xi = zeta2::xi_with_estimate(w, s, ctx)?;
    let (z, note) = match zeta2::z(w, s, ctx) {
        Ok(v) => (Some(v), None),
        Err(e @ (arakelov_zeta::Error::Domain(_) | arakelov_zeta::Error::Degenerate(_))) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let rec = PointRecord {
        w_re: w.re,
        w_im: w.im,
        s_re: s.re,
        s_im: s.im,
        region: zeta2::region(w, s),
        z_re: z.map(|v| v.value.re),
        z_im: z.map(|v| v.value.im),
        z_error: z.map(|v| v.quadrature_error_estimate),
        z_note: note,
        xi_re: xi.value.re,
        xi_im: xi.value.im,
        xi_error: xi.quadrature_error_estimate,
    };
    out.emit(OutputFormat::Jsonl, &[rec], None)
}

#[derive(Serialize)]
struct LineRecord {
    w_re: f64,
    w_im: f64,
    t: f64,
    xi_re: f64,
    xi_im: f64,
    xi_error: f64,
    z_re: Option<f64>,
    z_im: Option<f64>,
}

/// `ξ(w, w/2 + it)` and `Z(w, w/2 + it)` for `t = 0, step, ..., tmax`.
pub fn eval_line(out: &Output, w: Complex64, tmax: f64, step: f64, ctx: &EvalContext) -> Result<(), CliError> {
    if !(step > 0.0 && tmax >= 0.0) {
        return Err(CliError::Usage("--step must be positive and --tmax nonnegative".into()));
    }
    let n = (tmax / step + 1e-9).floor() as usize;
    let rows = (0..=n)
        .into_par_iter()
        .map(|i| {
            let t = i as f64 * step;
            let s = w / 2.0 + Complex64::new(0.0, t);
            let xi = zeta2::xi_with_estimate(w, s, ctx)?;
            let denom = s * (s - w);
            let z = (denom.norm() > 0.0).then(|| xi.value * 2.0 * w / denom);
            Ok(LineRecord {
                w_re: w.re,
                w_im: w.im,
                t,
                xi_re: xi.value.re,
                xi_im: xi.value.im,
                xi_error: xi.quadrature_error_estimate,
                z_re: z.map(|v| v.re),
                z_im: z.map(|v| v.im),
            })
        })
        .collect::<arakelov_zeta::Result<Vec<_>>>()?;
    let plot = PlotSpec { title: "xi on the critical line", x_label: "t", y_label: "Re xi", x_column: 3, y_column: 4 };
    out.emit(OutputFormat::Jsonl, &rows, Some(plot))
}

#[derive(Serialize)]
struct ZeroRow {
    u: f64,
    re: f64,
    im: f64,
    residual: f64,
    multiplicity: u32,
    on_line: Option<bool>,
    converged: bool,
    box_re_min: f64,
    box_re_max: f64,
    box_im_min: f64,
    box_im_max: f64,
}

impl From<&ZeroRecord> for ZeroRow {
    fn from(z: &ZeroRecord) -> Self {
        Self {
            u: z.u,
            re: z.re,
            im: z.im,
            residual: z.residual,
            multiplicity: z.multiplicity,
            on_line: z.on_line,
            converged: z.converged,
            box_re_min: z.contour.re_min,
            box_re_max: z.contour.re_max,
            box_im_min: z.contour.im_min,
            box_im_max: z.contour.im_max,
        }
    }
}

/// Zero atlas of `ξ(u, ·)` in the upper half plane up to `tmax`.
pub fn zeros(out: &Output, u: f64, tmax: f64, full_strip: bool, ctx: &EvalContext) -> Result<(), CliError> {
    let zs = if full_strip {
        let h = zeroscan::strip_half_width(u);
        zeroscan::find_zeros(u, Rect::new(u / 2.0 - h, u / 2.0 + h, 0.25, tmax), ctx)?
    } else {
        zeroscan::critical_zeros(u, tmax, ctx)?
    };
    let rows: Vec<ZeroRow> = zs.iter().map(ZeroRow::from).collect();
    let plot = PlotSpec { title: "zeros", x_label: "Re s", y_label: "Im s", x_column: 2, y_column: 3 };
    out.emit(OutputFormat::Jsonl, &rows, Some(plot))
}

#[derive(Serialize)]
struct CountRow {
    u: f64,
    #[serde(rename = "T")]
    t: f64,
    #[serde(rename = "N")]
    n: i64,
    #[serde(rename = "half_N")]
    half_n: f64,
    main_term: f64,
    #[serde(rename = "S")]
    s: f64,
}

/// `N_u(T)` for each requested height.
pub fn count(out: &Output, u: f64, heights: &[f64], ctx: &EvalContext) -> Result<(), CliError> {
    let rows = heights
        .par_iter()
        .map(|&t| {
            let r = zeroscan::count_zeros(u, t, ctx)?;
            Ok(CountRow { u: r.u, t: r.t, n: r.n, half_n: r.n as f64 / 2.0, main_term: r.main_term, s: r.s_u_t })
        })
        .collect::<arakelov_zeta::Result<Vec<_>>>()?;
    let plot = PlotSpec { title: "zero counting remainder", x_label: "T", y_label: "S", x_column: 2, y_column: 6 };
    out.emit(OutputFormat::Csv, &rows, Some(plot))
}

#[derive(Serialize)]
struct TrackRow {
    record: &'static str,
    u: f64,
    re: f64,
    im: f64,
    on_line: Option<bool>,
    event: Option<String>,
}

/// Path of a tracked zero, followed by its events.
pub fn track(out: &Output, u0: f64, u1: f64, seed: Complex64, steps: usize, ctx: &EvalContext) -> Result<(), CliError> {
    let r = zeroscan::track_zero(u0, u1, seed, steps, ctx)?;
    let mut rows: Vec<TrackRow> = r
        .path
        .iter()
        .map(|p| TrackRow { record: "point", u: p.u, re: p.re, im: p.im, on_line: Some(p.on_line), event: None })
        .collect();
    for e in &r.events {
        let kind = serde_json::to_value(e.kind)?.as_str().unwrap_or_default().to_string();
        rows.push(TrackRow { record: "event", u: e.u, re: e.re, im: e.im, on_line: None, event: Some(kind) });
    }
    for (a, b) in r.off_line_intervals() {
        eprintln!("off the critical line for u in [{a:.4}, {b:.4}]");
    }
    if r.truncated {
        eprintln!("zero lost before reaching u = {u1}");
    }
    let plot = PlotSpec { title: "tracked zero", x_label: "u", y_label: "Re s - u/2", x_column: 2, y_column: 3 };
    out.emit(OutputFormat::Csv, &rows, Some(plot))
}

#[derive(Serialize)]
struct DensityRow {
    u: f64,
    v: f64,
    x: f64,
    re: f64,
    im: f64,
}

/// Samples of `ρ_{u,v}`; the trapezoidal mass is reported on stderr.
pub fn density(out: &Output, u: f64, v: f64, extent: Option<f64>, step: Option<f64>, ctx: &EvalContext) -> Result<(), CliError> {
    let (e0, h0) = semigroup::default_grid(u, v);
    let grid = semigroup::density_grid_with(u, v, extent.unwrap_or(e0), step.unwrap_or(h0), ctx)?;
    let mass = grid.mass();
    eprintln!("mass = {:.12} (|mass - 1| = {:.1e})", mass.re, (mass - 1.0).norm());
    let rows: Vec<DensityRow> = grid.samples.iter().map(|&(x, re, im)| DensityRow { u, v, x, re, im }).collect();
    let plot = PlotSpec { title: "density", x_label: "x", y_label: "rho", x_column: 3, y_column: 4 };
    out.emit(OutputFormat::Csv, &rows, Some(plot))
}

#[derive(Serialize)]
struct CoeffRow {
    m: usize,
    j: usize,
    coefficient: String,
}

/// Nonzero coefficients of `c*_m(w) = m!·c_m(w)` for `1 ≤ m ≤ order`.
pub fn coeffs(out: &Output, order: usize) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for m in 1..=order {
        let p = qseries::c_star(m)?;
        for (j, c) in p.coeffs.iter().enumerate() {
            if *c.numer() != 0.into() {
                rows.push(CoeffRow { m, j, coefficient: c.to_string() });
            }
        }
    }
    out.emit(OutputFormat::Csv, &rows, None)
}

#[derive(Serialize)]
struct FieldRow {
    discriminant: i64,
    w_k: u32,
    norm_form: String,
    eta_k: f64,
    genus_g: f64,
    genus_tilde: f64,
}

/// Invariants of one field or of every supported field.
pub fn field(out: &Output, discriminant: Option<i64>, ctx: &EvalContext) -> Result<(), CliError> {
    let ds: Vec<i64> = discriminant.map_or_else(|| SUPPORTED_DISCRIMINANTS.to_vec(), |d| vec![d]);
    let mut rows = Vec::new();
    for d in ds {
        let k = FieldDescriptor::new(d)?;
        let inv = numfield::invariants(&k, ctx)?;
        let (a, b, c) = k.norm_form;
        rows.push(FieldRow {
            discriminant: d,
            w_k: k.w_k,
            norm_form: format!("{a}m^2 + {b}mn + {c}n^2"),
            eta_k: inv.eta_k,
            genus_g: inv.genus_g,
            genus_tilde: inv.genus_tilde,
        });
    }
    out.emit(OutputFormat::Jsonl, &rows, None)
}

#[derive(Serialize)]
struct SignRow {
    discriminant: i64,
    t_lo: f64,
    t_hi: f64,
}

/// Brackets of sign changes of `ξ_K(0, it)` on `[0, tmax]`.
pub fn signs(out: &Output, discriminant: i64, tmax: f64, step: f64, ctx: &EvalContext) -> Result<(), CliError> {
    let k = FieldDescriptor::new(discriminant)?;
    let rows: Vec<SignRow> = numfield::sign_scan(&k, 0.0, tmax, step, ctx)?
        .into_iter()
        .map(|(a, b)| SignRow { discriminant, t_lo: a, t_hi: b })
        .collect();
    eprintln!("{} sign changes of xi_K(0, it) on [0, {tmax}]", rows.len());
    out.emit(OutputFormat::Jsonl, &rows, None)
}
