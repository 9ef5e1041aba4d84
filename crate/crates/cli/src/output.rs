//! File formats: self-describing CSV, polyline SVG and JSON reports.

use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use decoq::evolution::StateNorms;
use decoq::DecoherenceCurve64;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const CUTOFF_CONVENTION: &str =
    "J(w) = eta * w^s * exp(-w/omega_c): exponentially decaying cutoff; energies in ueV, time in units of hbar/ueV";

pub const FIXED_COLUMNS: [&str; 4] = ["t", "b_squared", "c_shift", "D"];

/// 17 significant digits: enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_metadata<W: Write>(w: &mut W, cfg: &RunConfig, extra: &[(String, String)]) -> std::io::Result<()> {
    writeln!(w, "# decoq {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# convention: {CUTOFF_CONVENTION}")?;
    for (k, v) in cfg.echo().iter().chain(extra) {
        writeln!(w, "# {k} = {v}")?;
    }
    Ok(())
}

pub fn write_curve_csv<W: Write>(mut w: W, curve: &DecoherenceCurve64, cfg: &RunConfig) -> Result<()> {
    write_metadata(&mut w, cfg, &[])?;
    let mut out = csv::Writer::from_writer(w);
    let header: Vec<String> = FIXED_COLUMNS
        .iter()
        .map(|s| s.to_string())
        .chain(curve.norms.iter().map(|n| format!("norm_{}", n.label)))
        .collect();
    out.write_record(&header)?;
    for i in 0..curve.len() {
        let row = [curve.times[i], curve.b_sq[i], curve.c[i], curve.d[i]]
            .into_iter()
            .chain(curve.norms.iter().map(|n| n.values[i]))
            .map(fmt_f64);
        out.write_record(row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_curve_csv<R: Read>(r: R) -> Result<DecoherenceCurve64> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
    let headers = rdr.headers()?.clone();
    if headers.len() < FIXED_COLUMNS.len() || headers.iter().zip(FIXED_COLUMNS).any(|(a, b)| a != b) {
        bail!("unexpected curve header: {headers:?}");
    }
    let mut norms: Vec<StateNorms<f64>> = headers
        .iter()
        .skip(FIXED_COLUMNS.len())
        .map(|h| StateNorms { label: h.strip_prefix("norm_").unwrap_or(h).to_string(), values: Vec::new() })
        .collect();
    let mut curve = DecoherenceCurve64 { times: vec![], b_sq: vec![], c: vec![], d: vec![], norms: vec![] };
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let vals: Vec<f64> = rec
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("curve row {line}"))?;
        if vals.len() != headers.len() {
            bail!("curve row {line} has {} fields, expected {}", vals.len(), headers.len());
        }
        curve.times.push(vals[0]);
        curve.b_sq.push(vals[1]);
        curve.c.push(vals[2]);
        curve.d.push(vals[3]);
        for (n, v) in norms.iter_mut().zip(&vals[4..]) {
            n.values.push(*v);
        }
    }
    curve.norms = std::mem::take(&mut norms);
    Ok(curve)
}

/// Line plot of `D` (dashed) and every state norm against `t`.
pub fn render_svg(curve: &DecoherenceCurve64, log_y: bool) -> String {
    const W: f64 = 720.0;
    const H: f64 = 480.0;
    const M: f64 = 64.0;
    const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

    let t_max = curve.times.last().copied().unwrap_or(1.0).max(f64::MIN_POSITIVE);
    let y_of = |v: f64| if log_y { v.max(1e-300).log10() } else { v };
    let positive = curve.d.iter().copied().filter(|v| *v > 0.0);
    let (y_lo, y_hi) = if log_y {
        let lo = positive.clone().fold(f64::INFINITY, f64::min);
        let hi = positive.fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() {
            (lo.log10().floor(), hi.log10().ceil().max(lo.log10().floor() + 1.0))
        } else {
            (-1.0, 0.0)
        }
    } else {
        (0.0, curve.d.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE) * 1.05)
    };
    let px = |t: f64| M + (W - 2.0 * M) * t / t_max;
    let py = |v: f64| {
        let y = ((y_of(v) - y_lo) / (y_hi - y_lo)).clamp(0.0, 1.0);
        H - M - (H - 2.0 * M) * y
    };
    let polyline = |values: &[f64]| {
        curve
            .times
            .iter()
            .zip(values)
            .filter(|(_, v)| !log_y || **v > 0.0)
            .map(|(t, v)| format!("{:.2},{:.2}", px(*t), py(*v)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    s.push_str(&format!("<rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"));
    s.push_str(&format!(
        "<rect x=\"{M}\" y=\"{M}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        W - 2.0 * M,
        H - 2.0 * M
    ));
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let t = t_max * f;
        s.push_str(&format!("<text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">{t:.3}</text>\n", px(t), H - M + 18.0));
        let yv = y_lo + (y_hi - y_lo) * f;
        let label = if log_y { format!("1e{yv:.1}") } else { format!("{yv:.2e}") };
        let ypix = H - M - (H - 2.0 * M) * f;
        s.push_str(&format!("<text x=\"{}\" y=\"{ypix:.2}\" text-anchor=\"end\">{label}</text>\n", M - 6.0));
    }
    s.push_str(&format!("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">t [hbar/ueV]</text>\n", W / 2.0, H - 16.0));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{}\" transform=\"rotate(-90 16 {})\" text-anchor=\"middle\">norm</text>\n",
        H / 2.0,
        H / 2.0
    ));

    s.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"6 4\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        polyline(&curve.d)
    ));
    let mut legend = vec![("D".to_string(), "black")];
    for (i, n) in curve.norms.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        s.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.2\" points=\"{}\"/>\n",
            polyline(&n.values)
        ));
        legend.push((n.label.clone(), color));
    }
    for (i, (label, color)) in legend.iter().enumerate() {
        let y = M + 16.0 + 16.0 * i as f64;
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"{color}\"/><text x=\"{}\" y=\"{}\">{label}</text>\n",
            M + 10.0,
            M + 30.0,
            M + 36.0,
            y + 4.0
        ));
    }
    s.push_str("</svg>\n");
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TldResults {
    pub tau_ld_units: Option<f64>,
    pub tau_ld_ps: Option<f64>,
    pub tau_g_units: f64,
    pub tau_g_ps: f64,
    /// `"tau_ld > tau_g"`, `"tau_ld <= tau_g"` or `"no crossing"`.
    pub verdict: String,
    pub reference_tau_ld_ps: f64,
    pub reference_tau_g_ps: f64,
    /// `(computed - reference) / reference`.
    pub tau_ld_rel_deviation: Option<f64>,
    pub tau_g_rel_deviation: f64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub convention: String,
    pub config: RunConfig,
    pub results: Option<TldResults>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(config: &RunConfig, results: Option<TldResults>, checks: Vec<CheckRecord>) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").into(),
            convention: CUTOFF_CONVENTION.into(),
            config: config.clone(),
            results,
            checks,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Header-first CSV with the same metadata block as the curve files.
pub fn write_table_csv<W: Write>(
    mut w: W,
    cfg: &RunConfig,
    extra_meta: &[(String, String)],
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    write_metadata(&mut w, cfg, extra_meta)?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for r in rows {
        out.write_record(r)?;
    }
    out.flush()?;
    Ok(())
}
