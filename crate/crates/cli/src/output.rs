//! CSV and JSON emitters for each subcommand's artifact.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use orderfx_core::datasets::EffectReport;
use orderfx_core::fitting::FitResult;
use orderfx_core::sweep::SweepGrid;
use orderfx_core::verify::Check;
use serde::Serialize;

pub const OUTPUT_DIR_ENV: &str = "ORDERFX_OUTPUT_DIR";

pub const FIT_HEADER: [&str; 10] = [
    "pair",
    "ordering",
    "model",
    "direction",
    "s0",
    "phi_star",
    "predicted_p1",
    "predicted_p2",
    "residual",
    "minima",
];

fn fixed(x: f64) -> String {
    // Avoid printing "-0.000000".
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Opens the destination: a file when a path is given, `fallback` otherwise.
pub fn sink<'a>(path: Option<&Path>, fallback: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => {
            let p = resolve(p);
            let file =
                File::create(&p).with_context(|| format!("cannot create {}", p.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(fallback),
    })
}

pub fn json<T: Serialize + ?Sized, W: Write>(mut w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct FitRow<'a> {
    pair: &'a str,
    ordering: &'a str,
    model: String,
    direction: String,
    s0: f64,
    phi_star: f64,
    predicted_p1: f64,
    predicted_p2: f64,
    residual: f64,
    minima: &'a [f64],
}

impl<'a> From<&'a FitResult> for FitRow<'a> {
    fn from(r: &'a FitResult) -> Self {
        Self {
            pair: &r.pair_name,
            ordering: &r.ordering_label,
            model: r.model.to_string(),
            direction: r.direction.to_string(),
            s0: r.s0,
            phi_star: r.phi_star,
            predicted_p1: r.predicted_p_first,
            predicted_p2: r.predicted_p_second,
            residual: r.residual,
            minima: &r.minima,
        }
    }
}

pub fn fit_csv<W: Write>(w: W, rows: &[FitResult]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(FIT_HEADER)?;
    for r in rows {
        let minima: Vec<String> = r.minima.iter().map(|&m| fixed(m)).collect();
        out.write_record([
            r.pair_name.clone(),
            r.ordering_label.clone(),
            r.model.to_string(),
            r.direction.to_string(),
            fixed(r.s0),
            fixed(r.phi_star),
            fixed(r.predicted_p_first),
            fixed(r.predicted_p_second),
            fixed(r.residual),
            minima.join(";"),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn fit_json<W: Write>(w: W, rows: &[FitResult]) -> Result<()> {
    let rows: Vec<FitRow> = rows.iter().map(FitRow::from).collect();
    json(w, &rows)
}

pub fn sweep_csv<W: Write>(mut w: W, grid: &SweepGrid) -> Result<()> {
    writeln!(
        w,
        "# direction={} theta0={} theta1={}",
        grid.direction,
        fixed(grid.theta0),
        fixed(grid.theta1)
    )?;
    writeln!(w, "phi,s0,probability")?;
    for (phi, s0, p) in grid.points() {
        writeln!(w, "{},{},{}", fixed(phi), fixed(s0), fixed(p))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SweepPoint {
    phi: f64,
    s0: f64,
    probability: f64,
}

#[derive(Serialize)]
struct SweepDoc {
    direction: String,
    theta0: f64,
    theta1: f64,
    points: Vec<SweepPoint>,
}

pub fn sweep_json<W: Write>(w: W, grid: &SweepGrid) -> Result<()> {
    let doc = SweepDoc {
        direction: grid.direction.to_string(),
        theta0: grid.theta0,
        theta1: grid.theta1,
        points: grid
            .points()
            .map(|(phi, s0, probability)| SweepPoint {
                phi,
                s0,
                probability,
            })
            .collect(),
    };
    json(w, &doc)
}

pub fn effects_csv<W: Write>(w: W, reports: &[EffectReport]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "pair",
        "effect_first",
        "effect_second",
        "noncomparative_gap",
        "comparative_gap",
        "classification",
    ])?;
    for r in reports {
        out.write_record([
            r.pair_name.clone(),
            fixed(r.effects[0]),
            fixed(r.effects[1]),
            fixed(r.noncomparative_gap),
            fixed(r.comparative_gap),
            r.classification.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn checks_text<W: Write>(mut w: W, checks: &[Check]) -> Result<()> {
    for c in checks {
        writeln!(
            w,
            "{} {:<32} worst={:.3e} tol={:.0e}  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.worst,
            c.tolerance,
            c.detail
        )?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(w, "{} checks, {} failed", checks.len(), failed)?;
    w.flush()?;
    Ok(())
}
