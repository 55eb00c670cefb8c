//! `orderfx`: predictions, fits, sweeps, effect classification and
//! self-verification for the projection models of question-order effects.
//!
//! [`run`] is the whole command line; the binary only wires it to the
//! process streams.

mod args;
mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;

use anyhow::{bail, Context, Result};
use clap::Parser;
use orderfx_core::classical::{self, ClassicalState};
use orderfx_core::datasets::{self, builtin_fit_targets, builtin_polls, effect_report, PollPair};
use orderfx_core::fitting::{fit_table_with, TableConfig};
use orderfx_core::projection::{total_second_prob, BeliefState};
use orderfx_core::search::SearchConfig;
use orderfx_core::sweep::sweep;
use orderfx_core::verify::{run_all, VerifyConfig};
use orderfx_core::{Direction, Model};
use serde::Serialize;

use crate::args::{
    ClassifyArgs, Cli, Command, Dataset, DatasetsArgs, FitArgs, Format, PredictArgs, SweepArgs,
    VerifyArgs,
};

pub const EXIT_SUCCESS: u8 = 0;
pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_VERIFY_FAILED: u8 = 2;

/// Parses `args` (program name first) and runs the subcommand.
///
/// Artifacts without `--output` go to `out`; diagnostics go to `err`.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_VALIDATION;
            }
            let _ = write!(out, "{text}");
            return EXIT_SUCCESS;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(true) => EXIT_SUCCESS,
        Ok(false) => EXIT_VERIFY_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_VALIDATION
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Predict(a) => predict(a, out),
        Command::Fit(a) => fit(a, out, err),
        Command::Sweep(a) => run_sweep(a, out),
        Command::Classify(a) => classify(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Datasets(a) => list_datasets(a, out),
    }
}

#[derive(Serialize)]
struct Prediction {
    model: Model,
    direction: Direction,
    s0: f64,
    theta0: f64,
    theta1: f64,
    phi: f64,
    probability: f64,
}

fn predict(a: PredictArgs, out: &mut dyn Write) -> Result<bool> {
    let model = Model::from(a.model);
    let direction = Direction::from(a.direction);
    let phi = a.phases.angle(a.phi);
    let (theta0, theta1) = a.phases.thetas();
    let probability = match model {
        Model::Quantum => {
            let state = BeliefState::with_weight(a.s0, theta0, theta1)?;
            total_second_prob(&state, phi, direction)?
        }
        Model::Classical => {
            if theta0 != 0.0 || theta1 != 0.0 {
                bail!("the classical model has no phases; drop --theta0/--theta1");
            }
            classical::total_second_prob(&ClassicalState::with_weight(a.s0)?, phi, direction)?
        }
    };
    let mut w = output::sink(a.output.output.as_deref(), out)?;
    match a.output.format {
        Format::Csv => {
            writeln!(w, "{probability:.6}")?;
            w.flush()?;
        }
        Format::Json => output::json(
            w,
            &Prediction {
                model,
                direction,
                s0: a.s0,
                theta0,
                theta1,
                phi,
                probability,
            },
        )?,
    }
    Ok(true)
}

fn read_polls(path: &std::path::Path) -> Result<Vec<PollPair>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    datasets::load_polls(file).with_context(|| format!("{}", path.display()))
}

fn fit(a: FitArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let polls = match (&a.input, a.dataset) {
        (Some(path), _) => read_polls(path)?,
        (None, Dataset::Builtin | Dataset::FitTargets) => builtin_fit_targets(),
        (None, Dataset::Polls) => builtin_polls(),
    };
    let (theta0, theta1) = a.phases.thetas();
    let config = TableConfig {
        assignment: a.assignment.into(),
        theta0,
        theta1,
        s0_policy: a.s0_policy.into(),
        search: SearchConfig {
            grid_step: a.grid_step,
            ..SearchConfig::default()
        },
    };
    let rows = fit_table_with(&polls, a.model.into(), &config)?;
    for r in &rows {
        for warning in &r.warnings {
            writeln!(
                err,
                "warning: {} ({}): {warning}",
                r.pair_name, r.ordering_label
            )?;
        }
    }
    let w = output::sink(a.output.output.as_deref(), out)?;
    match a.output.format {
        Format::Csv => output::fit_csv(w, &rows)?,
        Format::Json => output::fit_json(w, &rows)?,
    }
    Ok(true)
}

fn run_sweep(a: SweepArgs, out: &mut dyn Write) -> Result<bool> {
    let (theta0, theta1) = a.phases.thetas();
    let grid = sweep(a.direction.into(), a.phi_steps, a.s0_steps, theta0, theta1)?;
    let w = output::sink(a.output.output.as_deref(), out)?;
    match a.output.format {
        Format::Csv => output::sweep_csv(w, &grid)?,
        Format::Json => output::sweep_json(w, &grid)?,
    }
    Ok(true)
}

fn classify(a: ClassifyArgs, out: &mut dyn Write) -> Result<bool> {
    let polls = match (&a.input, a.dataset) {
        (Some(path), _) => read_polls(path)?,
        (None, Dataset::Builtin | Dataset::Polls) => builtin_polls(),
        (None, Dataset::FitTargets) => builtin_fit_targets(),
    };
    let reports: Vec<_> = polls.iter().map(effect_report).collect();
    let w = output::sink(a.output.output.as_deref(), out)?;
    match a.output.format {
        Format::Csv => output::effects_csv(w, &reports)?,
        Format::Json => output::json(w, &reports)?,
    }
    Ok(true)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    if a.draws == 0 {
        bail!("--draws must be at least 1");
    }
    let checks = run_all(&VerifyConfig {
        seed: a.seed,
        draws: a.draws,
    });
    let w = output::sink(a.output.output.as_deref(), out)?;
    match a.output.format {
        Format::Csv => output::checks_text(w, &checks)?,
        Format::Json => output::json(w, &checks)?,
    }
    Ok(checks.iter().all(|c| c.passed))
}

fn list_datasets(a: DatasetsArgs, out: &mut dyn Write) -> Result<bool> {
    let polls = match a.dataset {
        Dataset::Builtin | Dataset::Polls => builtin_polls(),
        Dataset::FitTargets => builtin_fit_targets(),
    };
    let mut w = output::sink(a.output.output.as_deref(), out)?;
    match a.output.format {
        Format::Csv => {
            datasets::write_polls(&mut w, &polls)?;
            w.flush()?;
        }
        Format::Json => output::json(w, &polls)?,
    }
    Ok(true)
}
