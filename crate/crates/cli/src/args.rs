use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orderfx_core::fitting::{DirectionAssignment, S0Policy};
use orderfx_core::{Direction, Model};

#[derive(Debug, Parser)]
#[command(
    name = "orderfx",
    version,
    about = "Projection models of question-order effects"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the total second-answer probability at one parameter point.
    Predict(PredictArgs),
    /// Fit the rotation angle to each poll ordering.
    Fit(FitArgs),
    /// Tabulate the probability surface over (phi, s0).
    Sweep(SweepArgs),
    /// Report effects and effect types for poll pairs.
    Classify(ClassifyArgs),
    /// Run the invariant suite; exits 2 if any check fails.
    Verify(VerifyArgs),
    /// List the built-in polls.
    Datasets(DatasetsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Quantum,
    Classical,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Quantum => Model::Quantum,
            ModelArg::Classical => Model::Classical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    #[value(name = "AthenB", alias = "athenb")]
    AthenB,
    #[value(name = "BthenA", alias = "bthena")]
    BthenA,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::AthenB => Direction::AthenB,
            DirectionArg::BthenA => Direction::BthenA,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dataset {
    /// `fit`: the published fit targets. Elsewhere: the fielded polls.
    Builtin,
    /// The poll tables as fielded.
    Polls,
    /// The first/second answer targets the published fit used.
    FitTargets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AssignmentArg {
    FirstBthena,
    FirstAthenb,
}

impl From<AssignmentArg> for DirectionAssignment {
    fn from(a: AssignmentArg) -> Self {
        match a {
            AssignmentArg::FirstBthena => DirectionAssignment::FirstBthenA,
            AssignmentArg::FirstAthenb => DirectionAssignment::FirstAthenB,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Pinned,
    Free,
}

impl From<PolicyArg> for S0Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Pinned => S0Policy::PinnedToObserved,
            PolicyArg::Free => S0Policy::Free,
        }
    }
}

fn finite(raw: &str) -> Result<f64, String> {
    let v: f64 = raw
        .parse()
        .map_err(|_| format!("`{raw}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{raw}` is not finite"))
    }
}

fn probability(raw: &str) -> Result<f64, String> {
    let v = finite(raw)?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

fn positive(raw: &str) -> Result<f64, String> {
    let v = finite(raw)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must be positive"))
    }
}

#[derive(Debug, Clone, Args)]
pub struct Phases {
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_negative_numbers = true)]
    pub theta0: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_negative_numbers = true)]
    pub theta1: f64,
    /// Read every angle flag in degrees instead of radians.
    #[arg(long)]
    pub degrees: bool,
}

impl Phases {
    pub fn angle(&self, value: f64) -> f64 {
        if self.degrees {
            value.to_radians()
        } else {
            value
        }
    }

    pub fn thetas(&self) -> (f64, f64) {
        (self.angle(self.theta0), self.angle(self.theta1))
    }
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of stdout. Relative paths resolve against
    /// $ORDERFX_OUTPUT_DIR when it is set.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PredictArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Quantum)]
    pub model: ModelArg,
    #[arg(long, value_parser = probability)]
    pub s0: f64,
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, value_enum, default_value_t = DirectionArg::AthenB)]
    pub direction: DirectionArg,
    #[command(flatten)]
    pub phases: Phases,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[arg(long, value_enum, default_value_t = Dataset::Builtin, conflicts_with = "input")]
    pub dataset: Dataset,
    /// Poll CSV to fit instead of a built-in dataset.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModelArg::Quantum)]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value_t = AssignmentArg::FirstBthena)]
    pub assignment: AssignmentArg,
    #[arg(long = "s0-policy", value_enum, default_value_t = PolicyArg::Pinned)]
    pub s0_policy: PolicyArg,
    /// Grid spacing of the angle search, in radians.
    #[arg(long, default_value_t = 1e-4, value_parser = positive)]
    pub grid_step: f64,
    #[command(flatten)]
    pub phases: Phases,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = DirectionArg::AthenB)]
    pub direction: DirectionArg,
    #[arg(long, default_value_t = orderfx_core::sweep::DEFAULT_PHI_STEPS)]
    pub phi_steps: usize,
    #[arg(long, default_value_t = orderfx_core::sweep::DEFAULT_S0_STEPS)]
    pub s0_steps: usize,
    #[command(flatten)]
    pub phases: Phases,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[arg(long, value_enum, default_value_t = Dataset::Builtin, conflicts_with = "input")]
    pub dataset: Dataset,
    /// Poll CSV or fit table to classify.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = orderfx_core::verify::VerifyConfig::default().seed)]
    pub seed: u64,
    #[arg(long, default_value_t = orderfx_core::verify::VerifyConfig::default().draws)]
    pub draws: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct DatasetsArgs {
    #[arg(long, value_enum, default_value_t = Dataset::Builtin)]
    pub dataset: Dataset,
    #[command(flatten)]
    pub output: Output,
}
