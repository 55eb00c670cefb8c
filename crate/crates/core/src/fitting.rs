//! Recovery of the rotation angle that reproduces an observed second answer.
//!
//! The objective is `(model_p_second(phi) - observed_p_second)^2`, searched
//! over `[0, 2pi)` with [`crate::search::periodic_minima`]. By default `s0`
//! is pinned to the observed first-answer probability and reported as the
//! predicted first answer. Note that for a `BthenA` ordering the model's own
//! first answer would be `|<By|S>|^2`, not `s0`. The pinned convention
//! reproduces the published fit table; [`S0Policy::Free`] uses the model's
//! first answer instead.

use serde::{Deserialize, Serialize};

use crate::classical::{self, ClassicalState};
use crate::datasets::{Experiment, PollPair};
use crate::error::{ensure_finite, Error, Result};
use crate::projection::{self, BeliefState, Projector};
use crate::search::{golden_section, periodic_minima, SearchConfig};
use crate::{Answer, Direction, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum S0Policy {
    PinnedToObserved,
    Free,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitTarget {
    pub experiment: Experiment,
    pub model: Model,
    pub direction: Direction,
    /// Phases of the belief state; ignored by the classical model.
    pub theta0: f64,
    pub theta1: f64,
    pub s0_policy: S0Policy,
}

impl FitTarget {
    /// Pinned-`s0` target with zero phases.
    pub fn new(experiment: Experiment, model: Model, direction: Direction) -> Self {
        Self {
            experiment,
            model,
            direction,
            theta0: 0.0,
            theta1: 0.0,
            s0_policy: S0Policy::PinnedToObserved,
        }
    }

    pub fn with_phases(mut self, theta0: f64, theta1: f64) -> Self {
        self.theta0 = theta0;
        self.theta1 = theta1;
        self
    }

    pub fn with_policy(mut self, policy: S0Policy) -> Self {
        self.s0_policy = policy;
        self
    }

    /// Model probability of `yes` to the second question.
    pub fn model_p_second(&self, s0: f64, phi: f64) -> f64 {
        model_second_prob(
            self.model,
            s0,
            self.theta0,
            self.theta1,
            phi,
            self.direction,
        )
    }

    /// Model probability of `yes` to the first question.
    pub fn model_p_first(&self, s0: f64, phi: f64) -> f64 {
        match self.direction {
            Direction::AthenB => s0,
            Direction::BthenA => match self.model {
                Model::Quantum => {
                    let state = quantum_state(s0, self.theta0, self.theta1);
                    let by = Projector::for_question(crate::Question::B, Answer::Yes, phi)
                        .expect("finite angle");
                    projection::first_answer_prob(&state, &by)
                }
                Model::Classical => {
                    let state = ClassicalState::with_weight(s0).expect("s0 in [0, 1]");
                    classical::first_answer_prob(&state, crate::Question::B, Answer::Yes, phi)
                        .expect("finite angle")
                }
            },
        }
    }

    /// Squared error of the second answer at `(s0, phi)`.
    pub fn objective(&self, s0: f64, phi: f64) -> f64 {
        (self.model_p_second(s0, phi) - self.experiment.p_second).powi(2)
    }

    fn validate(&self) -> Result<()> {
        ensure_finite("theta0", self.theta0)?;
        ensure_finite("theta1", self.theta1)?;
        let e = &self.experiment;
        for (name, p) in [("p_first", e.p_first), ("p_second", e.p_second)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::OutOfRange { name, value: p });
            }
        }
        if self.s0_policy == S0Policy::PinnedToObserved && !(e.p_first > 0.0 && e.p_first < 1.0) {
            return Err(Error::InvalidTarget(format!(
                "pinned s0 must lie in (0, 1), got {}",
                e.p_first
            )));
        }
        Ok(())
    }
}

fn quantum_state(s0: f64, theta0: f64, theta1: f64) -> BeliefState {
    BeliefState::with_weight(s0, theta0, theta1).expect("s0 in [0, 1] and finite phases")
}

/// Total second-answer probability under either model.
///
/// Panics if `s0` lies outside `[0, 1]` or an angle is not finite.
pub fn model_second_prob(
    model: Model,
    s0: f64,
    theta0: f64,
    theta1: f64,
    phi: f64,
    direction: Direction,
) -> f64 {
    match model {
        Model::Quantum => {
            projection::total_second_prob(&quantum_state(s0, theta0, theta1), phi, direction)
        }
        Model::Classical => classical::total_second_prob(
            &ClassicalState::with_weight(s0).expect("s0 in [0, 1]"),
            phi,
            direction,
        ),
    }
    .expect("finite angle and distinct bases")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub pair_name: String,
    pub ordering_label: String,
    pub model: Model,
    pub direction: Direction,
    /// Belief weight used by the fit.
    pub s0: f64,
    /// Smallest global minimiser.
    pub phi_star: f64,
    pub predicted_p_first: f64,
    pub predicted_p_second: f64,
    pub observed_p_second: f64,
    /// `|predicted_p_second - observed_p_second|`.
    pub residual: f64,
    /// Minimum value of the squared-error objective.
    pub objective: f64,
    /// All global minimisers, ascending.
    pub minima: Vec<f64>,
    pub warnings: Vec<String>,
}

pub fn fit_phi(target: &FitTarget) -> Result<FitResult> {
    fit_phi_with(target, &SearchConfig::default())
}

pub fn fit_phi_with(target: &FitTarget, config: &SearchConfig) -> Result<FitResult> {
    target.validate()?;
    let e = &target.experiment;
    let mut warnings = Vec::new();
    let s0 = match target.s0_policy {
        S0Policy::PinnedToObserved => e.p_first,
        S0Policy::Free => {
            if e.p_first == 0.0 || e.p_first == 1.0 {
                warnings.push(format!(
                    "observed first answer {} is on the boundary; free s0 is weakly identified",
                    e.p_first
                ));
            }
            free_s0(target)
        }
    };

    let minima = periodic_minima(|phi| target.objective(s0, phi), config);
    let phi_star = minima.points[0];
    let predicted_p_second = target.model_p_second(s0, phi_star);
    let predicted_p_first = match target.s0_policy {
        S0Policy::PinnedToObserved => s0,
        S0Policy::Free => target.model_p_first(s0, phi_star),
    };
    Ok(FitResult {
        pair_name: e.pair_name.clone(),
        ordering_label: e.ordering_label.clone(),
        model: target.model,
        direction: target.direction,
        s0,
        phi_star,
        predicted_p_first,
        predicted_p_second,
        observed_p_second: e.p_second,
        residual: (predicted_p_second - e.p_second).abs(),
        objective: minima.value,
        minima: minima.points,
        warnings,
    })
}

// Joint squared error of both answers over (s0, phi): coarse grid, then a few
// rounds of coordinate-wise golden-section refinement.
fn free_s0(target: &FitTarget) -> f64 {
    let e = &target.experiment;
    let joint = |s0: f64, phi: f64| {
        (target.model_p_first(s0, phi) - e.p_first).powi(2) + target.objective(s0, phi)
    };
    let s0_step = 1e-2;
    let phi_step = 1e-3;
    let mut best = (e.p_first, 0.0, f64::INFINITY);
    for i in 0..=100 {
        let s0 = i as f64 * s0_step;
        let mut phi = 0.0;
        while phi < std::f64::consts::TAU {
            let v = joint(s0, phi);
            if v < best.2 {
                best = (s0, phi, v);
            }
            phi += phi_step;
        }
    }
    let (mut s0, mut phi, _) = best;
    for _ in 0..20 {
        phi = golden_section(|p| joint(s0, p), phi - phi_step, phi + phi_step, 1e-10).0;
        let lo = (s0 - s0_step).max(0.0);
        let hi = (s0 + s0_step).min(1.0);
        s0 = golden_section(|s| joint(s, phi), lo, hi, 1e-10).0;
    }
    s0.clamp(0.0, 1.0)
}

/// Which total-probability form each ordering of a pair is fitted with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DirectionAssignment {
    /// First-listed ordering uses `BthenA`, second uses `AthenB`. Reproduces
    /// the published fit table.
    #[default]
    FirstBthenA,
    FirstAthenB,
}

impl DirectionAssignment {
    pub fn directions(self) -> [Direction; 2] {
        match self {
            DirectionAssignment::FirstBthenA => [Direction::BthenA, Direction::AthenB],
            DirectionAssignment::FirstAthenB => [Direction::AthenB, Direction::BthenA],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableConfig {
    pub assignment: DirectionAssignment,
    pub theta0: f64,
    pub theta1: f64,
    pub s0_policy: S0Policy,
    pub search: SearchConfig,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            assignment: DirectionAssignment::default(),
            theta0: 0.0,
            theta1: 0.0,
            s0_policy: S0Policy::PinnedToObserved,
            search: SearchConfig::default(),
        }
    }
}

/// One fit per ordering, pairs in input order.
pub fn fit_table(polls: &[PollPair], model: Model) -> Result<Vec<FitResult>> {
    fit_table_with(polls, model, &TableConfig::default())
}

pub fn fit_table_with(
    polls: &[PollPair],
    model: Model,
    config: &TableConfig,
) -> Result<Vec<FitResult>> {
    let directions = config.assignment.directions();
    polls
        .iter()
        .flat_map(|pair| pair.orderings().into_iter().zip(directions))
        .map(|(experiment, direction)| {
            let target = FitTarget::new(experiment.clone(), model, direction)
                .with_phases(config.theta0, config.theta1)
                .with_policy(config.s0_policy);
            fit_phi_with(&target, &config.search)
        })
        .collect()
}
