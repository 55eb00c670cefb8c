//! `phi x s0` probability surfaces of the quantum model, with `s1 = 1 - s0`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::projection::{total_second_prob, BeliefState};
use crate::Direction;

pub const DEFAULT_PHI_STEPS: usize = 629;
pub const DEFAULT_S0_STEPS: usize = 101;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub direction: Direction,
    pub theta0: f64,
    pub theta1: f64,
    /// Uniform over `[0, 2pi]`, both ends included.
    pub phi_axis: Vec<f64>,
    /// Uniform over `[0, 1]`, both ends included.
    pub s0_axis: Vec<f64>,
    /// `values[i][j]` is the probability at `(phi_axis[i], s0_axis[j])`.
    pub values: Vec<Vec<f64>>,
}

impl SweepGrid {
    pub fn value(&self, phi_index: usize, s0_index: usize) -> f64 {
        self.values[phi_index][s0_index]
    }

    /// Values along the `s0` axis at one `phi`.
    pub fn column(&self, phi_index: usize) -> &[f64] {
        &self.values[phi_index]
    }

    /// Index of the grid angle nearest `phi`.
    pub fn nearest_phi(&self, phi: f64) -> usize {
        let step = TAU / (self.phi_axis.len() - 1) as f64;
        ((phi / step).round() as usize).min(self.phi_axis.len() - 1)
    }

    /// `(phi, s0, probability)` in row-major order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.phi_axis
            .iter()
            .zip(&self.values)
            .flat_map(move |(&phi, row)| {
                self.s0_axis
                    .iter()
                    .zip(row)
                    .map(move |(&s0, &p)| (phi, s0, p))
            })
    }
}

fn linspace(end: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps).map(|i| end * i as f64 / last).collect()
}

pub fn sweep(
    direction: Direction,
    phi_steps: usize,
    s0_steps: usize,
    theta0: f64,
    theta1: f64,
) -> Result<SweepGrid> {
    for steps in [phi_steps, s0_steps] {
        if steps < 2 {
            return Err(Error::TooFewSteps(steps));
        }
    }
    ensure_finite("theta0", theta0)?;
    ensure_finite("theta1", theta1)?;
    let phi_axis = linspace(TAU, phi_steps);
    let s0_axis = linspace(1.0, s0_steps);
    let states = s0_axis
        .iter()
        .map(|&s0| BeliefState::new(s0, 1.0 - s0, theta0, theta1))
        .collect::<Result<Vec<_>>>()?;
    let values = phi_axis
        .iter()
        .map(|&phi| {
            states
                .iter()
                .map(|state| total_second_prob(state, phi, direction))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepGrid {
        direction,
        theta0,
        theta1,
        phi_axis,
        s0_axis,
        values,
    })
}
