//! Classical projection model: the same two-basis geometry as
//! [`crate::projection`], but over real amplitudes `(sqrt(s0), sqrt(s1))`.
//!
//! This is a separate real-valued code path and shares no arithmetic with
//! the complex one, so the two can be checked against each other.

use nalgebra::{Matrix2, Vector2};

use crate::error::{ensure_finite, Error, Result};
use crate::{Answer, Direction, Question, NORMALIZATION_TOL};

/// Real belief vector `sqrt(s0)|Ay> + sqrt(s1)|An>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    vector: Vector2<f64>,
}

impl ClassicalState {
    pub fn new(s0: f64, s1: f64) -> Result<Self> {
        ensure_finite("s0", s0)?;
        ensure_finite("s1", s1)?;
        for (name, s) in [("s0", s0), ("s1", s1)] {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::OutOfRange { name, value: s });
            }
        }
        let sum = s0 + s1;
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization { sum });
        }
        Ok(Self {
            vector: Vector2::new(s0.sqrt(), s1.sqrt()),
        })
    }

    pub fn with_weight(s0: f64) -> Result<Self> {
        Self::new(s0, 1.0 - s0)
    }

    pub fn vector(&self) -> &Vector2<f64> {
        &self.vector
    }
}

fn basis_vector(question: Question, answer: Answer, phi: f64) -> Vector2<f64> {
    match (question, answer) {
        (Question::A, Answer::Yes) => Vector2::new(1.0, 0.0),
        (Question::A, Answer::No) => Vector2::new(0.0, 1.0),
        (Question::B, Answer::Yes) => Vector2::new(phi.cos(), phi.sin()),
        (Question::B, Answer::No) => Vector2::new(-phi.sin(), phi.cos()),
    }
}

/// Real projector `|v><v|` for `question = answer`, the `B` basis rotated by `phi`.
pub fn projector(question: Question, answer: Answer, phi: f64) -> Result<Matrix2<f64>> {
    ensure_finite("phi", phi)?;
    let v = basis_vector(question, answer, phi);
    Ok(v * v.transpose())
}

pub fn first_answer_prob(
    state: &ClassicalState,
    question: Question,
    answer: Answer,
    phi: f64,
) -> Result<f64> {
    Ok((projector(question, answer, phi)? * state.vector).norm_squared())
}

pub fn joint_prob(
    state: &ClassicalState,
    phi: f64,
    first: (Question, Answer),
    second: (Question, Answer),
) -> Result<f64> {
    if first.0 == second.0 {
        return Err(Error::SameBasis);
    }
    let p1 = projector(first.0, first.1, phi)?;
    let p2 = projector(second.0, second.1, phi)?;
    Ok((p2 * (p1 * state.vector)).norm_squared())
}

pub fn total_second_prob(state: &ClassicalState, phi: f64, direction: Direction) -> Result<f64> {
    let q1 = direction.first_question();
    let q2 = direction.second_question();
    let mut total = 0.0;
    for a1 in Answer::BOTH {
        total += joint_prob(state, phi, (q1, a1), (q2, Answer::Yes))?;
    }
    Ok(total)
}
