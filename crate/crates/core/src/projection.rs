//! Quantum projection model over a two-dimensional complex Hilbert space.
//!
//! Question `A` is answered in the standard basis `{|Ay>, |An>}`. Question
//! `B` is answered in the basis obtained by rotating it through `phi`:
//!
//! ```text
//! |By> = R(phi)|Ay> = ( cos phi, sin phi)
//! |Bn> = R(phi)|An> = (-sin phi, cos phi)
//! ```
//!
//! Every probability here is computed as the squared norm of a sequence of
//! projections applied to the belief state. No simplified trigonometric
//! form is used; see [`crate::closed_form`] for those.

use std::f64::consts::TAU;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::{Answer, Direction, Question, NORMALIZATION_TOL};

/// Wraps an angle into `[0, 2pi)`.
pub fn canonical_angle(phi: f64) -> f64 {
    let wrapped = phi.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly TAU.
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

/// `[[cos phi, -sin phi], [sin phi, cos phi]]`; its columns are `|By>` and `|Bn>`.
pub fn rotation_matrix(phi: f64) -> Result<Matrix2<f64>> {
    ensure_finite("phi", phi)?;
    let (sin, cos) = phi.sin_cos();
    Ok(Matrix2::new(cos, -sin, sin, cos))
}

/// Angle of the rotated answer basis relative to the standard one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationBasis {
    phi: f64,
}

impl RotationBasis {
    pub fn new(phi: f64) -> Result<Self> {
        ensure_finite("phi", phi)?;
        Ok(Self {
            phi: canonical_angle(phi),
        })
    }

    /// Canonical angle in `[0, 2pi)`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        let (sin, cos) = self.phi.sin_cos();
        Matrix2::new(cos, -sin, sin, cos)
    }

    pub fn vector(&self, answer: Answer) -> Vector2<f64> {
        let (sin, cos) = self.phi.sin_cos();
        match answer {
            Answer::Yes => Vector2::new(cos, sin),
            Answer::No => Vector2::new(-sin, cos),
        }
    }
}

/// Pre-answer belief state `sqrt(s0) e^{i theta0}|Ay> + sqrt(s1) e^{i theta1}|An>`.
///
/// Amplitudes are stored in Cartesian form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeliefState {
    amplitudes: Vector2<Complex64>,
}

impl BeliefState {
    /// Builds the state from answer weights and phases.
    ///
    /// A classical (real) state is the `theta0 = theta1 = 0` case.
    pub fn new(s0: f64, s1: f64, theta0: f64, theta1: f64) -> Result<Self> {
        ensure_finite("s0", s0)?;
        ensure_finite("s1", s1)?;
        ensure_finite("theta0", theta0)?;
        ensure_finite("theta1", theta1)?;
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
            amplitudes: Vector2::new(
                Complex64::from_polar(s0.sqrt(), theta0),
                Complex64::from_polar(s1.sqrt(), theta1),
            ),
        })
    }

    /// Convenience for the usual `s1 = 1 - s0` parameterisation.
    pub fn with_weight(s0: f64, theta0: f64, theta1: f64) -> Result<Self> {
        Self::new(s0, 1.0 - s0, theta0, theta1)
    }

    /// Wraps raw amplitudes, checking unit norm within 1e-9.
    pub fn from_amplitudes(a0: Complex64, a1: Complex64) -> Result<Self> {
        for (name, a) in [("a0", a0), ("a1", a1)] {
            ensure_finite(name, a.re)?;
            ensure_finite(name, a.im)?;
        }
        let sum = a0.norm_sqr() + a1.norm_sqr();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization { sum });
        }
        Ok(Self {
            amplitudes: Vector2::new(a0, a1),
        })
    }

    pub fn amplitudes(&self) -> &Vector2<Complex64> {
        &self.amplitudes
    }

    /// `(|a0|^2, |a1|^2)`.
    pub fn weights(&self) -> (f64, f64) {
        (self.amplitudes[0].norm_sqr(), self.amplitudes[1].norm_sqr())
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// Applies a real 2x2 matrix to the amplitude vector.
    pub fn transformed(&self, matrix: &Matrix2<f64>) -> Self {
        Self {
            amplitudes: matrix.map(Complex64::from) * self.amplitudes,
        }
    }
}

/// The answer basis a projector is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Basis {
    Standard,
    Rotated(RotationBasis),
}

impl Basis {
    pub fn rotated(phi: f64) -> Result<Self> {
        RotationBasis::new(phi).map(Basis::Rotated)
    }

    pub fn vector(&self, answer: Answer) -> Vector2<f64> {
        match self {
            Basis::Standard => match answer {
                Answer::Yes => Vector2::new(1.0, 0.0),
                Answer::No => Vector2::new(0.0, 1.0),
            },
            Basis::Rotated(r) => r.vector(answer),
        }
    }

    /// True when both tags name the same basis.
    fn same_tag(&self, other: &Basis) -> bool {
        match (self, other) {
            (Basis::Standard, Basis::Standard) => true,
            (Basis::Rotated(a), Basis::Rotated(b)) => a.phi() == b.phi(),
            _ => false,
        }
    }
}

/// Rank-one orthogonal projector `|v><v|` onto an answer subspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projector {
    matrix: Matrix2<Complex64>,
    basis: Basis,
    answer: Answer,
}

impl Projector {
    pub fn new(basis: Basis, answer: Answer) -> Self {
        let v = basis.vector(answer).map(Complex64::from);
        Self {
            matrix: v * v.adjoint(),
            basis,
            answer,
        }
    }

    /// Projector for `question = answer` with the `B` basis rotated by `phi`.
    pub fn for_question(question: Question, answer: Answer, phi: f64) -> Result<Self> {
        let basis = match question {
            Question::A => Basis::Standard,
            Question::B => Basis::rotated(phi)?,
        };
        Ok(Self::new(basis, answer))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.matrix
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn answer(&self) -> Answer {
        self.answer
    }

    pub fn apply(&self, amplitudes: &Vector2<Complex64>) -> Vector2<Complex64> {
        self.matrix * amplitudes
    }
}

/// Projector onto `answer` in `basis`.
pub fn projector(basis: Basis, answer: Answer) -> Projector {
    Projector::new(basis, answer)
}

/// One answered two-question sequence and its probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SequenceOutcome {
    pub first: (Question, Answer),
    pub second: (Question, Answer),
    pub probability: f64,
}

/// `||P|S>||^2`.
pub fn first_answer_prob(state: &BeliefState, p: &Projector) -> f64 {
    p.apply(state.amplitudes()).norm_squared()
}

/// `||P_second P_first |S>||^2`.
pub fn joint_prob(state: &BeliefState, first: &Projector, second: &Projector) -> Result<f64> {
    if first.basis.same_tag(&second.basis) {
        return Err(Error::SameBasis);
    }
    let projected = second.apply(&first.apply(state.amplitudes()));
    Ok(projected.norm_squared())
}

/// Joint probability over the Lüders-rule conditioning event `first`.
pub fn conditional_prob(state: &BeliefState, first: &Projector, second: &Projector) -> Result<f64> {
    let joint = joint_prob(state, first, second)?;
    let marginal = first_answer_prob(state, first);
    if marginal <= 1e-12 {
        return Err(Error::UndefinedConditional {
            probability: marginal,
        });
    }
    Ok((joint / marginal).clamp(0.0, 1.0))
}

/// All four answer sequences for the given question order.
pub fn sequence_outcomes(
    state: &BeliefState,
    phi: f64,
    direction: Direction,
) -> Result<[SequenceOutcome; 4]> {
    let q1 = direction.first_question();
    let q2 = direction.second_question();
    let mut out = [SequenceOutcome {
        first: (q1, Answer::Yes),
        second: (q2, Answer::Yes),
        probability: 0.0,
    }; 4];
    let mut k = 0;
    for a1 in Answer::BOTH {
        let p1 = Projector::for_question(q1, a1, phi)?;
        for a2 in Answer::BOTH {
            let p2 = Projector::for_question(q2, a2, phi)?;
            out[k] = SequenceOutcome {
                first: (q1, a1),
                second: (q2, a2),
                probability: joint_prob(state, &p1, &p2)?,
            };
            k += 1;
        }
    }
    Ok(out)
}

/// Total probability of answering `yes` to the second question of the
/// sequence, summed over both answers to the first.
///
/// `AthenB` gives `Pr(A -> By)`, `BthenA` gives `Pr(B -> Ay)`.
pub fn total_second_prob(state: &BeliefState, phi: f64, direction: Direction) -> Result<f64> {
    let q1 = direction.first_question();
    let second = Projector::for_question(direction.second_question(), Answer::Yes, phi)?;
    let mut total = 0.0;
    for a1 in Answer::BOTH {
        let first = Projector::for_question(q1, a1, phi)?;
        total += joint_prob(state, &first, &second)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    fn close(m: &Matrix2<Complex64>, n: &Matrix2<Complex64>) -> bool {
        (m - n).iter().all(|z| z.norm() < 1e-12)
    }

    #[test]
    fn rotation_matrix_examples() {
        assert_eq!(rotation_matrix(0.0).unwrap(), Matrix2::identity());
        let q = rotation_matrix(FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(q, Matrix2::new(0.0, -1.0, 1.0, 0.0), epsilon = 1e-15);
        let h = rotation_matrix(FRAC_PI_4).unwrap();
        for (x, sign) in h.iter().zip([1.0, 1.0, -1.0, 1.0]) {
            assert_abs_diff_eq!(*x, sign * 0.5f64.sqrt(), epsilon = 1e-8);
        }
        assert!(matches!(
            rotation_matrix(f64::NAN),
            Err(Error::NonFinite { .. })
        ));
        assert!(rotation_matrix(f64::INFINITY).is_err());
    }

    #[test]
    fn rotation_basis_is_orthogonal_with_unit_determinant() {
        for phi in [-7.0, -0.3, 0.0, 1.0, 2.5, 4.0, 6.2, 50.0] {
            let r = RotationBasis::new(phi).unwrap();
            assert!((0.0..TAU).contains(&r.phi()));
            let m = r.matrix();
            assert_abs_diff_eq!(m.transpose() * m, Matrix2::identity(), epsilon = 1e-12);
            assert_abs_diff_eq!(m.determinant(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn canonical_angle_wraps_into_half_open_interval() {
        assert_eq!(canonical_angle(TAU), 0.0);
        assert_eq!(canonical_angle(-1e-300), 0.0);
        assert_abs_diff_eq!(
            canonical_angle(-FRAC_PI_2),
            3.0 * FRAC_PI_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn make_state_examples() {
        let s = BeliefState::new(0.7, 0.3, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(s.amplitudes()[0].re, 0.83666, epsilon = 1e-5);
        assert_abs_diff_eq!(s.amplitudes()[1].re, 0.54772, epsilon = 1e-5);
        assert_abs_diff_eq!(s.norm_squared(), 1.0, epsilon = 1e-12);

        let ay = BeliefState::new(1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(ay.amplitudes()[0], Complex64::new(1.0, 0.0));
        assert_eq!(ay.amplitudes()[1], Complex64::new(0.0, 0.0));

        let phased = BeliefState::new(0.5, 0.5, FRAC_PI_3, FRAC_PI_6).unwrap();
        let (w0, w1) = phased.weights();
        assert_abs_diff_eq!(w0, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(w1, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn make_state_rejects_bad_weights() {
        assert!(matches!(
            BeliefState::new(0.7, 0.4, 0.0, 0.0),
            Err(Error::Normalization { .. })
        ));
        assert!(matches!(
            BeliefState::new(-0.1, 1.1, 0.0, 0.0),
            Err(Error::OutOfRange { name: "s0", .. })
        ));
        assert!(BeliefState::new(0.7, 0.3 + 5e-10, 0.0, 0.0).is_ok());
        assert!(BeliefState::new(0.5, 0.5, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn projector_examples() {
        let ay = projector(Basis::Standard, Answer::Yes);
        let expected = Matrix2::new(1.0, 0.0, 0.0, 0.0).map(Complex64::from);
        assert!(close(ay.matrix(), &expected));

        let by = projector(Basis::rotated(FRAC_PI_4).unwrap(), Answer::Yes);
        for z in by.matrix().iter() {
            assert_abs_diff_eq!(z.re, 0.5, epsilon = 1e-15);
            assert_eq!(z.im, 0.0);
        }

        assert_eq!(
            projector(Basis::rotated(0.0).unwrap(), Answer::No).matrix(),
            projector(Basis::Standard, Answer::No).matrix()
        );
    }

    #[test]
    fn projector_invariants_hold_for_any_angle() {
        let id = Matrix2::<Complex64>::identity();
        for phi in [0.0, 0.1, 1.3, PI, 4.4, 6.0] {
            let basis = Basis::rotated(phi).unwrap();
            let yes = projector(basis, Answer::Yes);
            let no = projector(basis, Answer::No);
            for p in [yes, no] {
                let m = p.matrix();
                assert!(close(&(m * m), m), "idempotent");
                assert!(close(&m.adjoint(), m), "hermitian");
                assert!((m.trace() - Complex64::from(1.0)).norm() < 1e-12);
            }
            assert!(close(&(yes.matrix() + no.matrix()), &id));
        }
    }

    #[test]
    fn first_answer_examples() {
        let s = BeliefState::new(0.7, 0.3, 0.0, 0.0).unwrap();
        let ay = projector(Basis::Standard, Answer::Yes);
        assert_abs_diff_eq!(first_answer_prob(&s, &ay), 0.7, epsilon = 1e-12);
        let by = projector(Basis::rotated(FRAC_PI_4).unwrap(), Answer::Yes);
        assert_abs_diff_eq!(first_answer_prob(&s, &by), 0.9583, epsilon = 5e-5);
        assert_abs_diff_eq!(
            first_answer_prob(&s, &by),
            0.5 + 0.21f64.sqrt(),
            epsilon = 1e-12
        );
        for s0 in [0.0, 0.2, 0.45, 1.0] {
            let st = BeliefState::with_weight(s0, 0.4, 2.0).unwrap();
            let by0 = projector(Basis::rotated(0.0).unwrap(), Answer::Yes);
            assert_abs_diff_eq!(first_answer_prob(&st, &by0), s0, epsilon = 1e-12);
        }
    }

    #[test]
    fn joint_examples() {
        let s = BeliefState::new(0.7, 0.3, 0.0, 0.0).unwrap();
        let ay = projector(Basis::Standard, Answer::Yes);
        let an = projector(Basis::Standard, Answer::No);
        let by = projector(Basis::rotated(FRAC_PI_4).unwrap(), Answer::Yes);
        assert_abs_diff_eq!(joint_prob(&s, &ay, &by).unwrap(), 0.35, epsilon = 1e-12);
        assert_abs_diff_eq!(joint_prob(&s, &an, &by).unwrap(), 0.15, epsilon = 1e-12);

        let by0 = projector(Basis::rotated(0.0).unwrap(), Answer::Yes);
        let st = BeliefState::new(0.3, 0.7, 1.0, -2.0).unwrap();
        assert_abs_diff_eq!(
            joint_prob(&st, &ay, &by0).unwrap(),
            first_answer_prob(&st, &ay),
            epsilon = 1e-12
        );
    }

    #[test]
    fn joint_rejects_same_basis() {
        let s = BeliefState::new(0.7, 0.3, 0.0, 0.0).unwrap();
        let ay = projector(Basis::Standard, Answer::Yes);
        let an = projector(Basis::Standard, Answer::No);
        assert_eq!(joint_prob(&s, &ay, &an), Err(Error::SameBasis));
        let b1 = projector(Basis::rotated(1.0).unwrap(), Answer::Yes);
        let b2 = projector(Basis::rotated(1.0 + TAU).unwrap(), Answer::No);
        assert_eq!(joint_prob(&s, &b1, &b2), Err(Error::SameBasis));
        let b3 = projector(Basis::rotated(2.0).unwrap(), Answer::No);
        assert!(joint_prob(&s, &b1, &b3).is_ok());
    }

    #[test]
    fn total_second_examples() {
        let s = BeliefState::new(0.7, 0.3, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(
            total_second_prob(&s, FRAC_PI_4, Direction::AthenB).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            total_second_prob(&s, FRAC_PI_4, Direction::BthenA).unwrap(),
            0.5,
            epsilon = 1e-12
        );

        // Observed 0.57 in the Clinton-first ordering; exact value from numpy.
        let cg = BeliefState::new(0.5, 0.5, 0.0, 0.0).unwrap();
        let p = total_second_prob(&cg, 0.7133, Direction::BthenA).unwrap();
        assert_abs_diff_eq!(p, 0.57, epsilon = 5e-3);
        assert_abs_diff_eq!(p, 0.5711029066317501, epsilon = 1e-12);

        let gc = BeliefState::new(0.68, 0.32, 0.0, 0.0).unwrap();
        let p = total_second_prob(&gc, 2.6516, Direction::AthenB).unwrap();
        assert_abs_diff_eq!(p, 0.60, epsilon = 5e-3);
        assert_abs_diff_eq!(p, 0.6002662548298661, epsilon = 1e-12);

        assert!(total_second_prob(&s, f64::NAN, Direction::AthenB).is_err());
    }

    #[test]
    fn total_equals_sum_of_joints() {
        let s = BeliefState::new(0.35, 0.65, 0.9, -0.4).unwrap();
        for direction in [Direction::AthenB, Direction::BthenA] {
            let total = total_second_prob(&s, 1.1, direction).unwrap();
            let outcomes = sequence_outcomes(&s, 1.1, direction).unwrap();
            let yes_sum: f64 = outcomes
                .iter()
                .filter(|o| o.second.1 == Answer::Yes)
                .map(|o| o.probability)
                .sum();
            assert_abs_diff_eq!(total, yes_sum, epsilon = 1e-12);
            let all: f64 = outcomes.iter().map(|o| o.probability).sum();
            assert_abs_diff_eq!(all, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn bthena_depends_on_relative_phase_off_quarter_turn() {
        let base = BeliefState::new(0.6, 0.4, 0.0, 0.0).unwrap();
        let shifted = BeliefState::new(0.6, 0.4, 0.0, 1.2).unwrap();
        let a = total_second_prob(&base, 0.5, Direction::BthenA).unwrap();
        let b = total_second_prob(&shifted, 0.5, Direction::BthenA).unwrap();
        assert!((a - b).abs() > 1e-3);
        let a = total_second_prob(&base, FRAC_PI_4, Direction::BthenA).unwrap();
        let b = total_second_prob(&shifted, FRAC_PI_4, Direction::BthenA).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn conditional_examples() {
        let s = BeliefState::new(0.7, 0.3, 0.0, 0.0).unwrap();
        let ay = projector(Basis::Standard, Answer::Yes);
        let an = projector(Basis::Standard, Answer::No);
        let by = projector(Basis::rotated(FRAC_PI_4).unwrap(), Answer::Yes);
        assert_abs_diff_eq!(
            conditional_prob(&s, &ay, &by).unwrap(),
            0.5,
            epsilon = 1e-12
        );

        let by0 = projector(Basis::rotated(0.0).unwrap(), Answer::Yes);
        let st = BeliefState::new(0.2, 0.8, 0.3, 0.1).unwrap();
        assert_abs_diff_eq!(
            conditional_prob(&st, &ay, &by0).unwrap(),
            1.0,
            epsilon = 1e-12
        );

        let certain = BeliefState::new(1.0, 0.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            conditional_prob(&certain, &an, &by),
            Err(Error::UndefinedConditional { .. })
        ));
    }
}
