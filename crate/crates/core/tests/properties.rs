use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use orderfx_core::classical::{self, ClassicalState};
use orderfx_core::closed_form::{self, Params};
use orderfx_core::datasets::{load_polls, write_polls, Experiment, PollPair};
use orderfx_core::interference::{amplitude_sum_prob, interference_total_prob, InterferenceSpec};
use orderfx_core::observers::FrameRegistry;
use orderfx_core::projection::{
    first_answer_prob, joint_prob, total_second_prob, BeliefState, Projector,
};
use orderfx_core::{Answer, Direction, Question};
use proptest::prelude::*;

const TOL: f64 = 1e-12;
const DIRECTIONS: [Direction; 2] = [Direction::AthenB, Direction::BthenA];

fn proj(q: Question, a: Answer, phi: f64) -> Projector {
    Projector::for_question(q, a, phi).unwrap()
}

fn angle() -> impl Strategy<Value = f64> {
    -TAU..2.0 * TAU
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn answer_probabilities_sum_to_one(s0 in 0.0..=1.0f64, t0 in angle(), t1 in angle(), phi in angle()) {
        let s = BeliefState::with_weight(s0, t0, t1).unwrap();
        for q in [Question::A, Question::B] {
            let sum: f64 = Answer::BOTH.iter().map(|&a| first_answer_prob(&s, &proj(q, a, phi))).sum();
            prop_assert!((sum - 1.0).abs() < TOL);
        }
        for d in DIRECTIONS {
            let (q1, q2) = (d.first_question(), d.second_question());
            let mut sum = 0.0;
            for a1 in Answer::BOTH {
                for a2 in Answer::BOTH {
                    sum += joint_prob(&s, &proj(q1, a1, phi), &proj(q2, a2, phi)).unwrap();
                }
            }
            prop_assert!((sum - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn joints_marginalize_to_first_answer(s0 in 0.0..=1.0f64, t0 in angle(), t1 in angle(), phi in angle()) {
        let s = BeliefState::with_weight(s0, t0, t1).unwrap();
        for d in DIRECTIONS {
            let (q1, q2) = (d.first_question(), d.second_question());
            for a1 in Answer::BOTH {
                let first = proj(q1, a1, phi);
                let m: f64 = Answer::BOTH
                    .iter()
                    .map(|&a2| joint_prob(&s, &first, &proj(q2, a2, phi)).unwrap())
                    .sum();
                prop_assert!((m - first_answer_prob(&s, &first)).abs() < TOL);
            }
        }
    }

    #[test]
    fn athenb_total_ignores_phases(
        s0 in 0.0..=1.0f64, phi in angle(),
        t0 in angle(), t1 in angle(), u0 in angle(), u1 in angle(),
    ) {
        let a = BeliefState::with_weight(s0, t0, t1).unwrap();
        let b = BeliefState::with_weight(s0, u0, u1).unwrap();
        let pa = total_second_prob(&a, phi, Direction::AthenB).unwrap();
        let pb = total_second_prob(&b, phi, Direction::AthenB).unwrap();
        prop_assert!((pa - pb).abs() < TOL);
        let bound = s0 * phi.cos().powi(2) + (1.0 - s0) * phi.sin().powi(2);
        prop_assert!((pa - bound).abs() < TOL);
    }

    #[test]
    fn equal_phases_collapse_to_classical(s0 in 0.0..=1.0f64, theta in angle(), phi in angle()) {
        let q = BeliefState::with_weight(s0, theta, theta).unwrap();
        let c = ClassicalState::with_weight(s0).unwrap();
        for question in [Question::A, Question::B] {
            for a in Answer::BOTH {
                let pq = first_answer_prob(&q, &proj(question, a, phi));
                let pc = classical::first_answer_prob(&c, question, a, phi).unwrap();
                prop_assert!((pq - pc).abs() < TOL);
            }
        }
        for d in DIRECTIONS {
            let (q1, q2) = (d.first_question(), d.second_question());
            for a1 in Answer::BOTH {
                for a2 in Answer::BOTH {
                    let pq = joint_prob(&q, &proj(q1, a1, phi), &proj(q2, a2, phi)).unwrap();
                    let pc = classical::joint_prob(&c, phi, (q1, a1), (q2, a2)).unwrap();
                    prop_assert!((pq - pc).abs() < TOL);
                }
            }
            let tq = total_second_prob(&q, phi, d).unwrap();
            let tc = classical::total_second_prob(&c, phi, d).unwrap();
            prop_assert!((tq - tc).abs() < TOL);
        }
    }

    #[test]
    fn totals_are_probabilities(s0 in 0.0..=1.0f64, t0 in angle(), t1 in angle(), phi in angle()) {
        let s = BeliefState::with_weight(s0, t0, t1).unwrap();
        for d in DIRECTIONS {
            let p = total_second_prob(&s, phi, d).unwrap();
            prop_assert!((-TOL..=1.0 + TOL).contains(&p));
        }
        let p = total_second_prob(&s, phi, Direction::AthenB).unwrap();
        prop_assert!(p >= s0.min(1.0 - s0) - TOL && p <= s0.max(1.0 - s0) + TOL);
    }

    #[test]
    fn bthena_is_one_half_at_quarter_turn(s0 in 0.0..=1.0f64, t0 in angle(), t1 in angle()) {
        let s = BeliefState::with_weight(s0, t0, t1).unwrap();
        let p = total_second_prob(&s, FRAC_PI_4, Direction::BthenA).unwrap();
        prop_assert!((p - 0.5).abs() < TOL);
    }

    #[test]
    fn matrix_algebra_matches_closed_forms(s0 in 0.0..=1.0f64, t0 in angle(), t1 in angle(), phi in angle()) {
        use Answer::{No, Yes};
        use Question::{A, B};
        let s = BeliefState::with_weight(s0, t0, t1).unwrap();
        let p = Params::new(s0, 1.0 - s0, t0, t1, phi);
        let j = |q1, a1, q2, a2| joint_prob(&s, &proj(q1, a1, phi), &proj(q2, a2, phi)).unwrap();
        let pairs = [
            (first_answer_prob(&s, &proj(A, Yes, phi)), closed_form::pr_ay(&p)),
            (first_answer_prob(&s, &proj(A, No, phi)), closed_form::pr_an(&p)),
            (first_answer_prob(&s, &proj(B, Yes, phi)), closed_form::pr_by(&p)),
            (first_answer_prob(&s, &proj(B, No, phi)), closed_form::pr_bn(&p)),
            (j(A, Yes, B, Yes), closed_form::ay_then_by(&p)),
            (j(A, Yes, B, No), closed_form::ay_then_bn(&p)),
            (j(A, No, B, Yes), closed_form::an_then_by(&p)),
            (j(A, No, B, No), closed_form::an_then_bn(&p)),
            (j(B, Yes, A, Yes), closed_form::by_then_ay(&p)),
            (j(B, Yes, A, No), closed_form::by_then_an(&p)),
            (j(B, No, A, Yes), closed_form::bn_then_ay(&p)),
            (j(B, No, A, No), closed_form::bn_then_an(&p)),
            (total_second_prob(&s, phi, Direction::AthenB).unwrap(), closed_form::a_then_by(&p)),
            (total_second_prob(&s, phi, Direction::BthenA).unwrap(), closed_form::b_then_ay(&p)),
        ];
        for (matrix, closed) in pairs {
            prop_assert!((matrix - closed).abs() < TOL, "{matrix} vs {closed}");
        }
    }

    #[test]
    fn interference_law_matches_amplitude_sum(
        raw in prop::collection::vec((0.01..1.0f64, 0.0..=1.0f64, angle()), 2..=6),
    ) {
        let total: f64 = raw.iter().map(|r| r.0).sum();
        let beta: Vec<f64> = raw.iter().map(|r| r.0 / total).collect();
        let alpha: Vec<f64> = raw.iter().map(|r| r.1).collect();
        let theta: Vec<f64> = raw.iter().map(|r| r.2).collect();
        let spec = InterferenceSpec::new(beta, alpha, theta).unwrap();
        let law = interference_total_prob(&spec);
        prop_assert!((law.probability - amplitude_sum_prob(&spec)).abs() < TOL);
        prop_assert!((law.classical + law.interference - law.probability).abs() < TOL);
    }

    #[test]
    fn relabelled_frames_preserve_probabilities(
        s0 in 0.0..=1.0f64, t0 in angle(), t1 in angle(), phi in angle(),
        e1 in angle(), e2 in angle(), e3 in angle(),
    ) {
        let mut reg = FrameRegistry::new();
        reg.relate("a", "b", e1).unwrap();
        reg.relate("b", "c", e2).unwrap();
        reg.relate("a", "d", e3).unwrap();
        let s = BeliefState::with_weight(s0, t0, t1).unwrap();
        for (from, to) in [("a", "c"), ("c", "d"), ("d", "b")] {
            let moved = reg.translate_state(&s, from, to).unwrap();
            let rot = reg.angle(from, to).unwrap();
            let before = first_answer_prob(&s, &proj(Question::B, Answer::Yes, phi));
            let after = first_answer_prob(&moved, &proj(Question::B, Answer::Yes, phi + rot));
            prop_assert!((before - after).abs() < TOL);
            let stepped = reg.translate_along_path(&s, from, to).unwrap();
            for k in 0..2 {
                prop_assert!((moved.amplitudes()[k] - stepped.amplitudes()[k]).norm() < 1e-9);
            }
            let back = reg.angle(to, from).unwrap();
            let round_trip = (rot + back).rem_euclid(TAU);
            prop_assert!(round_trip.min(TAU - round_trip) < 1e-9);
        }
    }

    #[test]
    fn poll_csv_round_trips(
        rows in prop::collection::vec(
            ((0..=1_000_000u32), (0..=1_000_000u32), (0..=1_000_000u32), (0..=1_000_000u32), prop::option::of(1..5000u32)),
            0..6,
        ),
    ) {
        let polls: Vec<PollPair> = rows
            .iter()
            .enumerate()
            .map(|(i, &(a, b, c, d, n))| {
                let name = format!("pair {i}");
                PollPair {
                    first: Experiment::new(&name, format!("{i} first"), a as f64 / 1e6, b as f64 / 1e6, n).unwrap(),
                    second: Experiment::new(&name, format!("{i} second"), c as f64 / 1e6, d as f64 / 1e6, n).unwrap(),
                }
            })
            .collect();
        let mut buf = Vec::new();
        write_polls(&mut buf, &polls).unwrap();
        let back = load_polls(buf.as_slice()).unwrap();
        prop_assert_eq!(back, polls);
    }
}

#[test]
fn classical_closed_forms_agree_with_matrices() {
    for i in 0..=40 {
        let s0 = i as f64 / 40.0;
        let c = ClassicalState::with_weight(s0).unwrap();
        for k in 0..64 {
            let phi = k as f64 * TAU / 64.0;
            let by = classical::first_answer_prob(&c, Question::B, Answer::Yes, phi).unwrap();
            assert!((by - closed_form::classical::pr_by(s0, 1.0 - s0, phi)).abs() < TOL);
            let b = classical::total_second_prob(&c, phi, Direction::BthenA).unwrap();
            assert!((b - closed_form::classical::b_then_ay(s0, 1.0 - s0, phi)).abs() < TOL);
            let a = classical::total_second_prob(&c, phi, Direction::AthenB).unwrap();
            assert!((a - closed_form::classical::a_then_by(s0, 1.0 - s0, phi)).abs() < TOL);
        }
    }
}

#[test]
fn commuting_angles_have_no_order_effect() {
    for phi in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
        for i in 0..=10 {
            let s = BeliefState::with_weight(i as f64 / 10.0, 0.3, -1.1).unwrap();
            let ab = joint_prob(
                &s,
                &proj(Question::A, Answer::Yes, phi),
                &proj(Question::B, Answer::Yes, phi),
            )
            .unwrap();
            let ba = joint_prob(
                &s,
                &proj(Question::B, Answer::Yes, phi),
                &proj(Question::A, Answer::Yes, phi),
            )
            .unwrap();
            assert!((ab - ba).abs() < TOL);
        }
    }
}
