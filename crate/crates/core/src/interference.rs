//! Law of total probability with quantum interference terms.
//!
//! For an event `alpha` and a partition `beta_1..beta_N`, each path
//! contributes an amplitude `sqrt(beta_j * Pr(alpha | beta_j)) e^{i theta_j}`.
//! The total is the classical sum plus a cosine cross term for every pair:
//!
//! ```text
//! Pr(alpha) = sum_j beta_j Pr(alpha|beta_j)
//!           + 2 sum_{j<k} sqrt(beta_j Pr(alpha|beta_j)) sqrt(beta_k Pr(alpha|beta_k)) cos(theta_j - theta_k)
//! ```
//!
//! The result is not renormalized and may leave `[0, 1]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::NORMALIZATION_TOL;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferenceSpec {
    beta: Vec<f64>,
    alpha_given_beta: Vec<f64>,
    theta: Vec<f64>,
}

impl InterferenceSpec {
    pub fn new(beta: Vec<f64>, alpha_given_beta: Vec<f64>, theta: Vec<f64>) -> Result<Self> {
        let n = beta.len();
        if n == 0 {
            return Err(Error::InvalidSpec(
                "at least one partition event is required".into(),
            ));
        }
        if alpha_given_beta.len() != n || theta.len() != n {
            return Err(Error::InvalidSpec(format!(
                "length mismatch: {} weights, {} conditionals, {} phases",
                n,
                alpha_given_beta.len(),
                theta.len()
            )));
        }
        for (j, (&b, &a)) in beta.iter().zip(&alpha_given_beta).enumerate() {
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::InvalidSpec(format!(
                    "beta[{j}] = {b} is outside [0, 1]"
                )));
            }
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::InvalidSpec(format!(
                    "alpha_given_beta[{j}] = {a} is outside [0, 1]"
                )));
            }
        }
        if let Some((j, t)) = theta.iter().enumerate().find(|(_, t)| !t.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "theta[{j}] = {t} is not finite"
            )));
        }
        let sum: f64 = beta.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization { sum });
        }
        Ok(Self {
            beta,
            alpha_given_beta,
            theta,
        })
    }

    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn alpha_given_beta(&self) -> &[f64] {
        &self.alpha_given_beta
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    fn path_magnitudes(&self) -> impl Iterator<Item = f64> + '_ {
        self.beta
            .iter()
            .zip(&self.alpha_given_beta)
            .map(|(b, a)| (b * a).sqrt())
    }
}

/// Interference-augmented total, split into its two parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferenceTotal {
    /// `sum_j beta_j Pr(alpha|beta_j)`.
    pub classical: f64,
    /// Sum of the pairwise cosine cross terms.
    pub interference: f64,
    pub probability: f64,
}

impl InterferenceTotal {
    /// False when the raw total has left `[0, 1]`.
    pub fn in_unit_interval(&self) -> bool {
        (0.0..=1.0).contains(&self.probability)
    }
}

pub fn interference_total_prob(spec: &InterferenceSpec) -> InterferenceTotal {
    let classical: f64 = spec
        .beta
        .iter()
        .zip(&spec.alpha_given_beta)
        .map(|(b, a)| b * a)
        .sum();
    let mags: Vec<f64> = spec.path_magnitudes().collect();
    let mut interference = 0.0;
    for j in 0..mags.len() {
        for k in j + 1..mags.len() {
            interference += 2.0 * mags[j] * mags[k] * (spec.theta[j] - spec.theta[k]).cos();
        }
    }
    InterferenceTotal {
        classical,
        interference,
        probability: classical + interference,
    }
}

/// `|sum_j sqrt(beta_j Pr(alpha|beta_j)) e^{i theta_j}|^2`, summed directly in
/// the complex plane. Agrees with [`interference_total_prob`] algebraically.
pub fn amplitude_sum_prob(spec: &InterferenceSpec) -> f64 {
    spec.path_magnitudes()
        .zip(&spec.theta)
        .map(|(m, &t)| Complex64::from_polar(m, t))
        .sum::<Complex64>()
        .norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn spec(theta: [f64; 2]) -> InterferenceSpec {
        InterferenceSpec::new(vec![0.5, 0.5], vec![0.5, 0.5], theta.to_vec()).unwrap()
    }

    #[test]
    fn two_event_examples() {
        let full = interference_total_prob(&spec([0.0, 0.0]));
        assert_abs_diff_eq!(full.probability, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(full.classical, 0.5, epsilon = 1e-15);

        let quarter = interference_total_prob(&spec([0.0, FRAC_PI_2]));
        assert_abs_diff_eq!(quarter.probability, 0.5, epsilon = 1e-12);

        let opposite = interference_total_prob(&spec([0.0, PI]));
        assert_abs_diff_eq!(opposite.probability, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn out_of_range_totals_are_flagged_not_clamped() {
        let s = InterferenceSpec::new(vec![0.5, 0.5], vec![0.9, 0.9], vec![0.0, 0.0]).unwrap();
        let t = interference_total_prob(&s);
        assert_abs_diff_eq!(t.probability, 1.8, epsilon = 1e-12);
        assert!(!t.in_unit_interval());
        assert!(interference_total_prob(&spec([0.0, 1.0])).in_unit_interval());
    }

    #[test]
    fn single_event_has_no_cross_terms() {
        let s = InterferenceSpec::new(vec![1.0], vec![0.3], vec![2.0]).unwrap();
        let t = interference_total_prob(&s);
        assert_eq!(t.interference, 0.0);
        assert_abs_diff_eq!(t.probability, 0.3, epsilon = 1e-15);
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(matches!(
            InterferenceSpec::new(vec![0.5, 0.4], vec![0.5, 0.5], vec![0.0, 0.0]),
            Err(Error::Normalization { .. })
        ));
        assert!(InterferenceSpec::new(vec![0.5, 0.5], vec![1.5, 0.5], vec![0.0, 0.0]).is_err());
        assert!(InterferenceSpec::new(vec![0.5, 0.5], vec![0.5], vec![0.0, 0.0]).is_err());
        assert!(InterferenceSpec::new(vec![], vec![], vec![]).is_err());
        assert!(InterferenceSpec::new(vec![1.0], vec![0.5], vec![f64::NAN]).is_err());
        assert!(InterferenceSpec::new(vec![1.2, -0.2], vec![0.5, 0.5], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn direct_amplitude_sum_agrees() {
        let s = InterferenceSpec::new(
            vec![0.2, 0.3, 0.5],
            vec![0.9, 0.1, 0.6],
            vec![0.3, -1.2, 2.2],
        )
        .unwrap();
        assert_abs_diff_eq!(
            interference_total_prob(&s).probability,
            amplitude_sum_prob(&s),
            epsilon = 1e-12
        );
    }
}
