//! Simplified trigonometric expressions for the sequence probabilities.
//!
//! These are the corrected scalar forms of the projection model (the `B = no`
//! after `A = no` term carries `sin^2`, not `sin`). They are written with
//! real arithmetic only, expanding `|x e^{ia} + y e^{ib}|^2` as
//! `x^2 + y^2 + 2xy cos(a - b)`, so they share nothing with the matrix path
//! they are used to check.
//!
//! Every function takes `(s0, s1, theta0, theta1, phi)`; the classical
//! variants drop the phases.

/// Answer weights and phases of a belief state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub s0: f64,
    pub s1: f64,
    pub theta0: f64,
    pub theta1: f64,
    pub phi: f64,
}

impl Params {
    pub fn new(s0: f64, s1: f64, theta0: f64, theta1: f64, phi: f64) -> Self {
        Self {
            s0,
            s1,
            theta0,
            theta1,
            phi,
        }
    }

    fn cross(&self) -> f64 {
        2.0 * (self.s0 * self.s1).sqrt() * (self.theta1 - self.theta0).cos()
    }
}

/// `Pr(Ay) = s0`.
pub fn pr_ay(p: &Params) -> f64 {
    p.s0
}

/// `Pr(An) = s1`.
pub fn pr_an(p: &Params) -> f64 {
    p.s1
}

/// `Pr(By) = |sqrt(s0) e^{i theta0} cos + sqrt(s1) e^{i theta1} sin|^2`.
pub fn pr_by(p: &Params) -> f64 {
    let (s, c) = p.phi.sin_cos();
    p.s0 * c * c + p.s1 * s * s + p.cross() * c * s
}

/// `Pr(Bn) = |sqrt(s1) e^{i theta1} cos - sqrt(s0) e^{i theta0} sin|^2`.
pub fn pr_bn(p: &Params) -> f64 {
    let (s, c) = p.phi.sin_cos();
    p.s1 * c * c + p.s0 * s * s - p.cross() * c * s
}

/// `A = yes` first, then `B = yes`: `s0 cos^2 phi`.
pub fn ay_then_by(p: &Params) -> f64 {
    p.s0 * p.phi.cos().powi(2)
}

/// `A = yes` first, then `B = no`: `s0 sin^2 phi`.
pub fn ay_then_bn(p: &Params) -> f64 {
    p.s0 * p.phi.sin().powi(2)
}

/// `A = no` first, then `B = yes`: `s1 sin^2 phi`.
pub fn an_then_by(p: &Params) -> f64 {
    p.s1 * p.phi.sin().powi(2)
}

/// `A = no` first, then `B = no`: `s1 cos^2 phi`.
pub fn an_then_bn(p: &Params) -> f64 {
    p.s1 * p.phi.cos().powi(2)
}

/// `B = yes` first, then `A = yes`: `cos^2 phi * Pr(By)`.
pub fn by_then_ay(p: &Params) -> f64 {
    p.phi.cos().powi(2) * pr_by(p)
}

/// `B = yes` first, then `A = no`: `sin^2 phi * Pr(By)`.
pub fn by_then_an(p: &Params) -> f64 {
    p.phi.sin().powi(2) * pr_by(p)
}

/// `B = no` first, then `A = yes`: `sin^2 phi * Pr(Bn)`.
pub fn bn_then_ay(p: &Params) -> f64 {
    p.phi.sin().powi(2) * pr_bn(p)
}

/// `B = no` first, then `A = no`: `cos^2 phi * Pr(Bn)`.
pub fn bn_then_an(p: &Params) -> f64 {
    p.phi.cos().powi(2) * pr_bn(p)
}

/// `Pr(A -> By) = s0 cos^2 phi + s1 sin^2 phi`; phase-free.
pub fn a_then_by(p: &Params) -> f64 {
    let (s, c) = p.phi.sin_cos();
    p.s0 * c * c + p.s1 * s * s
}

/// `Pr(B -> Ay)`, written out in full.
pub fn b_then_ay(p: &Params) -> f64 {
    let (s, c) = p.phi.sin_cos();
    let by = p.s0 * c * c + p.s1 * s * s + p.cross() * c * s;
    let bn = p.s1 * c * c + p.s0 * s * s - p.cross() * c * s;
    s * s * bn + c * c * by
}

/// Real-amplitude forms.
pub mod classical {
    /// `(sqrt(s0) cos phi + sqrt(s1) sin phi)^2`.
    pub fn pr_by(s0: f64, s1: f64, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        (s0.sqrt() * c + s1.sqrt() * s).powi(2)
    }

    pub fn by_then_ay(s0: f64, s1: f64, phi: f64) -> f64 {
        let c = phi.cos();
        (c * (c * s0.sqrt() + phi.sin() * s1.sqrt())).powi(2)
    }

    pub fn bn_then_ay(s0: f64, s1: f64, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        (s * (-s1.sqrt() * c + s0.sqrt() * s)).powi(2)
    }

    pub fn b_then_ay(s0: f64, s1: f64, phi: f64) -> f64 {
        by_then_ay(s0, s1, phi) + bn_then_ay(s0, s1, phi)
    }

    pub fn ay_then_by(s0: f64, phi: f64) -> f64 {
        s0 * phi.cos().powi(2)
    }

    pub fn an_then_by(s1: f64, phi: f64) -> f64 {
        s1 * phi.sin().powi(2)
    }

    pub fn a_then_by(s0: f64, s1: f64, phi: f64) -> f64 {
        ay_then_by(s0, phi) + an_then_by(s1, phi)
    }
}
