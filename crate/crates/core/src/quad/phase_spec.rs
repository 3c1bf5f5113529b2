//! Twist phases `φ(x) = α log x` and `φ(x) = α x^β`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseKind {
    Log,
    Power { beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpec {
    kind: PhaseKind,
    alpha: f64,
}

impl PhaseSpec {
    pub fn log(alpha: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidPhase(format!("alpha must be finite and nonzero, got {alpha}")));
        }
        Ok(PhaseSpec { kind: PhaseKind::Log, alpha })
    }

    /// Power phase; `β` must lie in `(0, 1)` and avoid `1/2` and `3/4`.
    pub fn power(alpha: f64, beta: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidPhase(format!("alpha must be finite and nonzero, got {alpha}")));
        }
        if !(beta > 0.0 && beta < 1.0) || beta == 0.5 || beta == 0.75 {
            return Err(Error::InvalidPhase(format!("beta {beta} must lie in (0,1) minus {{1/2, 3/4}}")));
        }
        Ok(PhaseSpec { kind: PhaseKind::Power { beta }, alpha })
    }

    pub fn kind(&self) -> PhaseKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            PhaseKind::Log => self.alpha * x.ln(),
            PhaseKind::Power { beta } => self.alpha * x.powf(beta),
        }
    }

    pub fn d1(&self, x: f64) -> f64 {
        match self.kind {
            PhaseKind::Log => self.alpha / x,
            PhaseKind::Power { beta } => self.alpha * beta * x.powf(beta - 1.0),
        }
    }

    pub fn d2(&self, x: f64) -> f64 {
        match self.kind {
            PhaseKind::Log => -self.alpha / (x * x),
            PhaseKind::Power { beta } => self.alpha * beta * (beta - 1.0) * x.powf(beta - 2.0),
        }
    }

    /// `(c, β')` with `(φ(y²))′ = c·y^{-β'}`.
    pub fn normalized(&self) -> (f64, f64) {
        match self.kind {
            PhaseKind::Log => (2.0 * self.alpha, 1.0),
            PhaseKind::Power { beta } => (2.0 * self.alpha * beta, 1.0 - 2.0 * beta),
        }
    }

    /// Short label used in CSV output.
    pub fn label(&self) -> String {
        match self.kind {
            PhaseKind::Log => "log".into(),
            PhaseKind::Power { beta } => format!("pow:{beta}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excluded_exponents_are_rejected() {
        assert!(PhaseSpec::power(1.0, 0.5).is_err());
        assert!(PhaseSpec::power(1.0, 0.75).is_err());
        assert!(PhaseSpec::power(1.0, 1.0).is_err());
        assert!(PhaseSpec::power(1.0, 0.0).is_err());
        assert!(PhaseSpec::log(0.0).is_err());
        assert!(PhaseSpec::power(1.0, 0.4).is_ok());
    }

    #[test]
    fn normalized_constant_matches_derivative() {
        for p in [PhaseSpec::log(0.7).unwrap(), PhaseSpec::power(-1.3, 0.4).unwrap()] {
            let (c, beta) = p.normalized();
            for y in [0.8, 1.1, 1.7] {
                let lhs = 2.0 * y * p.d1(y * y);
                assert!((lhs - c * y.powf(-beta)).abs() < 1e-13);
            }
        }
    }
}
