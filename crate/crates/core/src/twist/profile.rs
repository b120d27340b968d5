use core::f64::consts::PI;

use serde::Serialize;

use super::TwistError;
use crate::smooth::{step, step_d};

/// Fraction of [0, ε] on which f is held at π.
const CORE: f64 = 0.1;

/// f(x) = π + π·s((x − cε)/((1 − c)ε)): equal to π on [0, cε], rising
/// monotonically to 2π at x = ε and constant afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistProfile {
    pub epsilon: f64,
}

impl TwistProfile {
    pub fn new(epsilon: f64) -> Result<Self, TwistError> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(TwistError::EpsilonOutOfRange(epsilon));
        }
        Ok(TwistProfile { epsilon })
    }

    fn arg(&self, x: f64) -> f64 {
        (x - CORE * self.epsilon) / ((1.0 - CORE) * self.epsilon)
    }

    pub fn f(&self, x: f64) -> f64 {
        PI + PI * step(self.arg(x))
    }

    pub fn df(&self, x: f64) -> f64 {
        PI * step_d(self.arg(x)) / ((1.0 - CORE) * self.epsilon)
    }
}

/// Profile satisfying f(0) = π, f nondecreasing, f = 2π on [ε, ∞).
pub fn make_profile(epsilon: f64) -> Result<TwistProfile, TwistError> {
    TwistProfile::new(epsilon)
}
