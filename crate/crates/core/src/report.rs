use serde::Serialize;

/// Outcome of a pointwise check over a sample set.
///
/// `margin` is the smallest signed quantity seen. Residual checks report the
/// negated worst residual, so the same `margin > -tolerance` rule covers both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionReport {
    pub passed: bool,
    pub margin: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl ConditionReport {
    pub fn from_margin(margin: f64, tolerance: f64, samples: usize) -> Self {
        ConditionReport {
            passed: margin > -tolerance,
            margin,
            tolerance,
            samples,
        }
    }

    /// Strict positivity: passes only when every sampled value is > 0.
    pub fn positive(margin: f64, samples: usize) -> Self {
        Self::from_margin(margin, 0.0, samples)
    }

    /// Residual check: passes when the worst residual is below `tolerance`.
    pub fn residual(worst: f64, tolerance: f64, samples: usize) -> Self {
        Self::from_margin(-worst, tolerance, samples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_semantics() {
        assert!(ConditionReport::residual(1e-9, 1e-8, 3).passed);
        assert!(!ConditionReport::residual(1e-7, 1e-8, 3).passed);
        assert!(!ConditionReport::positive(0.0, 1).passed);
        assert!(ConditionReport::positive(1e-300, 1).passed);
    }
}
