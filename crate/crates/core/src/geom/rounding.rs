//! The edge-rounding curve s ↦ (z(s), t(s)) on [−1, 1].
//!
//! On s ≤ 0 the curve is
//!   z = ε·sin(π(½ − σ((s+1)/2))),   t = ½ + a·B((s+1)/a)
//! with σ the flat smooth step, B(x) = x(1 − σ(x)) + σ(x) and a = 0.4, so t
//! leaves ½ with unit speed and levels off at ½ + a. The half s > 0 is the
//! mirror image (z odd, t even), evaluated from −s so the symmetry is exact.

use alloc::vec::Vec;
use core::f64::consts::PI;

use serde::Serialize;

use super::GeomError;
use crate::smooth::{step, step_d};

const A: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub s: f64,
    pub z: f64,
    pub t: f64,
    pub dz: f64,
    pub dt: f64,
}

impl CurveSample {
    /// (z dt − t dz) evaluated on the tangent ∂_s(z, t).
    pub fn wedge(&self) -> f64 {
        self.z * self.dt - self.t * self.dz
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundingCurve {
    pub epsilon: f64,
    pub samples: Vec<CurveSample>,
}

fn bend(x: f64) -> (f64, f64) {
    if x >= 1.0 {
        return (1.0, 0.0);
    }
    let s = step(x);
    (x * (1.0 - s) + s, 1.0 - s + (1.0 - x) * step_d(x))
}

fn lower_half(epsilon: f64, s: f64) -> CurveSample {
    let y = (s + 1.0) / 2.0;
    let phase = PI * (0.5 - step(y));
    let z = epsilon * libm::sin(phase);
    let dz = -epsilon * libm::cos(phase) * PI * step_d(y) / 2.0;
    let (b, db) = bend((s + 1.0) / A);
    CurveSample {
        s,
        z,
        t: 0.5 + A * b,
        dz,
        dt: db,
    }
}

/// Curve value and first derivatives at s (clamped to [−1, 1]).
pub fn curve_point(epsilon: f64, s: f64) -> CurveSample {
    let s = s.clamp(-1.0, 1.0);
    if s <= 0.0 {
        lower_half(epsilon, s)
    } else {
        let m = lower_half(epsilon, -s);
        CurveSample {
            s,
            z: -m.z,
            t: m.t,
            dz: m.dz,
            dt: -m.dt,
        }
    }
}

/// Samples the curve on a grid symmetric about 0 (s_{N−1−i} = −s_i exactly).
pub fn rounding_curve(epsilon: f64, samples: usize) -> Result<RoundingCurve, GeomError> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(GeomError::InvalidParameter("epsilon must be positive"));
    }
    if samples < 8 {
        return Err(GeomError::InvalidParameter("need at least 8 samples"));
    }
    let last = samples - 1;
    let mut s_grid = alloc::vec![0.0; samples];
    for i in 0..=last / 2 {
        let s = -1.0 + 2.0 * i as f64 / last as f64;
        s_grid[i] = s;
        s_grid[last - i] = -s;
    }
    if samples % 2 == 1 {
        s_grid[last / 2] = 0.0;
    }
    let samples = s_grid.into_iter().map(|s| curve_point(epsilon, s)).collect();
    Ok(RoundingCurve { epsilon, samples })
}

/// Measured violations of the four rounding conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundingCheck {
    /// Largest deviation of endpoint values and first derivatives.
    pub endpoint_error: f64,
    /// Largest difference-quotient estimate of a second derivative at an end.
    pub endpoint_flatness: f64,
    /// max |z(s) + z(−s)| + |t(s) − t(−s)| over mirrored samples.
    pub symmetry_error: f64,
    /// Smallest value of z dt − t dz on the tangent.
    pub min_wedge: f64,
    pub in_box: bool,
}

pub fn check_rounding(curve: &RoundingCurve) -> RoundingCheck {
    let eps = curve.epsilon;
    let a = curve_point(eps, -1.0);
    let b = curve_point(eps, 1.0);
    let endpoint_error = [
        (a.z - eps).abs(),
        (a.t - 0.5).abs(),
        a.dz.abs(),
        (a.dt - 1.0).abs(),
        (b.z + eps).abs(),
        (b.t - 0.5).abs(),
        b.dz.abs(),
        (b.dt + 1.0).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let h = 1e-3;
    let mut endpoint_flatness: f64 = 0.0;
    for (s0, dir) in [(-1.0, 1.0), (1.0, -1.0)] {
        let p0 = curve_point(eps, s0);
        let p1 = curve_point(eps, s0 + dir * h);
        endpoint_flatness = endpoint_flatness
            .max(((p1.dz - p0.dz) / h).abs())
            .max(((p1.dt - p0.dt) / h).abs());
    }

    let n = curve.samples.len();
    let mut symmetry_error: f64 = 0.0;
    let mut min_wedge = f64::INFINITY;
    let mut in_box = true;
    for i in 0..n {
        let p = &curve.samples[i];
        let q = &curve.samples[n - 1 - i];
        symmetry_error = symmetry_error.max((p.z + q.z).abs() + (p.t - q.t).abs());
        min_wedge = min_wedge.min(p.wedge());
        in_box &= p.z.abs() <= eps && (0.5..=1.0).contains(&p.t);
    }
    RoundingCheck {
        endpoint_error,
        endpoint_flatness,
        symmetry_error,
        min_wedge,
        in_box,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        let a = curve_point(0.25, -1.0);
        assert_eq!((a.z, a.t, a.dz, a.dt), (0.25, 0.5, 0.0, 1.0));
        let b = curve_point(0.25, 1.0);
        assert_eq!((b.z, b.t, b.dz, b.dt), (-0.25, 0.5, 0.0, -1.0));
    }

    #[test]
    fn derivatives_match_difference_quotients() {
        let h = 1e-6;
        for i in 1..199 {
            let s = -1.0 + i as f64 / 100.0;
            let p = curve_point(0.3, s);
            let dz = (curve_point(0.3, s + h).z - curve_point(0.3, s - h).z) / (2.0 * h);
            let dt = (curve_point(0.3, s + h).t - curve_point(0.3, s - h).t) / (2.0 * h);
            assert!((dz - p.dz).abs() < 1e-6, "dz at {s}");
            assert!((dt - p.dt).abs() < 1e-6, "dt at {s}");
        }
    }

    #[test]
    fn conditions_hold() {
        let c = rounding_curve(0.1, 1001).unwrap();
        let r = check_rounding(&c);
        assert!(r.endpoint_error <= 1e-12);
        assert!(r.endpoint_flatness < 1e-8);
        assert_eq!(r.symmetry_error, 0.0);
        assert!(r.min_wedge > 0.0);
        assert!(r.in_box);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(rounding_curve(0.0, 100).is_err());
        assert!(rounding_curve(0.1, 7).is_err());
    }
}
