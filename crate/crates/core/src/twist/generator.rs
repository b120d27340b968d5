use alloc::vec::Vec;

use serde::Serialize;

use super::octonion::cross;
use super::point::norm;
use super::{TwistError, ZERO_FIBER};
use crate::linalg::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    /// 𝔧_u: w ↦ u × w.
    AlmostComplex,
    /// 𝔳_u: rotation generator of the plane (u, v̂).
    PlaneRotation,
}

/// Skew-symmetric (n+1)×(n+1) generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewGenerator {
    pub matrix: Mat,
    pub kind: GeneratorKind,
}

/// A = v̂uᵀ − uv̂ᵀ: Au = v̂, Av̂ = −u, zero on the complement.
pub fn plane_generator(u: &[f64], v: &[f64]) -> Result<SkewGenerator, TwistError> {
    let r = norm(v);
    if !(r > ZERO_FIBER) {
        return Err(TwistError::FiberTooSmall);
    }
    let m = u.len();
    let vh: Vec<f64> = v.iter().map(|x| x / r).collect();
    let matrix = Mat::from_fn(m, m, |i, j| vh[i] * u[j] - u[i] * vh[j]);
    Ok(SkewGenerator {
        matrix,
        kind: GeneratorKind::PlaneRotation,
    })
}

/// Matrix of w ↦ u × w (3-dimensional for n = 2, octonionic for n = 6).
pub fn almost_complex_generator(u: &[f64], n: usize) -> Result<SkewGenerator, TwistError> {
    if !(n == 2 || n == 6) || u.len() != n + 1 {
        return Err(TwistError::UnsupportedDimension(n));
    }
    let m = n + 1;
    let mut matrix = Mat::zeros(m, m);
    for j in 0..m {
        let mut e = alloc::vec![0.0; m];
        e[j] = 1.0;
        let col = cross(u, &e);
        for i in 0..m {
            matrix[(i, j)] = col[i];
        }
    }
    Ok(SkewGenerator {
        matrix,
        kind: GeneratorKind::AlmostComplex,
    })
}
