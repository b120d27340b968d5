//! Thin helpers over nalgebra: checked dense solves, matrix exponentials and
//! oriented tangent frames.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use thiserror::Error;

pub type Mat = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Solves are refused above this 1-norm condition number.
pub const MAX_CONDITION: f64 = 1e10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("condition number {condition:e} exceeds bound {bound:e}")]
    IllConditioned { condition: f64, bound: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite entry in linear system")]
    NonFinite,
}

#[derive(Debug, Clone)]
pub struct Solved {
    pub x: Vector,
    pub condition: f64,
    /// Relative residual ‖Ax − b‖∞ / max(‖b‖∞, ‖A‖∞‖x‖∞).
    pub residual: f64,
}

pub fn norm_inf_vec(v: &Vector) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn max_abs(a: &Mat) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Induced 1-norm (max column sum).
pub fn norm1(a: &Mat) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn norm_inf(a: &Mat) -> f64 {
    (0..a.nrows())
        .map(|i| a.row(i).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// κ₁(A) from an explicit inverse. `None` if A is singular.
pub fn condition_1(a: &Mat) -> Option<f64> {
    let inv = a.clone().try_inverse()?;
    let c = norm1(a) * norm1(&inv);
    if c.is_finite() {
        Some(c)
    } else {
        None
    }
}

pub fn relative_residual(a: &Mat, x: &Vector, b: &Vector) -> f64 {
    let r = a * x - b;
    let scale = norm_inf_vec(b)
        .max(norm_inf(a) * norm_inf_vec(x))
        .max(f64::MIN_POSITIVE);
    norm_inf_vec(&r) / scale
}

/// Dense LU solve that refuses singular or badly conditioned systems.
pub fn solve_checked(a: &Mat, b: &Vector, max_condition: f64) -> Result<Solved, LinalgError> {
    if !a.is_square() || a.nrows() != b.len() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    if a.iter().chain(b.iter()).any(|x| !x.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let condition = condition_1(a).ok_or(LinalgError::Singular)?;
    if condition > max_condition {
        return Err(LinalgError::IllConditioned {
            condition,
            bound: max_condition,
        });
    }
    let x = a.clone().lu().solve(b).ok_or(LinalgError::Singular)?;
    let residual = relative_residual(a, &x, b);
    Ok(Solved { x, condition, residual })
}

/// e^A by scaling and squaring with a Taylor core.
pub fn expm(a: &Mat) -> Mat {
    let n = a.nrows();
    let norm = norm1(a);
    let mut s = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        s += 1;
    }
    let b = a * scale;
    let mut sum = Mat::identity(n, n);
    let mut term = Mat::identity(n, n);
    for k in 1..40 {
        term = &term * &b / (k as f64);
        sum += &term;
        if max_abs(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// e^{θA} = I + sinθ·A + (1 − cosθ)·A² for A with A³ = −A.
pub fn expm_rotation(a: &Mat, theta: f64) -> Mat {
    let n = a.nrows();
    let a2 = a * a;
    Mat::identity(n, n) + a * libm::sin(theta) + a2 * (1.0 - libm::cos(theta))
}

/// Orthonormal basis of the complement of `normals` in R^dim, oriented so
/// that (normals…, frame) is a positive basis. With no normals this is the
/// standard basis.
pub fn tangent_frame(normals: &[Vector], dim: usize) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::with_capacity(dim);
    for nv in normals {
        push_orthonormal(&mut basis, nv.clone());
    }
    let k = basis.len();
    for i in 0..dim {
        if basis.len() == dim {
            break;
        }
        push_orthonormal(&mut basis, Vector::from_fn(dim, |r, _| if r == i { 1.0 } else { 0.0 }));
    }
    let mut frame: Vec<Vector> = basis.split_off(k);
    if !frame.is_empty() {
        let mut cols: Vec<Vector> = normals.to_vec();
        cols.extend(frame.iter().cloned());
        let m = Mat::from_columns(&cols);
        if m.determinant() < 0.0 {
            frame[0] = -&frame[0];
        }
    }
    frame
}

fn push_orthonormal(basis: &mut Vec<Vector>, mut v: Vector) {
    for _ in 0..2 {
        for b in basis.iter() {
            let c = b.dot(&v);
            v -= b * c;
        }
    }
    let n = v.norm();
    if n > 1e-8 {
        basis.push(v / n);
    }
}

/// Fᵀ M F for a frame given as column vectors.
pub fn restrict_bilinear(m: &Mat, frame: &[Vector]) -> Mat {
    let f = Mat::from_columns(frame);
    f.transpose() * m * f
}
