//! Numerical kernel: charts, catalog 1-forms, finite-difference exterior
//! derivatives, and the Liouville / Hamiltonian / Reeb / Moser solves built on
//! them, plus contact and dilation checks over sample sets.

mod calculus;
mod chart;
mod dilation;
mod field;
mod form;
mod rounding;
mod topform;

use alloc::vec::Vec;
use thiserror::Error;

use crate::linalg::{LinalgError, Mat, Vector};

pub use calculus::{
    exterior_derivative, hamiltonian_vector_field, liouville_vector_field, moser_field, reeb_vector_field,
    FieldSolution, ReebSolution,
};
pub use chart::{ChartId, ChartPoint, CHART_TOL};
pub use dilation::{
    check_contact_dilation, check_flow_invariance, check_symplectic_dilation, flow, lie_derivative_one_form,
    lie_derivative_two_form, FLOW_STEP,
};
pub use field::{ScalarField, VectorField};
pub use form::{eval_one_form, Beta, CovectorFn, FormId, OneFormField};
pub use rounding::{check_rounding, curve_point, rounding_curve, CurveSample, RoundingCheck, RoundingCurve};
pub use topform::{
    check_contact_condition, check_contact_condition_with, contact_volume, top_form_coefficient, MAX_TOP_DIM,
};

/// Default central-difference step.
pub const DEFAULT_STEP: f64 = 1e-5;
/// Default relative tolerance for form comparisons.
pub const FORM_TOL: f64 = 1e-6;
/// Relative residual accepted from linear solves.
pub const SOLVE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("form lives on {form} but the point is on {point}")]
    ChartMismatch { form: ChartId, point: ChartId },
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point outside the domain of {chart} (residual {residual:e})")]
    OutsideDomain { chart: ChartId, residual: f64 },
    #[error("non-finite value")]
    NonFinite,
    #[error("difference step {0:e} is not usable at this point")]
    StepUnderflow(f64),
    #[error("tangent dimension {0} is not odd")]
    DimensionNotOdd(usize),
    #[error("top-form expansion limited to dimension {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("empty sample set")]
    EmptySamples,
    #[error("exterior derivatives differ by {0:e}")]
    FormsDiffer(f64),
    #[error("flow leaves the chart within the differencing step")]
    FlowLeftChart,
    #[error("unknown chart name")]
    UnknownChart,
    #[error("unknown form name")]
    UnknownForm,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which vectors the entries of a [`SkewMatrixAtPoint`] are evaluated on.
#[derive(Debug, Clone, PartialEq)]
pub enum Basis {
    Coordinate,
    Frame(Vec<Vector>),
}

/// A 2-form at a point, as the matrix of its values on basis pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrixAtPoint {
    pub base: ChartPoint,
    pub entries: Mat,
    pub basis: Basis,
}

impl SkewMatrixAtPoint {
    /// max |E + Eᵀ|.
    pub fn skew_defect(&self) -> f64 {
        crate::linalg::max_abs(&(&self.entries + self.entries.transpose()))
    }

    pub fn apply(&self, u: &Vector, v: &Vector) -> f64 {
        u.dot(&(&self.entries * v))
    }

    /// ω(X, ·) as a covector.
    pub fn contract(&self, x: &Vector) -> Vector {
        self.entries.transpose() * x
    }

    /// Values on a tangent frame (coordinate basis only).
    pub fn restrict(&self, frame: &[Vector]) -> Mat {
        crate::linalg::restrict_bilinear(&self.entries, frame)
    }
}
