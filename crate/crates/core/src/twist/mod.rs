//! The generalized Dehn twist τ_n on T*S^n ⊂ R^{n+1} × R^{n+1}, its
//! matrix-exponential form, and the square-trivializing isotopies for n = 2, 6.

mod generator;
mod map;
pub mod octonion;
mod point;
mod profile;

use thiserror::Error;

pub use generator::{almost_complex_generator, plane_generator, GeneratorKind, SkewGenerator};
pub use map::{
    apply_twist, apply_twist_exp, boundary_displacement_probe, isotopy_phi, isotopy_psi, pullback_two_form,
    reference_two_form, tau_squared_exp, Family, ProbeReport, PULLBACK_STEP,
};
pub use point::CotangentPoint;
pub use profile::{make_profile, TwistProfile};

/// Below this fiber norm the twist takes its zero-section branch.
pub const ZERO_FIBER: f64 = 1e-12;
/// Tolerance on |‖u‖ − 1| and |⟨u, v⟩| for valid points.
pub const POINT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwistError {
    #[error("epsilon {0} not in (0, 1)")]
    EpsilonOutOfRange(f64),
    #[error("n = {0} is not supported here")]
    UnsupportedDimension(usize),
    #[error("fiber vector below threshold")]
    FiberTooSmall,
    #[error("not a point of T*S^n (residual {0:e})")]
    InvalidPoint(f64),
    #[error("map left T*S^n by {0:e} during differencing")]
    LeftManifold(f64),
}
