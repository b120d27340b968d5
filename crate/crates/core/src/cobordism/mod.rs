//! Handle bookkeeping for the cobordisms built from Liouville connect sums:
//! handle lists, Euler characteristics, a few closed-form homology groups,
//! Stein obstructions and the fact tables behind the τ² classification.

mod handles;
mod homology;
mod tables;

use thiserror::Error;

pub use handles::{
    euler_characteristic, handlebody_certificate, not_stein_certificate, stein_homology_check, sum_cobordism,
    sum_cobordism_spec, Certificate, CobordismSpec, Exactness, Handle, SteinHomologyReport, SteinObstructionReport,
};
pub use homology::{gysin_sphere_bundle_homology, sphere_bundle_over_sphere, Group, HomologyProfile};
pub use tables::{
    cabling_genus, hopf_invariant_one_exists, self_linking_liouville, sphere_bundle_is_product_type,
    twist_square_smoothly_trivial,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error("page has no handle decomposition")]
    MissingDecomposition,
    #[error("expected ambient dimension {expected}, got {got}")]
    DimensionMismatch { expected: u32, got: u32 },
    #[error("handle index {index} out of range for dimension {ambient_dim}")]
    IndexOutOfRange { index: u32, ambient_dim: u32 },
    #[error("handle index above n+1 in a Stein candidate")]
    NotSteinCandidate,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
