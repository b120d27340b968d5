//! Open books, monodromy words, Liouville connect sums, contact (1/k)-surgery,
//! branched covers and fibered manifolds, tracked symbolically together with
//! what can be said about fillability.

mod descriptor;
mod flags;
mod ops;
mod page;
mod word;

use alloc::string::String;
use thiserror::Error;

pub use descriptor::{
    catalog_M_nk, open_book_descriptor, open_book_flags, Glued, ManifoldDescriptor, OpenBook, Presentation, Ribbon,
    SphereRef, Step,
};
pub use flags::{fillability_propagate, FillabilityFlags, Tri};
pub use ops::{
    branched_cover, contact_surgery, describe, fibered_from, fibered_manifold, liouville_sum, liouville_sum_openbooks,
    surgery_compose, Composition, Hypersurface,
};
pub use page::{HandleCount, PageSpec};
pub use word::{reduce_word, Letter, MonodromyWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("fillability flags contradict each other")]
    InconsistentFlags,
    #[error("parse error: {0}")]
    Parse(&'static str),
    #[error("invalid page: {0}")]
    InvalidPage(String),
    #[error("unknown sphere label {0}")]
    UnknownSphere(String),
    #[error("zero exponent in a word")]
    ZeroExponent,
    #[error("surgery coefficient 1/0")]
    ZeroCoefficient,
    #[error("invalid manifold dimension {0}")]
    InvalidDimension(u32),
    #[error("pages differ: {left} vs {right}")]
    PageMismatch { left: String, right: String },
    #[error("operation needs an open-book presentation")]
    NotOpenBook,
    #[error("hypersurface {0} not found")]
    HypersurfaceNotFound(String),
    #[error("cover degree must be positive")]
    InvalidCoverDegree,
    #[error("phi psi does not match the open book's monodromy")]
    WordMismatch,
    #[error("empty list of surgery coefficients")]
    EmptyComposition,
    #[error("integer overflow")]
    Overflow,
}

/// Labels: an ASCII letter or `_`, then letters, digits, `_` or `'`.
pub fn valid_label(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '\'')
}
