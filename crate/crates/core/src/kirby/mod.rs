//! Combinatorial Kirby diagrams (dotted 1-handles and Legendrian 2-handles
//! given by attaching words) for the 4-dimensional cobordisms of branched
//! covers and (1/k)-surgeries, with a byte-stable text form.

mod builders;
mod diagram;
mod text;

use alloc::string::String;
use thiserror::Error;

pub use builders::{branched_cover_diagram, lens_l21_base, surgery_cobordism_diagram, BaseSpec};
pub use diagram::{BaseComponent, Coefficient, CopyLabel, DottedHandle, KirbyDiagram, TwoHandle, WordItem};
pub use text::{parse_diagram, serialize_diagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KirbyError {
    #[error("page lacks labeled core curves for its 1-handles")]
    MissingCoreLabels,
    #[error("2-handle H{handle} passes through missing dotted handle D{dotted}")]
    DanglingReference { handle: u32, dotted: u32 },
    #[error("2-handle H{0} has an empty attaching word")]
    EmptyWord(u32),
    #[error("duplicate id")]
    DuplicateId,
    #[error("invalid label {0}")]
    InvalidLabel(String),
    #[error("invalid coefficient")]
    InvalidCoefficient,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
