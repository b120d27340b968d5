//! Contact-surgery calculus over open books with Liouville pages, plus a
//! small numerical kernel for checking explicit forms, vector fields and
//! generalized Dehn twists.
//!
//! Everything here is `no_std` with `alloc`. File formats that are pure text
//! (descriptor JSON, Kirby diagrams) live here too; IO does not.
#![no_std]
// `!(x > 0.0)` style guards are meant to catch NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cobordism;
pub mod geom;
pub mod kirby;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod smooth;
pub mod surgery;
pub mod twist;

pub use report::ConditionReport;
