//! Intersecting-subset quantum CSS codes.
//!
//! Builds CSS codes from orthogonal component pairs and two tuples of subsets,
//! derives their generators, syndrome schedules, encoding circuits and
//! distances, and cross-checks the closed-form distances against exhaustive
//! enumeration.

pub mod alist;
pub mod catalog;
pub mod css;
pub mod decomp;
pub mod error;
pub mod gf2;
pub mod grm;
pub mod oracle;
pub mod posets;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
