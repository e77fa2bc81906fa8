//! Construction and exhaustive verification of Steiner quadruple systems,
//! group divisible designs and designs whose derived designs are resolvable.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; file formats, datasets and parallel drivers live in
//! the companion `rdsqs` crate.
//!
//! Layout:
//! - [`design`], [`verify`], [`derive`], [`action`], [`params`]: the data model
//!   and the checkers every other module is measured against.
//! - [`gf16`]: arithmetic in GF(16) for the Boolean SQS(16).
//! - [`catalog`]: the explicit designs (orbit development, congruence
//!   transversal designs, filling).
//! - [`star`]: per-point certificates for the strengthened structure
//!   RDSQS*(v).
//! - [`construction`]: the SQS(16) template and the quadrupling construction
//!   RDSQS*(v) to RDSQS(4v).
//! - [`resolver`]: an independent exact-cover search for parallel classes and
//!   resolutions.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod action;
pub mod catalog;
pub mod construction;
pub mod derive;
pub mod design;
pub mod error;
pub mod gf16;
pub mod label;
pub mod params;
pub mod resolver;
pub mod star;
pub mod verify;

mod combin;

pub use action::{DevelopAction, Shift, ShiftTarget};
pub use derive::{derived_design, derived_design_at, derived_gdd, derived_gdd_at};
pub use design::{Block, Design, Gdd, GddType, ParallelClass, Resolution};
pub use error::DesignError;
pub use gf16::F16;
pub use label::{Label, LabelTable, Scheme};
pub use params::{admissible, expected_block_count, BlockCount, SystemKind};
pub use verify::{
    verify_gdd, verify_resolution, verify_steiner, verify_steiner_with, Violation,
    ViolationKind, VerifyReport, DEFAULT_WITNESS_LIMIT,
};

pub type Result<T, E = DesignError> = core::result::Result<T, E>;
