//! List multicoloring of weighted paths and free-choosability of cycles.
//!
//! - [`model`]: instances, lists, colorings and the basic predicates.
//! - [`waterfall`]: turning a good path list into a similar waterfall list.
//! - [`hall`]: Hall-condition deciders and coloring construction.
//! - [`cycles`]: free-choice thresholds, the cut-open reduction and
//!   counterexample lists.
//! - [`oracle`]: exhaustive search for cross-checking small instances.

#![forbid(unsafe_code)]

pub mod cycles;
pub mod error;
pub mod hall;
pub mod model;
pub mod oracle;
pub mod waterfall;

pub use error::{Error, Result};
pub use model::{
    amplitude, is_good, is_waterfall, validate_coloring, Certificate, Color, ColorSet, Coloring,
    Decision, Instance, ListAssignment, Rational, Topology, Weights,
};
