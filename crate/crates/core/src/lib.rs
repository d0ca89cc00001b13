//! Numerical laboratory for elementary-wave kinematics.
//!
//! Each module is a self-contained set of closed-form operations with
//! explicit domain checks; [`cli`] exposes them as subcommands.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod compton;
pub mod constants;
pub mod deflection;
pub mod error;
pub mod gravity;
pub mod involute;
pub mod kinematics;
pub mod lattice;
pub mod output;
pub mod particle;
pub mod waves;

pub use constants::Constants;
pub use error::{Error, Result};
