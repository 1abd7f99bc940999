//! Experiment harness, file formats, high-precision re-verification, and the
//! command-line front end for the generalized-concavity toolkit.

// `!(x > 0.0)` is used deliberately as a NaN-rejecting guard: it is false
// exactly when `x` is a positive number, unlike `x <= 0.0`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod formats;
pub mod harness;
pub mod hp;
