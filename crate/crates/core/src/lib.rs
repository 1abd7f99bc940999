//! Core numerical machinery for experiments with generalized concavity:
//! transform catalog, gridded fields, midpoint concavity certification,
//! finite-difference heat evolution, and related probes.
//!
//! `no_std` + `alloc`; all floating-point special functions go through `libm`.

#![no_std]
// `!(x > 0.0)` is used deliberately as a NaN-rejecting guard: it is false
// exactly when `x` is a positive number, unlike `x <= 0.0`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod math;

pub mod audit;
pub mod closure;
pub mod concavity;
pub mod domain;
pub mod error;
pub mod eigen;
pub mod field;
pub mod heat;
pub mod kernel;
pub mod ext;
pub mod interval;
pub mod linalg;
pub mod mean;
pub mod parse;
pub mod quad;
pub mod rng;
pub mod sample;
pub mod screen;
pub mod transform;

pub use audit::{admissibility_audit, AuditReport};
pub use closure::{closure_probe, cstar_membership, CStarReport, ClosureKind, ProbeOutcome};
pub use concavity::{
    check_f_concave, check_f_concave_with_floor, check_quasiconcave, sequence_concavity, slack,
    ConcavityReport, SlackValue, Verdict, Witness,
};
pub use domain::{Domain, DomainShape};
pub use error::{Error, Result};
pub use eigen::{first_eigenpair, EigenPair};
pub use field::Field;
pub use heat::{fd_evolve, preservation_probe, HeatDiagnostics, HeatState};
pub use kernel::{asymptotic_profile_error, kernel_convolve, InitialData};
pub use ext::ExtReal;
pub use interval::Interval;
pub use mean::{f_mean, power_mean};
pub use parse::parse_transform;
pub use sample::{
    compare_strength, exponential_barrier, sample_f_concave, thm12_counterexample,
    NormalizedProbe, StrengthEvidence,
};
pub use screen::{gaussian_screen, lemma42_check, Lemma42Report};
pub use transform::{CustomTransform, Transform, TransformView};
