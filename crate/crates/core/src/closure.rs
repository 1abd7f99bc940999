//! Closure probes: does a certified F-concave field stay F-concave under
//! scalar multiplication, exponentiation, or translation? A transformed field
//! leaving the transform's interval is a range-exit — a first-class outcome
//! distinct from a concavity violation.

use alloc::vec::Vec;

use crate::concavity::{check_f_concave, ConcavityReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::math;
use crate::transform::Transform;

/// Per-parameter outcome of a closure probe.
#[derive(Clone, Debug)]
pub enum ProbeOutcome {
    Report(ConcavityReport),
    /// The transformed field left the transform's interval at `node`.
    RangeExit { node: usize, value: f64 },
}

impl ProbeOutcome {
    pub fn certified(&self) -> bool {
        matches!(self, ProbeOutcome::Report(r) if r.certified())
    }

    pub fn report(&self) -> Option<&ConcavityReport> {
        match self {
            ProbeOutcome::Report(r) => Some(r),
            ProbeOutcome::RangeExit { .. } => None,
        }
    }
}

/// The family of pointwise maps a probe sweeps over.
#[derive(Clone, Debug)]
pub enum ClosureKind {
    /// `f ↦ λf`
    Scalar(Vec<f64>),
    /// `f ↦ f^r`
    Power(Vec<f64>),
    /// `f ↦ f + c`
    Translate(Vec<f64>),
}

impl ClosureKind {
    fn parameters(&self) -> &[f64] {
        match self {
            ClosureKind::Scalar(p) | ClosureKind::Power(p) | ClosureKind::Translate(p) => p,
        }
    }

    fn apply(&self, parameter: f64, v: f64) -> f64 {
        match self {
            ClosureKind::Scalar(_) => parameter * v,
            ClosureKind::Power(_) => math::powf(v, parameter),
            ClosureKind::Translate(_) => v + parameter,
        }
    }
}

fn probe_once(
    f: &Transform,
    field: &Field,
    kind: &ClosureKind,
    parameter: f64,
    tolerance: f64,
) -> Result<ProbeOutcome> {
    match field.map(*f.interval(), |v| kind.apply(parameter, v)) {
        Ok(mapped) => Ok(ProbeOutcome::Report(check_f_concave(f, &mapped, tolerance)?)),
        Err(Error::DomainMismatch { node, value, .. }) => {
            Ok(ProbeOutcome::RangeExit { node, value })
        }
        Err(e) => Err(e),
    }
}

/// Run a closure probe for each parameter of `kind`. The input field must
/// itself certify first.
pub fn closure_probe(
    f: &Transform,
    field: &Field,
    kind: &ClosureKind,
    tolerance: f64,
) -> Result<Vec<(f64, ProbeOutcome)>> {
    let base = check_f_concave(f, field, tolerance)?;
    if !base.certified() {
        return Err(Error::PreconditionFailed(alloc::format!(
            "closure probe input is not certified (min slack {})",
            base.min_slack
        )));
    }
    kind.parameters()
        .iter()
        .map(|&p| Ok((p, probe_once(f, field, kind, p, tolerance)?)))
        .collect()
}

/// Membership report for the class of fields `f` with `κf` F-concave for all
/// sufficiently small `κ > 0`.
#[derive(Clone, Debug)]
pub struct CStarReport {
    /// `(κ, outcome)` in the tested (decreasing) order.
    pub per_kappa: Vec<(f64, ProbeOutcome)>,
    /// Largest tested `κ` from which every smaller tested `κ` certified.
    pub threshold: Option<f64>,
}

/// Scan `κf` for F-concavity over a decreasing `κ` grid. Requires
/// `F(0) = −∞` (the class is defined for such transforms only).
pub fn cstar_membership(
    f: &Transform,
    field: &Field,
    kappa_grid: &[f64],
    tolerance: f64,
) -> Result<CStarReport> {
    if f.interval().lo() != 0.0 || !f.admits_minus_infinity_at_lo() {
        return Err(Error::PreconditionFailed(alloc::format!(
            "membership scan requires F(0) = -inf; {} has interval {}",
            f.spec_string(),
            f.interval()
        )));
    }
    if kappa_grid.windows(2).any(|w| w[1] >= w[0]) || kappa_grid.iter().any(|&k| k <= 0.0) {
        return Err(Error::InvalidParameter(
            "kappa grid must be positive and strictly decreasing".into(),
        ));
    }
    let kind = ClosureKind::Scalar(kappa_grid.to_vec());
    let mut per_kappa = Vec::new();
    for &kappa in kappa_grid {
        per_kappa.push((kappa, probe_once(f, field, &kind, kappa, tolerance)?));
    }
    // largest kappa whose suffix (itself and everything smaller) all certify
    let mut threshold = None;
    for (kappa, outcome) in per_kappa.iter().rev() {
        if outcome.certified() {
            threshold = Some(*kappa);
        } else {
            break;
        }
    }
    Ok(CStarReport {
        per_kappa,
        threshold,
    })
}
