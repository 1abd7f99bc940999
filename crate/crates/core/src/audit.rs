//! Numerical audit of transform admissibility: strict monotonicity and
//! inverse-roundtrip consistency over a sample of the interval interior.

use alloc::vec::Vec;

use crate::ext::ExtReal;
use crate::transform::Transform;

const WITNESS_CAP: usize = 16;

/// Outcome of [`admissibility_audit`]; failures are content, not errors.
#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    /// Consecutive sample pairs `(tau1, tau2)` where `F` failed to increase.
    pub monotonicity_failures: Vec<(f64, f64)>,
    /// Pairs `(tau, inverse(F(tau)))` that disagree beyond tolerance.
    pub inverse_failures: Vec<(f64, f64)>,
    pub n_samples: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.monotonicity_failures.is_empty() && self.inverse_failures.is_empty()
    }
}

/// Sample `n_samples ≥ 2` interior points and report every monotonicity or
/// inverse-roundtrip failure (capped at 16 witnesses each).
pub fn admissibility_audit(f: &Transform, n_samples: usize) -> AuditReport {
    debug_assert!(n_samples >= 2);
    let (lo, hi) = f.interval().finite_window(64.0);
    let mut report = AuditReport {
        n_samples,
        ..AuditReport::default()
    };

    let sample = |i: usize| {
        // interior only: nudge both ends inward by half a step
        lo + (hi - lo) * (i as f64 + 0.5) / n_samples as f64
    };

    let mut prev: Option<(f64, ExtReal)> = None;
    for i in 0..n_samples {
        let tau = sample(i);
        if !f.interval().interior_contains(tau) {
            continue;
        }
        let value = match f.eval(tau) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if let Some((prev_tau, prev_value)) = prev {
            if value.total_cmp(&prev_value).is_le()
                && report.monotonicity_failures.len() < WITNESS_CAP
            {
                report.monotonicity_failures.push((prev_tau, tau));
            }
        }
        if let ExtReal::Finite(v) = value {
            if let Ok(back) = f.inverse(v) {
                let tol = 1e-8 * (1.0 + tau.abs());
                if (back - tau).abs() > tol && report.inverse_failures.len() < WITNESS_CAP {
                    report.inverse_failures.push((tau, back));
                }
            }
        }
        prev = Some((tau, value));
    }
    report
}
