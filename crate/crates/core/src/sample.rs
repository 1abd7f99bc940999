//! Generators of F-concave fields (random piecewise-linear constructions and
//! the exponential barrier), plus the strength-comparison and normalized
//! counterexample machinery.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::concavity::{check_f_concave, ConcavityReport, Witness};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::interval::Interval;
use crate::math;
use crate::rng::{self, ChaCha12Rng};
use crate::transform::Transform;

/// Draw `a < b` in the interior of the transform's interval, away from the
/// endpoints so `F(a)`, `F(b)` are comfortably finite.
fn draw_range(f: &Transform, rng: &mut ChaCha12Rng) -> (f64, f64) {
    let (lo, hi) = f.interval().finite_window(8.0);
    let span = hi - lo;
    loop {
        let u = rng::uniform(rng, lo + 0.05 * span, hi - 0.05 * span);
        let v = rng::uniform(rng, lo + 0.05 * span, hi - 0.05 * span);
        if (u - v).abs() > 0.1 * span {
            return (u.min(v), u.max(v));
        }
    }
}

/// A random F-concave field: `f = F^{-1}(g)` for a random concave
/// piecewise-linear `g` (minimum of `n_kinks + 1` affine maps) affinely
/// rescaled into `(F(a), F(b))`. Exactly midpoint-concave by construction,
/// up to inverse/eval roundoff.
pub fn sample_f_concave(
    f: &Transform,
    domain: &Arc<Domain>,
    seed: u64,
    n_kinks: usize,
) -> Result<Field> {
    let mut rng = rng::seeded(seed);
    let (a, b) = draw_range(f, &mut rng);
    let fa = f.eval(a)?.as_finite().ok_or(Error::PreconditionFailed(
        "sampled endpoint maps to -inf".into(),
    ))?;
    let fb = f.eval(b)?.as_finite().ok_or(Error::PreconditionFailed(
        "sampled endpoint maps to -inf".into(),
    ))?;

    // concave g = min of affine maps, drawn on the domain's bounding scale
    let n_planes = n_kinks + 1;
    let planes: Vec<(f64, f64, f64)> = (0..n_planes)
        .map(|_| {
            (
                rng::uniform(&mut rng, -1.0, 1.0),
                rng::uniform(&mut rng, -1.0, 1.0),
                rng::uniform(&mut rng, -1.0, 1.0),
            )
        })
        .collect();
    let g = |x: f64, y: f64| -> f64 {
        planes
            .iter()
            .map(|&(px, py, pc)| px * x + py * y + pc)
            .fold(f64::INFINITY, f64::min)
    };
    let raw: Vec<f64> = (0..domain.len())
        .map(|i| {
            let (x, y) = domain.coords(i);
            g(x, y)
        })
        .collect();
    let (g_min, g_max) = raw
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });

    // affine rescale into the inner 90% of (F(a), F(b)); a degenerate
    // (constant) g maps to the midpoint
    let target_lo = fa + 0.05 * (fb - fa);
    let target_hi = fb - 0.05 * (fb - fa);
    let spread = g_max - g_min;
    let values: Result<Vec<f64>> = raw
        .iter()
        .map(|&v| {
            let t = if spread > 1e-12 {
                target_lo + (v - g_min) / spread * (target_hi - target_lo)
            } else {
                0.5 * (target_lo + target_hi)
            };
            f.inverse(t)
        })
        .collect();
    Field::from_values(domain.clone(), values?, *f.interval())
}

/// The nonconstant F-concave barrier `f = F^{-1}(F(b) − (F(b)−F(a))e^{−x·ν})`
/// with `x·ν` measured from the domain's first node; requires `x·ν ≥ 0` over
/// the domain (pick `nu` accordingly).
pub fn exponential_barrier(
    f: &Transform,
    domain: &Arc<Domain>,
    a: f64,
    b: f64,
    nu: (f64, f64),
) -> Result<Field> {
    if !(a < b) || !f.interval().interior_contains(a) || !f.interval().interior_contains(b) {
        return Err(Error::PreconditionFailed(alloc::format!(
            "barrier endpoints must satisfy a < b inside {}",
            f.interval()
        )));
    }
    let fa = f.eval(a)?.as_finite().unwrap();
    let fb = f.eval(b)?.as_finite().unwrap();
    let origin = domain.coords(0);
    let values: Result<Vec<f64>> = (0..domain.len())
        .map(|i| {
            let (x, y) = domain.coords(i);
            let s = (x - origin.0) * nu.0 + (y - origin.1) * nu.1;
            debug_assert!(s >= -1e-12);
            f.inverse(fb - (fb - fa) * math::exp(-s))
        })
        .collect();
    Field::from_values(domain.clone(), values?, *f.interval())
}

/// Evidence about "F1-concavity is stronger than F2-concavity": sampled
/// F1-concave fields checked for F2-concavity.
#[derive(Clone, Debug)]
pub struct StrengthEvidence {
    pub n_samples: usize,
    pub n_certified: usize,
    /// First sampled field that violates F2-concavity, with its report.
    pub counterexample: Option<(Field, ConcavityReport)>,
}

pub fn compare_strength(
    f1: &Transform,
    f2: &Transform,
    domain: &Arc<Domain>,
    n_samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<StrengthEvidence> {
    if !f1.interval().same_interior(f2.interval()) {
        return Err(Error::IntervalMismatch {
            left: *f1.interval(),
            right: *f2.interval(),
        });
    }
    let mut n_certified = 0;
    let mut counterexample = None;
    for i in 0..n_samples {
        let field = sample_f_concave(f1, domain, seed.wrapping_add(i as u64), 4)?;
        let report = check_f_concave(f2, &field, tolerance)?;
        if report.certified() {
            n_certified += 1;
        } else if counterexample.is_none() {
            counterexample = Some((field, report));
        }
    }
    Ok(StrengthEvidence {
        n_samples,
        n_certified,
        counterexample,
    })
}

/// Outcome of the normalized two-transform counterexample construction.
#[derive(Clone, Debug)]
pub struct NormalizedProbe {
    pub field: Field,
    pub report: ConcavityReport,
    /// `F1(c) − F2(c)` after both are normalized to `F_i(a)=0`, `F_i(b)=1`.
    pub normalized_gap: f64,
    /// The proof's prediction: a nonzero gap forces a violation somewhere.
    pub predicted_violation: bool,
}

impl NormalizedProbe {
    pub fn first_witness(&self) -> Option<&Witness> {
        self.report.witnesses.first()
    }
}

/// Build `f = G1(min(x, 1))` with `G1` the normalized inverse of `F1`
/// (`F1(a) ↦ 0`, `F1(b) ↦ 1`), and check it for F2-concavity. If the two
/// normalized transforms differ at `c`, the construction behind the
/// affine-equivalence theorem predicts a violation; if `F1 = A·F2 + B` the
/// check certifies.
pub fn thm12_counterexample(
    f1: &Transform,
    f2: &Transform,
    a: f64,
    b: f64,
    c: f64,
) -> Result<NormalizedProbe> {
    for (name, t) in [("F1", f1), ("F2", f2)] {
        for v in [a, b, c] {
            if !t.interval().interior_contains(v) {
                return Err(Error::PreconditionFailed(alloc::format!(
                    "{name} interval {} does not contain {v} in its interior",
                    t.interval()
                )));
            }
        }
    }
    if !(a < c && c < b) {
        return Err(Error::PreconditionFailed(alloc::format!(
            "need a < c < b, got a={a}, c={c}, b={b}"
        )));
    }
    let normalized = |t: &Transform| -> Result<Transform> {
        let ta = t.eval(a)?.as_finite().unwrap();
        let tb = t.eval(b)?.as_finite().unwrap();
        if (tb - ta).abs() < 1e-300 {
            return Err(Error::PreconditionFailed(
                "degenerate normalization: F(a) = F(b)".into(),
            ));
        }
        let scale = 1.0 / (tb - ta);
        t.affine(scale, -ta * scale)
    };
    let n1 = normalized(f1)?;
    let n2 = normalized(f2)?;
    let gap = n1.eval(c)?.as_finite().unwrap() - n2.eval(c)?.as_finite().unwrap();

    let domain = Arc::new(Domain::interval(0.0, 2.0, 0.01)?);
    let values: Result<Vec<f64>> = (0..domain.len())
        .map(|i| {
            let (x, _) = domain.coords(i);
            // clamp out inverse roundoff at the endpoints
            Ok(n1.inverse(x.min(1.0))?.max(a.min(b)).min(a.max(b)))
        })
        .collect();
    let field = Field::from_values(domain, values?, Interval::closed(a.min(b), a.max(b)))?;
    let report = check_f_concave(f2, &field, 1e-9)?;
    Ok(NormalizedProbe {
        field,
        report,
        normalized_gap: gap,
        predicted_violation: gap.abs() > 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concavity::check_quasiconcave;

    fn line(lo: f64, hi: f64, h: f64) -> Arc<Domain> {
        Arc::new(Domain::interval(lo, hi, h).unwrap())
    }

    #[test]
    fn samples_certify_by_construction() {
        let domain = line(-1.0, 1.0, 0.05);
        for (i, t) in [
            Transform::power(0.0),
            Transform::power(1.0),
            Transform::power(-1.0),
            Transform::log_power(0.5),
        ]
        .iter()
        .enumerate()
        {
            let field = sample_f_concave(t, &domain, 100 + i as u64, 4).unwrap();
            let report = check_f_concave(t, &field, 1e-10).unwrap();
            assert!(report.certified(), "{} sample not certified", t.spec_string());
            // weakest-notion chain: every certified field is quasiconcave
            assert!(check_quasiconcave(&field, 1e-10).unwrap().certified());
        }
    }

    #[test]
    fn kink_free_sample_is_affine_in_g() {
        let domain = line(0.0, 1.0, 0.1);
        let field = sample_f_concave(&Transform::power(1.0), &domain, 7, 0).unwrap();
        // g affine => f affine => interior slacks vanish
        let report = check_f_concave(&Transform::power(1.0), &field, 1e-10).unwrap();
        assert!(report.certified());
        assert!(report.min_slack.as_finite().unwrap().abs() < 1e-10);
    }

    #[test]
    fn barrier_is_nonconstant_and_certified() {
        let domain = line(0.0, 4.0, 0.1);
        let t = Transform::power(1.0);
        let field = exponential_barrier(&t, &domain, 1.0, 2.0, (1.0, 0.0)).unwrap();
        assert!(!field.is_constant());
        assert!(check_f_concave(&t, &field, 1e-10).unwrap().certified());
    }

    #[test]
    fn one_concave_implies_log_concave() {
        let f1 = Transform::power(1.0);
        let f2 = Transform::power(0.0)
            .restrict(Interval::open(0.0, f64::INFINITY))
            .unwrap();
        // match interiors: restrict F1 to (0, inf) as well
        let f1 = f1.restrict(Interval::open(0.0, f64::INFINITY)).unwrap();
        let evidence =
            compare_strength(&f1, &f2, &line(-1.0, 1.0, 0.1), 20, 42, 1e-9).unwrap();
        assert!(evidence.counterexample.is_none());
        assert_eq!(evidence.n_certified, 20);
    }

    #[test]
    fn log_concave_does_not_imply_concave() {
        let f1 = Transform::power(0.0)
            .restrict(Interval::open(0.0, f64::INFINITY))
            .unwrap();
        let f2 = Transform::power(1.0)
            .restrict(Interval::open(0.0, f64::INFINITY))
            .unwrap();
        let evidence =
            compare_strength(&f1, &f2, &line(-1.0, 1.0, 0.1), 20, 42, 1e-9).unwrap();
        assert!(evidence.counterexample.is_some());
    }

    #[test]
    fn normalized_probe_separates_log_from_identity() {
        let probe = thm12_counterexample(
            &Transform::power(0.0),
            &Transform::power(1.0),
            1.0,
            math::exp(1.0),
            2.0,
        )
        .unwrap();
        assert!(probe.predicted_violation);
        assert!(!probe.report.certified());
    }

    #[test]
    fn affine_images_certify_for_every_c() {
        let f1 = Transform::power(0.0);
        let f2 = Transform::power(0.0).affine(3.0, -1.0).unwrap();
        for c in [1.5, 2.0, 2.5] {
            let probe = thm12_counterexample(&f1, &f2, 1.0, math::exp(1.0), c).unwrap();
            assert!(!probe.predicted_violation);
            assert!(probe.report.certified());
        }
    }

    #[test]
    fn identical_transforms_certify() {
        let t = Transform::power(2.0);
        let probe = thm12_counterexample(&t, &t, 1.0, 3.0, 2.0).unwrap();
        assert!(probe.report.certified());
    }
}
