//! Midpoint concavity certification: slack evaluation under the extended-real
//! conventions, and exhaustive checks over all grid midpoint triples.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::field::Field;
use crate::transform::Transform;

/// Slack of one concavity inequality. `PosInf` marks a vacuous inequality
/// (right side `−∞`); `NegInf` a hard violation (left side `−∞`, right finite).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SlackValue {
    NegInf,
    Finite(f64),
    PosInf,
}

impl SlackValue {
    pub fn total_cmp(&self, other: &SlackValue) -> Ordering {
        use SlackValue::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.total_cmp(b),
        }
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            SlackValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Lossy conversion for report statistics.
    pub fn to_f64(self) -> f64 {
        match self {
            SlackValue::NegInf => f64::NEG_INFINITY,
            SlackValue::Finite(v) => v,
            SlackValue::PosInf => f64::INFINITY,
        }
    }

    fn below(self, threshold: f64) -> bool {
        match self {
            SlackValue::NegInf => true,
            SlackValue::Finite(v) => v < threshold,
            SlackValue::PosInf => false,
        }
    }
}

impl fmt::Display for SlackValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlackValue::NegInf => write!(f, "-inf"),
            SlackValue::Finite(v) => write!(f, "{v}"),
            SlackValue::PosInf => write!(f, "inf"),
        }
    }
}

/// One violating triple, in physical coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub mu: f64,
    pub slack: SlackValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedOnSamples,
    Violated,
}

/// Outcome of a midpoint concavity sweep. Witnesses are listed in the fixed
/// triple order (capped), so reports are deterministic.
#[derive(Clone, Debug)]
pub struct ConcavityReport {
    pub verdict: Verdict,
    pub min_slack: SlackValue,
    pub witnesses: Vec<Witness>,
    pub n_triples: usize,
    pub tolerance: f64,
}

pub const WITNESS_CAP: usize = 64;

impl ConcavityReport {
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::CertifiedOnSamples
    }
}

fn transform_at(f: &Transform, field: &Field, node: usize) -> Result<ExtReal> {
    f.eval(field.value(node)).map_err(|_| Error::DomainMismatch {
        node,
        value: field.value(node),
        interval: *f.interval(),
    })
}

/// Slack `F(f(m)) − (1−μ)F(f(x)) − μF(f(y))` where `m = (1−μ)x + μy` must be
/// a grid node. `x`, `y` are node indices.
pub fn slack(f: &Transform, field: &Field, x: usize, y: usize, mu: f64) -> Result<SlackValue> {
    let (xc, xy) = field.domain().coords(x);
    let (yc, yy) = field.domain().coords(y);
    let mx = (1.0 - mu) * xc + mu * yc;
    let my = (1.0 - mu) * xy + mu * yy;
    let m = field
        .domain()
        .node_near(mx, my)
        .ok_or(Error::NotAGridNode { x: xc, y: yc, mu })?;
    slack_at_nodes(f, field, x, m, y, mu)
}

fn slack_at_nodes(
    f: &Transform,
    field: &Field,
    x: usize,
    m: usize,
    y: usize,
    mu: f64,
) -> Result<SlackValue> {
    let fx = transform_at(f, field, x)?;
    let fy = transform_at(f, field, y)?;
    let rhs = ExtReal::combine(fx, fy, mu);
    if rhs.is_neg_inf() {
        return Ok(SlackValue::PosInf);
    }
    let lhs = transform_at(f, field, m)?;
    Ok(match (lhs, rhs) {
        (ExtReal::NegInf, _) => SlackValue::NegInf,
        (ExtReal::Finite(l), ExtReal::Finite(r)) => SlackValue::Finite(l - r),
        (_, ExtReal::NegInf) => unreachable!("handled above"),
    })
}

fn sweep(
    field: &Field,
    tolerance: f64,
    mut eval: impl FnMut(usize, usize, usize) -> Result<Option<SlackValue>>,
) -> Result<ConcavityReport> {
    let mut min_slack = SlackValue::PosInf;
    let mut witnesses = Vec::new();
    let mut n_triples = 0usize;
    for (x, m, y) in field.domain().midpoint_triples() {
        let Some(s) = eval(x, m, y)? else { continue };
        n_triples += 1;
        if s.total_cmp(&min_slack).is_lt() {
            min_slack = s;
        }
        if s.below(-tolerance) && witnesses.len() < WITNESS_CAP {
            witnesses.push(Witness {
                x: field.domain().coords(x),
                y: field.domain().coords(y),
                mu: 0.5,
                slack: s,
            });
        }
    }
    let verdict = if min_slack.below(-tolerance) {
        Verdict::Violated
    } else {
        Verdict::CertifiedOnSamples
    };
    Ok(ConcavityReport {
        verdict,
        min_slack,
        witnesses,
        n_triples,
        tolerance,
    })
}

/// Check F-concavity of a field over all midpoint triples.
pub fn check_f_concave(f: &Transform, field: &Field, tolerance: f64) -> Result<ConcavityReport> {
    sweep(field, tolerance, |x, m, y| {
        slack_at_nodes(f, field, x, m, y, 0.5).map(Some)
    })
}

/// Like [`check_f_concave`], but skipping triples where any node value falls
/// below `value_floor` — used on PDE output, where `F` with `F(0⁺) = −∞`
/// amplifies floating-point noise in the underflow tail.
pub fn check_f_concave_with_floor(
    f: &Transform,
    field: &Field,
    tolerance: f64,
    value_floor: f64,
) -> Result<ConcavityReport> {
    sweep(field, tolerance, |x, m, y| {
        if field.value(x) < value_floor
            || field.value(m) < value_floor
            || field.value(y) < value_floor
        {
            return Ok(None);
        }
        slack_at_nodes(f, field, x, m, y, 0.5).map(Some)
    })
}

/// Quasiconcavity over the same triples: slack `f(m) − min(f(x), f(y))`.
pub fn check_quasiconcave(field: &Field, tolerance: f64) -> Result<ConcavityReport> {
    sweep(field, tolerance, |x, m, y| {
        Ok(Some(SlackValue::Finite(
            field.value(m) - field.value(x).min(field.value(y)),
        )))
    })
}

/// Raw midpoint concavity of a sampled sequence `vals` at positions `xs`
/// (uniform spacing assumed). Serves checks whose values are not constrained
/// to a transform interval, e.g. concavity of `t ↦ F(e^t)`.
pub fn sequence_concavity(xs: &[f64], vals: &[f64], tolerance: f64) -> ConcavityReport {
    debug_assert_eq!(xs.len(), vals.len());
    let mut min_slack = SlackValue::PosInf;
    let mut witnesses = Vec::new();
    let mut n_triples = 0usize;
    let n = xs.len();
    for i in 0..n {
        for gap in 1..=(n.saturating_sub(1) / 2) {
            let (m, j) = (i + gap, i + 2 * gap);
            if j >= n {
                break;
            }
            let s = SlackValue::Finite(vals[m] - 0.5 * (vals[i] + vals[j]));
            n_triples += 1;
            if s.total_cmp(&min_slack).is_lt() {
                min_slack = s;
            }
            if s.below(-tolerance) && witnesses.len() < WITNESS_CAP {
                witnesses.push(Witness {
                    x: (xs[i], 0.0),
                    y: (xs[j], 0.0),
                    mu: 0.5,
                    slack: s,
                });
            }
        }
    }
    let verdict = if min_slack.below(-tolerance) {
        Verdict::Violated
    } else {
        Verdict::CertifiedOnSamples
    };
    ConcavityReport {
        verdict,
        min_slack,
        witnesses,
        n_triples,
        tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::sync::Arc;
    use crate::domain::Domain;
    use crate::interval::Interval;
    use crate::math;

    fn gauss_field(lo: f64, hi: f64, h: f64) -> Field {
        let d = Arc::new(Domain::interval(lo, hi, h).unwrap());
        Field::from_fn(d, Interval::half_open(0.0, 1.5), |x, _| math::exp(-x * x)).unwrap()
    }

    #[test]
    fn log_slack_of_gaussian_is_squared_half_gap() {
        let field = gauss_field(-2.0, 2.0, 0.5);
        let d = field.domain().clone();
        let x = d.node_near(-1.0, 0.0).unwrap();
        let y = d.node_near(1.0, 0.0).unwrap();
        let s = slack(&Transform::power(0.0), &field, x, y, 0.5).unwrap();
        assert!((s.as_finite().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exp_field_violates_concavity() {
        let d = Arc::new(Domain::interval(0.0, 2.0, 0.25).unwrap());
        let field =
            Field::from_fn(d.clone(), Interval::open(0.0, 10.0), |x, _| math::exp(x)).unwrap();
        let x = d.node_near(0.25, 0.0).unwrap();
        let y = d.node_near(0.75, 0.0).unwrap();
        let s = slack(&Transform::power(1.0), &field, x, y, 0.5).unwrap();
        let expected = math::exp(0.5) - 0.5 * (math::exp(0.25) + math::exp(0.75));
        assert!((s.as_finite().unwrap() - expected).abs() < 1e-12);
        assert!((expected + 0.0518).abs() < 1e-4);
    }

    #[test]
    fn vacuous_inequality_when_right_side_is_minus_infinity() {
        let d = Arc::new(Domain::interval(-1.0, 2.0, 0.25).unwrap());
        let chi = Field::from_fn(d.clone(), Interval::open(-1.0, 2.0), |x, _| {
            f64::from(u8::from((0.0..=1.0).contains(&x)))
        })
        .unwrap();
        let x = d.node_near(-0.5, 0.0).unwrap();
        let y = d.node_near(0.5, 0.0).unwrap();
        let s = slack(&Transform::power_star(0.0), &chi, x, y, 0.5).unwrap();
        assert_eq!(s, SlackValue::PosInf);
    }

    #[test]
    fn gaussian_certification_threshold() {
        let field = gauss_field(-3.0, 3.0, 0.05);
        for alpha in [0.5, 0.6, 1.0] {
            let r = check_f_concave(&Transform::log_power(alpha), &field, 1e-9).unwrap();
            assert!(r.certified(), "alpha = {alpha} should certify");
        }
        for alpha in [0.45, 0.4] {
            let r = check_f_concave(&Transform::log_power(alpha), &field, 1e-9).unwrap();
            assert!(!r.certified(), "alpha = {alpha} should violate");
            assert!(!r.witnesses.is_empty());
        }
    }

    #[test]
    fn constant_fields_certify_with_zero_slack() {
        let d = Arc::new(Domain::interval(0.0, 1.0, 0.1).unwrap());
        let field = Field::from_fn(d, Interval::open(0.0, 10.0), |_, _| 5.0).unwrap();
        let r = check_f_concave(&Transform::power(1.0), &field, 1e-12).unwrap();
        assert!(r.certified());
        assert_eq!(r.min_slack.as_finite().unwrap(), 0.0);
    }

    #[test]
    fn quasiconcavity_of_step_and_dip() {
        let d = Arc::new(Domain::interval(-1.0, 3.0, 0.25).unwrap());
        let step = Field::from_fn(d.clone(), Interval::closed(0.0, 2.0), |x, _| {
            if x > 0.0 && x <= 1.0 {
                1.0
            } else if x > 1.0 && x < 2.0 {
                2.0
            } else {
                0.0
            }
        })
        .unwrap();
        assert!(check_quasiconcave(&step, 1e-12).unwrap().certified());

        let dip = Field::from_fn(
            Arc::new(Domain::interval(-1.0, 1.0, 0.25).unwrap()),
            Interval::closed(0.0, 1.0),
            |x, _| x * x,
        )
        .unwrap();
        let r = check_quasiconcave(&dip, 1e-12).unwrap();
        assert!(!r.certified());
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.x.0 == -0.5 && w.y.0 == 0.5));
    }

    #[test]
    fn sequence_checker_flags_convexity() {
        let xs: Vec<f64> = (0..9).map(|i| i as f64 * 0.5).collect();
        let convex: Vec<f64> = xs.iter().map(|&x| x * x).collect();
        assert_eq!(
            sequence_concavity(&xs, &convex, 1e-12).verdict,
            Verdict::Violated
        );
        let concave: Vec<f64> = xs.iter().map(|&x| -x * x).collect();
        assert_eq!(
            sequence_concavity(&xs, &concave, 1e-12).verdict,
            Verdict::CertifiedOnSamples
        );
    }
}
