//! Catalog of admissible transforms: strictly increasing maps `F: I -> R ∪ {−∞}`,
//! continuous on the interior, with evaluation, inversion, differentiation and
//! the combinators that produce new admissible transforms from old ones.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::interval::Interval;
use crate::math;

type EvalFn = dyn Fn(f64) -> ExtReal + Send + Sync;
type RealFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A user-supplied transform, mainly for tests and experiments that need a
/// transform outside the built-in catalog.
pub struct CustomTransform {
    pub name: String,
    pub interval: Interval,
    pub eval: Arc<EvalFn>,
    pub inverse: Option<Arc<RealFn>>,
    pub derivative: Option<Arc<RealFn>>,
}

#[derive(Clone)]
enum Kind {
    Power { p: f64 },
    PowerStar { p: f64 },
    LogPower { alpha: f64 },
    HalfLogK { k: f64, normalized: bool },
    Affine { a: f64, b: f64, base: Arc<Transform> },
    Reflect { base: Arc<Transform> },
    Rescale { lambda: f64, base: Arc<Transform> },
    Restrict { base: Arc<Transform> },
    ConjExp { base: Arc<Transform> },
    ConjLog { base: Arc<Transform> },
    Custom(Arc<CustomTransform>),
}

/// Borrowed view of a transform's structure, for external evaluators
/// (e.g. a high-precision re-verification path).
pub enum TransformView<'a> {
    Power { p: f64 },
    PowerStar { p: f64 },
    LogPower { alpha: f64 },
    HalfLogK { k: f64, normalized: bool },
    Affine { a: f64, b: f64, base: &'a Transform },
    Reflect { base: &'a Transform },
    Rescale { lambda: f64, base: &'a Transform },
    Restrict { base: &'a Transform },
    ConjExp { base: &'a Transform },
    ConjLog { base: &'a Transform },
    Custom,
}

/// An admissible transform. Immutable after construction; cheap to clone.
#[derive(Clone)]
pub struct Transform {
    kind: Kind,
    interval: Interval,
}

/// `L_{1/2}(x) = −2(√(−log x) − 1)` for `x ∈ (0, 1]`.
fn half_log(x: f64) -> f64 {
    -2.0 * (math::sqrt(-math::ln(x)) - 1.0)
}

fn finite_or_err(v: f64, tau: f64) -> Result<ExtReal> {
    if v.is_finite() {
        Ok(ExtReal::Finite(v))
    } else {
        Err(Error::InvalidParameter(format!(
            "transform value overflows at tau = {tau}"
        )))
    }
}

/// Nudge a value that drifted just outside an interval (endpoint rounding in
/// combinator chains) back inside its interior.
fn clamp_into(interval: &Interval, x: f64) -> f64 {
    if interval.contains(x) {
        return x;
    }
    let span = if interval.hi().is_finite() && interval.lo().is_finite() {
        interval.hi() - interval.lo()
    } else {
        x.abs().max(1.0)
    };
    let eps = span * 1e-15;
    if x <= interval.lo() {
        interval.lo() + eps
    } else {
        interval.hi() - eps
    }
}

impl Transform {
    /// `Φ_p` on `[0, ∞)`: `(τ^p − 1)/p` for `p ≠ 0`, `log τ` for `p = 0`,
    /// with `Φ_p(0)` set to the limit.
    pub fn power(p: f64) -> Transform {
        Transform {
            kind: Kind::Power { p },
            interval: Interval::new(0.0, f64::INFINITY, true, false).unwrap(),
        }
    }

    /// `Φ_p^*`: identical to `Φ_p` except `Φ_p^*(0) = −∞` also for `p > 0`.
    pub fn power_star(p: f64) -> Transform {
        Transform {
            kind: Kind::PowerStar { p },
            interval: Interval::new(0.0, f64::INFINITY, true, false).unwrap(),
        }
    }

    /// `L_α(τ) = −Φ_α(−log τ)` on `[0, 1]` for `α > 0`, `[0, 1)` for `α ≤ 0`.
    pub fn log_power(alpha: f64) -> Transform {
        let interval = if alpha > 0.0 {
            Interval::closed(0.0, 1.0)
        } else {
            Interval::half_open(0.0, 1.0)
        };
        Transform {
            kind: Kind::LogPower { alpha },
            interval,
        }
    }

    /// `L_{1/2}^k(τ) = L_{1/2}(τ/k)` on `[0, k]`; with `normalized`, the
    /// rescaled variant `(log k)^{1/2} (L_{1/2}^k − L_{1/2}^k(1))`, which has
    /// value 0 and slope 1 at `τ = 1` (requires `k > 1`).
    pub fn scaled_half_log(k: f64, normalized: bool) -> Result<Transform> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scaled half-log requires k > 0, got {k}"
            )));
        }
        if normalized && !(k > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "normalization requires k > 1 (log k > 0), got k = {k}"
            )));
        }
        Ok(Transform {
            kind: Kind::HalfLogK { k, normalized },
            interval: Interval::closed(0.0, k),
        })
    }

    pub fn custom(spec: CustomTransform) -> Transform {
        let interval = spec.interval;
        Transform {
            kind: Kind::Custom(Arc::new(spec)),
            interval,
        }
    }

    /// `A·F + B` with `A > 0`; same interval, same concave class.
    pub fn affine(&self, a: f64, b: f64) -> Result<Transform> {
        if !(a > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "affine combinator requires finite A > 0, got A = {a}, B = {b}"
            )));
        }
        Ok(Transform {
            kind: Kind::Affine {
                a,
                b,
                base: Arc::new(self.clone()),
            },
            interval: self.interval,
        })
    }

    /// `F~(τ) = −F(−τ)` on `−I`.
    pub fn reflect(&self) -> Result<Transform> {
        if self.admits_minus_infinity_at_lo() {
            return Err(Error::InvalidParameter(format!(
                "cannot reflect {}: F({}) = -inf would map to +inf",
                self.spec_string(),
                self.interval.lo()
            )));
        }
        let interval = Interval::new(
            -self.interval.hi(),
            -self.interval.lo(),
            self.interval.hi_closed(),
            self.interval.lo_closed(),
        )?;
        Ok(Transform {
            kind: Kind::Reflect {
                base: Arc::new(self.clone()),
            },
            interval,
        })
    }

    /// `F~(τ) = F(λτ)` on `λ^{-1} I` with `λ > 0`.
    pub fn rescale(&self, lambda: f64) -> Result<Transform> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "rescale combinator requires lambda > 0, got {lambda}"
            )));
        }
        let interval = Interval::new(
            self.interval.lo() / lambda,
            self.interval.hi() / lambda,
            self.interval.lo_closed(),
            self.interval.hi_closed(),
        )?;
        Ok(Transform {
            kind: Kind::Rescale {
                lambda,
                base: Arc::new(self.clone()),
            },
            interval,
        })
    }

    /// Restriction to a subinterval `J ⊆ I` with nonempty interior.
    pub fn restrict(&self, sub: Interval) -> Result<Transform> {
        if !self.interval.contains_interval(&sub) {
            return Err(Error::InvalidParameter(format!(
                "restriction {} is not contained in {}",
                sub, self.interval
            )));
        }
        Ok(Transform {
            kind: Kind::Restrict {
                base: Arc::new(self.clone()),
            },
            interval: sub,
        })
    }

    /// `F~(t) = F(e^t)` on `{t : e^t ∈ I}`.
    pub fn conj_exp(&self) -> Result<Transform> {
        if !(self.interval.hi() > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "conj_exp of {}: interval {} has no positive interior",
                self.spec_string(),
                self.interval
            )));
        }
        let (lo, lo_closed) = if self.interval.lo() > 0.0 {
            (math::ln(self.interval.lo()), self.interval.lo_closed())
        } else {
            (f64::NEG_INFINITY, false)
        };
        let (hi, hi_closed) = if self.interval.hi().is_finite() {
            (math::ln(self.interval.hi()), self.interval.hi_closed())
        } else {
            (f64::INFINITY, false)
        };
        Ok(Transform {
            kind: Kind::ConjExp {
                base: Arc::new(self.clone()),
            },
            interval: Interval::new(lo, hi, lo_closed, hi_closed)?,
        })
    }

    /// `F~(t) = F(log t)` on `e^I ⊂ (0, ∞)`.
    pub fn conj_log(&self) -> Result<Transform> {
        let (lo, lo_closed) = if self.interval.lo().is_finite() {
            (math::exp(self.interval.lo()), self.interval.lo_closed())
        } else {
            (0.0, false)
        };
        let (hi, hi_closed) = {
            let e = math::exp(self.interval.hi());
            if e.is_finite() {
                (e, self.interval.hi_closed())
            } else {
                (f64::INFINITY, false)
            }
        };
        Ok(Transform {
            kind: Kind::ConjLog {
                base: Arc::new(self.clone()),
            },
            interval: Interval::new(lo, hi, lo_closed, hi_closed)?,
        })
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn view(&self) -> TransformView<'_> {
        match &self.kind {
            Kind::Power { p } => TransformView::Power { p: *p },
            Kind::PowerStar { p } => TransformView::PowerStar { p: *p },
            Kind::LogPower { alpha } => TransformView::LogPower { alpha: *alpha },
            Kind::HalfLogK { k, normalized } => TransformView::HalfLogK {
                k: *k,
                normalized: *normalized,
            },
            Kind::Affine { a, b, base } => TransformView::Affine {
                a: *a,
                b: *b,
                base,
            },
            Kind::Reflect { base } => TransformView::Reflect { base },
            Kind::Rescale { lambda, base } => TransformView::Rescale {
                lambda: *lambda,
                base,
            },
            Kind::Restrict { base } => TransformView::Restrict { base },
            Kind::ConjExp { base } => TransformView::ConjExp { base },
            Kind::ConjLog { base } => TransformView::ConjLog { base },
            Kind::Custom(_) => TransformView::Custom,
        }
    }

    pub fn name(&self) -> &str {
        match &self.kind {
            Kind::Power { .. } => "power",
            Kind::PowerStar { .. } => "powerstar",
            Kind::LogPower { .. } => "logpower",
            Kind::HalfLogK { .. } => "halflogk",
            Kind::Affine { .. } => "affine",
            Kind::Reflect { .. } => "reflect",
            Kind::Rescale { .. } => "rescale",
            Kind::Restrict { .. } => "restrict",
            Kind::ConjExp { .. } => "conjexp",
            Kind::ConjLog { .. } => "conjlog",
            Kind::Custom(c) => &c.name,
        }
    }

    /// Own parameters (combinator bases excluded).
    pub fn params(&self) -> Vec<f64> {
        match &self.kind {
            Kind::Power { p } | Kind::PowerStar { p } => vec![*p],
            Kind::LogPower { alpha } => vec![*alpha],
            Kind::HalfLogK { k, normalized } => vec![*k, f64::from(u8::from(*normalized))],
            Kind::Affine { a, b, .. } => vec![*a, *b],
            Kind::Rescale { lambda, .. } => vec![*lambda],
            Kind::Restrict { .. } => vec![self.interval.lo(), self.interval.hi()],
            Kind::Reflect { .. } | Kind::ConjExp { .. } | Kind::ConjLog { .. } => vec![],
            Kind::Custom(_) => vec![],
        }
    }

    /// Canonical spec string in the CLI grammar, e.g. `affine:A=2,B=1(power:p=0)`.
    pub fn spec_string(&self) -> String {
        match &self.kind {
            Kind::Power { p } => format!("power:p={p}"),
            Kind::PowerStar { p } => format!("powerstar:p={p}"),
            Kind::LogPower { alpha } => format!("logpower:alpha={alpha}"),
            Kind::HalfLogK { k, normalized } => {
                format!("halflogk:k={k},normalized={normalized}")
            }
            Kind::Affine { a, b, base } => {
                format!("affine:A={a},B={b}({})", base.spec_string())
            }
            Kind::Reflect { base } => format!("reflect({})", base.spec_string()),
            Kind::Rescale { lambda, base } => {
                format!("rescale:lambda={lambda}({})", base.spec_string())
            }
            Kind::Restrict { base } => format!(
                "restrict:lo={},hi={},lo_closed={},hi_closed={}({})",
                self.interval.lo(),
                self.interval.hi(),
                self.interval.lo_closed(),
                self.interval.hi_closed(),
                base.spec_string()
            ),
            Kind::ConjExp { base } => format!("conjexp({})", base.spec_string()),
            Kind::ConjLog { base } => format!("conjlog({})", base.spec_string()),
            Kind::Custom(c) => format!("custom:{}", c.name),
        }
    }

    /// Whether `F(lo) = −∞` (requires a closed finite left endpoint).
    pub fn admits_minus_infinity_at_lo(&self) -> bool {
        self.interval.lo().is_finite()
            && self.interval.lo_closed()
            && matches!(self.eval(self.interval.lo()), Ok(ExtReal::NegInf))
    }

    /// Evaluate `F(τ)`; errors if `τ` is outside the interval.
    pub fn eval(&self, tau: f64) -> Result<ExtReal> {
        if !self.interval.contains(tau) {
            return Err(Error::OutsideInterval {
                tau,
                interval: self.interval,
            });
        }
        self.eval_unchecked(tau)
    }

    fn eval_unchecked(&self, tau: f64) -> Result<ExtReal> {
        match &self.kind {
            Kind::Power { p } => {
                let p = *p;
                if tau == 0.0 {
                    if p > 0.0 {
                        Ok(ExtReal::Finite(-1.0 / p))
                    } else {
                        Ok(ExtReal::NegInf)
                    }
                } else if p == 0.0 {
                    finite_or_err(math::ln(tau), tau)
                } else {
                    finite_or_err((math::powf(tau, p) - 1.0) / p, tau)
                }
            }
            Kind::PowerStar { p } => {
                if tau == 0.0 {
                    Ok(ExtReal::NegInf)
                } else {
                    Transform::power(*p).eval_unchecked(tau)
                }
            }
            Kind::LogPower { alpha } => {
                let alpha = *alpha;
                if tau == 0.0 {
                    if alpha >= 0.0 {
                        Ok(ExtReal::NegInf)
                    } else {
                        Ok(ExtReal::Finite(1.0 / alpha))
                    }
                } else if tau == 1.0 {
                    // only reachable for alpha > 0 (closed right endpoint)
                    Ok(ExtReal::Finite(1.0 / alpha))
                } else if alpha == 0.0 {
                    finite_or_err(-math::ln(-math::ln(tau)), tau)
                } else {
                    finite_or_err(-(math::powf(-math::ln(tau), alpha) - 1.0) / alpha, tau)
                }
            }
            Kind::HalfLogK { k, normalized } => {
                if tau == 0.0 {
                    return Ok(ExtReal::NegInf);
                }
                let l = half_log((tau / k).min(1.0));
                if *normalized {
                    let logk = math::ln(*k);
                    let l1 = half_log(1.0 / k);
                    finite_or_err(math::sqrt(logk) * (l - l1), tau)
                } else {
                    finite_or_err(l, tau)
                }
            }
            Kind::Affine { a, b, base } => match base.eval(tau)? {
                ExtReal::NegInf => Ok(ExtReal::NegInf),
                ExtReal::Finite(v) => finite_or_err(a * v + b, tau),
            },
            Kind::Reflect { base } => match base.eval(clamp_into(base.interval(), -tau))? {
                // construction rejects bases with F(lo) = -inf
                ExtReal::NegInf => Err(Error::InvalidParameter(format!(
                    "reflected transform hit -inf at tau = {tau}"
                ))),
                ExtReal::Finite(v) => Ok(ExtReal::Finite(-v)),
            },
            Kind::Rescale { lambda, base } => {
                base.eval(clamp_into(base.interval(), lambda * tau))
            }
            Kind::Restrict { base } => base.eval(tau),
            Kind::ConjExp { base } => base.eval(clamp_into(base.interval(), math::exp(tau))),
            Kind::ConjLog { base } => base.eval(clamp_into(base.interval(), math::ln(tau))),
            Kind::Custom(c) => Ok((c.eval)(tau)),
        }
    }

    /// Inverse on `F(I)`: returns `τ` with `F(τ) = v` for finite `v`.
    pub fn inverse(&self, v: f64) -> Result<f64> {
        let tau = match &self.kind {
            Kind::Power { p } | Kind::PowerStar { p } => {
                let p = *p;
                if p == 0.0 {
                    math::exp(v)
                } else {
                    let base = p * v + 1.0;
                    if base < 0.0 {
                        return Err(Error::InvalidParameter(format!(
                            "value {v} outside the range of {}",
                            self.spec_string()
                        )));
                    }
                    math::powf(base, 1.0 / p)
                }
            }
            Kind::LogPower { alpha } => {
                let alpha = *alpha;
                if alpha == 0.0 {
                    math::exp(-math::exp(-v))
                } else {
                    let base = 1.0 - alpha * v;
                    if base < 0.0 {
                        return Err(Error::InvalidParameter(format!(
                            "value {v} outside the range of {}",
                            self.spec_string()
                        )));
                    }
                    math::exp(-math::powf(base, 1.0 / alpha))
                }
            }
            Kind::HalfLogK { k, normalized } => {
                let w = if *normalized {
                    let logk = math::ln(*k);
                    v / math::sqrt(logk) + half_log(1.0 / k)
                } else {
                    v
                };
                if w > 2.0 {
                    return Err(Error::InvalidParameter(format!(
                        "value {v} outside the range of {}",
                        self.spec_string()
                    )));
                }
                let r = 1.0 - w / 2.0;
                k * math::exp(-r * r)
            }
            Kind::Affine { a, b, base } => base.inverse((v - b) / a)?,
            Kind::Reflect { base } => -base.inverse(-v)?,
            Kind::Rescale { lambda, base } => base.inverse(v)? / lambda,
            Kind::Restrict { base } => base.inverse(v)?,
            Kind::ConjExp { base } => math::ln(base.inverse(v)?),
            Kind::ConjLog { base } => math::exp(base.inverse(v)?),
            Kind::Custom(c) => match &c.inverse {
                Some(inv) => inv(v),
                None => self.invert_bisect(v)?,
            },
        };
        Ok(clamp_into(&self.interval, tau))
    }

    /// Derivative on the interior, when available (propagated through
    /// combinators by the chain rule).
    pub fn derivative(&self, tau: f64) -> Option<f64> {
        if !self.interval.interior_contains(tau) {
            return None;
        }
        match &self.kind {
            Kind::Power { p } | Kind::PowerStar { p } => Some(math::powf(tau, p - 1.0)),
            Kind::LogPower { alpha } => {
                Some(math::powf(-math::ln(tau), alpha - 1.0) / tau)
            }
            Kind::HalfLogK { k, normalized } => {
                let d = 1.0 / (tau * math::sqrt(-math::ln(tau / k)));
                if *normalized {
                    Some(math::sqrt(math::ln(*k)) * d)
                } else {
                    Some(d)
                }
            }
            Kind::Affine { a, base, .. } => Some(a * base.derivative(tau)?),
            Kind::Reflect { base } => base.derivative(-tau),
            Kind::Rescale { lambda, base } => Some(lambda * base.derivative(lambda * tau)?),
            Kind::Restrict { base } => base.derivative(tau),
            Kind::ConjExp { base } => {
                let e = math::exp(tau);
                Some(e * base.derivative(e)?)
            }
            Kind::ConjLog { base } => Some(base.derivative(math::ln(tau))? / tau),
            Kind::Custom(c) => c.derivative.as_ref().map(|d| d(tau)),
        }
    }

    /// Monotone bracketed bisection for transforms without a closed-form
    /// inverse; stops at 1e-13 absolute on the value axis.
    fn invert_bisect(&self, v: f64) -> Result<f64> {
        const VALUE_TOL: f64 = 1e-13;
        let val = |tau: f64| -> Result<ExtReal> { self.eval(tau) };

        // Bracket: walk each end toward the boundary until the target is
        // enclosed. Open or infinite ends are approached geometrically.
        let (w_lo, w_hi) = self.interval.finite_window(32.0);
        let span = (w_hi - w_lo).max(1.0);
        let mut a = w_lo + 0.25 * span;
        let mut b = w_hi - 0.25 * span;
        for _ in 0..200 {
            if val(a)?.total_cmp(&ExtReal::Finite(v)).is_le() {
                break;
            }
            a = if self.interval.lo().is_finite() {
                self.interval.lo() + (a - self.interval.lo()) * 0.25
            } else {
                a - 2.0 * (b - a).max(1.0)
            };
        }
        for _ in 0..200 {
            if val(b)?.total_cmp(&ExtReal::Finite(v)).is_ge() {
                break;
            }
            b = if self.interval.hi().is_finite() {
                self.interval.hi() - (self.interval.hi() - b) * 0.25
            } else {
                b + 2.0 * (b - a).max(1.0)
            };
        }
        let fa = val(a)?;
        let fb = val(b)?;
        if fa.total_cmp(&ExtReal::Finite(v)).is_gt() || fb.total_cmp(&ExtReal::Finite(v)).is_lt() {
            return Err(Error::InvalidParameter(format!(
                "value {v} could not be bracketed in the range of {}",
                self.spec_string()
            )));
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            let fm = val(m)?;
            if let ExtReal::Finite(fmv) = fm {
                if (fmv - v).abs() <= VALUE_TOL {
                    return Ok(m);
                }
            }
            if fm.total_cmp(&ExtReal::Finite(v)).is_lt() {
                a = m;
            } else {
                b = m;
            }
            if b - a < f64::EPSILON * (a.abs() + b.abs() + 1.0) {
                break;
            }
        }
        Ok(0.5 * (a + b))
    }
}

impl fmt::Debug for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transform({} on {})", self.spec_string(), self.interval)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(t: &Transform, tau: f64) -> ExtReal {
        t.eval(tau).unwrap()
    }

    fn fin(t: &Transform, tau: f64) -> f64 {
        ev(t, tau).as_finite().unwrap()
    }

    #[test]
    fn power_values() {
        assert_eq!(fin(&Transform::power(0.0), 1.0), 0.0);
        assert_eq!(fin(&Transform::power(2.0), 3.0), 4.0);
        assert_eq!(fin(&Transform::power(1.0), 0.0), -1.0);
        assert!(ev(&Transform::power(-1.0), 0.0).is_neg_inf());
    }

    #[test]
    fn power_star_values() {
        assert!(ev(&Transform::power_star(2.0), 0.0).is_neg_inf());
        assert_eq!(fin(&Transform::power_star(2.0), 3.0), 4.0);
        assert!((fin(&Transform::power_star(-1.0), 2.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn log_power_values() {
        let l_half = Transform::log_power(0.5);
        assert!((fin(&l_half, math::exp(-4.0)) + 2.0).abs() < 1e-12);
        let l_one = Transform::log_power(1.0);
        assert!(fin(&l_one, math::exp(-1.0)).abs() < 1e-15);
        let l_neg = Transform::log_power(-1.0);
        assert_eq!(fin(&l_neg, 0.0), -1.0);
        assert!(ev(&Transform::log_power(0.0), 0.0).is_neg_inf());
        // right endpoint for alpha > 0
        assert!((fin(&l_half, 1.0) - 2.0).abs() < 1e-15);
        assert!(Transform::log_power(-1.0).eval(1.0).is_err());
    }

    #[test]
    fn scaled_half_log_values() {
        let e = math::exp(1.0);
        let norm = Transform::scaled_half_log(e, true).unwrap();
        assert!(fin(&norm, 1.0).abs() < 1e-12);
        assert!((norm.derivative(1.0).unwrap() - 1.0).abs() < 1e-12);
        let plain = Transform::scaled_half_log(1.0, false).unwrap();
        assert!((fin(&plain, math::exp(-4.0)) + 2.0).abs() < 1e-12);
        assert!(Transform::scaled_half_log(1.0, true).is_err());
        assert!(Transform::scaled_half_log(0.5, true).is_err());
    }

    #[test]
    fn affine_shift_of_log_matches_one_log_concavity() {
        // L_1(tau) = log(tau) + 1 on [0, 1]
        let shifted = Transform::power(0.0).affine(1.0, 1.0).unwrap();
        let l1 = Transform::log_power(1.0);
        let tau = math::exp(-1.0);
        assert!((fin(&shifted, tau) - fin(&l1, tau)).abs() < 1e-15);
        assert!(fin(&shifted, tau).abs() < 1e-15);
    }

    #[test]
    fn reflect_and_conjugations() {
        let refl = Transform::power(1.0).reflect().unwrap();
        assert_eq!(fin(&refl, -2.0), -1.0);
        assert!(Transform::power(0.0).reflect().is_err()); // F(0) = -inf

        let ce = Transform::power(0.0).conj_exp().unwrap();
        for t in [-3.0, 0.0, 2.5] {
            assert!((fin(&ce, t) - t).abs() < 1e-12);
        }

        let cl = Transform::power(1.0).conj_exp().unwrap().conj_log().unwrap();
        // round trip: conj_log(conj_exp(F)) = F on the overlap
        assert!((fin(&cl, 2.0) - fin(&Transform::power(1.0), 2.0)).abs() < 1e-12);
    }

    #[test]
    fn restrict_validates_containment() {
        let phi = Transform::power(1.0);
        assert!(phi.restrict(Interval::open(0.0, f64::INFINITY)).is_ok());
        assert!(phi.restrict(Interval::closed(-1.0, 1.0)).is_err());
    }

    #[test]
    fn inverse_roundtrip_catalog() {
        let transforms = [
            Transform::power(2.0),
            Transform::power(0.0),
            Transform::power(-1.5),
            Transform::power_star(3.0),
            Transform::log_power(0.5),
            Transform::log_power(-1.0),
            Transform::scaled_half_log(4.0, true).unwrap(),
            Transform::power(0.5).affine(2.0, -1.0).unwrap(),
            Transform::power(1.0).reflect().unwrap(),
            Transform::log_power(1.0).rescale(2.0).unwrap(),
            Transform::power(0.0).conj_exp().unwrap(),
            Transform::power(2.0).conj_log().unwrap(),
        ];
        for t in &transforms {
            let (lo, hi) = t.interval().finite_window(8.0);
            for i in 1..40 {
                let tau = lo + (hi - lo) * (i as f64) / 40.0;
                if !t.interval().interior_contains(tau) {
                    continue;
                }
                let v = t.eval(tau).unwrap().as_finite().unwrap();
                let back = t.inverse(v).unwrap();
                let rel = (back - tau).abs() / tau.abs().max(1e-300);
                assert!(
                    rel < 1e-12,
                    "roundtrip failed for {} at tau={tau}: back={back}",
                    t.spec_string()
                );
            }
        }
    }

    #[test]
    fn bisection_inverse_on_custom() {
        // custom transform without a closed-form inverse: F = tau^3 on R
        let cubic = Transform::custom(CustomTransform {
            name: "cubic".into(),
            interval: Interval::open(f64::NEG_INFINITY, f64::INFINITY),
            eval: Arc::new(|tau| ExtReal::Finite(tau * tau * tau)),
            inverse: None,
            derivative: Some(Arc::new(|tau| 3.0 * tau * tau)),
        });
        let back = cubic.inverse(8.0).unwrap();
        assert!((back - 2.0).abs() < 1e-10);
        let back = cubic.inverse(-27.0).unwrap();
        assert!((back + 3.0).abs() < 1e-10);
    }

    #[test]
    fn minus_infinity_flags() {
        assert!(!Transform::power(2.0).admits_minus_infinity_at_lo());
        assert!(Transform::power(0.0).admits_minus_infinity_at_lo());
        assert!(Transform::power_star(2.0).admits_minus_infinity_at_lo());
        assert!(Transform::log_power(0.5).admits_minus_infinity_at_lo());
        assert!(!Transform::log_power(-0.5).admits_minus_infinity_at_lo());
    }
}
