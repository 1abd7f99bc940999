//! Quasi-arithmetic means induced by a transform, and the classical power
//! mean with overflow-safe evaluation at extreme exponents.

use crate::error::Result;
use crate::ext::ExtReal;
use crate::math;
use crate::transform::Transform;

/// The mean `F^{-1}((1−μ)F(a) + μF(b))`. When the combined value is `−∞`
/// (an endpoint maps to `−∞` under the transform) the mean is the interval's
/// lower endpoint.
pub fn f_mean(f: &Transform, a: f64, b: f64, mu: f64) -> Result<f64> {
    debug_assert!((0.0..=1.0).contains(&mu));
    let fa = f.eval(a)?;
    let fb = f.eval(b)?;
    let combined = ExtReal::combine(fa, fb, mu);
    let m = match combined {
        ExtReal::NegInf => f.interval().lo(),
        ExtReal::Finite(v) => f.inverse(v)?,
    };
    // betweenness is exact in real arithmetic; clamp out roundoff
    Ok(m.max(a.min(b)).min(a.max(b)))
}

/// `M_p(a, b; μ) = [(1−μ)a^p + μb^p]^{1/p}` for `p ≠ 0`, geometric mean for
/// `p = 0`; `a, b > 0`. The common factor `min(a,b)` (for `p < 0`) or
/// `max(a,b)` (for `p > 0`) is pulled out so extreme `p` cannot overflow.
pub fn power_mean(p: f64, a: f64, b: f64, mu: f64) -> f64 {
    debug_assert!(a > 0.0 && b > 0.0);
    debug_assert!((0.0..=1.0).contains(&mu));
    if mu == 0.0 {
        return a;
    }
    if mu == 1.0 {
        return b;
    }
    if p == 0.0 {
        return math::exp((1.0 - mu) * math::ln(a) + mu * math::ln(b));
    }
    let m = if p > 0.0 { a.max(b) } else { a.min(b) };
    let s = (1.0 - mu) * math::powf(a / m, p) + mu * math::powf(b / m, p);
    m * math::powf(s, 1.0 / p)
}
