//! Extended reals: finite values together with a dedicated negative infinity.
//!
//! Admissible transforms map into `R ∪ {−∞}`, and the concavity conventions
//! (`−∞ + r = −∞`, `a · (−∞) = −∞` for `a > 0`) must be exact, so `−∞` is a
//! variant of its own rather than an IEEE sentinel.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
}

impl ExtReal {
    pub fn finite(v: f64) -> Self {
        debug_assert!(v.is_finite());
        ExtReal::Finite(v)
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, ExtReal::NegInf)
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            ExtReal::NegInf => None,
            ExtReal::Finite(v) => Some(v),
        }
    }

    /// Lossy conversion for report statistics; `NegInf` maps to `f64::NEG_INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(v) => v,
        }
    }

    /// Scale by a strictly positive factor; `a · (−∞) = −∞`.
    pub fn scale(self, a: f64) -> Self {
        debug_assert!(a > 0.0);
        match self {
            ExtReal::NegInf => ExtReal::NegInf,
            ExtReal::Finite(v) => ExtReal::Finite(a * v),
        }
    }

    /// The convex combination `(1−mu)·x + mu·y` under the `−∞` conventions:
    /// a `−∞` endpoint with positive weight absorbs the whole combination.
    pub fn combine(x: ExtReal, y: ExtReal, mu: f64) -> ExtReal {
        let x_active = mu < 1.0;
        let y_active = mu > 0.0;
        if (x_active && x.is_neg_inf()) || (y_active && y.is_neg_inf()) {
            return ExtReal::NegInf;
        }
        match (x, y) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite((1.0 - mu) * a + mu * b),
            // one side is -inf but has zero weight
            (ExtReal::NegInf, ExtReal::Finite(b)) => ExtReal::Finite(b),
            (ExtReal::Finite(a), ExtReal::NegInf) => ExtReal::Finite(a),
            (ExtReal::NegInf, ExtReal::NegInf) => ExtReal::NegInf,
        }
    }

    /// Total order (values are never NaN by construction).
    pub fn total_cmp(&self, other: &ExtReal) -> Ordering {
        match (self, other) {
            (ExtReal::NegInf, ExtReal::NegInf) => Ordering::Equal,
            (ExtReal::NegInf, ExtReal::Finite(_)) => Ordering::Less,
            (ExtReal::Finite(_), ExtReal::NegInf) => Ordering::Greater,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.total_cmp(b),
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::NegInf,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        if v == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(v)
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_inf_absorbs_with_positive_weight() {
        let m = ExtReal::NegInf;
        let v = ExtReal::Finite(3.0);
        assert_eq!(ExtReal::combine(m, v, 0.5), ExtReal::NegInf);
        assert_eq!(ExtReal::combine(v, m, 0.5), ExtReal::NegInf);
        // zero weight drops the -inf side
        assert_eq!(ExtReal::combine(m, v, 1.0), ExtReal::Finite(3.0));
        assert_eq!(ExtReal::combine(v, m, 0.0), ExtReal::Finite(3.0));
    }

    #[test]
    fn ordering_is_total() {
        assert!(ExtReal::NegInf < ExtReal::Finite(-1e308));
        assert!(ExtReal::Finite(1.0) > ExtReal::Finite(0.0));
    }

    #[test]
    fn addition_conventions() {
        assert_eq!(ExtReal::NegInf + ExtReal::Finite(7.0), ExtReal::NegInf);
        assert_eq!(
            ExtReal::Finite(1.0) + ExtReal::Finite(2.0),
            ExtReal::Finite(3.0)
        );
    }
}
