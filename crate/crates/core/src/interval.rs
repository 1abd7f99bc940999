//! Intervals of the real line with endpoint-closure flags.

use alloc::format;
use core::fmt;

use crate::error::{Error, Result};

/// An interval with nonempty interior. `lo` may be `-inf` and `hi` may be
/// `+inf`, in which case the corresponding side is open.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "interval requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        if lo == f64::NEG_INFINITY && lo_closed {
            return Err(Error::InvalidParameter("lo = -inf must be open".into()));
        }
        if hi == f64::INFINITY && hi_closed {
            return Err(Error::InvalidParameter("hi = +inf must be open".into()));
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval::new(lo, hi, true, true).unwrap()
    }

    pub fn half_open(lo: f64, hi: f64) -> Self {
        Interval::new(lo, hi, true, false).unwrap()
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Interval::new(lo, hi, false, false).unwrap()
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn contains(&self, tau: f64) -> bool {
        if tau.is_nan() {
            return false;
        }
        let above = if self.lo_closed {
            tau >= self.lo
        } else {
            tau > self.lo
        };
        let below = if self.hi_closed {
            tau <= self.hi
        } else {
            tau < self.hi
        };
        above && below
    }

    pub fn interior_contains(&self, tau: f64) -> bool {
        tau > self.lo && tau < self.hi
    }

    /// `other ⊆ self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        let lo_ok = other.lo > self.lo
            || (other.lo == self.lo && (self.lo_closed || !other.lo_closed));
        let hi_ok = other.hi < self.hi
            || (other.hi == self.hi && (self.hi_closed || !other.hi_closed));
        lo_ok && hi_ok
    }

    /// Same interior, ignoring endpoint closure.
    pub fn same_interior(&self, other: &Interval) -> bool {
        self.lo == other.lo && self.hi == other.hi
    }

    /// A finite window inside the interior, for sampling and bracketing.
    /// Infinite ends are clipped `extent` away from the finite side (or
    /// symmetrically around 0 when both are infinite).
    pub fn finite_window(&self, extent: f64) -> (f64, f64) {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => (self.lo, self.hi),
            (true, false) => (self.lo, self.lo + extent),
            (false, true) => (self.hi - extent, self.hi),
            (false, false) => (-extent / 2.0, extent / 2.0),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_respects_closure() {
        let i = Interval::half_open(0.0, 1.0);
        assert!(i.contains(0.0));
        assert!(i.contains(0.5));
        assert!(!i.contains(1.0));
        assert!(!i.interior_contains(0.0));
    }

    #[test]
    fn infinite_ends_must_be_open() {
        assert!(Interval::new(f64::NEG_INFINITY, 0.0, true, true).is_err());
        assert!(Interval::new(0.0, f64::INFINITY, true, false).is_ok());
    }

    #[test]
    fn degenerate_rejected() {
        assert!(Interval::new(1.0, 1.0, true, true).is_err());
    }
}
