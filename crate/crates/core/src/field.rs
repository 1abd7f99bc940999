//! Grid-sampled functions over a [`Domain`], carrying the interval their
//! values are claimed to live in.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// A function sampled at the nodes of a domain. Values are finite floats in
/// `range`; `−∞` never appears (fields store `f`, not `F(f)`).
#[derive(Clone, Debug)]
pub struct Field {
    domain: Arc<Domain>,
    values: Vec<f64>,
    range: Interval,
}

impl Field {
    pub fn from_values(domain: Arc<Domain>, values: Vec<f64>, range: Interval) -> Result<Field> {
        if values.len() != domain.len() {
            return Err(Error::InvalidDomain(alloc::format!(
                "field has {} values for {} nodes",
                values.len(),
                domain.len()
            )));
        }
        for (node, &v) in values.iter().enumerate() {
            if !v.is_finite() || !range.contains(v) {
                return Err(Error::DomainMismatch {
                    node,
                    value: v,
                    interval: range,
                });
            }
        }
        Ok(Field {
            domain,
            values,
            range,
        })
    }

    pub fn from_fn(
        domain: Arc<Domain>,
        range: Interval,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Field> {
        let values = (0..domain.len())
            .map(|i| {
                let (x, y) = domain.coords(i);
                f(x, y)
            })
            .collect();
        Field::from_values(domain, values, range)
    }

    /// Apply a pointwise map, revalidating against `new_range`. Used by the
    /// closure probes, where a value leaving the range is a first-class
    /// outcome (surfaces as the `DomainMismatch` error).
    pub fn map(&self, new_range: Interval, g: impl Fn(f64) -> f64) -> Result<Field> {
        let values = self.values.iter().map(|&v| g(v)).collect();
        Field::from_values(self.domain.clone(), values, new_range)
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, node: usize) -> f64 {
        self.values[node]
    }

    pub fn range(&self) -> &Interval {
        &self.range
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |a, &b| a.min(b))
    }

    pub fn is_constant(&self) -> bool {
        self.values
            .iter()
            .all(|&v| v.to_bits() == self.values[0].to_bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math;

    #[test]
    fn values_must_fit_the_range() {
        let d = Arc::new(Domain::interval(-1.0, 1.0, 0.5).unwrap());
        let gauss = Field::from_fn(d.clone(), Interval::half_open(0.0, 1.5), |x, _| {
            math::exp(-x * x)
        })
        .unwrap();
        assert!((gauss.value(2) - 1.0).abs() < 1e-15);

        let err = Field::from_fn(d, Interval::half_open(0.0, 1.0), |x, _| math::exp(-x * x))
            .unwrap_err();
        match err {
            Error::DomainMismatch { node, value, .. } => {
                assert_eq!(node, 2);
                assert_eq!(value, 1.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn map_revalidates() {
        let d = Arc::new(Domain::interval(0.0, 1.0, 0.25).unwrap());
        let f = Field::from_fn(d, Interval::closed(0.0, 1.0), |x, _| 0.4 * x).unwrap();
        assert!(f.map(*f.range(), |v| 2.0 * v).is_ok());
        assert!(f.map(*f.range(), |v| 4.0 * v).is_err());
    }
}
