use alloc::string::String;
use core::fmt;

use crate::interval::Interval;

/// Crate-wide error type.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A transform was evaluated outside its interval.
    OutsideInterval { tau: f64, interval: Interval },
    /// A constructor or combinator was given an invalid parameter.
    InvalidParameter(String),
    /// A field value does not fit the transform's interval; names the node.
    DomainMismatch {
        node: usize,
        value: f64,
        interval: Interval,
    },
    /// Two transforms that must share an interval do not.
    IntervalMismatch {
        left: Interval,
        right: Interval,
    },
    /// The requested combination point is not a grid node.
    NotAGridNode { x: f64, y: f64, mu: f64 },
    /// Target times must be strictly increasing and resolvable by the step size.
    BadTimeTargets(String),
    /// An iterative solver did not reach its tolerance.
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },
    /// Adaptive quadrature could not reach the requested tolerance.
    QuadratureNonConvergence { achieved: f64 },
    /// A domain descriptor is malformed (empty interval, non-convex polygon, ...).
    InvalidDomain(String),
    /// An operation that needs a certified input received a violating one.
    PreconditionFailed(String),
    /// A constant field where a nonconstant one is required.
    ConstantField,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutsideInterval { tau, interval } => {
                write!(f, "value {tau} outside transform interval {interval}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::DomainMismatch {
                node,
                value,
                interval,
            } => write!(
                f,
                "field value {value} at node {node} outside transform interval {interval}"
            ),
            Error::IntervalMismatch { left, right } => {
                write!(f, "transform intervals differ: {left} vs {right}")
            }
            Error::NotAGridNode { x, y, mu } => {
                write!(f, "(1-mu)x+mu*y with x={x}, y={y}, mu={mu} is not a grid node")
            }
            Error::BadTimeTargets(msg) => write!(f, "bad time targets: {msg}"),
            Error::NoConvergence {
                what,
                iterations,
                residual,
            } => write!(
                f,
                "{what} did not converge after {iterations} iterations (residual {residual:e})"
            ),
            Error::QuadratureNonConvergence { achieved } => {
                write!(f, "quadrature did not converge (achieved {achieved:e})")
            }
            Error::InvalidDomain(msg) => write!(f, "invalid domain: {msg}"),
            Error::PreconditionFailed(msg) => write!(f, "precondition failed: {msg}"),
            Error::ConstantField => write!(f, "constant field rejected"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
