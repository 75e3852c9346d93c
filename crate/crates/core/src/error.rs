use thiserror::Error;

use crate::expr::{EvalError, SyntaxError};
use crate::intervals::IntervalKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("interval endpoints out of order: lo = {lo} > hi = {hi}")]
    OrderViolation { lo: f64, hi: f64 },

    #[error("parameter {name} = {value} outside its admissible range {range}")]
    RangeViolation {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("breakpoints must be strictly increasing (xs[{index}] = {prev} >= xs[{}] = {next})", index + 1)]
    GridViolation { index: usize, prev: f64, next: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("at least two breakpoints are required, got {0}")]
    TooFewPoints(usize),

    #[error("non-finite value {value} in {what}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("x = {x} lies outside the domain [{lo}, {hi}]")]
    DomainViolation { x: f64, lo: f64, hi: f64 },

    #[error("domains differ: [{}, {}] vs [{}, {}]", left.0, left.1, right.0, right.1)]
    DomainMismatch { left: (f64, f64), right: (f64, f64) },

    #[error("endpoint data inconsistent with kind {kind:?}: {detail}")]
    KindMismatch {
        kind: IntervalKind,
        detail: &'static str,
    },

    #[error("lower endpoint exceeds upper endpoint at x = {x} ({lower} > {upper})")]
    CrossingEndpoints { x: f64, lower: f64, upper: f64 },

    #[error("kinds {outer:?} and {inner:?} are incompatible for this operation")]
    KindIncompatible {
        outer: IntervalKind,
        inner: IntervalKind,
    },

    #[error("function is not convex on [{a}, {b}]")]
    NotConvex { a: f64, b: f64 },

    #[error("interval-valued function is not convex on [{a}, {b}]")]
    NotConvexIvf { a: f64, b: f64 },

    #[error("invalid weights: {0}")]
    WeightViolation(String),

    #[error("barycenter constraint violated: {lhs} != {rhs}")]
    BarycenterViolation { lhs: f64, rhs: f64 },

    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error(transparent)]
    Eval(#[from] EvalError),
}
