//! Checkers and falsifiers for Jensen-type inequalities.
//!
//! * [`popoviciu`]: the three-point inequality
//!   `(f(x)+f(y)+f(z))/3 + f((x+y+z)/3) ≥ (2/3)·Σ f(pairwise midpoints)`,
//!   which characterizes convexity, and its inclusion form for interval-valued
//!   functions;
//! * [`monotone`]: `(1−t)φ(x) + tψ(y) ≥ ((1−t)φ + tψ)((1−t)x + ty)` when
//!   `ψ − φ` is increasing and `ψ` convex (and the mirrored variant);
//! * [`barycentric`]: bounds of a convex combination of values by the
//!   endpoint values with the same barycenter, the two-sided chain around the
//!   three-point inequality, and the set-valued inclusion form.
//!
//! Single-point checks return a [`CheckReport`]. Scans enumerate grid points in
//! lexicographic index order and report the first failure.

pub mod barycentric;
pub mod monotone;
pub mod popoviciu;

use serde::Serialize;

use crate::intervals::ExtInterval;

pub use barycentric::{
    lemma5_check, lemma5_check_with_lambdas, prop6_check, prop7_check, Lemma5Input, Prop6Report,
    Prop7Report,
};
pub use monotone::{
    hypotheses, interior_ts, prop3_check, prop3_scan, prop3_setvalued_observe, Direction,
    HypothesisReport, Prop3Scan, SetValuedObservation, DEFAULT_T_COUNT,
};
pub use popoviciu::{
    convexity_cross_check, popoviciu_check, popoviciu_inclusion_check, popoviciu_inclusion_scan,
    popoviciu_scan, refine_with_midpoints, CrossCheck, CrossVerdict, PopoviciuScan,
};

/// One side of an inequality: a number, or a set for inclusions.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Real(f64),
    Set(ExtInterval),
}

impl Value {
    pub fn as_real(&self) -> Option<f64> {
        match self {
            Value::Real(v) => Some(*v),
            Value::Set(_) => None,
        }
    }

    pub fn as_set(&self) -> Option<&ExtInterval> {
        match self {
            Value::Set(s) => Some(s),
            Value::Real(_) => None,
        }
    }
}

/// Where a check failed.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
}

/// Both sides of an inequality at one point.
///
/// `slack` is oriented so that the inequality holds exactly when it is
/// non-negative; for inclusions it is the signed inclusion margin.
/// `holds` means `slack ≥ −ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub holds: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub slack: f64,
    pub equality: bool,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub(crate) fn real(lhs: f64, rhs: f64, slack: f64, eps: f64, at: Witness) -> Self {
        let holds = slack >= -eps;
        CheckReport {
            holds,
            lhs: Value::Real(lhs),
            rhs: Value::Real(rhs),
            slack,
            equality: slack.abs() <= eps,
            witness: (!holds).then_some(at),
        }
    }

    /// `inner ⊂ outer`. Equality here is set equality within `eps`.
    pub(crate) fn inclusion(
        lhs: ExtInterval,
        rhs: ExtInterval,
        inner_is_lhs: bool,
        eps: f64,
        at: Witness,
    ) -> Self {
        let slack = if inner_is_lhs {
            lhs.inclusion_margin(&rhs)
        } else {
            rhs.inclusion_margin(&lhs)
        };
        let holds = slack >= -eps;
        CheckReport {
            holds,
            equality: lhs.approx_eq(&rhs, eps),
            lhs: Value::Set(lhs),
            rhs: Value::Set(rhs),
            slack,
            witness: (!holds).then_some(at),
        }
    }
}

/// Result of an enumeration: everything passed, or the first failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ScanOutcome {
    Ok,
    Violation { witness: CheckReport },
}

impl ScanOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, ScanOutcome::Ok)
    }

    pub fn witness(&self) -> Option<&CheckReport> {
        match self {
            ScanOutcome::Ok => None,
            ScanOutcome::Violation { witness } => Some(witness),
        }
    }
}
