use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervals::{ExtInterval, IntervalKind};

/// `x ↦ m·x + c`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub m: f64,
    pub c: f64,
}

impl AffineMap {
    pub fn new(m: f64, c: f64) -> Result<Self> {
        for value in [m, c] {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    what: "affine coefficient",
                    value,
                });
            }
        }
        Ok(AffineMap { m, c })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.m * x + self.c
    }
}

/// An affine set-valued map: affine endpoint functions of one uniform kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineIntervalMap {
    pub kind: IntervalKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<AffineMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<AffineMap>,
}

impl AffineIntervalMap {
    /// Validates the endpoints against `kind` and, for bounded maps, that the
    /// endpoints do not cross on `domain` (checking both ends suffices).
    pub fn new(
        kind: IntervalKind,
        lower: Option<AffineMap>,
        upper: Option<AffineMap>,
        domain: (f64, f64),
    ) -> Result<Self> {
        if kind.has_lower() != lower.is_some() {
            return Err(Error::KindMismatch {
                kind,
                detail: "lower endpoint presence does not match kind",
            });
        }
        if kind.has_upper() != upper.is_some() {
            return Err(Error::KindMismatch {
                kind,
                detail: "upper endpoint presence does not match kind",
            });
        }
        if let (Some(lo), Some(hi)) = (lower, upper) {
            for x in [domain.0, domain.1] {
                let (l, u) = (lo.eval(x), hi.eval(x));
                if l > u {
                    return Err(Error::CrossingEndpoints {
                        x,
                        lower: l,
                        upper: u,
                    });
                }
            }
        }
        Ok(AffineIntervalMap { kind, lower, upper })
    }

    pub fn all_reals() -> Self {
        AffineIntervalMap {
            kind: IntervalKind::AllReals,
            lower: None,
            upper: None,
        }
    }

    /// Value at `x`. Endpoints that cross by rounding collapse to a point.
    pub fn eval(&self, x: f64) -> ExtInterval {
        let lo = self.lower.map(|h| h.eval(x));
        let hi = self.upper.map(|h| h.eval(x));
        match (lo, hi) {
            (Some(l), Some(h)) => ExtInterval::Bounded {
                lo: l,
                hi: h.max(l),
            },
            (Some(l), None) => ExtInterval::UpperHalf { lo: l },
            (None, Some(h)) => ExtInterval::LowerHalf { hi: h },
            (None, None) => ExtInterval::AllReals,
        }
    }
}
