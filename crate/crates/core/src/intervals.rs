//! Extended intervals: the non-empty closed convex subsets of the real line.
//!
//! Every value is one of four shapes, a bounded interval `[lo, hi]`, an upper
//! half-line `[lo, ∞)`, a lower half-line `(−∞, hi]` or the whole line. These
//! are exactly the values a convex set-valued function on an interval can take,
//! and they are closed under Minkowski addition and scalar multiplication.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of an [`ExtInterval`] (and, uniformly, of an interval-valued function).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalKind {
    Bounded,
    UpperHalf,
    LowerHalf,
    AllReals,
}

impl IntervalKind {
    pub fn has_lower(self) -> bool {
        matches!(self, IntervalKind::Bounded | IntervalKind::UpperHalf)
    }

    pub fn has_upper(self) -> bool {
        matches!(self, IntervalKind::Bounded | IntervalKind::LowerHalf)
    }

    /// Whether a set of kind `self` can contain a set of kind `inner`.
    pub fn admits(self, inner: IntervalKind) -> bool {
        use IntervalKind::*;
        matches!(
            (self, inner),
            (AllReals, _) | (_, Bounded) | (UpperHalf, UpperHalf) | (LowerHalf, LowerHalf)
        )
    }
}

impl fmt::Display for IntervalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IntervalKind::Bounded => "bounded",
            IntervalKind::UpperHalf => "upper_half",
            IntervalKind::LowerHalf => "lower_half",
            IntervalKind::AllReals => "all_reals",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for IntervalKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.replace('-', "_").as_str() {
            "bounded" => Ok(IntervalKind::Bounded),
            "upper_half" => Ok(IntervalKind::UpperHalf),
            "lower_half" => Ok(IntervalKind::LowerHalf),
            "all_reals" => Ok(IntervalKind::AllReals),
            _ => Err(format!(
                "unknown interval kind '{s}' (expected bounded, upper_half, lower_half or all_reals)"
            )),
        }
    }
}

/// A non-empty closed convex subset of ℝ. Endpoints are always finite;
/// unboundedness lives in the variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawInterval")]
pub enum ExtInterval {
    Bounded { lo: f64, hi: f64 },
    UpperHalf { lo: f64 },
    LowerHalf { hi: f64 },
    AllReals,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawInterval {
    Bounded { lo: f64, hi: f64 },
    UpperHalf { lo: f64 },
    LowerHalf { hi: f64 },
    AllReals,
}

impl TryFrom<RawInterval> for ExtInterval {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        match raw {
            RawInterval::Bounded { lo, hi } => ExtInterval::bounded(lo, hi),
            RawInterval::UpperHalf { lo } => ExtInterval::upper_half(lo),
            RawInterval::LowerHalf { hi } => ExtInterval::lower_half(hi),
            RawInterval::AllReals => Ok(ExtInterval::AllReals),
        }
    }
}

fn finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, value })
    }
}

impl ExtInterval {
    /// `[lo, hi]`; point intervals are allowed.
    pub fn bounded(lo: f64, hi: f64) -> Result<Self> {
        finite("interval endpoint", lo)?;
        finite("interval endpoint", hi)?;
        if lo > hi {
            return Err(Error::OrderViolation { lo, hi });
        }
        Ok(ExtInterval::Bounded { lo, hi })
    }

    pub fn point(v: f64) -> Result<Self> {
        Self::bounded(v, v)
    }

    /// `[lo, ∞)`
    pub fn upper_half(lo: f64) -> Result<Self> {
        Ok(ExtInterval::UpperHalf {
            lo: finite("interval endpoint", lo)?,
        })
    }

    /// `(−∞, hi]`
    pub fn lower_half(hi: f64) -> Result<Self> {
        Ok(ExtInterval::LowerHalf {
            hi: finite("interval endpoint", hi)?,
        })
    }

    pub fn all_reals() -> Self {
        ExtInterval::AllReals
    }

    /// Assembles an interval of the given kind from optional endpoints. Endpoints
    /// that the kind does not use are ignored; missing required ones are an error.
    pub fn from_parts(kind: IntervalKind, lo: Option<f64>, hi: Option<f64>) -> Result<Self> {
        let need = |v: Option<f64>, detail| v.ok_or(Error::KindMismatch { kind, detail });
        match kind {
            IntervalKind::Bounded => Self::bounded(
                need(lo, "missing lower endpoint")?,
                need(hi, "missing upper endpoint")?,
            ),
            IntervalKind::UpperHalf => Self::upper_half(need(lo, "missing lower endpoint")?),
            IntervalKind::LowerHalf => Self::lower_half(need(hi, "missing upper endpoint")?),
            IntervalKind::AllReals => Ok(ExtInterval::AllReals),
        }
    }

    pub fn kind(&self) -> IntervalKind {
        match self {
            ExtInterval::Bounded { .. } => IntervalKind::Bounded,
            ExtInterval::UpperHalf { .. } => IntervalKind::UpperHalf,
            ExtInterval::LowerHalf { .. } => IntervalKind::LowerHalf,
            ExtInterval::AllReals => IntervalKind::AllReals,
        }
    }

    /// Finite lower endpoint, if any.
    pub fn lo(&self) -> Option<f64> {
        match *self {
            ExtInterval::Bounded { lo, .. } | ExtInterval::UpperHalf { lo } => Some(lo),
            _ => None,
        }
    }

    /// Finite upper endpoint, if any.
    pub fn hi(&self) -> Option<f64> {
        match *self {
            ExtInterval::Bounded { hi, .. } | ExtInterval::LowerHalf { hi } => Some(hi),
            _ => None,
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo().is_none_or(|lo| lo <= v) && self.hi().is_none_or(|hi| v <= hi)
    }

    /// Minkowski sum `{a + b : a ∈ self, b ∈ other}`.
    pub fn minkowski_add(&self, other: &ExtInterval) -> ExtInterval {
        use ExtInterval::*;
        match (*self, *other) {
            (AllReals, _) | (_, AllReals) => AllReals,
            (UpperHalf { .. }, LowerHalf { .. }) | (LowerHalf { .. }, UpperHalf { .. }) => AllReals,
            (Bounded { lo: a, hi: b }, Bounded { lo: c, hi: d }) => Bounded {
                lo: a + c,
                hi: b + d,
            },
            (Bounded { lo: a, .. } | UpperHalf { lo: a }, UpperHalf { lo: c })
            | (UpperHalf { lo: a }, Bounded { lo: c, .. }) => UpperHalf { lo: a + c },
            (Bounded { hi: b, .. } | LowerHalf { hi: b }, LowerHalf { hi: d })
            | (LowerHalf { hi: b }, Bounded { hi: d, .. }) => LowerHalf { hi: b + d },
        }
    }

    /// Scalar multiple `{t·a : a ∈ self}`. `0·A = {0}` for every `A`; a negative
    /// factor reflects the set.
    pub fn scale(&self, t: f64) -> ExtInterval {
        use ExtInterval::*;
        if t == 0.0 {
            return Bounded { lo: 0.0, hi: 0.0 };
        }
        match *self {
            AllReals => AllReals,
            Bounded { lo, hi } if t > 0.0 => Bounded {
                lo: t * lo,
                hi: t * hi,
            },
            Bounded { lo, hi } => Bounded {
                lo: t * hi,
                hi: t * lo,
            },
            UpperHalf { lo } if t > 0.0 => UpperHalf { lo: t * lo },
            UpperHalf { lo } => LowerHalf { hi: t * lo },
            LowerHalf { hi } if t > 0.0 => LowerHalf { hi: t * hi },
            LowerHalf { hi } => UpperHalf { lo: t * hi },
        }
    }

    /// `t·A + (1 − t)·B` for `t ∈ [0, 1]`.
    pub fn convex_combination(t: f64, a: &ExtInterval, b: &ExtInterval) -> Result<ExtInterval> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::RangeViolation {
                name: "t",
                value: t,
                range: "[0, 1]",
            });
        }
        Ok(a.scale(t).minkowski_add(&b.scale(1.0 - t)))
    }

    /// Exact inclusion `self ⊂ other`.
    pub fn is_subset(&self, other: &ExtInterval) -> bool {
        self.is_subset_within(other, 0.0)
    }

    /// Inclusion with every endpoint comparison relaxed by `eps`.
    pub fn is_subset_within(&self, other: &ExtInterval, eps: f64) -> bool {
        let lower_ok = match other.lo() {
            None => true,
            Some(b) => self.lo().is_some_and(|a| a >= b - eps),
        };
        let upper_ok = match other.hi() {
            None => true,
            Some(b) => self.hi().is_some_and(|a| a <= b + eps),
        };
        lower_ok && upper_ok
    }

    /// Signed margin of `self ⊂ other`: the smallest amount by which an
    /// endpoint of `other` clears the corresponding endpoint of `self`.
    /// `+∞` when `other` imposes no bound, `−∞` when the kinds rule the
    /// inclusion out. Non-negative exactly when `self ⊂ other`.
    pub fn inclusion_margin(&self, other: &ExtInterval) -> f64 {
        let lower = match other.lo() {
            None => f64::INFINITY,
            Some(b) => self.lo().map_or(f64::NEG_INFINITY, |a| a - b),
        };
        let upper = match other.hi() {
            None => f64::INFINITY,
            Some(b) => self.hi().map_or(f64::NEG_INFINITY, |a| b - a),
        };
        lower.min(upper)
    }

    /// Set equality with endpoint tolerance `eps`.
    pub fn approx_eq(&self, other: &ExtInterval, eps: f64) -> bool {
        self.is_subset_within(other, eps) && other.is_subset_within(self, eps)
    }
}

impl std::ops::Add for ExtInterval {
    type Output = ExtInterval;

    fn add(self, rhs: ExtInterval) -> ExtInterval {
        self.minkowski_add(&rhs)
    }
}

impl std::ops::Mul<ExtInterval> for f64 {
    type Output = ExtInterval;

    fn mul(self, rhs: ExtInterval) -> ExtInterval {
        rhs.scale(self)
    }
}

impl fmt::Display for ExtInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInterval::Bounded { lo, hi } => write!(f, "[{lo}, {hi}]"),
            ExtInterval::UpperHalf { lo } => write!(f, "[{lo}, ∞)"),
            ExtInterval::LowerHalf { hi } => write!(f, "(−∞, {hi}]"),
            ExtInterval::AllReals => f.write_str("ℝ"),
        }
    }
}
