use serde::{Deserialize, Serialize};

use super::{merged_grid, validate_grid, SampledFunction};
use crate::error::{Error, Result};
use crate::intervals::{ExtInterval, IntervalKind};

/// Interval-valued function of a single kind over a shared breakpoint grid.
///
/// Bounded values are `[lower(x), upper(x)]`, half-lines use only the endpoint
/// they have, and `AllReals` carries no endpoint data, only its grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct IntervalFunction {
    kind: IntervalKind,
    xs: Vec<f64>,
    lower: Option<SampledFunction>,
    upper: Option<SampledFunction>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename = "interval")]
struct RawInterval {
    kind: IntervalKind,
    xs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lower: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    upper: Option<Vec<f64>>,
}

impl TryFrom<RawInterval> for IntervalFunction {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        IntervalFunction::new(raw.kind, raw.xs, raw.lower, raw.upper)
    }
}

impl From<IntervalFunction> for RawInterval {
    fn from(f: IntervalFunction) -> Self {
        RawInterval {
            kind: f.kind,
            xs: f.xs,
            lower: f.lower.map(|l| l.ys().to_vec()),
            upper: f.upper.map(|u| u.ys().to_vec()),
        }
    }
}

impl IntervalFunction {
    pub fn new(
        kind: IntervalKind,
        xs: Vec<f64>,
        lower: Option<Vec<f64>>,
        upper: Option<Vec<f64>>,
    ) -> Result<Self> {
        validate_grid(&xs)?;
        let lower = lower
            .map(|ys| SampledFunction::new(xs.clone(), ys))
            .transpose()?;
        let upper = upper
            .map(|ys| SampledFunction::new(xs.clone(), ys))
            .transpose()?;
        Self::assemble(kind, xs, lower, upper)
    }

    /// Builds from endpoint functions that may live on different grids of the
    /// same domain; both are resampled onto the merged grid.
    pub fn from_endpoints(
        kind: IntervalKind,
        lower: Option<SampledFunction>,
        upper: Option<SampledFunction>,
    ) -> Result<Self> {
        let grid = match (&lower, &upper) {
            (Some(l), Some(u)) => merged_grid(&[l.xs(), u.xs()])?,
            (Some(l), None) => l.xs().to_vec(),
            (None, Some(u)) => u.xs().to_vec(),
            (None, None) => {
                return Err(Error::KindMismatch {
                    kind,
                    detail: "no endpoint data; use IntervalFunction::all_reals",
                })
            }
        };
        let lower = lower.map(|l| l.resample(&grid)).transpose()?;
        let upper = upper.map(|u| u.resample(&grid)).transpose()?;
        Self::assemble(kind, grid, lower, upper)
    }

    /// The constant function `x ↦ ℝ` on the given grid.
    pub fn all_reals(xs: Vec<f64>) -> Result<Self> {
        Self::new(IntervalKind::AllReals, xs, None, None)
    }

    fn assemble(
        kind: IntervalKind,
        xs: Vec<f64>,
        lower: Option<SampledFunction>,
        upper: Option<SampledFunction>,
    ) -> Result<Self> {
        if kind.has_lower() != lower.is_some() {
            return Err(Error::KindMismatch {
                kind,
                detail: if lower.is_some() {
                    "unexpected lower endpoint"
                } else {
                    "missing lower endpoint"
                },
            });
        }
        if kind.has_upper() != upper.is_some() {
            return Err(Error::KindMismatch {
                kind,
                detail: if upper.is_some() {
                    "unexpected upper endpoint"
                } else {
                    "missing upper endpoint"
                },
            });
        }
        if let (Some(l), Some(u)) = (&lower, &upper) {
            for ((&x, &lo), &hi) in xs.iter().zip(l.ys()).zip(u.ys()) {
                if lo > hi {
                    return Err(Error::CrossingEndpoints {
                        x,
                        lower: lo,
                        upper: hi,
                    });
                }
            }
        }
        Ok(IntervalFunction {
            kind,
            xs,
            lower,
            upper,
        })
    }

    pub fn kind(&self) -> IntervalKind {
        self.kind
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn lower(&self) -> Option<&SampledFunction> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&SampledFunction> {
        self.upper.as_ref()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn eval(&self, x: f64) -> Result<ExtInterval> {
        let (lo, hi) = self.domain();
        if !(lo <= x && x <= hi) {
            return Err(Error::DomainViolation { x, lo, hi });
        }
        Ok(self.value_at(x))
    }

    pub(crate) fn value_at(&self, x: f64) -> ExtInterval {
        let lo = self.lower.as_ref().map(|l| l.value_at(x));
        let hi = self.upper.as_ref().map(|u| u.value_at(x));
        match (lo, hi) {
            // interpolation of non-crossing data cannot cross
            (Some(l), Some(h)) => ExtInterval::Bounded {
                lo: l,
                hi: h.max(l),
            },
            (Some(l), None) => ExtInterval::UpperHalf { lo: l },
            (None, Some(h)) => ExtInterval::LowerHalf { hi: h },
            (None, None) => ExtInterval::AllReals,
        }
    }

    /// Lower endpoint convex and upper endpoint concave.
    pub fn is_convex(&self, eps: f64) -> bool {
        self.lower.as_ref().is_none_or(|l| l.is_convex(eps))
            && self.upper.as_ref().is_none_or(|u| u.is_concave(eps))
    }

    /// Lower endpoint concave and upper endpoint convex.
    pub fn is_concave(&self, eps: f64) -> bool {
        self.lower.as_ref().is_none_or(|l| l.is_concave(eps))
            && self.upper.as_ref().is_none_or(|u| u.is_convex(eps))
    }

    pub fn resample(&self, grid: &[f64]) -> Result<IntervalFunction> {
        validate_grid(grid)?;
        if self.domain() != (grid[0], grid[grid.len() - 1]) {
            return Err(Error::DomainMismatch {
                left: self.domain(),
                right: (grid[0], grid[grid.len() - 1]),
            });
        }
        Ok(IntervalFunction {
            kind: self.kind,
            xs: grid.to_vec(),
            lower: self.lower.as_ref().map(|l| l.resample(grid)).transpose()?,
            upper: self.upper.as_ref().map(|u| u.resample(grid)).transpose()?,
        })
    }

    pub fn restrict(&self, a: f64, b: f64) -> Result<IntervalFunction> {
        let (lo, hi) = self.domain();
        if !(lo <= a && a < b && b <= hi) {
            let x = if lo <= a && a <= hi { b } else { a };
            return Err(Error::DomainViolation { x, lo, hi });
        }
        let mut xs = vec![a];
        xs.extend(self.xs.iter().copied().filter(|&x| a < x && x < b));
        xs.push(b);
        Ok(IntervalFunction {
            kind: self.kind,
            lower: self.lower.as_ref().map(|l| l.restrict(a, b)).transpose()?,
            upper: self.upper.as_ref().map(|u| u.restrict(a, b)).transpose()?,
            xs,
        })
    }
}
