//! Sampled real functions with piecewise-linear semantics, interval-valued
//! functions built from them, and the affine maps used as separators.
//!
//! A [`SampledFunction`] is a strictly increasing breakpoint grid together with
//! values; between breakpoints it is the linear interpolant. Every predicate in
//! this crate (convexity, monotonicity, inclusion) is decided on that
//! interpolant, which makes them exact at breakpoints.

mod affine;
mod envelope;
mod interval;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use affine::{AffineIntervalMap, AffineMap};
pub use interval::IntervalFunction;

/// Default absolute tolerance on chord slopes and pointwise comparisons.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Piecewise-linear function on `[xs[0], xs[n-1]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSampled", into = "RawSampled")]
pub struct SampledFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename = "sampled")]
struct RawSampled {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl TryFrom<RawSampled> for SampledFunction {
    type Error = Error;

    fn try_from(raw: RawSampled) -> Result<Self> {
        SampledFunction::new(raw.xs, raw.ys)
    }
}

impl From<SampledFunction> for RawSampled {
    fn from(f: SampledFunction) -> Self {
        RawSampled { xs: f.xs, ys: f.ys }
    }
}

pub(crate) fn validate_grid(xs: &[f64]) -> Result<()> {
    if xs.len() < 2 {
        return Err(Error::TooFewPoints(xs.len()));
    }
    if let Some(&value) = xs.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "breakpoint",
            value,
        });
    }
    for (index, w) in xs.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(Error::GridViolation {
                index,
                prev: w[0],
                next: w[1],
            });
        }
    }
    Ok(())
}

/// `n` equally spaced points from `a` to `b`, with both ends hit exactly.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::RangeViolation {
            name: "domain",
            value: b - a,
            range: "a < b, both finite",
        });
    }
    let steps = (n - 1) as f64;
    let mut xs: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / steps).collect();
    xs[n - 1] = b;
    validate_grid(&xs)?;
    Ok(xs)
}

/// Sorted union of the breakpoints of functions sharing a domain. Points closer
/// than a relative `1e-12` of the domain width are merged.
pub fn merged_grid(grids: &[&[f64]]) -> Result<Vec<f64>> {
    let first = grids.first().ok_or(Error::TooFewPoints(0))?;
    let domain = (first[0], first[first.len() - 1]);
    for g in &grids[1..] {
        let other = (g[0], g[g.len() - 1]);
        if other != domain {
            return Err(Error::DomainMismatch {
                left: domain,
                right: other,
            });
        }
    }
    if grids.len() == 1 || grids.iter().all(|g| *g == *first) {
        return Ok(first.to_vec());
    }
    let mut all: Vec<f64> = grids.iter().flat_map(|g| g.iter().copied()).collect();
    all.sort_by(f64::total_cmp);
    let tol = 1e-12 * (domain.1 - domain.0);
    let mut out: Vec<f64> = Vec::with_capacity(all.len());
    for x in all {
        match out.last() {
            Some(&last) if x - last <= tol => {}
            _ => out.push(x),
        }
    }
    // keep the exact right endpoint even if a near-duplicate came first
    let n = out.len();
    out[n - 1] = domain.1;
    Ok(out)
}

/// Multiplies before dividing, so integer data whose differences are
/// divisible by the spacing interpolate without rounding.
#[inline]
pub(crate) fn lerp(x0: f64, y0: f64, x1: f64, y1: f64, x: f64) -> f64 {
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

impl SampledFunction {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                left: xs.len(),
                right: ys.len(),
            });
        }
        validate_grid(&xs)?;
        if let Some(&value) = ys.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "value",
                value,
            });
        }
        Ok(SampledFunction { xs, ys })
    }

    /// Samples `f` at the given breakpoints.
    pub fn from_fn(xs: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let ys = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, ys)
    }

    /// Samples `f` at `n` equally spaced points of `[a, b]`.
    pub fn uniform(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(uniform_grid(a, b, n)?, f)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn contains(&self, x: f64) -> bool {
        let (a, b) = self.domain();
        a <= x && x <= b
    }

    /// Value of the interpolant at `x`; exact at breakpoints.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            let (lo, hi) = self.domain();
            return Err(Error::DomainViolation { x, lo, hi });
        }
        Ok(self.value_at(x))
    }

    /// Interpolant at `x`, clamping to the domain. For points that are in the
    /// domain mathematically but may have drifted by rounding.
    pub(crate) fn value_at(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let k = self.xs.partition_point(|&v| v <= x);
        if k == 0 {
            return self.ys[0];
        }
        if k == n {
            return self.ys[n - 1];
        }
        let i = k - 1;
        if self.xs[i] == x {
            return self.ys[i];
        }
        lerp(self.xs[i], self.ys[i], self.xs[k], self.ys[k], x)
    }

    /// Chord slopes of consecutive segments.
    pub fn slopes(&self) -> Vec<f64> {
        self.xs
            .windows(2)
            .zip(self.ys.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect()
    }

    /// Non-decreasing chord slopes up to `eps`.
    pub fn is_convex(&self, eps: f64) -> bool {
        self.slopes().windows(2).all(|s| s[0] <= s[1] + eps)
    }

    pub fn is_concave(&self, eps: f64) -> bool {
        self.slopes().windows(2).all(|s| s[0] + eps >= s[1])
    }

    /// All chord slopes equal up to `eps`.
    pub fn is_affine(&self, eps: f64) -> bool {
        self.is_convex(eps) && self.is_concave(eps)
    }

    pub fn is_increasing(&self, eps: f64) -> bool {
        self.ys.windows(2).all(|y| y[0] <= y[1] + eps)
    }

    pub fn is_decreasing(&self, eps: f64) -> bool {
        self.ys.windows(2).all(|y| y[0] + eps >= y[1])
    }

    /// All values equal up to `eps`.
    pub fn is_constant(&self, eps: f64) -> bool {
        let (lo, hi) = self
            .ys
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &y| {
                (lo.min(y), hi.max(y))
            });
        hi - lo <= eps
    }

    pub fn neg(&self) -> SampledFunction {
        SampledFunction {
            xs: self.xs.clone(),
            ys: self.ys.iter().map(|y| -y).collect(),
        }
    }

    /// Pointwise `self + c`.
    pub fn shift(&self, c: f64) -> SampledFunction {
        SampledFunction {
            xs: self.xs.clone(),
            ys: self.ys.iter().map(|y| y + c).collect(),
        }
    }

    pub(crate) fn map_values(&self, op: impl Fn(f64) -> f64) -> SampledFunction {
        SampledFunction {
            xs: self.xs.clone(),
            ys: self.ys.iter().map(|&y| op(y)).collect(),
        }
    }

    /// Pointwise `op(self, other)`; both must share the grid.
    pub(crate) fn zip_values(
        &self,
        other: &SampledFunction,
        op: impl Fn(f64, f64) -> f64,
    ) -> SampledFunction {
        debug_assert_eq!(self.xs, other.xs);
        SampledFunction {
            xs: self.xs.clone(),
            ys: self
                .ys
                .iter()
                .zip(&other.ys)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    /// Re-expresses the same interpolant on `grid`, which must cover the same
    /// domain. Exact when `grid` contains all current breakpoints.
    pub fn resample(&self, grid: &[f64]) -> Result<SampledFunction> {
        validate_grid(grid)?;
        let here = self.domain();
        let there = (grid[0], grid[grid.len() - 1]);
        if here != there {
            return Err(Error::DomainMismatch {
                left: here,
                right: there,
            });
        }
        if grid == self.xs.as_slice() {
            return Ok(self.clone());
        }
        let ys = grid.iter().map(|&x| self.value_at(x)).collect();
        Ok(SampledFunction {
            xs: grid.to_vec(),
            ys,
        })
    }

    /// The interpolant restricted to `[a, b]`, keeping interior breakpoints.
    pub fn restrict(&self, a: f64, b: f64) -> Result<SampledFunction> {
        let (lo, hi) = self.domain();
        if !(lo <= a && a < b && b <= hi) {
            let x = if lo <= a && a <= hi { b } else { a };
            return Err(Error::DomainViolation { x, lo, hi });
        }
        let mut xs = vec![a];
        xs.extend(self.xs.iter().copied().filter(|&x| a < x && x < b));
        xs.push(b);
        let ys = xs.iter().map(|&x| self.value_at(x)).collect();
        Ok(SampledFunction { xs, ys })
    }

    /// `self − other` on the merged grid.
    pub fn difference(&self, other: &SampledFunction) -> Result<SampledFunction> {
        let grid = merged_grid(&[&self.xs, &other.xs])?;
        let a = self.resample(&grid)?;
        let b = other.resample(&grid)?;
        let ys = a.ys.iter().zip(&b.ys).map(|(p, q)| p - q).collect();
        Ok(SampledFunction { xs: grid, ys })
    }
}

/// Resamples a set of functions onto their common merged grid.
pub fn on_common_grid(fs: &[&SampledFunction]) -> Result<(Vec<f64>, Vec<SampledFunction>)> {
    let grids: Vec<&[f64]> = fs.iter().map(|f| f.xs()).collect();
    let grid = merged_grid(&grids)?;
    let out = fs
        .iter()
        .map(|f| f.resample(&grid))
        .collect::<Result<Vec<_>>>()?;
    Ok((grid, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(xs: &[f64], ys: &[f64]) -> SampledFunction {
        SampledFunction::new(xs.to_vec(), ys.to_vec()).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(sf(&[0.0, 1.0], &[0.0, 1.0]).eval(0.3).unwrap() == 0.3);
        assert!(matches!(
            SampledFunction::new(vec![0.0, 1.0, 1.0], vec![0.0, 1.0, 2.0]),
            Err(Error::GridViolation { index: 1, .. })
        ));
        assert!(matches!(
            SampledFunction::new(vec![0.0, 1.0], vec![0.0]),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        ));
        assert!(matches!(
            SampledFunction::new(vec![0.0, 1.0], vec![0.0, f64::NAN]),
            Err(Error::NonFinite { .. })
        ));
        assert!(matches!(
            SampledFunction::new(vec![0.0], vec![0.0]),
            Err(Error::TooFewPoints(1))
        ));
    }

    #[test]
    fn eval_examples() {
        let sq = sf(&[0.0, 0.5, 1.0], &[0.0, 0.25, 1.0]);
        // halfway between (0,0) and (0.5,0.25)
        assert_eq!(sq.eval(0.25).unwrap(), 0.125);
        let abs = sf(&[-1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]);
        assert_eq!(abs.eval(0.5).unwrap(), 0.5);
        assert_eq!(abs.eval(-1.0).unwrap(), 1.0);
        assert_eq!(abs.eval(1.0).unwrap(), 1.0);
        assert!(matches!(abs.eval(1.5), Err(Error::DomainViolation { .. })));
    }

    #[test]
    fn convexity_predicates() {
        let abs = sf(&[-1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]);
        assert!(abs.is_convex(0.0));
        assert!(!abs.neg().is_convex(0.0));
        assert!(abs.neg().is_concave(0.0));
        let sq = SampledFunction::uniform(-1.0, 1.0, 101, |x| x * x).unwrap();
        assert!(sq.is_convex(DEFAULT_EPS));
        assert!(sq.neg().is_concave(DEFAULT_EPS));
        let id = sf(&[0.0, 1.0], &[0.0, 1.0]);
        assert!(id.is_increasing(0.0) && id.is_affine(0.0));
        assert!(!abs.is_affine(1e-9));
    }

    #[test]
    fn difference_by_hand() {
        let psi = SampledFunction::uniform(-1.0, 1.0, 21, |x| x * x).unwrap();
        let phi = SampledFunction::uniform(-1.0, 1.0, 21, |x| x * x - x).unwrap();
        let d = psi.difference(&phi).unwrap();
        for (x, y) in d.xs().iter().zip(d.ys()) {
            assert!((x - y).abs() < 1e-15);
        }
        assert!(d.is_increasing(0.0));
    }

    #[test]
    fn difference_on_mismatched_grids_is_exact() {
        let f = sf(&[0.0, 1.0, 2.0], &[0.0, 2.0, 0.0]);
        let g = sf(&[0.0, 0.5, 2.0], &[1.0, 1.0, 1.0]);
        let d = f.difference(&g).unwrap();
        assert_eq!(d.xs(), &[0.0, 0.5, 1.0, 2.0]);
        assert_eq!(d.ys(), &[-1.0, 0.0, 1.0, -1.0]);
        let bad = sf(&[0.0, 3.0], &[0.0, 0.0]);
        assert!(matches!(
            f.difference(&bad),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn uniform_grid_hits_endpoints() {
        let xs = uniform_grid(-1.0, 1.0, 1001).unwrap();
        assert_eq!(xs[0], -1.0);
        assert_eq!(xs[500], 0.0);
        assert_eq!(xs[1000], 1.0);
        let coarse = uniform_grid(-1.0, 1.0, 101).unwrap();
        // compatible grids agree bit for bit on shared points
        assert!(coarse.iter().all(|x| xs.contains(x)));
    }

    #[test]
    fn restrict_keeps_interpolant() {
        let f = SampledFunction::uniform(-1.0, 1.0, 5, |x| x * x * x).unwrap();
        let r = f.restrict(-0.75, 0.25).unwrap();
        assert_eq!(r.xs(), &[-0.75, -0.5, 0.0, 0.25]);
        assert_eq!(r.eval(-0.75).unwrap(), f.eval(-0.75).unwrap());
        assert!(f.restrict(0.5, 2.0).is_err());
    }

    #[test]
    fn json_shape() {
        let f = sf(&[0.0, 1.0], &[0.0, 1.0]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"type":"sampled","xs":[0.0,1.0],"ys":[0.0,1.0]}"#);
        let back: SampledFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<SampledFunction>(
            r#"{"type":"sampled","xs":[1,0],"ys":[0,1]}"#
        )
        .is_err());
    }
}
