//! The three-point inequality
//!
//! ```text
//! (f(x)+f(y)+f(z))/3 + f((x+y+z)/3) ≥ (2/3)·(f((x+y)/2) + f((y+z)/2) + f((x+z)/2))
//! ```
//!
//! which a continuous function satisfies for all `x, y, z` exactly when it is
//! convex, and its set-valued form with `⊂` in place of `≥`. The scans are
//! falsifiers: a violation disproves convexity, a clean scan proves nothing
//! beyond the triples it visited.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::{CheckReport, ScanOutcome, Witness};
use crate::error::{Error, Result};
use crate::functions::{IntervalFunction, SampledFunction};
use crate::intervals::{ExtInterval, IntervalKind};

/// The grid together with the midpoints of all pairs of its points, sorted.
/// Points closer than a relative `1e-12` of the width are merged. A uniform
/// grid of `n` points refines to the uniform grid of `2n − 1`; an irregular
/// one can grow to `n(n+1)/2` points.
pub fn refine_with_midpoints(xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut all = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            all.push(if i == j { xs[i] } else { (xs[i] + xs[j]) / 2.0 });
        }
    }
    all.sort_by(f64::total_cmp);
    let (a, b) = (xs[0], xs[n - 1]);
    let tol = 1e-12 * (b - a);
    let mut out: Vec<f64> = Vec::with_capacity(all.len());
    for x in all {
        match out.last() {
            Some(&last) if x - last <= tol => {}
            _ => out.push(x),
        }
    }
    let m = out.len();
    out[m - 1] = b;
    out
}

fn sorted3(x: f64, y: f64, z: f64) -> [f64; 3] {
    let mut p = [x, y, z];
    p.sort_by(f64::total_cmp);
    p
}

/// `(lhs, rhs)` for an ascending triple whose values are already known.
pub(super) fn real_sides(
    f: &SampledFunction,
    [x, y, z]: [f64; 3],
    [fx, fy, fz]: [f64; 3],
) -> (f64, f64) {
    let lhs = (fx + fy + fz) / 3.0 + f.value_at((x + y + z) / 3.0);
    let mids = f.value_at((x + y) / 2.0) + f.value_at((y + z) / 2.0) + f.value_at((x + z) / 2.0);
    (lhs, 2.0 / 3.0 * mids)
}

fn set_sides(
    big: &IntervalFunction,
    [x, y, z]: [f64; 3],
    [fx, fy, fz]: [ExtInterval; 3],
) -> (ExtInterval, ExtInterval) {
    let lhs = (fx + fy + fz).scale(1.0 / 3.0) + big.value_at((x + y + z) / 3.0);
    let mids =
        big.value_at((x + y) / 2.0) + big.value_at((y + z) / 2.0) + big.value_at((x + z) / 2.0);
    (lhs, mids.scale(2.0 / 3.0))
}

fn at(x: f64, y: f64, z: f64, indices: Option<Vec<usize>>) -> Witness {
    Witness {
        x: Some(x),
        y: Some(y),
        z: Some(z),
        indices,
        ..Witness::default()
    }
}

/// The inequality at one triple. The triple is sorted internally, so the
/// report does not depend on the order of `x, y, z`.
pub fn popoviciu_check(
    f: &SampledFunction,
    x: f64,
    y: f64,
    z: f64,
    eps: f64,
) -> Result<CheckReport> {
    let p = sorted3(x, y, z);
    let vals = [f.eval(p[0])?, f.eval(p[1])?, f.eval(p[2])?];
    let (lhs, rhs) = real_sides(f, p, vals);
    Ok(CheckReport::real(
        lhs,
        rhs,
        lhs - rhs,
        eps,
        at(x, y, z, None),
    ))
}

fn require_endpoint(kind: IntervalKind) -> Result<()> {
    if kind == IntervalKind::AllReals {
        return Err(Error::KindIncompatible {
            outer: kind,
            inner: kind,
        });
    }
    Ok(())
}

/// The inclusion form at one triple: `lhs ⊂ rhs` with the same expressions
/// built from Minkowski sums and scalings.
pub fn popoviciu_inclusion_check(
    big: &IntervalFunction,
    x: f64,
    y: f64,
    z: f64,
    eps: f64,
) -> Result<CheckReport> {
    require_endpoint(big.kind())?;
    let p = sorted3(x, y, z);
    let vals = [big.eval(p[0])?, big.eval(p[1])?, big.eval(p[2])?];
    let (lhs, rhs) = set_sides(big, p, vals);
    Ok(CheckReport::inclusion(
        lhs,
        rhs,
        true,
        eps,
        at(x, y, z, None),
    ))
}

/// Summary of a triple enumeration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopoviciuScan {
    /// Size of the midpoint-refined grid.
    pub points: usize,
    /// Triples `i ≤ j ≤ k` up to and including the reported one in
    /// lexicographic order; all of them when the outcome is `Ok`.
    pub triples: usize,
    /// Triples with `|slack| ≤ ε` (set equality for inclusions); `None` when
    /// the scan stopped at a violation.
    pub equalities: Option<usize>,
    pub outcome: ScanOutcome,
}

impl PopoviciuScan {
    pub fn equality_everywhere(&self) -> bool {
        self.outcome.is_ok() && self.equalities == Some(self.triples)
    }
}

/// 1-based position of `(i, j, k)` among the triples `i ≤ j ≤ k < n` in
/// lexicographic order.
fn triple_rank(n: usize, i: usize, j: usize, k: usize) -> usize {
    let pairs_from = |m: usize| (n - m) * (n - m + 1) / 2;
    let before_i: usize = (0..i).map(pairs_from).sum();
    let before_j: usize = (i..j).map(|jj| n - jj).sum();
    before_i + before_j + (k - j) + 1
}

/// Visits `(i, j, k)` with `i ≤ j ≤ k` in lexicographic order, in parallel
/// over `i`; returns the first failing report by that order.
fn scan_triples(
    n: usize,
    check: impl Fn(usize, usize, usize) -> CheckReport + Sync,
) -> (usize, Option<usize>, ScanOutcome) {
    let equalities = AtomicUsize::new(0);
    let found = (0..n).into_par_iter().find_map_first(|i| {
        let mut eq = 0;
        for j in i..n {
            for k in j..n {
                let report = check(i, j, k);
                if !report.holds {
                    return Some((triple_rank(n, i, j, k), report));
                }
                eq += usize::from(report.equality);
            }
        }
        equalities.fetch_add(eq, Ordering::Relaxed);
        None
    });
    match found {
        Some((rank, witness)) => (rank, None, ScanOutcome::Violation { witness }),
        None => (
            n * (n + 1) * (n + 2) / 6,
            Some(equalities.into_inner()),
            ScanOutcome::Ok,
        ),
    }
}

/// All triples over the midpoint-refined grid. Returns the lexicographically
/// smallest violating triple `(i, j, k)`, `i ≤ j ≤ k`, or `Ok`. Cost is cubic
/// in the refined size.
pub fn popoviciu_scan(f: &SampledFunction, eps: f64) -> PopoviciuScan {
    let pts = refine_with_midpoints(f.xs());
    let vals: Vec<f64> = pts.iter().map(|&x| f.value_at(x)).collect();
    let (triples, equalities, outcome) = scan_triples(pts.len(), |i, j, k| {
        let (lhs, rhs) = real_sides(f, [pts[i], pts[j], pts[k]], [vals[i], vals[j], vals[k]]);
        CheckReport::real(
            lhs,
            rhs,
            lhs - rhs,
            eps,
            at(pts[i], pts[j], pts[k], Some(vec![i, j, k])),
        )
    });
    PopoviciuScan {
        points: pts.len(),
        triples,
        equalities,
        outcome,
    }
}

/// Set-valued counterpart of [`popoviciu_scan`].
pub fn popoviciu_inclusion_scan(big: &IntervalFunction, eps: f64) -> Result<PopoviciuScan> {
    require_endpoint(big.kind())?;
    let pts = refine_with_midpoints(big.xs());
    let vals: Vec<ExtInterval> = pts.iter().map(|&x| big.value_at(x)).collect();
    let (triples, equalities, outcome) = scan_triples(pts.len(), |i, j, k| {
        let (lhs, rhs) = set_sides(big, [pts[i], pts[j], pts[k]], [vals[i], vals[j], vals[k]]);
        CheckReport::inclusion(
            lhs,
            rhs,
            true,
            eps,
            at(pts[i], pts[j], pts[k], Some(vec![i, j, k])),
        )
    });
    Ok(PopoviciuScan {
        points: pts.len(),
        triples,
        equalities,
        outcome,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossVerdict {
    /// Slope test and scan agree.
    Agree,
    /// Not convex, but the scan found no violating triple on its grid.
    ScanIncomplete,
    /// Convex by slopes, yet a violating triple exists. Never expected.
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub convex: bool,
    pub verdict: CrossVerdict,
    pub scan: PopoviciuScan,
}

/// Compares the slope test for convexity with the three-point scan.
pub fn convexity_cross_check(f: &SampledFunction, eps: f64) -> CrossCheck {
    let convex = f.is_convex(eps);
    let scan = popoviciu_scan(f, eps);
    let verdict = match (convex, scan.outcome.is_ok()) {
        (true, true) | (false, false) => CrossVerdict::Agree,
        (false, true) => CrossVerdict::ScanIncomplete,
        (true, false) => CrossVerdict::Contradiction,
    };
    CrossCheck {
        convex,
        verdict,
        scan,
    }
}
