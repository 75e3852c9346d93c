//! Incremental feasibility for a system of half-planes in `(m, c)`, each of the
//! form `m·x + c ≥ b` or `m·x + c ≤ b`.
//!
//! Constraints are visited in the given order. The current point is kept while
//! it satisfies the next constraint; otherwise the new point lies on that
//! constraint's boundary line (the feasible set of the earlier constraints is
//! convex, so if it meets the new half-plane it meets the line), and a 1-D
//! interval of admissible slopes along the line is intersected from all
//! earlier constraints. An empty interval is certified by at most three
//! constraints: the new one and the two that produced the crossing bounds.

use crate::functions::AffineMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    /// `h(x) ≥ b`
    Lower,
    /// `h(x) ≤ b`
    Upper,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Lower => 1.0,
            Side::Upper => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Constraint {
    pub x: f64,
    pub b: f64,
    pub side: Side,
}

impl Constraint {
    /// Signed satisfaction: non-negative iff `(m, c)` satisfies the constraint.
    fn margin(&self, m: f64, c: f64) -> f64 {
        self.side.sign() * (m * self.x + c - self.b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpResult {
    Feasible(AffineMap),
    /// Indices of an infeasible subsystem (two or three constraints).
    Infeasible(Vec<usize>),
}

/// Finds `(m, c)` violating no constraint by more than `slack`.
pub(crate) fn solve(constraints: &[Constraint], slack: f64) -> LpResult {
    let (mut m, mut c) = (0.0_f64, 0.0_f64);
    for (i, ci) in constraints.iter().enumerate() {
        if ci.margin(m, c) >= -slack {
            continue;
        }
        // restrict to the line m·x_i + c = b_i, i.e. c = b_i − m·x_i
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let (mut lo_idx, mut hi_idx) = (None, None);
        for (j, cj) in constraints[..i].iter().enumerate() {
            let s = cj.side.sign();
            let a = s * (cj.x - ci.x);
            let r = s * (cj.b - ci.b) - slack;
            if a == 0.0 {
                if r > 0.0 {
                    return LpResult::Infeasible(vec![j, i]);
                }
            } else if a > 0.0 {
                let bound = r / a;
                if bound > lo {
                    lo = bound;
                    lo_idx = Some(j);
                }
            } else {
                let bound = r / a;
                if bound < hi {
                    hi = bound;
                    hi_idx = Some(j);
                }
            }
        }
        if lo > hi {
            // both are finite, so both indices were set
            let mut core = vec![lo_idx.unwrap_or(i), hi_idx.unwrap_or(i), i];
            core.sort_unstable();
            core.dedup();
            return LpResult::Infeasible(core);
        }
        m = m.clamp(lo, hi);
        c = ci.b - m * ci.x;
    }
    LpResult::Feasible(AffineMap { m, c })
}
