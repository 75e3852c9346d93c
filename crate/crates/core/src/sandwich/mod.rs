//! Sandwiching a real function pair `f ≤ · ≤ g` by an affine map, and the
//! set-valued counterpart `F ⊃ · ⊃ G`.
//!
//! For a pair on a shared grid the following are equivalent, and every one of
//! them is decided exactly for piecewise-linear inputs:
//!
//! * an affine `h` with `f ≤ h ≤ g` exists ([`find_affine_separator`]);
//! * a convex `h₁` and a concave `h₂` between `f` and `g` exist
//!   ([`convex_concave_separators`]);
//! * `f(tx + (1−t)y) ≤ t·g(x) + (1−t)·g(y)` and
//!   `t·f(x) + (1−t)·f(y) ≤ g(tx + (1−t)y)` for all `x, y, t`
//!   ([`check_condition_iii`]). For PL data the first clause is
//!   `f ≤ lce(g)` and the second `uce(f) ≤ g`.
//!
//! Failures come back as a [`Violation`]: a concrete `(x, y, t)` for which
//! one of the two clauses is broken.

mod lp;
mod set_valued;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::{on_common_grid, AffineMap, SampledFunction};

use lp::{Constraint, LpResult, Side};

pub use set_valued::{
    check_condition_iii_setvalued, check_condition_iii_setvalued_sampled,
    convex_concave_interval_separators, find_affine_interval_separator, verify_interval_separator,
    Endpoint, Inclusion, IntervalEnvelopePair, SetViolation,
};

/// Which inequality of the cross condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `f(tx+(1−t)y) ≤ t·g(x)+(1−t)·g(y)`
    FLeCombination,
    /// `t·f(x)+(1−t)·f(y) ≤ g(tx+(1−t)y)`
    CombinationLeG,
}

/// A point `(x, y, t)` at which `lhs > rhs` for the given clause.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub clause: Clause,
    /// Breakpoints of the (at most three) constraints that certify infeasibility.
    #[serde(skip)]
    pub core: Vec<f64>,
}

impl Violation {
    fn new(
        clause: Clause,
        x: f64,
        y: f64,
        t: f64,
        f: &SampledFunction,
        g: &SampledFunction,
    ) -> Self {
        let mut v = Violation {
            x,
            y,
            t,
            lhs: 0.0,
            rhs: 0.0,
            clause,
            core: Vec::new(),
        };
        (v.lhs, v.rhs) = v.evaluate(f, g);
        let mut core = vec![x, y, v.z()];
        core.sort_by(f64::total_cmp);
        core.dedup();
        v.core = core;
        v
    }

    /// `tx + (1−t)y`, kept inside `[x, y]`.
    pub fn z(&self) -> f64 {
        let z = self.t * self.x + (1.0 - self.t) * self.y;
        z.clamp(self.x.min(self.y), self.x.max(self.y))
    }

    pub fn gap(&self) -> f64 {
        self.lhs - self.rhs
    }

    /// Recomputes both sides of the violated clause from `f` and `g`.
    pub fn evaluate(&self, f: &SampledFunction, g: &SampledFunction) -> (f64, f64) {
        let (x, y, t, z) = (self.x, self.y, self.t, self.z());
        match self.clause {
            Clause::FLeCombination => {
                (f.value_at(z), t * g.value_at(x) + (1.0 - t) * g.value_at(y))
            }
            Clause::CombinationLeG => {
                (t * f.value_at(x) + (1.0 - t) * f.value_at(y), g.value_at(z))
            }
        }
    }
}

/// Result of a condition check.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConditionOutcome<W = Violation> {
    Ok,
    Violation { witness: W },
}

impl<W> ConditionOutcome<W> {
    pub fn is_ok(&self) -> bool {
        matches!(self, ConditionOutcome::Ok)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            ConditionOutcome::Ok => None,
            ConditionOutcome::Violation { witness } => Some(witness),
        }
    }
}

/// Result of a separator search.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome<S, W = Violation> {
    Separator(S),
    Infeasible { witness: W },
}

impl<S, W> Outcome<S, W> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Outcome::Separator(_))
    }

    pub fn separator(&self) -> Option<&S> {
        match self {
            Outcome::Separator(s) => Some(s),
            Outcome::Infeasible { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Separator(_) => None,
            Outcome::Infeasible { witness } => Some(witness),
        }
    }
}

/// Convex `h1 ≥ f` below `g` and concave `h2 ≤ g` above `f`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopePair {
    pub h1: SampledFunction,
    pub h2: SampledFunction,
}

fn common_pair(
    f: &SampledFunction,
    g: &SampledFunction,
) -> Result<(SampledFunction, SampledFunction)> {
    let (_, mut both) = on_common_grid(&[f, g])?;
    let g = both.pop().expect("two functions");
    let f = both.pop().expect("two functions");
    Ok((f, g))
}

// hull vertices a ≤ k ≤ c around breakpoint k
fn bracket(vertices: &[usize], k: usize) -> (usize, usize) {
    match vertices.binary_search(&k) {
        Ok(_) => (k, k),
        Err(p) => (vertices[p - 1], vertices[p]),
    }
}

fn witness_on_segment(
    clause: Clause,
    xs: &[f64],
    (a, c): (usize, usize),
    k: usize,
    f: &SampledFunction,
    g: &SampledFunction,
) -> Violation {
    if a == c {
        return Violation::new(clause, xs[k], xs[k], 1.0, f, g);
    }
    let t = (xs[c] - xs[k]) / (xs[c] - xs[a]);
    Violation::new(clause, xs[a], xs[c], t, f, g)
}

/// Envelope decision of the cross condition on `f`, `g` already on one grid.
pub(crate) fn envelope_check(
    f: &SampledFunction,
    g: &SampledFunction,
    eps: f64,
) -> ConditionOutcome {
    let xs = f.xs();
    let g_hull = g.lower_hull_vertices();
    let f_hull = f.upper_hull_vertices();
    let mut worst: Option<Violation> = None;
    let mut consider = |v: Violation| {
        if v.gap() > eps && worst.as_ref().is_none_or(|w| v.gap() > w.gap()) {
            worst = Some(v);
        }
    };
    let lce_g = g.lower_convex_envelope();
    for k in 0..xs.len() {
        if f.ys()[k] - lce_g.ys()[k] > eps {
            consider(witness_on_segment(
                Clause::FLeCombination,
                xs,
                bracket(&g_hull, k),
                k,
                f,
                g,
            ));
        }
    }
    let uce_f = f.upper_concave_envelope();
    for k in 0..xs.len() {
        if uce_f.ys()[k] - g.ys()[k] > eps {
            consider(witness_on_segment(
                Clause::CombinationLeG,
                xs,
                bracket(&f_hull, k),
                k,
                f,
                g,
            ));
        }
    }
    match worst {
        Some(witness) => ConditionOutcome::Violation { witness },
        None => ConditionOutcome::Ok,
    }
}

/// Decides the cross condition through the envelopes: `f ≤ lce(g) + ε` and
/// `uce(f) ≤ g + ε` at every breakpoint of the merged grid. On failure the
/// witness with the largest gap is returned.
pub fn check_condition_iii(
    f: &SampledFunction,
    g: &SampledFunction,
    eps: f64,
) -> Result<ConditionOutcome> {
    let (f, g) = common_pair(f, g)?;
    Ok(envelope_check(&f, &g, eps))
}

fn enumerate(
    f: &SampledFunction,
    g: &SampledFunction,
    t_grid_size: usize,
    crossings: bool,
    eps: f64,
) -> Result<ConditionOutcome> {
    if t_grid_size < 2 {
        return Err(Error::RangeViolation {
            name: "t_grid_size",
            value: t_grid_size as f64,
            range: ">= 2",
        });
    }
    let (f, g) = common_pair(f, g)?;
    let xs = f.xs();
    let (fy, gy) = (f.ys(), g.ys());
    let n = xs.len();
    let ts: Vec<f64> = (0..t_grid_size)
        .map(|k| k as f64 / (t_grid_size - 1) as f64)
        .collect();
    let check = |i: usize, j: usize, t: f64, at: Option<usize>| -> Option<Violation> {
        let z = match at {
            Some(k) => xs[k],
            None => (t * xs[i] + (1.0 - t) * xs[j]).clamp(xs[i], xs[j]),
        };
        let (fz, gz) = match at {
            Some(k) => (fy[k], gy[k]),
            None => (f.value_at(z), g.value_at(z)),
        };
        if fz - (t * gy[i] + (1.0 - t) * gy[j]) > eps {
            return Some(Violation::new(
                Clause::FLeCombination,
                xs[i],
                xs[j],
                t,
                &f,
                &g,
            ));
        }
        if (t * fy[i] + (1.0 - t) * fy[j]) - gz > eps {
            return Some(Violation::new(
                Clause::CombinationLeG,
                xs[i],
                xs[j],
                t,
                &f,
                &g,
            ));
        }
        None
    };
    let found = (0..n).into_par_iter().find_map_first(|i| {
        (i..n).find_map(|j| {
            ts.iter().find_map(|&t| check(i, j, t, None)).or_else(|| {
                if !crossings {
                    return None;
                }
                (i + 1..j).find_map(|k| {
                    let t = (xs[j] - xs[k]) / (xs[j] - xs[i]);
                    check(i, j, t, Some(k))
                })
            })
        })
    });
    Ok(match found {
        Some(witness) => ConditionOutcome::Violation { witness },
        None => ConditionOutcome::Ok,
    })
}

/// Direct enumeration of the cross condition over all breakpoint pairs
/// `x ≤ y` and `t_grid_size` uniform values of `t` in `[0, 1]`. A necessary
/// check: it can miss violations that fall between sampled `t`.
pub fn check_condition_iii_sampled(
    f: &SampledFunction,
    g: &SampledFunction,
    t_grid_size: usize,
    eps: f64,
) -> Result<ConditionOutcome> {
    enumerate(f, g, t_grid_size, false, eps)
}

/// As [`check_condition_iii_sampled`], plus, for every pair, each `t` that
/// lands `tx + (1−t)y` on an interior breakpoint. Both sides are piecewise
/// linear in `t` with kinks only there, so this enumeration is exact.
/// Cost is cubic in the number of breakpoints.
pub fn check_condition_iii_exhaustive(
    f: &SampledFunction,
    g: &SampledFunction,
    t_grid_size: usize,
    eps: f64,
) -> Result<ConditionOutcome> {
    enumerate(f, g, t_grid_size, true, eps)
}

pub(crate) fn constraints_for(
    f: Option<&SampledFunction>,
    g: Option<&SampledFunction>,
) -> Vec<Constraint> {
    let xs = f.or(g).expect("at least one side").xs();
    let mut out = Vec::with_capacity(2 * xs.len());
    for (k, &x) in xs.iter().enumerate() {
        if let Some(f) = f {
            out.push(Constraint {
                x,
                b: f.ys()[k],
                side: Side::Lower,
            });
        }
        if let Some(g) = g {
            out.push(Constraint {
                x,
                b: g.ys()[k],
                side: Side::Upper,
            });
        }
    }
    out
}

/// Turns an infeasible core into a cross-condition witness.
fn core_witness(
    core: &[Constraint],
    f: &SampledFunction,
    g: &SampledFunction,
) -> Option<Violation> {
    let mut cs = core.to_vec();
    cs.sort_by(|a, b| a.x.total_cmp(&b.x));
    let v = match cs.as_slice() {
        [a, b] if a.x == b.x => Violation::new(Clause::FLeCombination, a.x, a.x, 1.0, f, g),
        [a, m, b] if a.x < m.x && m.x < b.x => {
            let t = (b.x - m.x) / (b.x - a.x);
            let clause = match (a.side, m.side, b.side) {
                (Side::Lower, Side::Upper, Side::Lower) => Clause::CombinationLeG,
                (Side::Upper, Side::Lower, Side::Upper) => Clause::FLeCombination,
                _ => return None,
            };
            Violation::new(clause, a.x, b.x, t, f, g)
        }
        _ => return None,
    };
    let mut v = v;
    v.core = cs.iter().map(|c| c.x).collect();
    v.core.dedup();
    (v.gap() > 0.0).then_some(v)
}

/// Solves on a shared grid. A missing side stands for `−∞` (`f`) or `+∞`
/// (`g`); with only one side present the problem is always feasible.
pub(crate) fn affine_on_grid(
    f: Option<&SampledFunction>,
    g: Option<&SampledFunction>,
    eps: f64,
) -> Outcome<AffineMap> {
    let constraints = constraints_for(f, g);
    match lp::solve(&constraints, eps / 2.0) {
        LpResult::Feasible(h) => Outcome::Separator(h),
        LpResult::Infeasible(idx) => {
            let (f, g) = (
                f.expect("infeasible needs both sides"),
                g.expect("infeasible needs both sides"),
            );
            let core: Vec<Constraint> = idx.iter().map(|&i| constraints[i]).collect();
            let witness = core_witness(&core, f, g)
                .or_else(|| envelope_check(f, g, 0.0).witness().cloned())
                .unwrap_or_else(|| {
                    // the solver and the envelopes disagree only on inputs
                    // balanced within rounding; report the core as is
                    let x = core[0].x;
                    Violation::new(Clause::FLeCombination, x, x, 1.0, f, g)
                });
            Outcome::Infeasible { witness }
        }
    }
}

/// Affine `h` with `f − ε ≤ h ≤ g + ε` at every merged breakpoint, which by
/// piecewise linearity bounds it on the whole domain. Constraints are visited
/// by breakpoint, the lower one first. On infeasibility the witness is built
/// from a minimal infeasible set of at most three constraints.
pub fn find_affine_separator(
    f: &SampledFunction,
    g: &SampledFunction,
    eps: f64,
) -> Result<Outcome<AffineMap>> {
    let (f, g) = common_pair(f, g)?;
    Ok(affine_on_grid(Some(&f), Some(&g), eps))
}

/// `h1 = lce(g)` and `h2 = uce(f)`; feasible exactly when the cross
/// condition holds.
pub fn convex_concave_separators(
    f: &SampledFunction,
    g: &SampledFunction,
    eps: f64,
) -> Result<Outcome<EnvelopePair>> {
    let (f, g) = common_pair(f, g)?;
    Ok(match envelope_check(&f, &g, eps) {
        ConditionOutcome::Ok => Outcome::Separator(EnvelopePair {
            h1: g.lower_convex_envelope(),
            h2: f.upper_concave_envelope(),
        }),
        ConditionOutcome::Violation { witness } => Outcome::Infeasible { witness },
    })
}

/// Re-checks `f ≤ h ≤ g` within `eps` at every merged breakpoint.
pub fn verify_separator(
    f: &SampledFunction,
    g: &SampledFunction,
    h: &AffineMap,
    eps: f64,
) -> Result<bool> {
    let (f, g) = common_pair(f, g)?;
    Ok(f.xs()
        .iter()
        .zip(f.ys().iter().zip(g.ys()))
        .all(|(&x, (&lo, &hi))| {
            let v = h.eval(x);
            lo <= v + eps && v <= hi + eps
        }))
}

/// Re-checks `f ≤ h ≤ g` for a sampled separator.
pub fn verify_sampled_separator(
    f: &SampledFunction,
    g: &SampledFunction,
    h: &SampledFunction,
    eps: f64,
) -> Result<bool> {
    let (_, all) = on_common_grid(&[f, g, h])?;
    let (f, g, h) = (&all[0], &all[1], &all[2]);
    Ok((0..f.len()).all(|k| f.ys()[k] <= h.ys()[k] + eps && h.ys()[k] <= g.ys()[k] + eps))
}
