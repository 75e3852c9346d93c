//! `(1−t)φ(x) + tψ(y) ≥ ((1−t)φ + tψ)((1−t)x + ty)` for `x ≤ y`, `t ∈ (0, 1)`,
//! whenever `ψ − φ` is increasing and `ψ` is convex; with `≤` when `ψ − φ` is
//! decreasing and `ψ` concave. With `φ = ψ` this is plain convexity.
//!
//! Writing `z = (1−t)x + ty`, the gap is
//! `t(ψ(y) − ψ(z)) − (1−t)(φ(z) − φ(x))`. Monotonicity of `ψ − φ` bounds it
//! below by the convexity gap of `ψ`, so equality everywhere needs both `ψ − φ`
//! constant and `ψ` affine.

use rayon::prelude::*;
use serde::Serialize;

use super::{CheckReport, ScanOutcome, Witness};
use crate::error::{Error, Result};
use crate::functions::{merged_grid, IntervalFunction, SampledFunction};
use crate::intervals::ExtInterval;

/// Default number of interior `t` values in scans.
pub const DEFAULT_T_COUNT: usize = 33;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `ψ − φ` increasing, `ψ` convex, conclusion `≥`.
    #[default]
    Increasing,
    /// `ψ − φ` decreasing, `ψ` concave, conclusion `≤`.
    Decreasing,
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "increasing" => Ok(Direction::Increasing),
            "decreasing" => Ok(Direction::Decreasing),
            other => Err(format!(
                "unknown direction '{other}' (expected increasing or decreasing)"
            )),
        }
    }
}

fn common(
    phi: &SampledFunction,
    psi: &SampledFunction,
) -> Result<(SampledFunction, SampledFunction)> {
    let grid = merged_grid(&[phi.xs(), psi.xs()])?;
    Ok((phi.resample(&grid)?, psi.resample(&grid)?))
}

fn sides(phi: &SampledFunction, psi: &SampledFunction, x: f64, y: f64, t: f64) -> (f64, f64) {
    let z = ((1.0 - t) * x + t * y).clamp(x, y);
    let lhs = (1.0 - t) * phi.value_at(x) + t * psi.value_at(y);
    let rhs = (1.0 - t) * phi.value_at(z) + t * psi.value_at(z);
    (lhs, rhs)
}

fn report(lhs: f64, rhs: f64, direction: Direction, eps: f64, at: Witness) -> CheckReport {
    let slack = match direction {
        Direction::Increasing => lhs - rhs,
        Direction::Decreasing => rhs - lhs,
    };
    CheckReport::real(lhs, rhs, slack, eps, at)
}

fn point(x: f64, y: f64, t: f64, indices: Option<Vec<usize>>) -> Witness {
    Witness {
        x: Some(x),
        y: Some(y),
        z: Some(((1.0 - t) * x + t * y).clamp(x, y)),
        t: Some(t),
        indices,
    }
}

/// The inequality at one `(x, y, t)`.
pub fn prop3_check(
    phi: &SampledFunction,
    psi: &SampledFunction,
    x: f64,
    y: f64,
    t: f64,
    direction: Direction,
    eps: f64,
) -> Result<CheckReport> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::RangeViolation {
            name: "t",
            value: t,
            range: "(0, 1)",
        });
    }
    if x > y {
        return Err(Error::RangeViolation {
            name: "x",
            value: x,
            range: "x <= y",
        });
    }
    if phi.domain() != psi.domain() {
        return Err(Error::DomainMismatch {
            left: phi.domain(),
            right: psi.domain(),
        });
    }
    phi.eval(x)?;
    phi.eval(y)?;
    let (lhs, rhs) = sides(phi, psi, x, y, t);
    Ok(report(lhs, rhs, direction, eps, point(x, y, t, None)))
}

/// Whether the hypotheses hold on the merged grid, plus the two conditions
/// for equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub direction: Direction,
    /// `ψ − φ` increasing (resp. decreasing).
    pub difference_monotone: bool,
    /// `ψ` convex (resp. concave).
    pub psi_shape: bool,
    pub holds: bool,
    pub difference_constant: bool,
    pub psi_affine: bool,
}

pub fn hypotheses(
    phi: &SampledFunction,
    psi: &SampledFunction,
    direction: Direction,
    eps: f64,
) -> Result<HypothesisReport> {
    let (phi, psi) = common(phi, psi)?;
    let diff = psi.difference(&phi)?;
    let (difference_monotone, psi_shape) = match direction {
        Direction::Increasing => (diff.is_increasing(eps), psi.is_convex(eps)),
        Direction::Decreasing => (diff.is_decreasing(eps), psi.is_concave(eps)),
    };
    Ok(HypothesisReport {
        direction,
        difference_monotone,
        psi_shape,
        holds: difference_monotone && psi_shape,
        difference_constant: diff.is_constant(eps),
        psi_affine: psi.is_affine(eps),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop3Scan {
    pub hypotheses: HypothesisReport,
    pub t_values: usize,
    /// Points `(x_i, x_j, t)` with `i ≤ j` checked.
    pub checked: usize,
    pub violations: usize,
    pub equalities: usize,
    pub equality_everywhere: bool,
    /// False only if the hypotheses hold and a violation was found anyway.
    pub consistent: bool,
    /// First violation in `(i, j, t)` order.
    pub outcome: ScanOutcome,
}

#[derive(Default)]
struct Tally {
    checked: usize,
    violations: usize,
    equalities: usize,
    first: Option<CheckReport>,
}

impl Tally {
    fn merge(mut self, later: Tally) -> Tally {
        self.checked += later.checked;
        self.violations += later.violations;
        self.equalities += later.equalities;
        self.first = self.first.or(later.first);
        self
    }
}

/// Interior `t` values `k/(count+1)`, `k = 1..=count`.
pub fn interior_ts(count: usize) -> Vec<f64> {
    (1..=count).map(|k| k as f64 / (count + 1) as f64).collect()
}

/// Reports the hypotheses, then checks every breakpoint pair `x_i ≤ x_j` of
/// the merged grid against `t_count` interior `t` values.
pub fn prop3_scan(
    phi: &SampledFunction,
    psi: &SampledFunction,
    direction: Direction,
    t_count: usize,
    eps: f64,
) -> Result<Prop3Scan> {
    if t_count == 0 {
        return Err(Error::RangeViolation {
            name: "t_count",
            value: 0.0,
            range: ">= 1",
        });
    }
    let hyp = hypotheses(phi, psi, direction, eps)?;
    let (phi, psi) = common(phi, psi)?;
    let xs = phi.xs();
    let ts = interior_ts(t_count);
    let tally = (0..xs.len())
        .into_par_iter()
        .map(|i| {
            let mut tally = Tally::default();
            for j in i..xs.len() {
                for &t in &ts {
                    let (lhs, rhs) = sides(&phi, &psi, xs[i], xs[j], t);
                    let r = report(
                        lhs,
                        rhs,
                        direction,
                        eps,
                        point(xs[i], xs[j], t, Some(vec![i, j])),
                    );
                    tally.checked += 1;
                    tally.equalities += usize::from(r.equality);
                    if !r.holds {
                        tally.violations += 1;
                        if tally.first.is_none() {
                            tally.first = Some(r);
                        }
                    }
                }
            }
            tally
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    Ok(Prop3Scan {
        hypotheses: hyp,
        t_values: ts.len(),
        checked: tally.checked,
        violations: tally.violations,
        equalities: tally.equalities,
        equality_everywhere: tally.equalities == tally.checked,
        consistent: !(hyp.holds && tally.violations > 0),
        outcome: match tally.first {
            Some(witness) => ScanOutcome::Violation { witness },
            None => ScanOutcome::Ok,
        },
    })
}

/// Counts of how `(1−t)Φ(x) + tΨ(y)` relates to `(1−t)Φ(z) + tΨ(z)` over a
/// scan. Descriptive only; no relation is expected to hold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetValuedObservation {
    pub phi_convex: bool,
    pub psi_convex: bool,
    pub checked: usize,
    /// `lhs ⊂ rhs` within ε.
    pub lhs_within_rhs: usize,
    /// `rhs ⊂ lhs` within ε.
    pub rhs_within_lhs: usize,
    pub equal: usize,
    pub incomparable: usize,
    /// First point where `lhs ⊂ rhs` fails, if any.
    pub first_non_inclusion: Option<CheckReport>,
}

/// Set-valued analogue of [`prop3_scan`] that only records what happens.
pub fn prop3_setvalued_observe(
    phi: &IntervalFunction,
    psi: &IntervalFunction,
    t_count: usize,
    eps: f64,
) -> Result<SetValuedObservation> {
    if phi.kind() != psi.kind() {
        return Err(Error::KindIncompatible {
            outer: phi.kind(),
            inner: psi.kind(),
        });
    }
    let grid = merged_grid(&[phi.xs(), psi.xs()])?;
    let (phi, psi) = (phi.resample(&grid)?, psi.resample(&grid)?);
    let ts = interior_ts(t_count.max(1));
    let mut obs = SetValuedObservation {
        phi_convex: phi.is_convex(eps),
        psi_convex: psi.is_convex(eps),
        checked: 0,
        lhs_within_rhs: 0,
        rhs_within_lhs: 0,
        equal: 0,
        incomparable: 0,
        first_non_inclusion: None,
    };
    for i in 0..grid.len() {
        for j in i..grid.len() {
            for &t in &ts {
                let (x, y) = (grid[i], grid[j]);
                let z = ((1.0 - t) * x + t * y).clamp(x, y);
                let lhs: ExtInterval = phi.value_at(x).scale(1.0 - t) + psi.value_at(y).scale(t);
                let rhs: ExtInterval = phi.value_at(z).scale(1.0 - t) + psi.value_at(z).scale(t);
                let r =
                    CheckReport::inclusion(lhs, rhs, true, eps, point(x, y, t, Some(vec![i, j])));
                let back = rhs.is_subset_within(&lhs, eps);
                obs.checked += 1;
                match (r.holds, back) {
                    (true, true) => obs.equal += 1,
                    (true, false) => obs.lhs_within_rhs += 1,
                    (false, true) => obs.rhs_within_lhs += 1,
                    (false, false) => obs.incomparable += 1,
                }
                if !r.holds && obs.first_non_inclusion.is_none() {
                    obs.first_non_inclusion = Some(r);
                }
            }
        }
    }
    Ok(obs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::DEFAULT_EPS;

    fn on_unit(n: usize, f: impl Fn(f64) -> f64) -> SampledFunction {
        SampledFunction::uniform(0.0, 1.0, n, f).unwrap()
    }

    #[test]
    fn hand_values() {
        let phi = on_unit(101, |x| x * x - x);
        let psi = on_unit(101, |x| x * x);
        let r = prop3_check(
            &phi,
            &psi,
            0.0,
            1.0,
            0.5,
            Direction::Increasing,
            DEFAULT_EPS,
        )
        .unwrap();
        assert!(r.holds);
        assert!((r.lhs.as_real().unwrap() - 0.5).abs() < 1e-12);
        assert!(r.rhs.as_real().unwrap().abs() < 1e-12);

        let phi = on_unit(101, |x| x * x + x);
        let r = prop3_check(
            &phi,
            &psi,
            0.0,
            0.5,
            0.5,
            Direction::Increasing,
            DEFAULT_EPS,
        )
        .unwrap();
        assert!(!r.holds);
        assert!((r.lhs.as_real().unwrap() - 0.125).abs() < 1e-12);
        assert!((r.rhs.as_real().unwrap() - 0.1875).abs() < 1e-12);
        assert_eq!(r.witness.unwrap().z, Some(0.25));
    }

    #[test]
    fn argument_errors() {
        let f = on_unit(5, |x| x);
        assert!(matches!(
            prop3_check(&f, &f, 0.0, 1.0, 1.0, Direction::Increasing, 0.0),
            Err(Error::RangeViolation { name: "t", .. })
        ));
        assert!(matches!(
            prop3_check(&f, &f, 0.75, 0.25, 0.5, Direction::Increasing, 0.0),
            Err(Error::RangeViolation { name: "x", .. })
        ));
        assert!(matches!(
            prop3_check(&f, &f, 0.0, 2.0, 0.5, Direction::Increasing, 0.0),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn scans() {
        let psi = on_unit(101, |x| x * x);
        let good = prop3_scan(
            &on_unit(101, |x| x * x - x),
            &psi,
            Direction::Increasing,
            33,
            DEFAULT_EPS,
        )
        .unwrap();
        assert!(good.hypotheses.holds && good.outcome.is_ok());
        assert_eq!(good.checked, 101 * 102 / 2 * 33);
        let bad = prop3_scan(
            &on_unit(101, |x| x * x + x),
            &psi,
            Direction::Increasing,
            33,
            DEFAULT_EPS,
        )
        .unwrap();
        assert!(!bad.hypotheses.holds && bad.violations > 0 && bad.consistent);
    }

    #[test]
    fn equality_case() {
        let psi = on_unit(11, |x| 2.0 * x + 1.0);
        let phi = on_unit(11, |x| 2.0 * x - 3.0);
        let s = prop3_scan(&phi, &psi, Direction::Increasing, 7, DEFAULT_EPS).unwrap();
        assert!(
            s.equality_everywhere && s.hypotheses.difference_constant && s.hypotheses.psi_affine
        );
        let d = prop3_scan(&phi, &psi, Direction::Decreasing, 7, DEFAULT_EPS).unwrap();
        assert!(d.hypotheses.holds && d.equality_everywhere);
    }

    #[test]
    fn decreasing_variant_flips() {
        let psi = on_unit(51, |x| -x * x);
        let phi = on_unit(51, |x| x - x * x);
        let s = prop3_scan(&phi, &psi, Direction::Decreasing, 9, DEFAULT_EPS).unwrap();
        assert!(s.hypotheses.holds && s.outcome.is_ok() && !s.equality_everywhere);
    }
}
