//! `F ⊃ H ⊃ G` for interval-valued `F`, `G`.
//!
//! Every statement reduces to real problems on the endpoints: the lower
//! endpoints form the pair `F_lo ≤ · ≤ G_lo` and the upper endpoints the pair
//! `G_hi ≤ · ≤ F_hi`. An endpoint that `F` lacks is infinite and leaves its
//! pair one-sided. The separator takes `G`'s kind, which `F`'s kind must admit.

use rayon::prelude::*;
use serde::Serialize;

use super::{affine_on_grid, envelope_check, Clause, ConditionOutcome, Outcome, Violation};
use crate::error::{Error, Result};
use crate::functions::{merged_grid, AffineIntervalMap, IntervalFunction, SampledFunction};
use crate::intervals::{ExtInterval, IntervalKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Lower,
    Upper,
}

/// Which inclusion of the set-valued cross condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inclusion {
    /// `F(tx+(1−t)y) ⊃ t·G(x)+(1−t)·G(y)`
    FContainsCombination,
    /// `G(tx+(1−t)y) ⊂ t·F(x)+(1−t)·F(y)`
    GWithinCombination,
}

/// A point `(x, y, t)` at which `inner ⊄ outer`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetViolation {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub inclusion: Inclusion,
    pub inner: ExtInterval,
    pub outer: ExtInterval,
    /// Endpoint whose real subproblem failed, when found by reduction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<Endpoint>,
}

impl SetViolation {
    fn new(
        inclusion: Inclusion,
        x: f64,
        y: f64,
        t: f64,
        big: &IntervalFunction,
        small: &IntervalFunction,
        endpoint: Option<Endpoint>,
    ) -> Self {
        let mut v = SetViolation {
            x,
            y,
            t,
            inclusion,
            inner: ExtInterval::AllReals,
            outer: ExtInterval::AllReals,
            endpoint,
        };
        (v.inner, v.outer) = v.evaluate(big, small);
        v
    }

    pub fn z(&self) -> f64 {
        let z = self.t * self.x + (1.0 - self.t) * self.y;
        z.clamp(self.x.min(self.y), self.x.max(self.y))
    }

    /// Signed inclusion margin of `inner ⊂ outer`; negative for a real violation.
    pub fn margin(&self) -> f64 {
        self.inner.inclusion_margin(&self.outer)
    }

    /// Recomputes `(inner, outer)` from `F` (`big`) and `G` (`small`).
    pub fn evaluate(
        &self,
        big: &IntervalFunction,
        small: &IntervalFunction,
    ) -> (ExtInterval, ExtInterval) {
        let (x, y, t, z) = (self.x, self.y, self.t, self.z());
        let comb = |h: &IntervalFunction| {
            h.value_at(x)
                .scale(t)
                .minkowski_add(&h.value_at(y).scale(1.0 - t))
        };
        match self.inclusion {
            Inclusion::FContainsCombination => (comb(small), big.value_at(z)),
            Inclusion::GWithinCombination => (small.value_at(z), comb(big)),
        }
    }
}

struct EndpointPair {
    endpoint: Endpoint,
    f: Option<SampledFunction>,
    g: Option<SampledFunction>,
}

fn reduce(
    big: &IntervalFunction,
    small: &IntervalFunction,
) -> Result<(
    Vec<f64>,
    Vec<EndpointPair>,
    IntervalFunction,
    IntervalFunction,
)> {
    if !big.kind().admits(small.kind()) {
        return Err(Error::KindIncompatible {
            outer: big.kind(),
            inner: small.kind(),
        });
    }
    let grid = merged_grid(&[big.xs(), small.xs()])?;
    let big = big.resample(&grid)?;
    let small = small.resample(&grid)?;
    let mut pairs = Vec::with_capacity(2);
    if let Some(g_lo) = small.lower() {
        pairs.push(EndpointPair {
            endpoint: Endpoint::Lower,
            f: big.lower().cloned(),
            g: Some(g_lo.clone()),
        });
    }
    if let Some(g_hi) = small.upper() {
        pairs.push(EndpointPair {
            endpoint: Endpoint::Upper,
            f: Some(g_hi.clone()),
            g: big.upper().cloned(),
        });
    }
    Ok((grid, pairs, big, small))
}

fn inclusion_for(endpoint: Endpoint, clause: Clause) -> Inclusion {
    match (endpoint, clause) {
        (Endpoint::Lower, Clause::FLeCombination) | (Endpoint::Upper, Clause::CombinationLeG) => {
            Inclusion::FContainsCombination
        }
        _ => Inclusion::GWithinCombination,
    }
}

fn lift(
    endpoint: Endpoint,
    v: &Violation,
    big: &IntervalFunction,
    small: &IntervalFunction,
) -> SetViolation {
    SetViolation::new(
        inclusion_for(endpoint, v.clause),
        v.x,
        v.y,
        v.t,
        big,
        small,
        Some(endpoint),
    )
}

/// Both inclusions `F(z) ⊃ t·G(x)+(1−t)·G(y)` and `G(z) ⊂ t·F(x)+(1−t)·F(y)`,
/// decided per endpoint through the real envelope check.
pub fn check_condition_iii_setvalued(
    big: &IntervalFunction,
    small: &IntervalFunction,
    eps: f64,
) -> Result<ConditionOutcome<SetViolation>> {
    let (_, pairs, big, small) = reduce(big, small)?;
    for pair in &pairs {
        if let (Some(f), Some(g)) = (&pair.f, &pair.g) {
            if let ConditionOutcome::Violation { witness } = envelope_check(f, g, eps) {
                return Ok(ConditionOutcome::Violation {
                    witness: lift(pair.endpoint, &witness, &big, &small),
                });
            }
        }
    }
    Ok(ConditionOutcome::Ok)
}

/// Enumerates the set-valued cross condition directly with interval
/// arithmetic over breakpoint pairs, uniform `t`, and every `t` that lands on
/// an interior breakpoint.
pub fn check_condition_iii_setvalued_sampled(
    big: &IntervalFunction,
    small: &IntervalFunction,
    t_grid_size: usize,
    eps: f64,
) -> Result<ConditionOutcome<SetViolation>> {
    if t_grid_size < 2 {
        return Err(Error::RangeViolation {
            name: "t_grid_size",
            value: t_grid_size as f64,
            range: ">= 2",
        });
    }
    let (grid, _, big, small) = reduce(big, small)?;
    let n = grid.len();
    let ts: Vec<f64> = (0..t_grid_size)
        .map(|k| k as f64 / (t_grid_size - 1) as f64)
        .collect();
    let check = |i: usize, j: usize, t: f64| -> Option<SetViolation> {
        for inclusion in [
            Inclusion::FContainsCombination,
            Inclusion::GWithinCombination,
        ] {
            let v = SetViolation::new(inclusion, grid[i], grid[j], t, &big, &small, None);
            if v.margin() < -eps {
                return Some(v);
            }
        }
        None
    };
    let found = (0..n).into_par_iter().find_map_first(|i| {
        (i..n).find_map(|j| {
            ts.iter().find_map(|&t| check(i, j, t)).or_else(|| {
                (i + 1..j).find_map(|k| check(i, j, (grid[j] - grid[k]) / (grid[j] - grid[i])))
            })
        })
    });
    Ok(match found {
        Some(witness) => ConditionOutcome::Violation { witness },
        None => ConditionOutcome::Ok,
    })
}

/// Affine set-valued `H` of `G`'s kind with `F ⊃ H ⊃ G` (within `eps`) at
/// every merged breakpoint.
pub fn find_affine_interval_separator(
    big: &IntervalFunction,
    small: &IntervalFunction,
    eps: f64,
) -> Result<Outcome<AffineIntervalMap, SetViolation>> {
    let (_, pairs, big, small) = reduce(big, small)?;
    let mut map = AffineIntervalMap {
        kind: small.kind(),
        lower: None,
        upper: None,
    };
    for pair in &pairs {
        match affine_on_grid(pair.f.as_ref(), pair.g.as_ref(), eps) {
            Outcome::Separator(h) => match pair.endpoint {
                Endpoint::Lower => map.lower = Some(h),
                Endpoint::Upper => map.upper = Some(h),
            },
            Outcome::Infeasible { witness } => {
                return Ok(Outcome::Infeasible {
                    witness: lift(pair.endpoint, &witness, &big, &small),
                })
            }
        }
    }
    Ok(Outcome::Separator(map))
}

/// Convex `H1` and concave `H2`, both with `F ⊃ H ⊃ G`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalEnvelopePair {
    pub h1: IntervalFunction,
    pub h2: IntervalFunction,
}

fn constant_like(f: &SampledFunction, pick: fn(f64, f64) -> f64) -> SampledFunction {
    let v = f.ys().iter().copied().reduce(pick).expect("non-empty");
    f.map_values(|_| v)
}

/// `H1 = [lce(G_lo), uce(G_hi)]` and `H2 = [uce(F_lo), lce(F_hi)]`; an
/// endpoint `F` lacks is replaced by the matching constant bound of `G`.
pub fn convex_concave_interval_separators(
    big: &IntervalFunction,
    small: &IntervalFunction,
    eps: f64,
) -> Result<Outcome<IntervalEnvelopePair, SetViolation>> {
    if let ConditionOutcome::Violation { witness } = check_condition_iii_setvalued(big, small, eps)?
    {
        return Ok(Outcome::Infeasible { witness });
    }
    let (grid, _, big, small) = reduce(big, small)?;
    let kind = small.kind();
    if kind == IntervalKind::AllReals {
        let h = IntervalFunction::all_reals(grid)?;
        return Ok(Outcome::Separator(IntervalEnvelopePair {
            h1: h.clone(),
            h2: h,
        }));
    }
    let h1_lo = small.lower().map(|g| g.lower_convex_envelope());
    let h1_hi = small.upper().map(|g| g.upper_concave_envelope());
    let h2_lo = small.lower().map(|g| match big.lower() {
        Some(f) => f.upper_concave_envelope(),
        None => constant_like(g, f64::min),
    });
    let mut h2_hi = small.upper().map(|g| match big.upper() {
        Some(f) => f.lower_convex_envelope(),
        None => constant_like(g, f64::max),
    });
    // feasible pairs can still cross by up to 2·eps
    if let (Some(lo), Some(hi)) = (&h2_lo, &mut h2_hi) {
        *hi = hi.zip_values(lo, f64::max);
    }
    Ok(Outcome::Separator(IntervalEnvelopePair {
        h1: IntervalFunction::from_endpoints(kind, h1_lo, h1_hi)?,
        h2: IntervalFunction::from_endpoints(kind, h2_lo, h2_hi)?,
    }))
}

/// Re-checks `F ⊃ H ⊃ G` within `eps` at every merged breakpoint.
pub fn verify_interval_separator(
    big: &IntervalFunction,
    small: &IntervalFunction,
    h: &AffineIntervalMap,
    eps: f64,
) -> Result<bool> {
    let grid = merged_grid(&[big.xs(), small.xs()])?;
    Ok(grid.iter().all(|&x| {
        let hx = h.eval(x);
        hx.is_subset_within(&big.value_at(x), eps) && small.value_at(x).is_subset_within(&hx, eps)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{uniform_grid, DEFAULT_EPS};

    fn bounded(lo: impl Fn(f64) -> f64, hi: impl Fn(f64) -> f64) -> IntervalFunction {
        let xs = uniform_grid(-1.0, 1.0, 101).unwrap();
        let l = xs.iter().map(|&x| lo(x)).collect();
        let h = xs.iter().map(|&x| hi(x)).collect();
        IntervalFunction::new(IntervalKind::Bounded, xs, Some(l), Some(h)).unwrap()
    }

    #[test]
    fn lens_pair_has_constant_separator() {
        let big = bounded(|x| x * x - 1.0, |x| 3.0 - x * x);
        let small = bounded(|x| x * x, |x| 2.0 - x * x);
        assert!(check_condition_iii_setvalued(&big, &small, DEFAULT_EPS)
            .unwrap()
            .is_ok());
        let out = find_affine_interval_separator(&big, &small, DEFAULT_EPS).unwrap();
        let h = out.separator().unwrap();
        let (lo, hi) = (h.lower.unwrap(), h.upper.unwrap());
        assert!(lo.m.abs() < 1e-6 && lo.c.abs() < 1e-6, "{lo:?}");
        assert!(hi.m.abs() < 1e-6 && (hi.c - 2.0).abs() < 1e-6, "{hi:?}");
        assert!(verify_interval_separator(&big, &small, h, DEFAULT_EPS).unwrap());
    }

    #[test]
    fn non_convex_pair_fails_at_the_chord_midpoint() {
        let f = bounded(|x| -x * x, |x| x * x);
        let out = check_condition_iii_setvalued(&f, &f, DEFAULT_EPS).unwrap();
        let w = out.witness().unwrap();
        assert_eq!((w.x, w.y, w.t), (-1.0, 1.0, 0.5));
        assert_eq!(w.inclusion, Inclusion::FContainsCombination);
        assert_eq!(w.endpoint, Some(Endpoint::Lower));
        assert!(w.margin() < -0.5);
    }

    #[test]
    fn all_reals_contains_everything() {
        let xs = uniform_grid(-1.0, 1.0, 101).unwrap();
        let big = IntervalFunction::all_reals(xs).unwrap();
        let small = bounded(|x| -x * x, |x| x * x);
        assert!(check_condition_iii_setvalued(&big, &small, DEFAULT_EPS)
            .unwrap()
            .is_ok());
        let h = find_affine_interval_separator(&big, &small, DEFAULT_EPS).unwrap();
        let h = h.separator().unwrap();
        assert_eq!(h.kind, IntervalKind::Bounded);
        assert!(verify_interval_separator(&big, &small, h, DEFAULT_EPS).unwrap());
    }

    #[test]
    fn affine_interval_is_its_own_separator() {
        let f = bounded(|x| x, |x| x + 1.0);
        let h = find_affine_interval_separator(&f, &f, DEFAULT_EPS).unwrap();
        let h = h.separator().unwrap();
        let (lo, hi) = (h.lower.unwrap(), h.upper.unwrap());
        assert!((lo.m - 1.0).abs() < 1e-9 && lo.c.abs() < 1e-9);
        assert!((hi.m - 1.0).abs() < 1e-9 && (hi.c - 1.0).abs() < 1e-9);
    }

    #[test]
    fn smaller_outer_function_is_infeasible() {
        let big = bounded(|x| x * x, |x| 2.0 - x * x);
        let small = bounded(|x| x * x - 1.0, |x| 3.0 - x * x);
        let out = find_affine_interval_separator(&big, &small, DEFAULT_EPS).unwrap();
        let w = out.witness().unwrap();
        assert!(w.margin() < -DEFAULT_EPS);
    }

    #[test]
    fn kind_table() {
        let xs = uniform_grid(-1.0, 1.0, 5).unwrap();
        let up = IntervalFunction::new(
            IntervalKind::UpperHalf,
            xs.clone(),
            Some(vec![0.0; 5]),
            None,
        )
        .unwrap();
        let b = bounded(|x| x + 1.0, |x| x + 2.0);
        let bb = b.resample(&xs).unwrap();
        assert!(matches!(
            check_condition_iii_setvalued(&bb, &up, 0.0),
            Err(Error::KindIncompatible { .. })
        ));
        let h = find_affine_interval_separator(&up, &bb, DEFAULT_EPS).unwrap();
        assert_eq!(h.separator().unwrap().kind, IntervalKind::Bounded);
        let h = find_affine_interval_separator(&up, &up, DEFAULT_EPS).unwrap();
        assert_eq!(h.separator().unwrap().kind, IntervalKind::UpperHalf);
    }

    #[test]
    fn envelope_pair_brackets() {
        let big = bounded(|x| x * x - 1.0, |x| 3.0 - x * x);
        let small = bounded(|x| x * x, |x| 2.0 - x * x);
        let out = convex_concave_interval_separators(&big, &small, DEFAULT_EPS).unwrap();
        let IntervalEnvelopePair { h1, h2 } = out.separator().unwrap();
        assert!(h1.is_convex(DEFAULT_EPS));
        assert!(h2.is_concave(DEFAULT_EPS));
        for &x in h1.xs() {
            for h in [h1, h2] {
                assert!(h
                    .value_at(x)
                    .is_subset_within(&big.value_at(x), DEFAULT_EPS));
                assert!(small
                    .value_at(x)
                    .is_subset_within(&h.value_at(x), DEFAULT_EPS));
            }
        }
    }

    #[test]
    fn enumeration_agrees_on_examples() {
        let big = bounded(|x| x * x - 1.0, |x| 3.0 - x * x)
            .resample(&uniform_grid(-1.0, 1.0, 11).unwrap())
            .unwrap();
        let small = bounded(|x| x * x, |x| 2.0 - x * x)
            .resample(&uniform_grid(-1.0, 1.0, 11).unwrap())
            .unwrap();
        assert!(
            check_condition_iii_setvalued_sampled(&big, &small, 11, DEFAULT_EPS)
                .unwrap()
                .is_ok()
        );
        let bad = bounded(|x| -x * x, |x| x * x)
            .resample(&uniform_grid(-1.0, 1.0, 11).unwrap())
            .unwrap();
        assert!(
            !check_condition_iii_setvalued_sampled(&bad, &bad, 11, DEFAULT_EPS)
                .unwrap()
                .is_ok()
        );
    }
}
