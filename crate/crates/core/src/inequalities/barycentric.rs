//! If `Σμᵢxᵢ = λ₁a + λ₂b` are two convex combinations with every `xᵢ ∈ [a, b]`
//! and `f` is convex on `[a, b]`, then `Σμᵢf(xᵢ) ≤ λ₁f(a) + λ₂f(b)`.
//!
//! Applied to the pairwise midpoints, to the three points themselves and to
//! their mean, it gives the chain
//!
//! ```text
//! f(a) + f(b) ≥ (f(x)+f(y)+f(z))/3 + f((x+y+z)/3) ≥ (2/3)·Σ f(midpoints)
//! ```
//!
//! whenever `(x+y+z)/3 = (a+b)/2`. For a convex interval-valued `F` the bound
//! becomes `Σμᵢ F(xᵢ) ⊃ λ₁F(a) + λ₂F(b)`, one endpoint at a time.

use serde::{Deserialize, Serialize};

use super::popoviciu::real_sides;
use super::{CheckReport, Witness};
use crate::error::{Error, Result};
use crate::functions::{IntervalFunction, SampledFunction};
use crate::intervals::ExtInterval;

/// Points `xᵢ ∈ [a, b]` with convex weights `μᵢ`. The endpoint weights are
/// derived from the barycenter: `λ₂ = (Σμᵢxᵢ − a)/(b − a)`, `λ₁ = 1 − λ₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma5Input {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub a: f64,
    pub b: f64,
}

impl Lemma5Input {
    pub fn new(points: Vec<f64>, weights: Vec<f64>, a: f64, b: f64) -> Self {
        Lemma5Input {
            points,
            weights,
            a,
            b,
        }
    }

    /// Equal weights `1/n`.
    pub fn uniform(points: Vec<f64>, a: f64, b: f64) -> Self {
        let n = points.len();
        Lemma5Input {
            weights: vec![1.0 / n as f64; n],
            points,
            a,
            b,
        }
    }

    /// Checks `a < b`, matching lengths, `μᵢ ≥ 0`, `|Σμᵢ − 1| ≤ eps` and
    /// `xᵢ ∈ [a, b]`.
    pub fn validate(&self, eps: f64) -> Result<()> {
        let (a, b) = (self.a, self.b);
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::RangeViolation {
                name: "b",
                value: b,
                range: "a < b, both finite",
            });
        }
        if self.points.len() != self.weights.len() {
            return Err(Error::LengthMismatch {
                left: self.points.len(),
                right: self.weights.len(),
            });
        }
        if self.points.is_empty() {
            return Err(Error::WeightViolation(
                "at least one point is required".into(),
            ));
        }
        if let Some(w) = self.weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::WeightViolation(format!(
                "weight {w} is negative or not finite"
            )));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > eps {
            return Err(Error::WeightViolation(format!(
                "weights sum to {total}, not 1"
            )));
        }
        if let Some(&x) = self.points.iter().find(|&&x| !(a <= x && x <= b)) {
            return Err(Error::DomainViolation { x, lo: a, hi: b });
        }
        Ok(())
    }

    /// `Σμᵢxᵢ`
    pub fn barycenter(&self) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * x)
            .sum()
    }

    /// `(λ₁, λ₂)`, clamped to `[0, 1]` against rounding.
    pub fn lambdas(&self) -> (f64, f64) {
        let l2 = ((self.barycenter() - self.a) / (self.b - self.a)).clamp(0.0, 1.0);
        (1.0 - l2, l2)
    }

    /// `Σμᵢ·v(xᵢ)`, summed left to right.
    fn weighted(&self, v: impl Fn(f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * v(x))
            .sum()
    }
}

fn require_convex(f: &SampledFunction, a: f64, b: f64, eps: f64) -> Result<()> {
    if !f.restrict(a, b)?.is_convex(eps) {
        return Err(Error::NotConvex { a, b });
    }
    Ok(())
}

fn endpoints_witness(input: &Lemma5Input) -> Witness {
    Witness {
        x: Some(input.a),
        y: Some(input.b),
        z: Some(input.barycenter()),
        ..Witness::default()
    }
}

fn bound(f: &SampledFunction, input: &Lemma5Input, (l1, l2): (f64, f64), eps: f64) -> CheckReport {
    let lhs = input.weighted(|x| f.value_at(x));
    let rhs = l1 * f.value_at(input.a) + l2 * f.value_at(input.b);
    CheckReport::real(lhs, rhs, rhs - lhs, eps, endpoints_witness(input))
}

/// `Σμᵢf(xᵢ) ≤ λ₁f(a) + λ₂f(b)` with the derived `λ`. `f` must be convex on
/// `[a, b]`.
pub fn lemma5_check(f: &SampledFunction, input: &Lemma5Input, eps: f64) -> Result<CheckReport> {
    input.validate(eps)?;
    require_convex(f, input.a, input.b, eps)?;
    Ok(bound(f, input, input.lambdas(), eps))
}

/// As [`lemma5_check`], with `(λ₁, λ₂)` supplied and validated against the
/// barycenter identity.
pub fn lemma5_check_with_lambdas(
    f: &SampledFunction,
    input: &Lemma5Input,
    lambdas: (f64, f64),
    eps: f64,
) -> Result<CheckReport> {
    input.validate(eps)?;
    let (l1, l2) = lambdas;
    if !(l1 >= 0.0 && l2 >= 0.0) || (l1 + l2 - 1.0).abs() > eps {
        return Err(Error::WeightViolation(format!(
            "endpoint weights ({l1}, {l2}) are not a convex combination"
        )));
    }
    let lhs = input.barycenter();
    let rhs = l1 * input.a + l2 * input.b;
    let scale = 1.0_f64.max(input.a.abs()).max(input.b.abs());
    if (lhs - rhs).abs() > eps * scale {
        return Err(Error::BarycenterViolation { lhs, rhs });
    }
    require_convex(f, input.a, input.b, eps)?;
    Ok(bound(f, input, lambdas, eps))
}

/// Both links of the chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop6Report {
    pub holds: bool,
    /// `f(a) + f(b)` against the three-point middle term.
    pub upper: CheckReport,
    /// The middle term against `(2/3)·Σ f(midpoints)`.
    pub lower: CheckReport,
}

/// The chain for `x, y, z ∈ [a, b]` with `|(x+y+z)/3 − (a+b)/2| ≤ eps`.
pub fn prop6_check(
    f: &SampledFunction,
    x: f64,
    y: f64,
    z: f64,
    a: f64,
    b: f64,
    eps: f64,
) -> Result<Prop6Report> {
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::RangeViolation {
            name: "b",
            value: b,
            range: "a < b",
        });
    }
    if let Some(&v) = [x, y, z].iter().find(|&&v| !(a <= v && v <= b)) {
        return Err(Error::DomainViolation { x: v, lo: a, hi: b });
    }
    let mean = (x + y + z) / 3.0;
    let mid = (a + b) / 2.0;
    if (mean - mid).abs() > eps {
        return Err(Error::BarycenterViolation {
            lhs: mean,
            rhs: mid,
        });
    }
    require_convex(f, a, b, eps)?;
    let mut p = [x, y, z];
    p.sort_by(f64::total_cmp);
    let (middle, bottom) = real_sides(f, p, p.map(|v| f.value_at(v)));
    let top = f.value_at(a) + f.value_at(b);
    let at = Witness {
        x: Some(x),
        y: Some(y),
        z: Some(z),
        ..Witness::default()
    };
    let upper = CheckReport::real(top, middle, top - middle, eps, at.clone());
    let lower = CheckReport::real(middle, bottom, middle - bottom, eps, at);
    Ok(Prop6Report {
        holds: upper.holds && lower.holds,
        upper,
        lower,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop7Report {
    /// `rhs ⊂ lhs` with `lhs = Σμᵢ F(xᵢ)` and `rhs = λ₁F(a) + λ₂F(b)`, both
    /// formed by Minkowski arithmetic.
    #[serde(flatten)]
    pub report: CheckReport,
    pub lambdas: (f64, f64),
    /// The same two sets assembled endpoint by endpoint.
    pub decomposed_lhs: ExtInterval,
    pub decomposed_rhs: ExtInterval,
    /// Whether both routes produced identical sets.
    pub paths_agree: bool,
}

fn assemble(like: ExtInterval, lo: Option<f64>, hi: Option<f64>) -> ExtInterval {
    match (like, lo, hi) {
        (ExtInterval::Bounded { .. }, Some(lo), Some(hi)) => ExtInterval::Bounded { lo, hi },
        (ExtInterval::UpperHalf { .. }, Some(lo), _) => ExtInterval::UpperHalf { lo },
        (ExtInterval::LowerHalf { .. }, _, Some(hi)) => ExtInterval::LowerHalf { hi },
        _ => ExtInterval::AllReals,
    }
}

/// `Σμᵢ F(xᵢ) ⊃ λ₁F(a) + λ₂F(b)` for `F` convex on `[a, b]`, computed with
/// interval arithmetic and again from the lower (convex) and upper (concave)
/// endpoint functions.
pub fn prop7_check(big: &IntervalFunction, input: &Lemma5Input, eps: f64) -> Result<Prop7Report> {
    input.validate(eps)?;
    let (a, b) = (input.a, input.b);
    if !big.restrict(a, b)?.is_convex(eps) {
        return Err(Error::NotConvexIvf { a, b });
    }
    let (l1, l2) = input.lambdas();

    let lhs = input
        .points
        .iter()
        .zip(&input.weights)
        .map(|(&x, &w)| big.value_at(x).scale(w))
        .reduce(|acc, v| acc + v)
        .expect("validated non-empty");
    let rhs = big.value_at(a).scale(l1) + big.value_at(b).scale(l2);
    let report = CheckReport::inclusion(lhs, rhs, false, eps, endpoints_witness(input));

    let endpoint_sums = |f: Option<&SampledFunction>| {
        f.map(|f| {
            (
                input.weighted(|x| f.value_at(x)),
                l1 * f.value_at(a) + l2 * f.value_at(b),
            )
        })
    };
    let lo = endpoint_sums(big.lower());
    let hi = endpoint_sums(big.upper());
    let decomposed_lhs = assemble(lhs, lo.map(|p| p.0), hi.map(|p| p.0));
    let decomposed_rhs = assemble(rhs, lo.map(|p| p.1), hi.map(|p| p.1));
    Ok(Prop7Report {
        paths_agree: decomposed_lhs == lhs && decomposed_rhs == rhs,
        report,
        lambdas: (l1, l2),
        decomposed_lhs,
        decomposed_rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{uniform_grid, DEFAULT_EPS};
    use crate::intervals::IntervalKind;

    fn parabola() -> SampledFunction {
        SampledFunction::uniform(0.0, 2.0, 9, |x| x * x).unwrap()
    }

    #[test]
    fn lemma5_hand_values() {
        let input = Lemma5Input::uniform(vec![0.5, 1.5, 1.0], 0.0, 2.0);
        assert_eq!(input.lambdas(), (0.5, 0.5));
        let r = lemma5_check(&parabola(), &input, DEFAULT_EPS).unwrap();
        assert!(r.holds);
        assert!((r.lhs.as_real().unwrap() - 3.5 / 3.0).abs() < 1e-12);
        assert!((r.rhs.as_real().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lemma5_single_endpoint_is_equality() {
        let input = Lemma5Input::new(vec![0.0], vec![1.0], 0.0, 2.0);
        assert_eq!(input.lambdas(), (1.0, 0.0));
        assert!(
            lemma5_check(&parabola(), &input, DEFAULT_EPS)
                .unwrap()
                .equality
        );
    }

    #[test]
    fn lemma5_errors() {
        let f = parabola();
        let bad_w = Lemma5Input::new(vec![0.5, 1.0], vec![0.7, 0.7], 0.0, 2.0);
        assert!(matches!(
            lemma5_check(&f, &bad_w, DEFAULT_EPS),
            Err(Error::WeightViolation(_))
        ));
        let neg = Lemma5Input::new(vec![0.5, 1.0], vec![1.5, -0.5], 0.0, 2.0);
        assert!(matches!(
            lemma5_check(&f, &neg, DEFAULT_EPS),
            Err(Error::WeightViolation(_))
        ));
        let outside = Lemma5Input::uniform(vec![0.5, 2.5], 0.0, 2.0);
        assert!(matches!(
            lemma5_check(&f, &outside, DEFAULT_EPS),
            Err(Error::DomainViolation { .. })
        ));
        let concave = f.neg();
        let ok = Lemma5Input::uniform(vec![0.5, 1.5], 0.0, 2.0);
        assert!(matches!(
            lemma5_check(&concave, &ok, DEFAULT_EPS),
            Err(Error::NotConvex { .. })
        ));
        assert!(matches!(
            lemma5_check_with_lambdas(&f, &ok, (0.3, 0.7), DEFAULT_EPS),
            Err(Error::BarycenterViolation { .. })
        ));
        assert!(
            lemma5_check_with_lambdas(&f, &ok, (0.5, 0.5), DEFAULT_EPS)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn prop6_hand_values() {
        let r = prop6_check(&parabola(), 0.0, 1.0, 2.0, 0.0, 2.0, DEFAULT_EPS).unwrap();
        assert!(r.holds);
        assert!((r.upper.slack - 4.0 / 3.0).abs() < 1e-12);
        assert!((r.lower.slack - 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            prop6_check(&parabola(), 0.0, 0.0, 2.0, 0.0, 2.0, DEFAULT_EPS),
            Err(Error::BarycenterViolation { .. })
        ));
    }

    #[test]
    fn prop6_affine_is_double_equality() {
        let f = SampledFunction::uniform(0.0, 2.0, 5, |x| 2.0 * x - 1.0).unwrap();
        let r = prop6_check(&f, 0.25, 1.0, 1.75, 0.0, 2.0, DEFAULT_EPS).unwrap();
        assert!(r.upper.equality && r.lower.equality);
    }

    fn lens() -> IntervalFunction {
        let xs = uniform_grid(-1.0, 1.0, 9).unwrap();
        IntervalFunction::from_endpoints(
            IntervalKind::Bounded,
            Some(SampledFunction::from_fn(xs.clone(), |x| x * x).unwrap()),
            Some(SampledFunction::from_fn(xs, |x| 2.0 - x * x).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn prop7_hand_values() {
        let input = Lemma5Input::uniform(vec![-0.5, 0.5], -1.0, 1.0);
        let r = prop7_check(&lens(), &input, DEFAULT_EPS).unwrap();
        assert!(r.report.holds && r.paths_agree);
        assert_eq!(r.lambdas, (0.5, 0.5));
        assert_eq!(
            r.report.lhs.as_set(),
            Some(&ExtInterval::Bounded { lo: 0.25, hi: 1.75 })
        );
        assert_eq!(
            r.report.rhs.as_set(),
            Some(&ExtInterval::Bounded { lo: 1.0, hi: 1.0 })
        );
    }

    #[test]
    fn prop7_all_reals_and_non_convex() {
        let input = Lemma5Input::uniform(vec![-0.5, 0.5], -1.0, 1.0);
        let all = IntervalFunction::all_reals(vec![-1.0, 1.0]).unwrap();
        let r = prop7_check(&all, &input, DEFAULT_EPS).unwrap();
        assert!(r.report.holds && r.report.equality && r.paths_agree);
        let xs = uniform_grid(-1.0, 1.0, 9).unwrap();
        let bad = IntervalFunction::from_endpoints(
            IntervalKind::Bounded,
            Some(SampledFunction::from_fn(xs.clone(), |x| -x * x).unwrap()),
            Some(SampledFunction::from_fn(xs, |x| x * x).unwrap()),
        )
        .unwrap();
        assert!(matches!(
            prop7_check(&bad, &input, DEFAULT_EPS),
            Err(Error::NotConvexIvf { .. })
        ));
    }
}
