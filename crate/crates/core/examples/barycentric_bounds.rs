//! Bounding a weighted mean of a convex function by its endpoint values,
//! for real and interval-valued functions.

use convex_sandwich::functions::{IntervalFunction, SampledFunction, DEFAULT_EPS};
use convex_sandwich::inequalities::{lemma5_check, prop6_check, prop7_check, Lemma5Input};
use convex_sandwich::intervals::IntervalKind;

fn main() -> convex_sandwich::Result<()> {
    let f = SampledFunction::uniform(0.0, 2.0, 201, |x| x * x)?;
    let input = Lemma5Input::uniform(vec![0.5, 1.5, 1.0], 0.0, 2.0);
    println!("endpoint weights {:?}", input.lambdas());
    let r = lemma5_check(&f, &input, DEFAULT_EPS)?;
    println!(
        "mean of f {:.4} ≤ endpoint mix {:.4}",
        r.lhs.as_real().unwrap(),
        r.rhs.as_real().unwrap()
    );

    let chain = prop6_check(&f, 0.0, 1.0, 2.0, 0.0, 2.0, DEFAULT_EPS)?;
    println!(
        "chain {:.4} ≥ {:.4} ≥ {:.4} (slacks {:.4}, {:.4})",
        chain.upper.lhs.as_real().unwrap(),
        chain.upper.rhs.as_real().unwrap(),
        chain.lower.rhs.as_real().unwrap(),
        chain.upper.slack,
        chain.lower.slack
    );

    let lo = SampledFunction::uniform(-1.0, 1.0, 101, |x| x * x)?;
    let hi = SampledFunction::uniform(-1.0, 1.0, 101, |x| 2.0 - x * x)?;
    let big = IntervalFunction::from_endpoints(IntervalKind::Bounded, Some(lo), Some(hi))?;
    let r = prop7_check(
        &big,
        &Lemma5Input::uniform(vec![-0.5, 0.5, 0.0], -1.0, 1.0),
        DEFAULT_EPS,
    )?;
    println!(
        "interval version: {} ⊃ {}, holds {}, both routes agree {}",
        r.report.lhs.as_set().unwrap(),
        r.report.rhs.as_set().unwrap(),
        r.report.holds,
        r.paths_agree
    );
    Ok(())
}
