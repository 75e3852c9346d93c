//! An affine interval-valued map between two nested lenses.

use convex_sandwich::functions::{IntervalFunction, SampledFunction, DEFAULT_EPS};
use convex_sandwich::intervals::IntervalKind;
use convex_sandwich::sandwich::{find_affine_interval_separator, Outcome};

fn lens(lower: fn(f64) -> f64, upper: fn(f64) -> f64) -> convex_sandwich::Result<IntervalFunction> {
    let lo = SampledFunction::uniform(-1.0, 1.0, 101, lower)?;
    let hi = SampledFunction::uniform(-1.0, 1.0, 101, upper)?;
    IntervalFunction::from_endpoints(IntervalKind::Bounded, Some(lo), Some(hi))
}

fn main() -> convex_sandwich::Result<()> {
    let outer = lens(|x| x * x - 1.0, |x| 3.0 - x * x)?;
    let inner = lens(|x| x * x, |x| 2.0 - x * x)?;
    match find_affine_interval_separator(&outer, &inner, DEFAULT_EPS)? {
        Outcome::Separator(h) => {
            println!("H has kind {}", h.kind);
            for x in [-1.0, 0.0, 1.0] {
                println!("H({x}) = {}", h.eval(x));
            }
        }
        Outcome::Infeasible { witness } => println!("no affine H: {witness:?}"),
    }

    // swapping the roles breaks the nesting
    match find_affine_interval_separator(&inner, &outer, DEFAULT_EPS)? {
        Outcome::Separator(_) => println!("unexpected separator"),
        Outcome::Infeasible { witness } => println!(
            "swapped: fails at x={}, y={}, t={}",
            witness.x, witness.y, witness.t
        ),
    }
    Ok(())
}
