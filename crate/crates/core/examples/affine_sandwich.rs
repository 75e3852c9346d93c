//! Separating a convex function from a concave one by a line, or showing
//! that no line fits.

use convex_sandwich::functions::{SampledFunction, DEFAULT_EPS};
use convex_sandwich::sandwich::{
    check_condition_iii, convex_concave_separators, find_affine_separator, Outcome,
};

fn report(name: &str, f: &SampledFunction, g: &SampledFunction) -> convex_sandwich::Result<()> {
    println!("== {name}");
    let cond = check_condition_iii(f, g, DEFAULT_EPS)?;
    println!("cross condition holds: {}", cond.is_ok());
    match find_affine_separator(f, g, DEFAULT_EPS)? {
        Outcome::Separator(h) => println!("h(x) = {:.6}·x + {:.6}", h.m, h.c),
        Outcome::Infeasible { witness } => println!(
            "no affine h: at x={}, y={}, t={} the sides are {:.4} > {:.4}",
            witness.x, witness.y, witness.t, witness.lhs, witness.rhs
        ),
    }
    if let Outcome::Separator(pair) = convex_concave_separators(f, g, DEFAULT_EPS)? {
        let mid = pair.h1.len() / 2;
        println!(
            "envelopes at the midpoint: h1 = {:.4}, h2 = {:.4}",
            pair.h1.ys()[mid],
            pair.h2.ys()[mid]
        );
    }
    Ok(())
}

fn main() -> convex_sandwich::Result<()> {
    let f = SampledFunction::uniform(-1.0, 1.0, 201, |x| x * x - 1.0)?;
    let g = SampledFunction::uniform(-1.0, 1.0, 201, |x| x * x)?;
    report("x² − 1 below x²", &f, &g)?;

    let f = SampledFunction::uniform(-1.0, 1.0, 201, |x| x.abs())?;
    let g = SampledFunction::uniform(-1.0, 1.0, 201, |x| x.abs() + 0.5)?;
    report("|x| below |x| + ½", &f, &g)
}
