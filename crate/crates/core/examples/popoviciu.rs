//! The three-point convexity inequality, at one triple and over a grid.

use convex_sandwich::functions::{SampledFunction, DEFAULT_EPS};
use convex_sandwich::inequalities::{convexity_cross_check, popoviciu_check, popoviciu_scan};

fn main() -> convex_sandwich::Result<()> {
    let square = SampledFunction::uniform(0.0, 2.0, 201, |x| x * x)?;
    let r = popoviciu_check(&square, 0.0, 1.0, 2.0, DEFAULT_EPS)?;
    println!(
        "x² at (0, 1, 2): lhs {} rhs {} holds {}",
        r.lhs.as_real().unwrap(),
        r.rhs.as_real().unwrap(),
        r.holds
    );

    for (name, f) in [
        ("exp", SampledFunction::uniform(-1.0, 1.0, 41, f64::exp)?),
        (
            "cube",
            SampledFunction::uniform(-1.0, 1.0, 41, |x| x * x * x)?,
        ),
    ] {
        let scan = popoviciu_scan(&f, DEFAULT_EPS);
        println!(
            "{name}: {} refined points, {} triples, ok {}",
            scan.points,
            scan.triples,
            scan.outcome.is_ok()
        );
        if let Some(w) = scan.outcome.witness() {
            println!("  first failure: {:?}", w.witness);
        }
        println!(
            "  cross check: {:?}",
            convexity_cross_check(&f, DEFAULT_EPS).verdict
        );
    }
    Ok(())
}
