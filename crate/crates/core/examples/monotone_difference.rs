//! Comparing two functions whose difference is monotone.

use convex_sandwich::functions::{SampledFunction, DEFAULT_EPS};
use convex_sandwich::inequalities::{prop3_check, prop3_scan, Direction};

fn main() -> convex_sandwich::Result<()> {
    let psi = SampledFunction::uniform(-1.0, 1.0, 201, |x| x * x)?;
    let phi = SampledFunction::uniform(-1.0, 1.0, 201, |x| x * x - x)?;
    let scan = prop3_scan(&phi, &psi, Direction::Increasing, 9, DEFAULT_EPS)?;
    println!(
        "x² − x vs x²: hypotheses {}, {} points checked, {} violations",
        scan.hypotheses.holds, scan.checked, scan.violations
    );

    // ψ − φ = −x is decreasing, so the hypothesis fails and so does the inequality
    let phi = SampledFunction::uniform(-1.0, 1.0, 201, |x| x * x + x)?;
    let r = prop3_check(
        &phi,
        &psi,
        0.0,
        0.5,
        0.5,
        Direction::Increasing,
        DEFAULT_EPS,
    )?;
    println!(
        "x² + x at (0, 0.5, 0.5): lhs {} rhs {} holds {}",
        r.lhs.as_real().unwrap(),
        r.rhs.as_real().unwrap(),
        r.holds
    );
    Ok(())
}
