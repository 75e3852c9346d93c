//! Convex minorant and concave majorant of a wiggly function.

use convex_sandwich::functions::SampledFunction;

fn main() -> convex_sandwich::Result<()> {
    let f = SampledFunction::uniform(-2.0, 2.0, 17, |x| x * x + (3.0 * x).sin())?;
    let lower = f.lower_convex_envelope();
    let upper = f.upper_concave_envelope();

    println!("{:>6} {:>9} {:>9} {:>9}", "x", "lce", "f", "uce");
    for k in 0..f.len() {
        println!(
            "{:>6.2} {:>9.4} {:>9.4} {:>9.4}",
            f.xs()[k],
            lower.ys()[k],
            f.ys()[k],
            upper.ys()[k]
        );
    }
    println!("lower hull vertices: {:?}", f.lower_hull_vertices());
    println!("upper hull vertices: {:?}", f.upper_hull_vertices());
    Ok(())
}
