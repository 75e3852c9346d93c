//! Minkowski arithmetic on extended intervals.

use convex_sandwich::intervals::ExtInterval;

fn main() -> convex_sandwich::Result<()> {
    let a = ExtInterval::bounded(1.0, 2.0)?;
    let b = ExtInterval::upper_half(-1.0)?;
    let c = ExtInterval::lower_half(4.0)?;

    println!("{a} + {b} = {}", a + b);
    println!("{b} + {c} = {}", b + c);
    println!("-2 · {b} = {}", b.scale(-2.0));
    println!("0 · {c} = {}", c.scale(0.0));

    let mix = ExtInterval::convex_combination(0.25, &a, &ExtInterval::point(10.0)?)?;
    println!("¼·{a} + ¾·{{10}} = {mix}");

    for (x, y) in [(a, b), (b, a), (a, c)] {
        println!(
            "{x} ⊂ {y}: {} (margin {})",
            x.is_subset(&y),
            x.inclusion_margin(&y)
        );
    }
    Ok(())
}
