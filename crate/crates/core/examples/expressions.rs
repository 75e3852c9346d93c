//! Parsing, printing, evaluating and sampling formulas.

use convex_sandwich::expr::{parse, sample};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in [
        "2+3*4",
        "2^3^2",
        "-x^2",
        "max(abs(x), exp(x) - 1) / 2",
        "log(x)",
    ] {
        let e = parse(text)?;
        let at = match e.eval(2.0) {
            Ok(v) => v.to_string(),
            Err(err) => err.to_string(),
        };
        println!("{text:<30} → {e:<40} at 2: {at}");
        if let Ok(back) = parse(&e.to_string()) {
            assert_eq!(back, e);
        }
    }
    if let Err(err) = parse("2 + * x") {
        println!("syntax error: {err}");
    }
    let f = sample(&parse("abs(x)")?, -1.0, 1.0, 5)?;
    println!("abs sampled: {:?} -> {:?}", f.xs(), f.ys());
    Ok(())
}
