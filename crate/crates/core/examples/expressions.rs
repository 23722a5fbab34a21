//! Parse a scalar field, evaluate it, and read exact first and second
//! derivatives off a jet.

use warpcheck::expr::{Point, ScalarExpr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = ["r", "θ"];
    let f = ScalarExpr::parse("r^2*sin(θ) + exp(-r)/2", &vars)?;
    let p = Point::of(&[1.5, 0.7]);

    println!("f        = {f}");
    println!("f(p)     = {}", f.eval(&p)?);

    let jet = f.eval_jet(&p, 2)?;
    println!("∂f       = {:?}", jet.grad());
    println!("∂²f      = {:?}", jet.hess());

    // the printed form re-parses to the same function
    let again = ScalarExpr::parse(&f.to_string(), &vars)?;
    assert_eq!(again.eval(&p)?, f.eval(&p)?);

    match ScalarExpr::parse("r + φ", &vars) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
