//! Evaluate expressions under variable bindings, including the domain errors.
//!
//! ```bash
//! cargo run -p rkode --example evaluate_expression
//! ```

use rkode::{check_variables, evaluate, free_variables, parse_function, Environment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let env = Environment::new().with('x', 0.0)?.with('y', 1.0)?.with('z', 3.0)?;

    for src in ["(x-y)/2", "0-6*y-5*z", "e^1", "sin(pi)", "log(x)", "1/x", "w+1"] {
        let expr = parse_function(src)?;
        let vars: String = free_variables(&expr).into_iter().collect();
        match evaluate(&expr, &env) {
            Ok(v) => println!("{src:<12} vars [{vars}]  = {v}"),
            Err(e) => println!("{src:<12} vars [{vars}]  error: {e}"),
        }
    }

    let exact = parse_function("x-2+3*e^-(x/2)")?;
    check_variables(&exact, &['x'])?;
    println!("\nexact solution only uses x: ok");
    if let Err(e) = check_variables(&parse_function("x+y")?, &['x']) {
        println!("x+y as an exact solution: {e}");
    }
    Ok(())
}
