//! Empirical convergence order of every step scheme: halve h and compare the
//! maximum errors.
//!
//! ```bash
//! cargo run -p rkode --example convergence_order
//! ```

use rkode::solver::max_abs_error;
use rkode::{estimate_order, parse_function, solve_first, FirstOrderProblem, Method};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let problem = FirstOrderProblem::new(parse_function("(x-y)/2")?, 0.0, 1.0, 3.0, 24)?;
    let exact = parse_function("x-2+3*e^-(x/2)")?;

    println!("{:<6} {:>12} {:>12} {:>8}", "method", "err(h)", "err(h/2)", "order");
    for method in Method::ALL {
        let coarse = max_abs_error(&solve_first(&problem, method)?, &exact)?;
        let fine = max_abs_error(&solve_first(&problem.with_steps(48)?, method)?, &exact)?;
        let order = estimate_order(&problem, method, &exact)?;
        println!("{method:<6} {coarse:>12.4e} {fine:>12.4e} {order:>8.3}");
    }
    Ok(())
}
