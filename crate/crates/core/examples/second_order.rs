//! y'' + 5y' + 6y = 0 with y(0) = 2, y'(0) = 3, split into y' = z and
//! z' = -6y - 5z and integrated to x = 2 in 10 steps.
//!
//! ```bash
//! cargo run -p rkode --example second_order
//! ```

use rkode::solver::rk4_step_second;
use rkode::{build_table, parse_function, solve_second, SecondOrderProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f1 = parse_function("z;")?;
    let f2 = parse_function("0-6*y-5*z;")?;
    let exact = parse_function("9*e^-(2*x)-7*e^-(3*x);")?;

    let (y1, z1, stages) = rk4_step_second(&f1, &f2, 0.0, 2.0, 3.0, 0.2)?;
    println!("first step: y1 = {y1:.6}, z1 = {z1:.6}");
    println!("  k = {:?}\n  l = {:?}", stages.k(), stages.l().unwrap_or_default());

    let problem = SecondOrderProblem::new(f1, f2, 0.0, 2.0, 3.0, 2.0, 10)?;
    let table = build_table(&solve_second(&problem)?, &exact)?;
    println!(
        "\n{:>5} {:>12} {:>12} {:>12} {:>12}",
        "X", "Y_Approx", "Y_Exact", "Abs_Error", "Z_Approx"
    );
    for r in table.rows() {
        println!(
            "{:>5.2} {:>12.6} {:>12.6} {:>12.3e} {:>12.6}",
            r.x,
            r.y_approx,
            r.y_exact,
            r.abs_error,
            r.z_approx.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
