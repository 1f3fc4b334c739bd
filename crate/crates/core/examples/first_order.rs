//! y' = (x - y)/2, y(0) = 1, integrated to x = 3 in 24 steps and compared
//! with the closed form x - 2 + 3e^(-x/2).
//!
//! ```bash
//! cargo run -p rkode --example first_order
//! ```

use rkode::solver::rk4_step;
use rkode::{build_table, parse_function, solve_first, FirstOrderProblem, Method};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_function("(x-y)/2;")?;
    let exact = parse_function("x-2+3*e^-(x/2);")?;

    let (y1, stages) = rk4_step(&f, 0.0, 1.0, 0.125)?;
    println!("first step: y1 = {y1}, k = {:?}", stages.k());

    let problem = FirstOrderProblem::new(f, 0.0, 1.0, 3.0, 24)?;
    let table = build_table(&solve_first(&problem, Method::Rk4)?, &exact)?;

    println!("h = {}\n", table.h());
    println!(
        "{:>8} {:>14} {:>14} {:>12}",
        "X", "Y_Approximate", "Y_Exact", "Abs_Error"
    );
    for r in table.rows() {
        println!(
            "{:>8.3} {:>14.10} {:>14.10} {:>12.3e}",
            r.x, r.y_approx, r.y_exact, r.abs_error
        );
    }
    println!("\nmax absolute error: {:e}", table.max_abs_error());
    Ok(())
}
