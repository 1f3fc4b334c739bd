//! Render the approximate, exact and error series as an SVG chart.
//!
//! ```bash
//! cargo run -p rkode --example svg_chart -- chart.svg
//! ```

use rkode::{build_table, parse_function, render_svg, solve_first, FirstOrderProblem, Method, PlotConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "chart.svg".to_string());

    // Euler with few steps so the error curve is visible next to the solution.
    let problem = FirstOrderProblem::new(parse_function("(x-y)/2")?, 0.0, 1.0, 3.0, 6)?;
    let table = build_table(
        &solve_first(&problem, Method::Euler)?,
        &parse_function("x-2+3*e^-(x/2)")?,
    )?;

    let config = PlotConfig {
        exact_color: "goldenrod".into(),
        ..PlotConfig::default().with_title("y' = (x-y)/2, Euler, h = 0.5")
    };
    std::fs::write(&path, render_svg(&table, &config)?)?;
    println!("wrote {path}");
    Ok(())
}
