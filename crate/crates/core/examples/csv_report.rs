//! Write a solution table as CSV, to a file if a path is given and to
//! standard output otherwise.
//!
//! ```bash
//! cargo run -p rkode --example csv_report -- table.csv
//! ```

use std::fs::File;
use std::io::{self, BufWriter};

use rkode::{build_table, parse_function, solve_first, write_csv, FirstOrderProblem, Method};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let problem = FirstOrderProblem::new(parse_function("x*y")?, 0.0, 1.0, 1.0, 10)?;
    let table = build_table(&solve_first(&problem, Method::Rk2)?, &parse_function("e^(x^2/2)")?)?;

    let rows = match std::env::args().nth(1) {
        Some(path) => {
            let rows = write_csv(&table, BufWriter::new(File::create(&path)?))?;
            eprintln!("wrote {path}");
            rows
        }
        None => write_csv(&table, io::stdout().lock())?,
    };
    eprintln!("{rows} rows");
    Ok(())
}
