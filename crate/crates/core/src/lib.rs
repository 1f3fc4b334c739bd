//! Runge-Kutta integration of initial value problems whose right-hand sides
//! are typed in as text.
//!
//! Expressions are parsed at runtime by a recursive-descent parser
//! ([`expr`]), evaluated against `x`, `y` and `z` bindings ([`eval`]) and
//! integrated with fixed-step Runge-Kutta kernels of order one to four
//! ([`solver`]). Results are tabulated against an analytic solution
//! ([`report`]) and drawn as an SVG chart ([`plot`]).
//!
//! ```
//! use rkode::{build_table, parse_function, solve_first, FirstOrderProblem, Method};
//!
//! let f = parse_function("(x-y)/2;").unwrap();
//! let problem = FirstOrderProblem::new(f, 0.0, 1.0, 3.0, 24).unwrap();
//! let trajectory = solve_first(&problem, Method::Rk4).unwrap();
//! let table = build_table(&trajectory, &parse_function("x-2+3*e^-(x/2)").unwrap()).unwrap();
//! assert_eq!(table.len(), 25);
//! assert!(table.max_abs_error() < 1e-5);
//! ```

pub mod cli;
pub mod eval;
pub mod expr;
pub mod plot;
pub mod report;
pub mod solver;

pub use eval::{check_variables, evaluate, free_variables, Environment, EvalError};
pub use expr::{parse, parse_function, tokenize, unparse, Expr, ParseError, Token, TokenKind};
pub use plot::{render_svg, PlotConfig, PlotError};
pub use report::{build_table, write_csv, ReportError, SolutionRow, SolutionTable};
pub use solver::{
    estimate_order, solve_first, solve_second, step_size, FirstOrderProblem, Method, RkStages, SecondOrderProblem,
    SolveError, Trajectory,
};
