//! Command-line front end: flags in, CSV table and SVG chart out.
//!
//! Exit codes are 0 on success, 1 when an expression fails to parse or the
//! solve/evaluation fails, and 2 for usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::expr::{parse_function, Expr};
use crate::plot::{render_svg, PlotConfig};
use crate::report::{build_table, format_number, write_csv};
use crate::solver::{solve_first, solve_second, FirstOrderProblem, Method, SecondOrderProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const AFTER_HELP: &str = "\
Expressions use + - * / ^, parentheses, sin cos tan log exp, the constants
e and pi, and single-letter variables: x and y for a first-order f; x, y and
z (z = y') for the second-order pair f, g; only x for the exact solution.
A trailing ';' is accepted. Unary minus binds tighter than ^ (-x^2 is
(-x)^2), and a leading minus before a product needs parentheses or a zero:
write -6y-5z as \"0-6*y-5*z\" or \"-(6*y)-5*z\".

Example (y'' + 5y' + 6y = 0, y(0) = 2, y'(0) = 3):
  rkode --x0 0 --y0 2 --z0 3 --steps 10 --f \"z;\" --g \"0-6*y-5*z;\" \\
        --xbar 2 --exact \"9*e^-(2*x)-7*e^-(3*x);\" --ode-order 2";

#[derive(Debug, Parser)]
#[command(
    name = "rkode",
    version,
    about = "Solve y' = f(x, y) or y'' via (y' = f, z' = g) with fixed-step Runge-Kutta and tabulate against an exact solution",
    allow_negative_numbers = true,
    after_help = AFTER_HELP
)]
struct Args {
    /// Initial x value
    #[arg(long, value_parser = finite)]
    x0: f64,
    /// Initial y value
    #[arg(long, value_parser = finite)]
    y0: f64,
    /// Initial z = y' value (second order only)
    #[arg(long, value_parser = finite)]
    z0: Option<f64>,
    /// Number of steps
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    /// Derivative function f
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Second function g (second order only)
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Endpoint x bar
    #[arg(long, value_parser = finite)]
    xbar: f64,
    /// Exact solution of the ODE, in x only
    #[arg(long, allow_hyphen_values = true)]
    exact: String,
    /// 1 for y' = f, 2 for the coupled pair y' = f, z' = g
    #[arg(long = "ode-order", default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    ode_order: u8,
    /// Step scheme for first-order problems
    #[arg(long, value_parser = parse_method)]
    method: Option<Method>,
    /// Write the table here instead of standard output
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Write the chart here
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
}

fn finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(format!("'{s}' is not a finite number")),
        Err(e) => Err(format!("'{s}': {e}")),
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeOrder {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub x0: f64,
    pub y0: f64,
    pub z0: Option<f64>,
    pub steps: usize,
    pub f: String,
    pub g: Option<String>,
    pub x_bar: f64,
    pub exact: String,
    pub ode_order: OdeOrder,
    pub method: Method,
    pub csv_path: Option<PathBuf>,
    pub svg_path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UsageError {
    /// Bad or missing flags. Carries the rendered message.
    Invalid(String),
    /// `--help` or `--version` was requested; not an error for the caller.
    Info(String),
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UsageError::Invalid(m) | UsageError::Info(m) => f.write_str(m.trim_end()),
        }
    }
}

impl std::error::Error for UsageError {}

/// Parses the full argument vector, program name first.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        let text = e.render().to_string();
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => UsageError::Info(text),
            _ => UsageError::Invalid(text),
        }
    })?;

    let ode_order = if args.ode_order == 2 {
        OdeOrder::Second
    } else {
        OdeOrder::First
    };
    if ode_order == OdeOrder::Second {
        if args.z0.is_none() {
            return Err(UsageError::Invalid(
                "error: --z0 (initial z value) is required when --ode-order is 2".into(),
            ));
        }
        if args.g.is_none() {
            return Err(UsageError::Invalid(
                "error: --g (second function) is required when --ode-order is 2".into(),
            ));
        }
        if let Some(m) = args.method.filter(|&m| m != Method::Rk4) {
            return Err(UsageError::Invalid(format!(
                "error: --method {m} is not available with --ode-order 2 (second order always uses rk4)"
            )));
        }
    }

    Ok(RunConfig {
        x0: args.x0,
        y0: args.y0,
        z0: args.z0,
        steps: usize::try_from(args.steps)
            .map_err(|_| UsageError::Invalid(format!("error: --steps {} is too large", args.steps)))?,
        f: args.f,
        g: args.g,
        x_bar: args.xbar,
        exact: args.exact,
        ode_order,
        method: args.method.unwrap_or_default(),
        csv_path: args.csv,
        svg_path: args.svg,
    })
}

/// A failed run: the message for the error stream and the exit code.
struct Failure(String);

fn parse_field(flag: &str, source: &str) -> Result<Expr, Failure> {
    parse_function(source).map_err(|e| {
        let caret = e
            .annotate(source)
            .lines()
            .map(|l| format!("  {l}"))
            .collect::<Vec<_>>()
            .join("\n");
        Failure(format!("error: {flag}: {e}\n{caret}"))
    })
}

struct Outputs {
    csv: Vec<u8>,
    svg: Option<String>,
    summary: String,
}

fn compute(config: &RunConfig) -> Result<Outputs, Failure> {
    let fail = |e: &dyn std::fmt::Display| Failure(format!("error: {e}"));

    let f = parse_field("--f", &config.f)?;
    let exact = parse_field("--exact", &config.exact)?;
    let trajectory = match config.ode_order {
        OdeOrder::First => {
            let problem =
                FirstOrderProblem::new(f, config.x0, config.y0, config.x_bar, config.steps).map_err(|e| fail(&e))?;
            solve_first(&problem, config.method).map_err(|e| fail(&e))?
        }
        OdeOrder::Second => {
            let g_src = config
                .g
                .as_deref()
                .ok_or_else(|| Failure("error: --g is required when --ode-order is 2".into()))?;
            let z0 = config
                .z0
                .ok_or_else(|| Failure("error: --z0 is required when --ode-order is 2".into()))?;
            let g = parse_field("--g", g_src)?;
            let problem = SecondOrderProblem::new(f, g, config.x0, config.y0, z0, config.x_bar, config.steps)
                .map_err(|e| fail(&e))?;
            solve_second(&problem).map_err(|e| fail(&e))?
        }
    };

    let table = build_table(&trajectory, &exact).map_err(|e| fail(&e))?;
    let mut csv = Vec::new();
    write_csv(&table, &mut csv).map_err(|e| fail(&e))?;
    let svg = match &config.svg_path {
        Some(_) => {
            let clean = |s: &str| s.trim().trim_end_matches(';').trim().to_string();
            let title = match (&config.ode_order, &config.g) {
                (OdeOrder::Second, Some(g)) => format!("y' = {}, z' = {}", clean(&config.f), clean(g)),
                _ => format!("y' = {} ({})", clean(&config.f), config.method),
            };
            let cfg = PlotConfig::default().with_title(title);
            Some(render_svg(&table, &cfg).map_err(|e| fail(&e))?)
        }
        None => None,
    };
    let summary = format!(
        "h={} rows={} max_abs_error={}",
        table.h(),
        table.len(),
        format_number(table.max_abs_error())
    );
    Ok(Outputs { csv, svg, summary })
}

fn write_files(files: &[(&Path, &[u8])]) -> Result<(), Failure> {
    let mut created: Vec<&Path> = Vec::new();
    for (path, bytes) in files {
        if let Err(e) = fs::write(path, bytes) {
            created.push(path);
            for p in &created {
                let _ = fs::remove_file(p);
            }
            return Err(Failure(format!("error: writing {}: {e}", path.display())));
        }
        created.push(path);
    }
    Ok(())
}

/// Runs one solve, writing the CSV to `stdout` (unless a path is configured)
/// and the summary and any error message to `stderr`.
pub fn run_with(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outputs = match compute(config) {
        Ok(o) => o,
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            return EXIT_FAILURE;
        }
    };

    let mut files: Vec<(&Path, &[u8])> = Vec::new();
    if let Some(p) = &config.csv_path {
        files.push((p, &outputs.csv));
    }
    if let (Some(p), Some(svg)) = (&config.svg_path, &outputs.svg) {
        files.push((p, svg.as_bytes()));
    }
    if let Err(Failure(msg)) = write_files(&files) {
        let _ = writeln!(stderr, "{msg}");
        return EXIT_FAILURE;
    }
    if config.csv_path.is_none() {
        if let Err(e) = stdout.write_all(&outputs.csv).and_then(|_| stdout.flush()) {
            for (p, _) in &files {
                let _ = fs::remove_file(p);
            }
            let _ = writeln!(stderr, "error: writing table: {e}");
            return EXIT_FAILURE;
        }
    }
    let _ = writeln!(stderr, "{}", outputs.summary);
    EXIT_OK
}

pub fn run(config: &RunConfig) -> i32 {
    run_with(config, &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// Entry point for the binary: parse, run, return the exit code.
pub fn main_from_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(config) => run(&config),
        Err(UsageError::Info(text)) => {
            print!("{text}");
            EXIT_OK
        }
        Err(UsageError::Invalid(text)) => {
            eprintln!("{}", text.trim_end());
            EXIT_USAGE
        }
    }
}
