//! Solution tables: approximate values next to an analytic solution, and
//! their CSV form.

use std::io::{self, Write};

use thiserror::Error;

use crate::eval::{check_variables, evaluate, Environment, EvalError};
use crate::expr::Expr;
use crate::solver::Trajectory;

pub const CSV_HEADER: &str = "X,Y_Approximate,Y_Exact,Absolute_Error";
pub const CSV_HEADER_WITH_Z: &str = "X,Y_Approximate,Y_Exact,Absolute_Error,Z_Approximate";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReportError {
    #[error("exact solution: {0}")]
    Variables(#[source] EvalError),
    #[error("exact solution at row {row} (x = {x}): {source}")]
    Exact {
        row: usize,
        x: f64,
        #[source]
        source: EvalError,
    },
    #[error("table has no rows")]
    Empty,
    #[error("row {0}: x values must be strictly increasing")]
    NotIncreasing(usize),
    #[error("row {0}: values must be finite")]
    NonFinite(usize),
    #[error("row {0}: rows disagree on the presence of z")]
    MixedZ(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionRow {
    pub x: f64,
    pub y_approx: f64,
    pub y_exact: f64,
    /// `|y_exact - y_approx|`.
    pub abs_error: f64,
    pub z_approx: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTable {
    rows: Vec<SolutionRow>,
    h: f64,
    has_z: bool,
}

impl SolutionTable {
    /// Builds a table from precomputed rows, checking that the rows are
    /// non-empty, finite, increasing in x and consistent about z. `abs_error` is
    /// recomputed from `y_exact` and `y_approx`.
    pub fn from_rows(mut rows: Vec<SolutionRow>, h: f64) -> Result<Self, ReportError> {
        let first = rows.first().ok_or(ReportError::Empty)?;
        let has_z = first.z_approx.is_some();
        let finite = |r: &SolutionRow| {
            [r.x, r.y_approx, r.y_exact]
                .iter()
                .chain(&r.z_approx)
                .all(|v| v.is_finite())
        };
        if let Some(i) = rows.iter().position(|r| !finite(r)) {
            return Err(ReportError::NonFinite(i));
        }
        for i in 1..rows.len() {
            if rows[i].x <= rows[i - 1].x {
                return Err(ReportError::NotIncreasing(i));
            }
        }
        if let Some(i) = rows.iter().position(|r| r.z_approx.is_some() != has_z) {
            return Err(ReportError::MixedZ(i));
        }
        for r in &mut rows {
            r.abs_error = (r.y_exact - r.y_approx).abs();
        }
        Ok(SolutionTable { rows, h, has_z })
    }

    pub fn rows(&self) -> &[SolutionRow] {
        &self.rows
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn has_z(&self) -> bool {
        self.has_z
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn max_abs_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
    }
}

/// Pairs every trajectory point with `exact(x)`. `exact` may only mention `x`.
pub fn build_table(traj: &Trajectory, exact: &Expr) -> Result<SolutionTable, ReportError> {
    check_variables(exact, &['x']).map_err(ReportError::Variables)?;
    if traj.is_empty() {
        return Err(ReportError::Empty);
    }
    let zs = traj.zs();
    let rows = traj
        .xs()
        .iter()
        .zip(traj.ys())
        .enumerate()
        .map(|(row, (&x, &y_approx))| {
            let tag = |source| ReportError::Exact { row, x, source };
            let env = Environment::new().with('x', x).map_err(tag)?;
            let y_exact = evaluate(exact, &env).map_err(tag)?;
            Ok(SolutionRow {
                x,
                y_approx,
                y_exact,
                abs_error: (y_exact - y_approx).abs(),
                z_approx: zs.map(|z| z[row]),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SolutionTable {
        rows,
        h: traj.h(),
        has_z: zs.is_some(),
    })
}

/// Scientific notation with 17 significant digits, which reads back bit-exact.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the header and one line per row. Returns the number of data rows.
pub fn write_csv<W: Write>(table: &SolutionTable, mut out: W) -> io::Result<usize> {
    let header = if table.has_z { CSV_HEADER_WITH_Z } else { CSV_HEADER };
    out.write_all(header.as_bytes())?;
    out.write_all(b"\n")?;
    for row in &table.rows {
        let mut line = [row.x, row.y_approx, row.y_exact, row.abs_error]
            .map(format_number)
            .join(",");
        if let Some(z) = row.z_approx {
            line.push(',');
            line.push_str(&format_number(z));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()?;
    Ok(table.rows.len())
}
