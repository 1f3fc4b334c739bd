//! Fixed-step Runge-Kutta integration.
//!
//! First-order problems `y' = f(x, y)` can be stepped with any [`Method`].
//! Second-order problems are given as the coupled pair `y' = f1(x, y, z)`,
//! `z' = f2(x, y, z)` and are always stepped with the four-stage scheme.
//!
//! The second- and third-order kernels use the stage layouts
//!
//! ```text
//! rk2: k1 = h f(x, y)          rk3: k1 = h f(x, y)
//!      k2 = h f(x + h, y + k1)      k2 = h f(x + h/2, y + k1/2)
//!      y' = y + (k1 + k2)/2         k3 = h f(x + h, y + k1)
//!                                   y' = y + (k1 + 4 k2 + k3)/6
//! ```
//!
//! The rk3 layout does not satisfy the third-order condition, so its measured
//! global order is about 2.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::eval::{check_variables, evaluate, Environment, EvalError};
use crate::expr::Expr;

/// Below this maximum error the convergence order is not measurable.
pub const DEGENERATE_ERROR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    Euler,
    Rk2,
    Rk3,
    #[default]
    Rk4,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Euler, Method::Rk2, Method::Rk3, Method::Rk4];

    pub fn stage_count(self) -> usize {
        match self {
            Method::Euler => 1,
            Method::Rk2 => 2,
            Method::Rk3 => 3,
            Method::Rk4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Euler => "euler",
            Method::Rk2 => "rk2",
            Method::Rk3 => "rk3",
            Method::Rk4 => "rk4",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method '{s}' (expected euler, rk2, rk3 or rk4)"))
    }
}

/// Which right-hand side a stage evaluation belonged to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rhs {
    F,
    F1,
    F2,
}

impl fmt::Display for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rhs::F => "f",
            Rhs::F1 => "f1",
            Rhs::F2 => "f2",
        })
    }
}

/// An evaluation failure inside one step, tagged with the 1-based stage.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("stage {stage} of {rhs}: {source}")]
pub struct StageError {
    pub stage: usize,
    pub rhs: Rhs,
    #[source]
    pub source: EvalError,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("endpoint {x_bar} must be greater than the initial x {x0}")]
    InvalidRange { x0: f64, x_bar: f64 },
    #[error("number of steps must be at least 1 (got {0})")]
    InvalidSteps(usize),
    #[error("{0} must be finite")]
    NonFiniteInput(&'static str),
    #[error("{role}: {source}")]
    Variables {
        role: &'static str,
        #[source]
        source: EvalError,
    },
    #[error("step {step} (x = {x}): {source}")]
    Step {
        step: usize,
        x: f64,
        #[source]
        source: StageError,
    },
    #[error("step {step} (x = {x}): solution is no longer finite")]
    Diverged { step: usize, x: f64 },
    #[error("exact solution at x = {x}: {source}")]
    Exact {
        x: f64,
        #[source]
        source: EvalError,
    },
    #[error("errors too small to measure an order (coarse {coarse:e}, fine {fine:e})")]
    Degenerate { coarse: f64, fine: f64 },
}

/// Stage values `k1..kn` (and `l1..l4` for coupled systems) of one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkStages {
    k: [f64; 4],
    l: Option<[f64; 4]>,
    len: usize,
}

impl RkStages {
    pub fn k(&self) -> &[f64] {
        &self.k[..self.len]
    }

    pub fn l(&self) -> Option<&[f64]> {
        self.l.as_ref().map(|l| &l[..self.len])
    }
}

/// `(x_bar - x0) / steps`.
pub fn step_size(x0: f64, x_bar: f64, steps: usize) -> Result<f64, SolveError> {
    if !x0.is_finite() {
        return Err(SolveError::NonFiniteInput("initial x"));
    }
    if !x_bar.is_finite() {
        return Err(SolveError::NonFiniteInput("x bar"));
    }
    if x_bar <= x0 {
        return Err(SolveError::InvalidRange { x0, x_bar });
    }
    if steps < 1 {
        return Err(SolveError::InvalidSteps(steps));
    }
    Ok((x_bar - x0) / steps as f64)
}

fn eval_xy(f: &Expr, x: f64, y: f64) -> Result<f64, EvalError> {
    let env = Environment::new().with('x', x)?.with('y', y)?;
    evaluate(f, &env)
}

fn eval_xyz(f: &Expr, x: f64, y: f64, z: f64) -> Result<f64, EvalError> {
    let env = Environment::new().with('x', x)?.with('y', y)?.with('z', z)?;
    evaluate(f, &env)
}

fn stage(stage: usize, rhs: Rhs) -> impl Fn(EvalError) -> StageError {
    move |source| StageError { stage, rhs, source }
}

/// `y + h f(x, y)`.
pub fn euler_step(f: &Expr, x: f64, y: f64, h: f64) -> Result<f64, StageError> {
    let k1 = h * eval_xy(f, x, y).map_err(stage(1, Rhs::F))?;
    Ok(y + k1)
}

pub fn rk2_step(f: &Expr, x: f64, y: f64, h: f64) -> Result<f64, StageError> {
    let k1 = h * eval_xy(f, x, y).map_err(stage(1, Rhs::F))?;
    let k2 = h * eval_xy(f, x + h, y + k1).map_err(stage(2, Rhs::F))?;
    Ok(y + (k1 + k2) / 2.0)
}

pub fn rk3_step(f: &Expr, x: f64, y: f64, h: f64) -> Result<f64, StageError> {
    let k1 = h * eval_xy(f, x, y).map_err(stage(1, Rhs::F))?;
    let k2 = h * eval_xy(f, x + h / 2.0, y + k1 / 2.0).map_err(stage(2, Rhs::F))?;
    let k3 = h * eval_xy(f, x + h, y + k1).map_err(stage(3, Rhs::F))?;
    Ok(y + (k1 + 4.0 * k2 + k3) / 6.0)
}

/// Classical four-stage step. Returns the new `y` and the stages.
pub fn rk4_step(f: &Expr, x: f64, y: f64, h: f64) -> Result<(f64, RkStages), StageError> {
    let half = h / 2.0;
    let k1 = h * eval_xy(f, x, y).map_err(stage(1, Rhs::F))?;
    let k2 = h * eval_xy(f, x + half, y + k1 / 2.0).map_err(stage(2, Rhs::F))?;
    let k3 = h * eval_xy(f, x + half, y + k2 / 2.0).map_err(stage(3, Rhs::F))?;
    let k4 = h * eval_xy(f, x + h, y + k3).map_err(stage(4, Rhs::F))?;
    let y_next = y + k1 / 6.0 + k2 / 3.0 + k3 / 3.0 + k4 / 6.0;
    Ok((
        y_next,
        RkStages {
            k: [k1, k2, k3, k4],
            l: None,
            len: 4,
        },
    ))
}

/// Four-stage step of the coupled system `y' = f1`, `z' = f2`. Each stage
/// evaluates both functions at the same shifted `(x, y, z)`.
pub fn rk4_step_second(
    f1: &Expr,
    f2: &Expr,
    x: f64,
    y: f64,
    z: f64,
    h: f64,
) -> Result<(f64, f64, RkStages), StageError> {
    let half = h / 2.0;
    let pair = |n: usize, x: f64, y: f64, z: f64| -> Result<(f64, f64), StageError> {
        let k = h * eval_xyz(f1, x, y, z).map_err(stage(n, Rhs::F1))?;
        let l = h * eval_xyz(f2, x, y, z).map_err(stage(n, Rhs::F2))?;
        Ok((k, l))
    };

    let (k1, l1) = pair(1, x, y, z)?;
    let (k2, l2) = pair(2, x + half, y + k1 / 2.0, z + l1 / 2.0)?;
    let (k3, l3) = pair(3, x + half, y + k2 / 2.0, z + l2 / 2.0)?;
    let (k4, l4) = pair(4, x + h, y + k3, z + l3)?;

    let y_next = y + k1 / 6.0 + k2 / 3.0 + k3 / 3.0 + k4 / 6.0;
    let z_next = z + l1 / 6.0 + l2 / 3.0 + l3 / 3.0 + l4 / 6.0;
    Ok((
        y_next,
        z_next,
        RkStages {
            k: [k1, k2, k3, k4],
            l: Some([l1, l2, l3, l4]),
            len: 4,
        },
    ))
}

/// Advances `y` by one step of `method`.
pub fn step(method: Method, f: &Expr, x: f64, y: f64, h: f64) -> Result<f64, StageError> {
    match method {
        Method::Euler => euler_step(f, x, y, h),
        Method::Rk2 => rk2_step(f, x, y, h),
        Method::Rk3 => rk3_step(f, x, y, h),
        Method::Rk4 => rk4_step(f, x, y, h).map(|(y, _)| y),
    }
}

/// `y' = f(x, y)`, `y(x0) = y0`, integrated to `x_bar` in `steps` equal steps.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderProblem {
    f: Expr,
    x0: f64,
    y0: f64,
    x_bar: f64,
    steps: usize,
}

impl FirstOrderProblem {
    pub fn new(f: Expr, x0: f64, y0: f64, x_bar: f64, steps: usize) -> Result<Self, SolveError> {
        step_size(x0, x_bar, steps)?;
        if !y0.is_finite() {
            return Err(SolveError::NonFiniteInput("initial y"));
        }
        check_variables(&f, &['x', 'y']).map_err(|source| SolveError::Variables { role: "f", source })?;
        Ok(FirstOrderProblem {
            f,
            x0,
            y0,
            x_bar,
            steps,
        })
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn x_bar(&self) -> f64 {
        self.x_bar
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step_size(&self) -> f64 {
        (self.x_bar - self.x0) / self.steps as f64
    }

    /// Same problem on a different grid.
    pub fn with_steps(&self, steps: usize) -> Result<Self, SolveError> {
        Self::new(self.f.clone(), self.x0, self.y0, self.x_bar, steps)
    }
}

/// `y' = f1(x, y, z)`, `z' = f2(x, y, z)` with `y(x0) = y0`, `z(x0) = z0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderProblem {
    f1: Expr,
    f2: Expr,
    x0: f64,
    y0: f64,
    z0: f64,
    x_bar: f64,
    steps: usize,
}

impl SecondOrderProblem {
    #[allow(clippy::too_many_arguments)]
    pub fn new(f1: Expr, f2: Expr, x0: f64, y0: f64, z0: f64, x_bar: f64, steps: usize) -> Result<Self, SolveError> {
        step_size(x0, x_bar, steps)?;
        if !y0.is_finite() {
            return Err(SolveError::NonFiniteInput("initial y"));
        }
        if !z0.is_finite() {
            return Err(SolveError::NonFiniteInput("initial z"));
        }
        let allowed = ['x', 'y', 'z'];
        check_variables(&f1, &allowed).map_err(|source| SolveError::Variables { role: "f1", source })?;
        check_variables(&f2, &allowed).map_err(|source| SolveError::Variables { role: "f2", source })?;
        Ok(SecondOrderProblem {
            f1,
            f2,
            x0,
            y0,
            z0,
            x_bar,
            steps,
        })
    }

    pub fn f1(&self) -> &Expr {
        &self.f1
    }

    pub fn f2(&self) -> &Expr {
        &self.f2
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    pub fn x_bar(&self) -> f64 {
        self.x_bar
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step_size(&self) -> f64 {
        (self.x_bar - self.x0) / self.steps as f64
    }
}

/// Grid states produced by a solve. All sequences have `steps + 1` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    xs: Vec<f64>,
    ys: Vec<f64>,
    zs: Option<Vec<f64>>,
    h: f64,
}

impl Trajectory {
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn zs(&self) -> Option<&[f64]> {
        self.zs.as_deref()
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

fn grid(x0: f64, h: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| x0 + i as f64 * h).collect()
}

pub fn solve_first(problem: &FirstOrderProblem, method: Method) -> Result<Trajectory, SolveError> {
    let h = step_size(problem.x0, problem.x_bar, problem.steps)?;
    let xs = grid(problem.x0, h, problem.steps);
    let mut ys = Vec::with_capacity(xs.len());
    let mut y = problem.y0;
    ys.push(y);
    for (n, &x) in xs[..problem.steps].iter().enumerate() {
        y = step(method, &problem.f, x, y, h).map_err(|source| SolveError::Step { step: n, x, source })?;
        if !y.is_finite() {
            return Err(SolveError::Diverged { step: n, x });
        }
        ys.push(y);
    }
    Ok(Trajectory { xs, ys, zs: None, h })
}

pub fn solve_second(problem: &SecondOrderProblem) -> Result<Trajectory, SolveError> {
    let h = step_size(problem.x0, problem.x_bar, problem.steps)?;
    let xs = grid(problem.x0, h, problem.steps);
    let mut ys = Vec::with_capacity(xs.len());
    let mut zs = Vec::with_capacity(xs.len());
    let (mut y, mut z) = (problem.y0, problem.z0);
    ys.push(y);
    zs.push(z);
    for (n, &x) in xs[..problem.steps].iter().enumerate() {
        let (y_next, z_next, _) = rk4_step_second(&problem.f1, &problem.f2, x, y, z, h)
            .map_err(|source| SolveError::Step { step: n, x, source })?;
        if !(y_next.is_finite() && z_next.is_finite()) {
            return Err(SolveError::Diverged { step: n, x });
        }
        (y, z) = (y_next, z_next);
        ys.push(y);
        zs.push(z);
    }
    Ok(Trajectory {
        xs,
        ys,
        zs: Some(zs),
        h,
    })
}

/// Largest `|exact(x_i) - y_i|` over the grid.
pub fn max_abs_error(traj: &Trajectory, exact: &Expr) -> Result<f64, SolveError> {
    let mut worst = 0.0f64;
    for (&x, &y) in traj.xs.iter().zip(&traj.ys) {
        let env = Environment::new()
            .with('x', x)
            .map_err(|source| SolveError::Exact { x, source })?;
        let truth = evaluate(exact, &env).map_err(|source| SolveError::Exact { x, source })?;
        worst = worst.max((truth - y).abs());
    }
    Ok(worst)
}

/// Empirical global order: `log2(maxerr(h) / maxerr(h/2))`.
pub fn estimate_order(problem: &FirstOrderProblem, method: Method, exact: &Expr) -> Result<f64, SolveError> {
    check_variables(exact, &['x']).map_err(|source| SolveError::Variables {
        role: "exact solution",
        source,
    })?;
    let coarse = max_abs_error(&solve_first(problem, method)?, exact)?;
    let fine = max_abs_error(&solve_first(&problem.with_steps(2 * problem.steps)?, method)?, exact)?;
    if coarse < DEGENERATE_ERROR || fine < DEGENERATE_ERROR {
        return Err(SolveError::Degenerate { coarse, fine });
    }
    Ok((coarse / fine).log2())
}
