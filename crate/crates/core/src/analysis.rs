//! Error norms over sampling windows and empirical convergence orders.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::{Approximant1D, Approximant2D, Evaluation};
use crate::cheb::Interval;
use crate::cheb2d::Rect;
use crate::error::{Error, Result};

/// Minimum number of samples per 1D window.
pub const MIN_SAMPLES_1D: usize = 2048;
/// Minimum number of samples per axis in 2D.
pub const MIN_SAMPLES_2D: usize = 256;
/// Samples per smallest cell along each axis.
pub const SAMPLES_PER_CELL: usize = 10;
/// Errors at or below this level are treated as round-off when estimating orders.
pub const ROUNDOFF_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    Interval(Interval),
    Rect(Rect),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grid {
    Uniform1D { m: usize },
    Uniform2D { mx: usize, my: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub l1: f64,
    pub linf: f64,
    pub window: Window,
    pub samples: Grid,
    pub pole_count: usize,
}

/// Midpoints of `m` equal sub-intervals of `window`. A point that lands on an
/// interior breakpoint is moved into the cell that owns it by `1e-12` of that
/// cell's width.
pub fn sample_points_1d(window: Interval, m: usize, breakpoints: &[f64]) -> Vec<f64> {
    let h = window.width() / m as f64;
    (0..m)
        .map(|k| {
            let x = window.a() + (k as f64 + 0.5) * h;
            nudge(x, breakpoints)
        })
        .collect()
}

fn nudge(x: f64, breakpoints: &[f64]) -> f64 {
    let k = breakpoints.partition_point(|&b| b < x);
    let hit = |b: f64| (x - b).abs() <= 4.0 * f64::EPSILON * b.abs().max(1.0);
    let len = breakpoints.len();
    for idx in [k.wrapping_sub(1), k] {
        if idx >= len || !hit(breakpoints[idx]) {
            continue;
        }
        let node = breakpoints[idx];
        return if idx + 1 < len {
            node + 1e-12 * (breakpoints[idx + 1] - node)
        } else if idx > 0 {
            node - 1e-12 * (node - breakpoints[idx - 1])
        } else {
            x
        };
    }
    x
}

fn min_cell_width(breakpoints: &[f64]) -> f64 {
    breakpoints
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// `max(MIN_SAMPLES_1D, SAMPLES_PER_CELL * |window| / smallest cell)`.
// Ratios of widths carry rounding error; 350.00000000000006 should still give 350.
fn ceil_loose(v: f64) -> f64 {
    (v * (1.0 - 1e-12)).ceil()
}

pub fn default_grid_1d(window: Interval, breakpoints: &[f64]) -> usize {
    let per_cell = ceil_loose(SAMPLES_PER_CELL as f64 * window.width() / min_cell_width(breakpoints));
    if per_cell.is_finite() {
        MIN_SAMPLES_1D.max(per_cell as usize)
    } else {
        MIN_SAMPLES_1D
    }
}

pub fn default_grid_2d(window: Rect, breakpoints: (&[f64], &[f64])) -> (usize, usize) {
    let axis = |w: Interval, b: &[f64]| {
        let per_cell = ceil_loose(SAMPLES_PER_CELL as f64 * w.width() / min_cell_width(b));
        if per_cell.is_finite() {
            MIN_SAMPLES_2D.max(per_cell as usize)
        } else {
            MIN_SAMPLES_2D
        }
    };
    (axis(window.x, breakpoints.0), axis(window.y, breakpoints.1))
}

fn domain_of(breakpoints: &[f64]) -> Option<(f64, f64)> {
    Some((*breakpoints.first()?, *breakpoints.last()?))
}

fn check_window(window: Interval, breakpoints: &[f64]) -> Result<()> {
    match domain_of(breakpoints) {
        Some((a, b)) if window.a() >= a && window.b() <= b => Ok(()),
        _ => Err(Error::invalid(format!(
            "window {window} is not inside the approximant domain"
        ))),
    }
}

/// Pointwise `(x, f, approx)` on the midpoint grid.
pub fn sample_1d<F, A>(f: &F, approx: &A, points: &[f64]) -> Result<Vec<(f64, f64, Evaluation)>>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
    A: Approximant1D + ?Sized,
{
    points
        .par_iter()
        .map(|&x| Ok((x, f(x), approx.evaluate(x)?)))
        .collect()
}

/// Uniform-grid L∞ and composite-midpoint L¹ of `f - approx` on `window`.
pub fn error_norms_1d<F, A>(f: &F, approx: &A, window: Interval, m: usize) -> Result<ErrorReport>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
    A: Approximant1D + ?Sized,
{
    if m == 0 {
        return Err(Error::invalid("empty sampling grid"));
    }
    let breakpoints = approx.breakpoints();
    check_window(window, &breakpoints)?;
    let points = sample_points_1d(window, m, &breakpoints);
    let samples = sample_1d(f, approx, &points)?;
    let h = window.width() / m as f64;
    let (mut sum, mut linf, mut poles) = (0.0, 0.0f64, 0);
    for (_, fx, e) in &samples {
        let err = (fx - e.value).abs();
        sum += err;
        linf = linf.max(err);
        poles += e.pole as usize;
    }
    Ok(ErrorReport {
        l1: sum * h,
        linf,
        window: Window::Interval(window),
        samples: Grid::Uniform1D { m },
        pole_count: poles,
    })
}

/// Sample points of a 2D window, `y` fastest.
pub fn sample_points_2d(window: Rect, m: (usize, usize), breakpoints: (&[f64], &[f64])) -> (Vec<f64>, Vec<f64>) {
    (
        sample_points_1d(window.x, m.0, breakpoints.0),
        sample_points_1d(window.y, m.1, breakpoints.1),
    )
}

pub fn sample_2d<F, A>(f: &F, approx: &A, xs: &[f64], ys: &[f64]) -> Result<Vec<(f64, f64, f64, Evaluation)>>
where
    F: Fn(f64, f64) -> f64 + Sync + ?Sized,
    A: Approximant2D + ?Sized,
{
    (0..xs.len() * ys.len())
        .into_par_iter()
        .map(|k| {
            let (x, y) = (xs[k / ys.len()], ys[k % ys.len()]);
            Ok((x, y, f(x, y), approx.evaluate(x, y)?))
        })
        .collect()
}

pub fn error_norms_2d<F, A>(f: &F, approx: &A, window: Rect, m: (usize, usize)) -> Result<ErrorReport>
where
    F: Fn(f64, f64) -> f64 + Sync + ?Sized,
    A: Approximant2D + ?Sized,
{
    if m.0 == 0 || m.1 == 0 {
        return Err(Error::invalid("empty sampling grid"));
    }
    let (bx, by) = approx.breakpoints();
    check_window(window.x, &bx)?;
    check_window(window.y, &by)?;
    let (xs, ys) = sample_points_2d(window, m, (&bx, &by));
    let samples = sample_2d(f, approx, &xs, &ys)?;
    let cell_area = window.area() / (m.0 * m.1) as f64;
    let (mut sum, mut linf, mut poles) = (0.0, 0.0f64, 0);
    for (_, _, fxy, e) in &samples {
        let err = (fxy - e.value).abs();
        sum += err;
        linf = linf.max(err);
        poles += e.pole as usize;
    }
    Ok(ErrorReport {
        l1: sum * cell_area,
        linf,
        window: Window::Rect(window),
        samples: Grid::Uniform2D { mx: m.0, my: m.1 },
        pole_count: poles,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub l1: f64,
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

/// `ln(e_{k-1}/e_k) / ln(N_k/N_{k-1})`.
pub fn order_between(n0: usize, e0: f64, n1: usize, e1: f64) -> f64 {
    (e0 / e1).ln() / (n1 as f64 / n0 as f64).ln()
}

fn check_counts(rows: &[(usize, f64)]) -> Result<()> {
    if rows.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::invalid("cell counts must be strictly increasing"));
    }
    if rows.iter().any(|r| r.0 == 0) {
        return Err(Error::invalid("cell counts must be positive"));
    }
    Ok(())
}

/// Orders between consecutive rows; every error must be positive.
pub fn convergence_orders(rows: &[(usize, f64)]) -> Result<ConvergenceTable> {
    check_counts(rows)?;
    if let Some(bad) = rows.iter().find(|r| !(r.1 > 0.0) || !r.1.is_finite()) {
        return Err(Error::invalid(format!("error at N = {} must be positive, got {}", bad.0, bad.1)));
    }
    Ok(table(rows, |_, _| true))
}

/// Like [`convergence_orders`] but leaves the order empty wherever either
/// error is at or below [`ROUNDOFF_FLOOR`] or not finite.
pub fn convergence_orders_lenient(rows: &[(usize, f64)]) -> Result<ConvergenceTable> {
    check_counts(rows)?;
    let usable = |e: f64| e.is_finite() && e > ROUNDOFF_FLOOR;
    Ok(table(rows, |e0, e1| usable(e0) && usable(e1)))
}

fn table(rows: &[(usize, f64)], keep: impl Fn(f64, f64) -> bool) -> ConvergenceTable {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(k, &(n, l1))| {
            let order = (k > 0)
                .then(|| rows[k - 1])
                .filter(|&(_, e0)| keep(e0, l1))
                .map(|(n0, e0)| order_between(n0, e0, n, l1));
            ConvergenceRow { n, l1, order }
        })
        .collect();
    ConvergenceTable { rows }
}
