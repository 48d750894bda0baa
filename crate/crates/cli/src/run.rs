//! Building approximants from a plan and writing results.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use padecheb::analysis::{
    convergence_orders_lenient, default_grid_1d, default_grid_2d, error_norms_1d, error_norms_2d, sample_1d,
    sample_2d, sample_points_1d, sample_points_2d, ConvergenceTable, ErrorReport, Window,
};
use padecheb::pade2d::build_pi2dpc_with;
use padecheb::piecewise1d::build_pipc_with;
use padecheb::{
    build_pi2dc, build_piecewise_cheb, uniform_partition, Approximant1D, Approximant2D, BuildOptions, Partition2D,
    PiecewiseApprox1D, PiecewiseApprox2D,
};
use serde::{Deserialize, Serialize};

use crate::config::{ConvergenceConfig, Kind1, Kind2, Plan, RunConfig};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailedCell {
    pub cell: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub config: RunConfig,
    pub windows: Vec<ErrorReport>,
    pub pole_count: usize,
    pub wall_time_s: f64,
    pub failed_cells: Vec<FailedCell>,
    pub error: Option<String>,
}

pub enum Built {
    One(PiecewiseApprox1D),
    Two(PiecewiseApprox2D),
}

pub fn build(plan: &Plan) -> Result<Built, CliError> {
    match plan {
        Plan::One {
            f,
            domain,
            cells,
            kind,
            n,
            rank_tol,
            ..
        } => {
            let partition = uniform_partition(*domain, *cells)?;
            let approx = match kind {
                Kind1::Series(d) => build_piecewise_cheb(f, &partition, *d, *n)?,
                Kind1::Rational(order) => {
                    let orders = vec![*order; *cells];
                    let options = BuildOptions {
                        rank_tolerance: *rank_tol,
                    };
                    build_pipc_with(f, &partition, &orders, *n, &options)?
                }
            };
            Ok(Built::One(approx))
        }
        Plan::Two {
            f,
            domain,
            cells,
            kind,
            n,
            rank_tol,
            ..
        } => {
            let partition = Partition2D::uniform(*domain, *cells)?;
            let approx = match kind {
                Kind2::Series(d) => build_pi2dc(f, &partition, *d, *n)?,
                Kind2::Rational(order) => {
                    let options = BuildOptions {
                        rank_tolerance: *rank_tol,
                    };
                    build_pi2dpc_with(f, &partition, *order, *n, &options)?
                }
            };
            Ok(Built::Two(approx))
        }
    }
}

/// Error reports for every window of the plan.
pub fn window_errors(plan: &Plan, built: &Built) -> Result<Vec<ErrorReport>, CliError> {
    match (plan, built) {
        (Plan::One { f, windows, grid, .. }, Built::One(a)) => {
            let bp = a.breakpoints();
            windows
                .iter()
                .map(|&w| Ok(error_norms_1d(f, a, w, grid.unwrap_or_else(|| default_grid_1d(w, &bp)))?))
                .collect()
        }
        (Plan::Two { f, windows, grid, .. }, Built::Two(a)) => {
            let (bx, by) = a.breakpoints();
            windows
                .iter()
                .map(|&w| Ok(error_norms_2d(f, a, w, grid.unwrap_or_else(|| default_grid_2d(w, (&bx, &by))))?))
                .collect()
        }
        _ => unreachable!("plan and approximant dimensions always agree"),
    }
}

fn flag(pole: bool) -> u8 {
    u8::from(pole)
}

/// `x[,y],f,approx,abs_err,pole_flag` on the sample grid of the whole domain.
pub fn write_values(path: &Path, plan: &Plan, built: &Built) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    match (plan, built) {
        (Plan::One { f, domain, grid, .. }, Built::One(a)) => {
            let bp = a.breakpoints();
            let points = sample_points_1d(*domain, grid.unwrap_or_else(|| default_grid_1d(*domain, &bp)), &bp);
            writeln!(w, "x,f,approx,abs_err,pole_flag")?;
            for (x, fx, e) in sample_1d(f, a, &points)? {
                writeln!(w, "{x:.16e},{fx:.16e},{:.16e},{:.16e},{}", e.value, (fx - e.value).abs(), flag(e.pole))?;
            }
        }
        (Plan::Two { f, domain, grid, .. }, Built::Two(a)) => {
            let (bx, by) = a.breakpoints();
            let m = grid.unwrap_or_else(|| default_grid_2d(*domain, (&bx, &by)));
            let (xs, ys) = sample_points_2d(*domain, m, (&bx, &by));
            writeln!(w, "x,y,f,approx,abs_err,pole_flag")?;
            for (x, y, fx, e) in sample_2d(f, a, &xs, &ys)? {
                writeln!(
                    w,
                    "{x:.16e},{y:.16e},{fx:.16e},{:.16e},{:.16e},{}",
                    e.value,
                    (fx - e.value).abs(),
                    flag(e.pole)
                )?;
            }
        }
        _ => unreachable!("plan and approximant dimensions always agree"),
    }
    w.flush()?;
    Ok(())
}

pub fn write_errors(path: &Path, reports: &[ErrorReport]) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "ax,bx,ay,by,samples,l1,linf,pole_count")?;
    for r in reports {
        let (bounds, samples) = match r.window {
            Window::Interval(i) => (format!("{:.16e},{:.16e},,", i.a(), i.b()), grid_size(r)),
            Window::Rect(q) => (
                format!("{:.16e},{:.16e},{:.16e},{:.16e}", q.x.a(), q.x.b(), q.y.a(), q.y.b()),
                grid_size(r),
            ),
        };
        writeln!(w, "{bounds},{samples},{:.16e},{:.16e},{}", r.l1, r.linf, r.pole_count)?;
    }
    w.flush()?;
    Ok(())
}

fn grid_size(r: &ErrorReport) -> String {
    match r.samples {
        padecheb::analysis::Grid::Uniform1D { m } => m.to_string(),
        padecheb::analysis::Grid::Uniform2D { mx, my } => format!("{mx}x{my}"),
    }
}

fn write_summary(dir: &Path, summary: &Summary) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(summary).map_err(|e| CliError::Io(e.to_string()))?;
    fs::write(dir.join("summary.json"), text + "\n")?;
    Ok(())
}

/// Builds, evaluates and writes `values.csv`, `errors.csv` and `summary.json`
/// into `config.out`.
pub fn run_approx(config: &RunConfig) -> Result<Summary, CliError> {
    let start = Instant::now();
    let plan = config.resolve()?;
    fs::create_dir_all(&config.out)?;
    let built = match build(&plan) {
        Ok(b) => b,
        Err(e) => {
            if let CliError::Build { message, failed_cells } = &e {
                let summary = Summary {
                    config: config.clone(),
                    windows: Vec::new(),
                    pole_count: 0,
                    wall_time_s: start.elapsed().as_secs_f64(),
                    failed_cells: failed_cells.iter().map(|&cell| FailedCell { cell }).collect(),
                    error: Some(message.clone()),
                };
                write_summary(&config.out, &summary)?;
            }
            return Err(e);
        }
    };
    write_values(&config.out.join("values.csv"), &plan, &built)?;
    let reports = window_errors(&plan, &built)?;
    write_errors(&config.out.join("errors.csv"), &reports)?;
    let summary = Summary {
        config: config.clone(),
        pole_count: reports.iter().map(|r| r.pole_count).sum(),
        windows: reports,
        wall_time_s: start.elapsed().as_secs_f64(),
        failed_cells: Vec::new(),
        error: None,
    };
    write_summary(&config.out, &summary)?;
    log::info!("approx finished in {:.3} s", summary.wall_time_s);
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub cheb: ConvergenceTable,
    pub pade: ConvergenceTable,
}

/// L1 on the window for piecewise Chebyshev and PiPC side by side.
pub fn convergence(config: &ConvergenceConfig) -> Result<ConvergenceReport, CliError> {
    let mut cheb = Vec::new();
    let mut pade = Vec::new();
    for (k, cheb_plan, pade_plan) in config.resolve()? {
        let c = window_errors(&cheb_plan, &build(&cheb_plan)?)?;
        let p = window_errors(&pade_plan, &build(&pade_plan)?)?;
        log::info!("N = {k}: l1 cheb {:.3e}, pade {:.3e}", c[0].l1, p[0].l1);
        cheb.push((k, c[0].l1));
        pade.push((k, p[0].l1));
    }
    let table = |rows: &[(usize, f64)]| convergence_orders_lenient(rows).map_err(CliError::from);
    Ok(ConvergenceReport {
        cheb: table(&cheb)?,
        pade: table(&pade)?,
    })
}

pub fn write_convergence(path: &Path, report: &ConvergenceReport) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut w = BufWriter::new(File::create(path)?);
    let order = |o: Option<f64>| o.map(|v| format!("{v:.16e}")).unwrap_or_default();
    writeln!(w, "N,l1_cheb,order_cheb,l1_pade,order_pade")?;
    for (c, p) in report.cheb.rows.iter().zip(&report.pade.rows) {
        writeln!(w, "{},{:.16e},{},{:.16e},{}", c.n, c.l1, order(c.order), p.l1, order(p.order))?;
    }
    w.flush()?;
    Ok(())
}

pub fn run_convergence(config: &ConvergenceConfig) -> Result<ConvergenceReport, CliError> {
    let report = convergence(config)?;
    write_convergence(&config.out, &report)?;
    Ok(report)
}

/// Thread pool capped by `PADECHEB_THREADS` when set.
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("PADECHEB_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Config(format!("PADECHEB_THREADS must be a positive integer, got '{v}'")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Config(e.to_string()))
}
