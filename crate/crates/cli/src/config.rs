//! Run configuration and its validation into an executable plan.

use std::path::PathBuf;

use padecheb::{Interval, PadeOrder1D, PadeOrder2D, Rect};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::registry::{interval_from, lookup, rect_from, Func};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Global truncated Chebyshev series.
    Cheb,
    /// Global Padé-Chebyshev approximant.
    Pade,
    /// Piecewise Chebyshev series.
    Picheb,
    /// Piecewise Padé-Chebyshev approximant.
    #[default]
    Pipade,
}

impl Method {
    fn piecewise(self) -> bool {
        matches!(self, Method::Picheb | Method::Pipade)
    }

    fn rational(self) -> bool {
        matches!(self, Method::Pade | Method::Pipade)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Dim {
    #[serde(rename = "1d")]
    #[value(name = "1d")]
    One,
    #[serde(rename = "2d")]
    #[value(name = "2d")]
    Two,
}

fn default_cells() -> Vec<usize> {
    vec![1]
}

fn default_np() -> Vec<usize> {
    vec![20]
}

fn default_nq() -> Vec<usize> {
    vec![20]
}

fn default_n() -> Vec<usize> {
    vec![200]
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

/// Everything `approx` needs. Per-axis lists take one entry (shared by both
/// axes in 2D) or two entries `(x, y)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub function: String,
    #[serde(default)]
    pub method: Method,
    #[serde(default)]
    pub dim: Option<Dim>,
    /// `[a, b]` or `[ax, bx, ay, by]`; the function's default when absent.
    #[serde(default)]
    pub domain: Option<Vec<f64>>,
    #[serde(default = "default_cells")]
    pub cells: Vec<usize>,
    #[serde(default = "default_np")]
    pub np: Vec<usize>,
    #[serde(default = "default_nq")]
    pub nq: Vec<usize>,
    /// Series degree for `cheb`/`picheb`; defaults to the degree a Padé build of
    /// order `(np, nq)` would sample.
    #[serde(default)]
    pub degree: Option<Vec<usize>>,
    #[serde(default = "default_n")]
    pub n: Vec<usize>,
    /// Error windows, each shaped like `domain`; the whole domain when empty.
    #[serde(default)]
    pub windows: Vec<Vec<f64>>,
    /// Samples per window (per axis in 2D); the default rule when absent.
    #[serde(default)]
    pub grid: Option<Vec<usize>>,
    #[serde(default)]
    pub rank_tol: Option<f64>,
    /// Output directory.
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(function: impl Into<String>) -> Self {
        Self {
            function: function.into(),
            method: Method::default(),
            dim: None,
            domain: None,
            cells: default_cells(),
            np: default_np(),
            nq: default_nq(),
            degree: None,
            n: default_n(),
            windows: Vec::new(),
            grid: None,
            rank_tol: None,
            out: default_out(),
        }
    }
}

/// Sweep over cell counts for `convergence`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceConfig {
    pub function: String,
    #[serde(default)]
    pub domain: Option<Vec<f64>>,
    /// Cells per axis, strictly increasing.
    pub cells: Vec<usize>,
    #[serde(default = "default_np")]
    pub np: Vec<usize>,
    #[serde(default = "default_nq")]
    pub nq: Vec<usize>,
    #[serde(default)]
    pub degree: Option<Vec<usize>>,
    #[serde(default = "default_n")]
    pub n: Vec<usize>,
    #[serde(default)]
    pub window: Option<Vec<f64>>,
    #[serde(default)]
    pub grid: Option<Vec<usize>>,
    #[serde(default)]
    pub rank_tol: Option<f64>,
    /// CSV file to write.
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind1 {
    Series(usize),
    Rational(PadeOrder1D),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind2 {
    Series((usize, usize)),
    Rational(PadeOrder2D),
}

#[derive(Debug, Clone)]
pub enum Plan {
    One {
        f: fn(f64) -> f64,
        domain: Interval,
        cells: usize,
        kind: Kind1,
        n: usize,
        windows: Vec<Interval>,
        grid: Option<usize>,
        rank_tol: Option<f64>,
    },
    Two {
        f: fn(f64, f64) -> f64,
        domain: Rect,
        cells: (usize, usize),
        kind: Kind2,
        n: (usize, usize),
        windows: Vec<Rect>,
        grid: Option<(usize, usize)>,
        rank_tol: Option<f64>,
    },
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn single(v: &[usize], what: &str) -> Result<usize, CliError> {
    match v {
        [a] => Ok(*a),
        _ => Err(config_err(format!("{what} takes one value in 1D, got {v:?}"))),
    }
}

fn pair(v: &[usize], what: &str) -> Result<(usize, usize), CliError> {
    match v {
        [a] => Ok((*a, *a)),
        [a, b] => Ok((*a, *b)),
        _ => Err(config_err(format!("{what} takes one or two values in 2D, got {v:?}"))),
    }
}

fn positive(v: &[usize], what: &str) -> Result<(), CliError> {
    if v.contains(&0) {
        return Err(config_err(format!("{what} must be positive, got {v:?}")));
    }
    Ok(())
}

struct Common<'a> {
    function: &'a str,
    method: Method,
    dim: Option<Dim>,
    domain: &'a Option<Vec<f64>>,
    cells: &'a [usize],
    np: &'a [usize],
    nq: &'a [usize],
    degree: &'a Option<Vec<usize>>,
    n: &'a [usize],
    windows: &'a [Vec<f64>],
    grid: &'a Option<Vec<usize>>,
    rank_tol: Option<f64>,
}

fn resolve_common(c: Common<'_>) -> Result<Plan, CliError> {
    let spec = lookup(c.function).ok_or_else(|| config_err(format!("unknown function '{}'", c.function)))?;
    let want_dim = if spec.arity == 1 { Dim::One } else { Dim::Two };
    if let Some(d) = c.dim {
        if d != want_dim {
            return Err(config_err(format!("'{}' takes {} argument(s), dimension mismatch", spec.name, spec.arity)));
        }
    }
    positive(c.cells, "cells")?;
    positive(c.n, "quadrature size n")?;
    if let Some(t) = c.rank_tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(config_err(format!("rank tolerance must be finite and >= 0, got {t}")));
        }
    }
    if let Some(g) = c.grid {
        positive(g, "grid")?;
    }
    if !c.method.piecewise() && c.cells.iter().any(|&k| k != 1) {
        return Err(config_err("global methods need cells = 1; use picheb or pipade"));
    }
    let domain = c.domain.clone().unwrap_or_else(|| spec.default_domain());
    match spec.func {
        Func::One(f) => {
            let domain = interval_from(&domain).ok_or_else(|| config_err(format!("bad 1D domain {domain:?}")))?;
            let order = PadeOrder1D::new(single(c.np, "np")?, single(c.nq, "nq")?).map_err(|e| config_err(e.to_string()));
            let kind = if c.method.rational() {
                Kind1::Rational(order?)
            } else {
                match c.degree {
                    Some(d) => Kind1::Series(single(d, "degree")?),
                    None => Kind1::Series(order?.series_degree()),
                }
            };
            let mut windows = Vec::new();
            for w in c.windows {
                let i = interval_from(w).ok_or_else(|| config_err(format!("bad 1D window {w:?}")))?;
                if i.a() < domain.a() || i.b() > domain.b() {
                    return Err(config_err(format!("window {i} leaves the domain {domain}")));
                }
                windows.push(i);
            }
            if windows.is_empty() {
                windows.push(domain);
            }
            Ok(Plan::One {
                f,
                domain,
                cells: single(c.cells, "cells")?,
                kind,
                n: single(c.n, "n")?,
                windows,
                grid: c.grid.as_deref().map(|g| single(g, "grid")).transpose()?,
                rank_tol: c.rank_tol,
            })
        }
        Func::Two(f) => {
            let domain = rect_from(&domain).ok_or_else(|| config_err(format!("bad 2D domain {domain:?}")))?;
            let order = PadeOrder2D::new(pair(c.np, "np")?, pair(c.nq, "nq")?).map_err(|e| config_err(e.to_string()));
            let kind = if c.method.rational() {
                Kind2::Rational(order?)
            } else {
                match c.degree {
                    Some(d) => Kind2::Series(pair(d, "degree")?),
                    None => Kind2::Series(order?.series_degrees()),
                }
            };
            let mut windows = Vec::new();
            for w in c.windows {
                let r = rect_from(w).ok_or_else(|| config_err(format!("bad 2D window {w:?}")))?;
                let inside = |i: Interval, d: Interval| i.a() >= d.a() && i.b() <= d.b();
                if !(inside(r.x, domain.x) && inside(r.y, domain.y)) {
                    return Err(config_err(format!("window {r} leaves the domain {domain}")));
                }
                windows.push(r);
            }
            if windows.is_empty() {
                windows.push(domain);
            }
            Ok(Plan::Two {
                f,
                domain,
                cells: pair(c.cells, "cells")?,
                kind,
                n: pair(c.n, "n")?,
                windows,
                grid: c.grid.as_deref().map(|g| pair(g, "grid")).transpose()?,
                rank_tol: c.rank_tol,
            })
        }
    }
}

impl RunConfig {
    pub fn resolve(&self) -> Result<Plan, CliError> {
        resolve_common(Common {
            function: &self.function,
            method: self.method,
            dim: self.dim,
            domain: &self.domain,
            cells: &self.cells,
            np: &self.np,
            nq: &self.nq,
            degree: &self.degree,
            n: &self.n,
            windows: &self.windows,
            grid: &self.grid,
            rank_tol: self.rank_tol,
        })
    }
}

impl ConvergenceConfig {
    /// One `(cheb, pade)` plan pair per cell count.
    pub fn resolve(&self) -> Result<Vec<(usize, Plan, Plan)>, CliError> {
        if self.cells.is_empty() {
            return Err(config_err("convergence needs at least one cell count"));
        }
        if self.cells.windows(2).any(|w| w[0] >= w[1]) {
            return Err(config_err(format!("cell counts must be strictly increasing, got {:?}", self.cells)));
        }
        let windows: Vec<Vec<f64>> = self.window.iter().cloned().collect();
        let mut plans = Vec::new();
        for &k in &self.cells {
            let cells = [k];
            let plan = |method| {
                resolve_common(Common {
                    function: &self.function,
                    method,
                    dim: None,
                    domain: &self.domain,
                    cells: &cells,
                    np: &self.np,
                    nq: &self.nq,
                    degree: &self.degree,
                    n: &self.n,
                    windows: &windows,
                    grid: &self.grid,
                    rank_tol: self.rank_tol,
                })
            };
            plans.push((k, plan(Method::Picheb)?, plan(Method::Pipade)?));
        }
        Ok(plans)
    }
}
