//! Piecewise Chebyshev and piecewise Padé-Chebyshev (PiPC) approximants on a
//! partition of an interval.

use rayon::prelude::*;

use crate::approx::{Approximant1D, Evaluation};
use crate::cheb::{cheb_coeffs_on_nodes, cheb_points, ChebyshevSeries1D, Interval};
use crate::error::{CellFailure, Error, Result};
use crate::pade1d::{build_pade_on_nodes, PadeOrder1D, RationalCheb1D};

/// Strictly increasing nodes `a_0 < a_1 < ... < a_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition1D {
    nodes: Vec<f64>,
}

impl Partition1D {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::invalid("partition needs at least two nodes"));
        }
        if nodes.iter().any(|v| !v.is_finite()) || nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("partition nodes must be finite and strictly increasing"));
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn num_cells(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn domain(&self) -> Interval {
        Interval::new(self.nodes[0], self.nodes[self.nodes.len() - 1]).expect("validated nodes")
    }

    pub fn cell(&self, j: usize) -> Interval {
        Interval::new(self.nodes[j], self.nodes[j + 1]).expect("validated nodes")
    }

    /// Owning cell of `x`: `[a_j, a_{j+1})`, with the last cell closed on the right.
    pub fn locate(&self, x: f64) -> Result<usize> {
        if !self.domain().contains(x) {
            return Err(Error::OutOfDomain {
                point: vec![x],
                domain: self.domain().to_string(),
            });
        }
        let above = self.nodes.partition_point(|&a| a <= x);
        Ok((above - 1).min(self.num_cells() - 1))
    }
}

/// `N` equal cells: `a_j = a + j (b - a) / N`, endpoints exact.
pub fn uniform_partition(interval: Interval, n_cells: usize) -> Result<Partition1D> {
    if n_cells == 0 {
        return Err(Error::invalid("partition needs at least one cell"));
    }
    let (a, b) = (interval.a(), interval.b());
    let h = (b - a) / n_cells as f64;
    let nodes = (0..=n_cells)
        .map(|j| match j {
            0 => a,
            j if j == n_cells => b,
            j => a + j as f64 * h,
        })
        .collect();
    Partition1D::new(nodes)
}

/// Per-cell approximant.
#[derive(Debug, Clone, PartialEq)]
pub enum CellApprox1D {
    Series(ChebyshevSeries1D),
    Rational(RationalCheb1D),
}

impl CellApprox1D {
    pub fn eval(&self, x: f64) -> Result<Evaluation> {
        match self {
            CellApprox1D::Series(s) => s.eval(x).map(Evaluation::regular),
            CellApprox1D::Rational(r) => r.eval(x),
        }
    }

    pub fn interval(&self) -> Interval {
        match self {
            CellApprox1D::Series(s) => s.interval(),
            CellApprox1D::Rational(r) => r.interval(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseApprox1D {
    partition: Partition1D,
    cells: Vec<CellApprox1D>,
}

impl PiecewiseApprox1D {
    pub fn new(partition: Partition1D, cells: Vec<CellApprox1D>) -> Result<Self> {
        if cells.len() != partition.num_cells() {
            return Err(Error::invalid(format!(
                "{} cell approximants for {} cells",
                cells.len(),
                partition.num_cells()
            )));
        }
        for (j, cell) in cells.iter().enumerate() {
            if cell.interval() != partition.cell(j) {
                return Err(Error::invalid(format!("cell {j} approximant has the wrong interval")));
            }
        }
        Ok(Self { partition, cells })
    }

    pub fn partition(&self) -> &Partition1D {
        &self.partition
    }

    pub fn cells(&self) -> &[CellApprox1D] {
        &self.cells
    }

    /// Per-cell `(np, nq)` for rational cells, `None` for series cells.
    pub fn orders(&self) -> Vec<Option<(usize, usize)>> {
        self.cells
            .iter()
            .map(|c| match c {
                CellApprox1D::Rational(r) => Some((r.numerator().len() - 1, r.denominator().len() - 1)),
                CellApprox1D::Series(_) => None,
            })
            .collect()
    }

    pub fn eval(&self, x: f64) -> Result<Evaluation> {
        let j = self.partition.locate(x)?;
        self.cells[j].eval(x)
    }
}

impl Approximant1D for PiecewiseApprox1D {
    fn evaluate(&self, x: f64) -> Result<Evaluation> {
        self.eval(x)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.partition.nodes().to_vec()
    }
}

pub fn eval_pipc(approx: &PiecewiseApprox1D, x: f64) -> Result<Evaluation> {
    approx.eval(x)
}

/// Knobs shared by the builders.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BuildOptions {
    /// Rank cut-off for the denominator kernel; `None` uses the default rule.
    pub rank_tolerance: Option<f64>,
}

/// Builds every cell, then reports all failures together.
pub(crate) fn collect_cells<T: Send>(
    results: Vec<(usize, usize, Result<T>)>,
    total: usize,
) -> Result<Vec<T>> {
    let mut cells = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (i, j, r) in results {
        match r {
            Ok(c) => cells.push(c),
            Err(error) => failures.push(CellFailure { cell: (i, j), error }),
        }
    }
    if failures.is_empty() {
        Ok(cells)
    } else {
        Err(Error::CellFailures { total, failures })
    }
}

/// PiPC: one Maehly approximant of order `orders[j]` per cell, sampled with `n` points.
pub fn build_pipc<F>(f: &F, partition: &Partition1D, orders: &[PadeOrder1D], n: usize) -> Result<PiecewiseApprox1D>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    build_pipc_with(f, partition, orders, n, &BuildOptions::default())
}

pub fn build_pipc_with<F>(
    f: &F,
    partition: &Partition1D,
    orders: &[PadeOrder1D],
    n: usize,
    options: &BuildOptions,
) -> Result<PiecewiseApprox1D>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    let cells = partition.num_cells();
    if orders.len() != cells {
        return Err(Error::invalid(format!("{} orders for {cells} cells", orders.len())));
    }
    let nodes = cheb_points(n)?;
    let results = (0..cells)
        .into_par_iter()
        .map(|j| {
            let r = build_pade_on_nodes(f, partition.cell(j), orders[j], &nodes, options.rank_tolerance)
                .map(CellApprox1D::Rational);
            (j, 0, r)
        })
        .collect();
    let cells = collect_cells(results, cells)?;
    PiecewiseApprox1D::new(partition.clone(), cells)
}

/// Piecewise truncated Chebyshev series of degree `degree` per cell.
pub fn build_piecewise_cheb<F>(f: &F, partition: &Partition1D, degree: usize, n: usize) -> Result<PiecewiseApprox1D>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    let cells = partition.num_cells();
    let nodes = cheb_points(n)?;
    let results = (0..cells)
        .into_par_iter()
        .map(|j| {
            let r = cheb_coeffs_on_nodes(f, partition.cell(j), degree, &nodes).map(CellApprox1D::Series);
            (j, 0, r)
        })
        .collect();
    let cells = collect_cells(results, cells)?;
    PiecewiseApprox1D::new(partition.clone(), cells)
}
