//! Bivariate Chebyshev coefficients on tensor grids and the piecewise 2D
//! Chebyshev (Pi2DC) construction.
//!
//! Coefficients carry the `eps_{i,j}` normalization (1, 2 or 4), so the series
//! is evaluated as a plain double sum without halving.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::{Approximant2D, Evaluation};
use crate::cheb::{cheb_points, chebyshev_t_all, eval_cheb_plain, Interval};
use crate::error::{Error, Result};
use crate::pade2d::RationalCheb2D;
use crate::piecewise1d::{collect_cells, uniform_partition, Partition1D};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x: Interval,
    pub y: Interval,
}

impl Rect {
    pub fn new(x: Interval, y: Interval) -> Self {
        Self { x, y }
    }

    pub fn reference() -> Self {
        Self::new(Interval::reference(), Interval::reference())
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x.contains(x) && self.y.contains(y)
    }

    pub fn area(&self) -> f64 {
        self.x.width() * self.y.width()
    }

    pub(crate) fn check(&self, x: f64, y: f64) -> Result<()> {
        if self.contains(x, y) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                point: vec![x, y],
                domain: self.to_string(),
            })
        }
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.x, self.y)
    }
}

/// `eps_{i,j}`: 1 when both indices vanish, 2 when exactly one does, 4 otherwise.
pub fn epsilon(i: usize, j: usize) -> f64 {
    match (i, j) {
        (0, 0) => 1.0,
        (0, _) | (_, 0) => 2.0,
        _ => 4.0,
    }
}

/// Dense `(d_x+1) x (d_y+1)` coefficient matrix, row-major in `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevSeries2D {
    coeffs: Vec<f64>,
    shape: (usize, usize),
    rect: Rect,
    n_quad: (usize, usize),
}

impl ChebyshevSeries2D {
    pub fn new(coeffs: Vec<f64>, shape: (usize, usize), rect: Rect, n_quad: (usize, usize)) -> Result<Self> {
        if shape.0 == 0 || shape.1 == 0 || coeffs.len() != shape.0 * shape.1 {
            return Err(Error::invalid(format!(
                "coefficient matrix of shape {shape:?} cannot hold {} entries",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("series coefficients must be finite"));
        }
        Ok(Self {
            coeffs,
            shape,
            rect,
            n_quad,
        })
    }

    /// Degrees `(d_x, d_y)`.
    pub fn degrees(&self) -> (usize, usize) {
        (self.shape.0 - 1, self.shape.1 - 1)
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    pub fn n_quad(&self) -> (usize, usize) {
        self.n_quad
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `c_{i,j}`, zero outside the stored block.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i < self.shape.0 && j < self.shape.1 {
            self.coeffs[i * self.shape.1 + j]
        } else {
            0.0
        }
    }

    pub fn truncated(&self, dx: usize, dy: usize) -> Self {
        let rows = (dx + 1).min(self.shape.0);
        let cols = (dy + 1).min(self.shape.1);
        let coeffs = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| self.coeff(i, j))
            .collect();
        Self {
            coeffs,
            shape: (rows, cols),
            ..*self
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.rect.check(x, y)?;
        Ok(eval_plain_2d(
            &self.coeffs,
            self.shape,
            self.rect.x.to_reference(x),
            self.rect.y.to_reference(y),
        ))
    }
}

/// `sum_i sum_j c[i][j] T_i(tx) T_j(ty)` by nested Clenshaw recurrences.
pub(crate) fn eval_plain_2d(coeffs: &[f64], shape: (usize, usize), tx: f64, ty: f64) -> f64 {
    let rows: Vec<f64> = coeffs
        .chunks_exact(shape.1)
        .map(|row| eval_cheb_plain(row, ty))
        .collect();
    eval_cheb_plain(&rows, tx)
}

impl Approximant2D for ChebyshevSeries2D {
    fn evaluate(&self, x: f64, y: f64) -> Result<Evaluation> {
        self.eval(x, y).map(Evaluation::regular)
    }

    fn breakpoints(&self) -> (Vec<f64>, Vec<f64>) {
        (
            vec![self.rect.x.a(), self.rect.x.b()],
            vec![self.rect.y.a(), self.rect.y.b()],
        )
    }
}

fn t_table(nodes: &[f64], degree: usize) -> Vec<Vec<f64>> {
    nodes
        .iter()
        .map(|&t| {
            let mut row = vec![0.0; degree + 1];
            chebyshev_t_all(t, &mut row);
            row
        })
        .collect()
}

/// Tensor Gauss-Chebyshev quadrature
/// `c_{i,j} = eps_{i,j}/(n_x n_y) sum f(G_x(t_lx), G_y(t_ly)) T_i(t_lx) T_j(t_ly)`.
pub fn cheb_coeffs_2d<F>(f: &F, rect: Rect, degrees: (usize, usize), n: (usize, usize)) -> Result<ChebyshevSeries2D>
where
    F: Fn(f64, f64) -> f64 + ?Sized,
{
    let nx = cheb_points(n.0)?;
    let ny = cheb_points(n.1)?;
    cheb_coeffs_2d_on_nodes(f, rect, degrees, &nx, &ny)
}

pub(crate) fn cheb_coeffs_2d_on_nodes<F>(
    f: &F,
    rect: Rect,
    (dx, dy): (usize, usize),
    nodes_x: &[f64],
    nodes_y: &[f64],
) -> Result<ChebyshevSeries2D>
where
    F: Fn(f64, f64) -> f64 + ?Sized,
{
    let (nx, ny) = (nodes_x.len(), nodes_y.len());
    if nx == 0 || ny == 0 {
        return Err(Error::invalid("need at least one quadrature node per axis"));
    }
    if nx < dx + 1 || ny < dy + 1 {
        log::warn!("{nx}x{ny} quadrature nodes cannot resolve degrees ({dx}, {dy})");
    }
    let tx = t_table(nodes_x, dx);
    let ty = t_table(nodes_y, dy);
    let ys: Vec<f64> = nodes_y.iter().map(|&t| rect.y.to_domain(t)).collect();

    // partial[lx][j] = sum_ly f(x_lx, y_ly) T_j(t_ly)
    let mut partial = vec![0.0; nx * (dy + 1)];
    for (lx, &t) in nodes_x.iter().enumerate() {
        let x = rect.x.to_domain(t);
        let acc = &mut partial[lx * (dy + 1)..(lx + 1) * (dy + 1)];
        for (ly, &y) in ys.iter().enumerate() {
            let value = f(x, y);
            if !value.is_finite() {
                return Err(Error::Sampling { x, y: Some(y), value });
            }
            for (a, &t_j) in acc.iter_mut().zip(&ty[ly]) {
                *a += value * t_j;
            }
        }
    }
    let mut coeffs = vec![0.0; (dx + 1) * (dy + 1)];
    for (lx, row_t) in tx.iter().enumerate() {
        let acc = &partial[lx * (dy + 1)..(lx + 1) * (dy + 1)];
        for (i, &t_i) in row_t.iter().enumerate() {
            let out = &mut coeffs[i * (dy + 1)..(i + 1) * (dy + 1)];
            for (o, &a) in out.iter_mut().zip(acc) {
                *o += t_i * a;
            }
        }
    }
    let scale = 1.0 / (nx as f64 * ny as f64);
    for i in 0..=dx {
        for j in 0..=dy {
            coeffs[i * (dy + 1) + j] *= epsilon(i, j) * scale;
        }
    }
    ChebyshevSeries2D::new(coeffs, (dx + 1, dy + 1), rect, (nx, ny))
}

pub fn eval_cheb_series_2d(series: &ChebyshevSeries2D, x: f64, y: f64) -> Result<f64> {
    series.eval(x, y)
}

/// Tensor partition of a rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition2D {
    pub px: Partition1D,
    pub py: Partition1D,
}

impl Partition2D {
    pub fn new(px: Partition1D, py: Partition1D) -> Self {
        Self { px, py }
    }

    pub fn uniform(rect: Rect, cells: (usize, usize)) -> Result<Self> {
        Ok(Self::new(
            uniform_partition(rect.x, cells.0)?,
            uniform_partition(rect.y, cells.1)?,
        ))
    }

    pub fn num_cells(&self) -> (usize, usize) {
        (self.px.num_cells(), self.py.num_cells())
    }

    pub fn domain(&self) -> Rect {
        Rect::new(self.px.domain(), self.py.domain())
    }

    pub fn cell(&self, jx: usize, jy: usize) -> Rect {
        Rect::new(self.px.cell(jx), self.py.cell(jy))
    }

    /// Half-open ownership per axis, closed on the last cell of each axis.
    pub fn locate(&self, x: f64, y: f64) -> Result<(usize, usize)> {
        self.domain().check(x, y)?;
        Ok((self.px.locate(x)?, self.py.locate(y)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellApprox2D {
    Series(ChebyshevSeries2D),
    Rational(RationalCheb2D),
}

impl CellApprox2D {
    pub fn eval(&self, x: f64, y: f64) -> Result<Evaluation> {
        match self {
            CellApprox2D::Series(s) => s.eval(x, y).map(Evaluation::regular),
            CellApprox2D::Rational(r) => r.eval(x, y),
        }
    }

    pub fn rect(&self) -> Rect {
        match self {
            CellApprox2D::Series(s) => s.rect(),
            CellApprox2D::Rational(r) => r.rect(),
        }
    }
}

/// `N_x x N_y` grid of cell approximants, stored with `j_y` fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseApprox2D {
    partition: Partition2D,
    cells: Vec<CellApprox2D>,
}

impl PiecewiseApprox2D {
    pub fn new(partition: Partition2D, cells: Vec<CellApprox2D>) -> Result<Self> {
        let (cx, cy) = partition.num_cells();
        if cells.len() != cx * cy {
            return Err(Error::invalid(format!(
                "{} cell approximants for a {cx}x{cy} grid",
                cells.len()
            )));
        }
        for jx in 0..cx {
            for jy in 0..cy {
                if cells[jx * cy + jy].rect() != partition.cell(jx, jy) {
                    return Err(Error::invalid(format!("cell ({jx}, {jy}) approximant has the wrong box")));
                }
            }
        }
        Ok(Self { partition, cells })
    }

    pub fn partition(&self) -> &Partition2D {
        &self.partition
    }

    pub fn cell(&self, jx: usize, jy: usize) -> &CellApprox2D {
        &self.cells[jx * self.partition.num_cells().1 + jy]
    }

    pub fn cells(&self) -> &[CellApprox2D] {
        &self.cells
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<Evaluation> {
        let (jx, jy) = self.partition.locate(x, y)?;
        self.cell(jx, jy).eval(x, y)
    }
}

impl Approximant2D for PiecewiseApprox2D {
    fn evaluate(&self, x: f64, y: f64) -> Result<Evaluation> {
        self.eval(x, y)
    }

    fn breakpoints(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.partition.px.nodes().to_vec(),
            self.partition.py.nodes().to_vec(),
        )
    }
}

pub fn eval_pi2d(approx: &PiecewiseApprox2D, x: f64, y: f64) -> Result<Evaluation> {
    approx.eval(x, y)
}

/// Runs `build` on every cell in parallel and assembles the grid.
pub(crate) fn build_cells_2d<B>(partition: &Partition2D, build: B) -> Result<PiecewiseApprox2D>
where
    B: Fn(Rect) -> Result<CellApprox2D> + Sync,
{
    let (cx, cy) = partition.num_cells();
    let results = (0..cx * cy)
        .into_par_iter()
        .map(|k| {
            let (jx, jy) = (k / cy, k % cy);
            (jx, jy, build(partition.cell(jx, jy)))
        })
        .collect();
    let cells = collect_cells(results, cx * cy)?;
    PiecewiseApprox2D::new(partition.clone(), cells)
}

/// Pi2DC: a degree-`(d_x, d_y)` truncated series on every box.
pub fn build_pi2dc<F>(f: &F, partition: &Partition2D, degrees: (usize, usize), n: (usize, usize)) -> Result<PiecewiseApprox2D>
where
    F: Fn(f64, f64) -> f64 + Sync + ?Sized,
{
    let nx = cheb_points(n.0)?;
    let ny = cheb_points(n.1)?;
    build_cells_2d(partition, |rect| {
        cheb_coeffs_2d_on_nodes(f, rect, degrees, &nx, &ny).map(CellApprox2D::Series)
    })
}
