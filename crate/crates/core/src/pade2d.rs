//! Bivariate Maehly Padé-Chebyshev approximants and the piecewise Pi2DPC driver.
//!
//! Unknowns `q_{r,s}` are stacked with `s` fastest. The homogeneous equations
//! are indexed by `(i, j)` with `i = n_p1+1..=n_p1+n_q1+1`,
//! `j = n_p2+1..=n_p2+n_q2+1`, `j` fastest; the final corner equation is
//! dropped, leaving one equation fewer than unknowns.

use crate::approx::{Approximant2D, Evaluation, POLE_FACTOR};
use crate::cheb::cheb_points;
use crate::cheb2d::{build_cells_2d, cheb_coeffs_2d_on_nodes, eval_plain_2d, CellApprox2D, ChebyshevSeries2D, Partition2D, PiecewiseApprox2D, Rect};
use crate::error::{Error, Result};
use crate::linalg::{choose_kernel_vector, default_rank_tolerance, kernel_basis, DenseMatrix};
use crate::pade1d::normalize_denominator;
use crate::piecewise1d::BuildOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadeOrder2D {
    np: (usize, usize),
    nq: (usize, usize),
}

impl PadeOrder2D {
    pub fn new(np: (usize, usize), nq: (usize, usize)) -> Result<Self> {
        if nq.0 < 1 || nq.1 < 1 || np.0 < nq.0 || np.1 < nq.1 {
            return Err(Error::invalid(format!(
                "2D Padé order needs np_i >= nq_i >= 1, got np = {np:?}, nq = {nq:?}"
            )));
        }
        Ok(Self { np, nq })
    }

    pub fn np(&self) -> (usize, usize) {
        self.np
    }

    pub fn nq(&self) -> (usize, usize) {
        self.nq
    }

    /// Series degrees the construction samples: `(n_p1 + 2 n_q1 + 1, n_p2 + 2 n_q2 + 1)`.
    pub fn series_degrees(&self) -> (usize, usize) {
        (self.np.0 + 2 * self.nq.0 + 1, self.np.1 + 2 * self.nq.1 + 1)
    }

    /// Number of denominator unknowns `(n_q1+1)(n_q2+1)`.
    pub fn denominator_len(&self) -> usize {
        (self.nq.0 + 1) * (self.nq.1 + 1)
    }

    pub fn numerator_len(&self) -> usize {
        (self.np.0 + 1) * (self.np.1 + 1)
    }
}

/// `P/Q`, both stored as row-major Chebyshev coefficient matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalCheb2D {
    p: Vec<f64>,
    p_shape: (usize, usize),
    q: Vec<f64>,
    q_shape: (usize, usize),
    rect: Rect,
}

impl RationalCheb2D {
    pub fn new(p: Vec<f64>, p_shape: (usize, usize), q: Vec<f64>, q_shape: (usize, usize), rect: Rect) -> Result<Self> {
        if p_shape.0 * p_shape.1 == 0 || p.len() != p_shape.0 * p_shape.1 {
            return Err(Error::invalid(format!("numerator shape {p_shape:?} does not fit {} entries", p.len())));
        }
        if q_shape.0 * q_shape.1 == 0 || q.len() != q_shape.0 * q_shape.1 {
            return Err(Error::invalid(format!("denominator shape {q_shape:?} does not fit {} entries", q.len())));
        }
        if p.iter().chain(&q).any(|v| !v.is_finite()) {
            return Err(Error::invalid("rational coefficients must be finite"));
        }
        if q.iter().all(|&v| v == 0.0) {
            return Err(Error::invalid("denominator is identically zero"));
        }
        Ok(Self {
            p,
            p_shape,
            q,
            q_shape,
            rect,
        })
    }

    pub fn numerator(&self) -> (&[f64], (usize, usize)) {
        (&self.p, self.p_shape)
    }

    pub fn denominator(&self) -> (&[f64], (usize, usize)) {
        (&self.q, self.q_shape)
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<Evaluation> {
        self.rect.check(x, y)?;
        let tx = self.rect.x.to_reference(x);
        let ty = self.rect.y.to_reference(y);
        let num = eval_plain_2d(&self.p, self.p_shape, tx, ty);
        let den = eval_plain_2d(&self.q, self.q_shape, tx, ty);
        let q_l1: f64 = self.q.iter().map(|v| v.abs()).sum();
        Ok(Evaluation {
            value: num / den,
            pole: den.abs() < POLE_FACTOR * q_l1,
        })
    }
}

impl Approximant2D for RationalCheb2D {
    fn evaluate(&self, x: f64, y: f64) -> Result<Evaluation> {
        self.eval(x, y)
    }

    fn breakpoints(&self) -> (Vec<f64>, Vec<f64>) {
        (
            vec![self.rect.x.a(), self.rect.x.b()],
            vec![self.rect.y.a(), self.rect.y.b()],
        )
    }
}

fn check_coverage(series: &ChebyshevSeries2D, need: (usize, usize), what: &str) -> Result<()> {
    let have = series.degrees();
    if have.0 < need.0 || have.1 < need.1 {
        return Err(Error::invalid(format!(
            "{what} needs coefficients up to degrees {need:?}, series has {have:?}"
        )));
    }
    Ok(())
}

/// Homogeneous system with entries
/// `c_{i-r,j-s} + c_{i-r,j+s} + c_{i+r,j-s} + c_{i+r,j+s}`.
pub fn assemble_denominator_system_2d(series: &ChebyshevSeries2D, order: PadeOrder2D) -> Result<DenseMatrix> {
    check_coverage(series, order.series_degrees(), "denominator system")?;
    let ((np1, np2), (nq1, nq2)) = (order.np, order.nq);
    let unknowns = order.denominator_len();
    let mut a = DenseMatrix::zeros(unknowns - 1, unknowns);
    let mut row = 0;
    for i in np1 + 1..=np1 + nq1 + 1 {
        for j in np2 + 1..=np2 + nq2 + 1 {
            if row == unknowns - 1 {
                break;
            }
            for r in 0..=nq1 {
                for s in 0..=nq2 {
                    // i > nq1 >= r and j > nq2 >= s keep every index positive.
                    let v = series.coeff(i - r, j - s)
                        + series.coeff(i - r, j + s)
                        + series.coeff(i + r, j - s)
                        + series.coeff(i + r, j + s);
                    a.set(row, r * (nq2 + 1) + s, v);
                }
            }
            row += 1;
        }
    }
    Ok(a)
}

/// Kernel vector reshaped to `(n_q1+1) x (n_q2+1)` (row-major, `s` fastest),
/// normalized to `q_{0,0} = 1` or, when that entry is negligible, `||Q||_inf = 1`.
pub fn solve_denominator_2d(a: &DenseMatrix, order: PadeOrder2D, tol: Option<f64>) -> Result<Vec<f64>> {
    let unknowns = order.denominator_len();
    if a.cols() != unknowns || a.rows() != unknowns - 1 {
        return Err(Error::invalid(format!(
            "denominator system must be {}x{unknowns}, got {}x{}",
            unknowns - 1,
            a.rows(),
            a.cols()
        )));
    }
    let q = choose_kernel_vector(&kernel_basis(a, tol)?)?;
    Ok(normalize_denominator(q, 0))
}

/// Weights `(a, w)` such that the `T_k` coefficient of `(sum_a c_a T_a) T_r` is
/// `sum w c_a`, for plain (non-halved) coefficients.
fn product_terms(k: usize, r: usize) -> Vec<(usize, f64)> {
    if k == 0 {
        return vec![(r, if r == 0 { 1.0 } else { 0.5 })];
    }
    let mut terms = Vec::with_capacity(3);
    if r <= k {
        terms.push((k - r, 0.5));
    }
    terms.push((k + r, 0.5));
    if r >= k {
        terms.push((r - k, 0.5));
    }
    terms
}

/// Numerator block: the `T_i(x) T_j(y)` coefficients of `f Q` for
/// `i <= n_p1`, `j <= n_p2`, using `T_a T_b = (T_{a+b} + T_{|a-b|})/2` along each axis.
pub fn compute_numerator_2d(series: &ChebyshevSeries2D, q: &[f64], order: PadeOrder2D) -> Result<Vec<f64>> {
    if q.len() != order.denominator_len() {
        return Err(Error::invalid(format!(
            "denominator has {} coefficients, order needs {}",
            q.len(),
            order.denominator_len()
        )));
    }
    let ((np1, np2), (nq1, nq2)) = (order.np, order.nq);
    check_coverage(series, (np1 + nq1, np2 + nq2), "numerator")?;
    let mut p = vec![0.0; order.numerator_len()];
    for i in 0..=np1 {
        for j in 0..=np2 {
            let mut acc = 0.0;
            for r in 0..=nq1 {
                let x_terms = product_terms(i, r);
                for s in 0..=nq2 {
                    let q_rs = q[r * (nq2 + 1) + s];
                    if q_rs == 0.0 {
                        continue;
                    }
                    let y_terms = product_terms(j, s);
                    let mut sum = 0.0;
                    for &(a, wa) in &x_terms {
                        for &(b, wb) in &y_terms {
                            sum += wa * wb * series.coeff(a, b);
                        }
                    }
                    acc += sum * q_rs;
                }
            }
            p[i * (np2 + 1) + j] = acc;
        }
    }
    Ok(p)
}

/// Rank cut-off used by the builders: `max(rows, cols) * eps * max(sigma_max, max |c_{i,j}|)`.
///
/// The coefficient scale enters because quadrature noise in the high-order
/// coefficients is relative to the largest coefficient, not to the system.
pub fn pade_rank_tolerance_2d(series: &ChebyshevSeries2D, a: &DenseMatrix, sigma_max: f64) -> f64 {
    let c_max = series.coeffs().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    default_rank_tolerance(a.rows(), a.cols(), sigma_max.max(c_max))
}

/// Rows of `f Q` coefficients that vanish for an exact rational of this order
/// but are not part of the homogeneous system: `(i <= n_p1, j > n_p2)`,
/// `(i > n_p1, j <= n_p2)` up to `(n_p1+n_q1+1, n_p2+n_q2+1)`, plus that corner.
pub fn extended_conditions_2d(series: &ChebyshevSeries2D, order: PadeOrder2D) -> Result<DenseMatrix> {
    check_coverage(series, order.series_degrees(), "extended conditions")?;
    let ((np1, np2), (nq1, nq2)) = (order.np, order.nq);
    let (imax, jmax) = (np1 + nq1 + 1, np2 + nq2 + 1);
    let mut rows = Vec::new();
    for i in 0..=imax {
        for j in 0..=jmax {
            let in_p = i <= np1 && j <= np2;
            let in_j = i > np1 && j > np2 && (i, j) != (imax, jmax);
            if in_p || in_j {
                continue;
            }
            let mut row = vec![0.0; order.denominator_len()];
            for r in 0..=nq1 {
                let x_terms = product_terms(i, r);
                for s in 0..=nq2 {
                    let y_terms = product_terms(j, s);
                    row[r * (nq2 + 1) + s] = x_terms
                        .iter()
                        .flat_map(|&(a, wa)| y_terms.iter().map(move |&(b, wb)| wa * wb * series.coeff(a, b)))
                        .sum();
                }
            }
            rows.push(row);
        }
    }
    DenseMatrix::from_rows(&rows)
}

/// Denominator used by the builders.
///
/// A one-dimensional kernel is taken as is. When the kernel has several
/// directions the member minimizing the residual of
/// [`extended_conditions_2d`] is chosen, which singles out the true
/// denominator whenever `f` is itself a rational of this order.
pub fn select_denominator_2d(series: &ChebyshevSeries2D, order: PadeOrder2D, tol: Option<f64>) -> Result<Vec<f64>> {
    let a = assemble_denominator_system_2d(series, order)?;
    let probe = kernel_basis(&a, tol)?;
    let tol = tol.unwrap_or_else(|| pade_rank_tolerance_2d(series, &a, probe.norm()));
    let kernel = kernel_basis(&a, Some(tol))?;
    let q = match kernel.basis.len() {
        0 => return Err(Error::NoKernel),
        1 => kernel.basis[0].clone(),
        dim => {
            let b = extended_conditions_2d(series, order)?;
            // Columns of B K; a cut-off of f64::MAX returns every right singular
            // vector, the last one spanning the direction B annihilates best.
            let n = order.denominator_len();
            let mut bk = DenseMatrix::zeros(b.rows(), dim);
            for (col, v) in kernel.basis.iter().enumerate() {
                for (row, value) in b.mul_vec(v)?.into_iter().enumerate() {
                    bk.set(row, col, value);
                }
            }
            let z = kernel_basis(&bk, Some(f64::MAX))?
                .basis
                .pop()
                .ok_or(Error::NoKernel)?;
            let mut q = vec![0.0; n];
            for (w, v) in z.iter().zip(&kernel.basis) {
                for (qk, vk) in q.iter_mut().zip(v) {
                    *qk += w * vk;
                }
            }
            q
        }
    };
    Ok(normalize_denominator(q, 0))
}

pub fn pade_from_series_2d(series: &ChebyshevSeries2D, order: PadeOrder2D, tol: Option<f64>) -> Result<RationalCheb2D> {
    let q = select_denominator_2d(series, order, tol)?;
    let p = compute_numerator_2d(series, &q, order)?;
    let ((np1, np2), (nq1, nq2)) = (order.np, order.nq);
    RationalCheb2D::new(p, (np1 + 1, np2 + 1), q, (nq1 + 1, nq2 + 1), series.rect())
}

pub fn build_pade_2d<F>(f: &F, rect: Rect, order: PadeOrder2D, n: (usize, usize)) -> Result<RationalCheb2D>
where
    F: Fn(f64, f64) -> f64 + ?Sized,
{
    let nx = cheb_points(n.0)?;
    let ny = cheb_points(n.1)?;
    let series = cheb_coeffs_2d_on_nodes(f, rect, order.series_degrees(), &nx, &ny)?;
    pade_from_series_2d(&series, order, None)
}

/// Pi2DPC: one bivariate Maehly approximant of `order` per box.
pub fn build_pi2dpc<F>(f: &F, partition: &Partition2D, order: PadeOrder2D, n: (usize, usize)) -> Result<PiecewiseApprox2D>
where
    F: Fn(f64, f64) -> f64 + Sync + ?Sized,
{
    build_pi2dpc_with(f, partition, order, n, &BuildOptions::default())
}

pub fn build_pi2dpc_with<F>(
    f: &F,
    partition: &Partition2D,
    order: PadeOrder2D,
    n: (usize, usize),
    options: &BuildOptions,
) -> Result<PiecewiseApprox2D>
where
    F: Fn(f64, f64) -> f64 + Sync + ?Sized,
{
    let nx = cheb_points(n.0)?;
    let ny = cheb_points(n.1)?;
    build_cells_2d(partition, |rect| {
        let series = cheb_coeffs_2d_on_nodes(f, rect, order.series_degrees(), &nx, &ny)?;
        pade_from_series_2d(&series, order, options.rank_tolerance).map(CellApprox2D::Rational)
    })
}
