//! Maehly Padé-Chebyshev approximants of a univariate function.
//!
//! Given the primed series `f = c_0/2 + sum c_k T_k`, the denominator
//! `Q = sum q_j T_j` solves the `n_q x (n_q+1)` Toeplitz-plus-Hankel system
//! `sum_j (c_{k-j} + c_{k+j}) q_j = 0`, `k = n_p+1..=n_p+n_q`, and the numerator
//! collects the low coefficients of `f Q` via `T_a T_b = (T_{a+b} + T_{|a-b|})/2`.

use crate::approx::{Approximant1D, Evaluation, POLE_FACTOR};
use crate::cheb::{cheb_coeffs_on_nodes, cheb_points, eval_cheb_plain, ChebyshevSeries1D, Interval};
use crate::error::{Error, Result};
use crate::linalg::{choose_kernel_vector, kernel_basis, DenseMatrix};

/// `q_0` counts as nonzero above this fraction of `||q||_inf`.
pub const NORMALIZATION_FACTOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadeOrder1D {
    np: usize,
    nq: usize,
}

impl PadeOrder1D {
    pub fn new(np: usize, nq: usize) -> Result<Self> {
        if nq < 1 || np < nq {
            return Err(Error::invalid(format!(
                "Padé order needs np >= nq >= 1, got ({np}, {nq})"
            )));
        }
        Ok(Self { np, nq })
    }

    pub fn np(&self) -> usize {
        self.np
    }

    pub fn nq(&self) -> usize {
        self.nq
    }

    /// Highest coefficient index the construction reads: `np + 2 nq`.
    pub fn series_degree(&self) -> usize {
        self.np + 2 * self.nq
    }
}

/// `P/Q` with both polynomials in the Chebyshev basis (plain sums).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalCheb1D {
    p: Vec<f64>,
    q: Vec<f64>,
    interval: Interval,
}

impl RationalCheb1D {
    pub fn new(p: Vec<f64>, q: Vec<f64>, interval: Interval) -> Result<Self> {
        if p.is_empty() || q.is_empty() {
            return Err(Error::invalid("numerator and denominator need coefficients"));
        }
        if p.iter().chain(&q).any(|v| !v.is_finite()) {
            return Err(Error::invalid("rational coefficients must be finite"));
        }
        if q.iter().all(|&v| v == 0.0) {
            return Err(Error::invalid("denominator is identically zero"));
        }
        Ok(Self { p, q, interval })
    }

    pub fn numerator(&self) -> &[f64] {
        &self.p
    }

    pub fn denominator(&self) -> &[f64] {
        &self.q
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn eval(&self, x: f64) -> Result<Evaluation> {
        self.interval.check(x)?;
        Ok(self.eval_reference(self.interval.to_reference(x)))
    }

    fn eval_reference(&self, t: f64) -> Evaluation {
        let num = eval_cheb_plain(&self.p, t);
        let den = eval_cheb_plain(&self.q, t);
        let q_l1: f64 = self.q.iter().map(|v| v.abs()).sum();
        Evaluation {
            value: num / den,
            pole: den.abs() < POLE_FACTOR * q_l1,
        }
    }
}

impl Approximant1D for RationalCheb1D {
    fn evaluate(&self, x: f64) -> Result<Evaluation> {
        self.eval(x)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.interval.a(), self.interval.b()]
    }
}

impl Approximant1D for ChebyshevSeries1D {
    fn evaluate(&self, x: f64) -> Result<Evaluation> {
        self.eval(x).map(Evaluation::regular)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.interval().a(), self.interval().b()]
    }
}

/// Denominator system: row `k - np - 1`, column `j` holds `c_{k-j} + c_{k+j}`
/// for `k = np+1..=np+nq`, `j = 0..=nq`.
pub fn assemble_denominator_system(series: &ChebyshevSeries1D, order: PadeOrder1D) -> Result<DenseMatrix> {
    let need = order.series_degree() + 1;
    if series.coeffs().len() < need {
        return Err(Error::invalid(format!(
            "order ({}, {}) needs {need} Chebyshev coefficients, series has {}",
            order.np,
            order.nq,
            series.coeffs().len()
        )));
    }
    let (np, nq) = (order.np, order.nq);
    let mut a = DenseMatrix::zeros(nq, nq + 1);
    for row in 0..nq {
        let k = np + 1 + row;
        for j in 0..=nq {
            // k > nq >= j, so k - j >= 1.
            a.set(row, j, series.coeff(k - j) + series.coeff(k + j));
        }
    }
    Ok(a)
}

/// Kernel vector of the denominator system, normalized to `q_0 = 1` when
/// `|q_0|` is significant and to `||q||_inf = 1` otherwise.
pub fn solve_denominator(a: &DenseMatrix, tol: Option<f64>) -> Result<Vec<f64>> {
    if a.cols() != a.rows() + 1 {
        return Err(Error::invalid(format!(
            "denominator system must be nq x (nq+1), got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let q = choose_kernel_vector(&kernel_basis(a, tol)?)?;
    Ok(normalize_denominator(q, 0))
}

/// Scales `q` so that `q[lead] = 1`, or so that `||q||_inf = 1` when `q[lead]` is negligible.
pub(crate) fn normalize_denominator(mut q: Vec<f64>, lead: usize) -> Vec<f64> {
    let inf = q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if q[lead].abs() > NORMALIZATION_FACTOR * inf {
        q[lead]
    } else {
        inf
    };
    q.iter_mut().for_each(|v| *v /= scale);
    q
}

/// Numerator coefficients: `p_0 = 1/2 sum_j c_j q_j` and
/// `p_k = 1/2 sum_j (c_{|k-j|} + c_{k+j}) q_j` for `k = 1..=np`.
pub fn compute_numerator(series: &ChebyshevSeries1D, q: &[f64], order: PadeOrder1D) -> Result<Vec<f64>> {
    if q.len() != order.nq + 1 {
        return Err(Error::invalid(format!(
            "denominator has {} coefficients, order needs {}",
            q.len(),
            order.nq + 1
        )));
    }
    let need = order.np + order.nq + 1;
    if series.coeffs().len() < need {
        return Err(Error::invalid(format!(
            "numerator needs {need} Chebyshev coefficients, series has {}",
            series.coeffs().len()
        )));
    }
    let c = |m: usize| series.coeff(m);
    let mut p = Vec::with_capacity(order.np + 1);
    p.push(0.5 * q.iter().enumerate().map(|(j, qj)| c(j) * qj).sum::<f64>());
    for k in 1..=order.np {
        let s: f64 = q
            .iter()
            .enumerate()
            .map(|(j, qj)| (c(k.abs_diff(j)) + c(k + j)) * qj)
            .sum();
        p.push(0.5 * s);
    }
    Ok(p)
}

/// Rational approximant from an existing coefficient set.
pub fn pade_from_series(series: &ChebyshevSeries1D, order: PadeOrder1D, tol: Option<f64>) -> Result<RationalCheb1D> {
    let a = assemble_denominator_system(series, order)?;
    let q = solve_denominator(&a, tol)?;
    let p = compute_numerator(series, &q, order)?;
    RationalCheb1D::new(p, q, series.interval())
}

/// Samples `f` with `n` Chebyshev points on `interval` and builds the `(np, nq)` approximant.
pub fn build_pade_1d<F>(f: &F, interval: Interval, order: PadeOrder1D, n: usize) -> Result<RationalCheb1D>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let nodes = cheb_points(n)?;
    build_pade_on_nodes(f, interval, order, &nodes, None)
}

pub(crate) fn build_pade_on_nodes<F>(
    f: &F,
    interval: Interval,
    order: PadeOrder1D,
    nodes: &[f64],
    tol: Option<f64>,
) -> Result<RationalCheb1D>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let series = cheb_coeffs_on_nodes(f, interval, order.series_degree(), nodes)?;
    pade_from_series(&series, order, tol)
}
